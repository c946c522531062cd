#ifndef FLATORBIT_WEYL_GRID_HPP
#define FLATORBIT_WEYL_GRID_HPP

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>

#include "flatorbit/errors.hpp"

namespace flatorbit::weyl {

using cplx = std::complex<double>;
using GridFunction = Eigen::VectorXcd;
using GridOperator = Eigen::MatrixXcd;

/// Uniform grid x_j = (j - N/2) h, j = 0..N-1, on [-Nh/2, Nh/2).
///
/// Symbols live on the quantization lattice: position midpoints
/// q_m = (x_j + x_k)/2, m = j + k = 0..2N-2 (spacing h/2), and 2N momenta
/// p_l = (l - N) dp with dp = pi/(N h), covering [-pi/h, pi/h). The doubled
/// momentum resolution keeps kernel separations up to the full box unaliased.
struct Grid {
  int n = 256;
  double extent = 16.0;

  Grid() = default;
  Grid(int n_points, double ext) : n(n_points), extent(ext) {
    if (n < 2 || (n & (n - 1)) != 0) throw GridMismatch("grid size must be a power of two");
    if (!(extent > 0)) throw GridMismatch("grid extent must be positive");
  }

  double h() const { return extent / n; }
  double x(int j) const { return (j - n / 2) * h(); }
  int q_count() const { return 2 * n - 1; }
  int p_count() const { return 2 * n; }
  double q(int m) const { return (m - n) * h() / 2; }
  double dp() const { return std::numbers::pi / (n * h()); }
  double p(int l) const { return (l - n) * dp(); }
  /// Area element of one lattice cell.
  double cell() const { return h() / 2 * dp(); }

  friend bool operator==(const Grid& a, const Grid& b) { return a.n == b.n && a.extent == b.extent; }
};

/// Symbol samples on the quantization lattice: rows are q_m, columns p_l.
struct PhaseSymbol {
  Grid grid;
  Eigen::MatrixXcd values;

  static PhaseSymbol sample(const Grid& g, const std::function<cplx(double, double)>& a) {
    PhaseSymbol s{g, Eigen::MatrixXcd(g.q_count(), g.p_count())};
    for (int m = 0; m < g.q_count(); ++m)
      for (int l = 0; l < g.p_count(); ++l) s.values(m, l) = a(g.q(m), g.p(l));
    return s;
  }

  /// Builds lattice values from samples at the grid points x_j only
  /// (N x 2N); odd midpoints get the average of their two neighbours, a
  /// second-order reconstruction.
  static PhaseSymbol from_grid_samples(const Grid& g, const Eigen::MatrixXcd& on_grid) {
    if (on_grid.rows() != g.n || on_grid.cols() != g.p_count())
      throw GridMismatch("grid samples must be N x 2N");
    PhaseSymbol s{g, Eigen::MatrixXcd(g.q_count(), g.p_count())};
    // q_m = x_{m/2} for even m; odd m sits between x_{(m-1)/2} and x_{(m+1)/2}
    for (int m = 0; m < g.q_count(); ++m) {
      if (m % 2 == 0)
        s.values.row(m) = on_grid.row(m / 2);
      else
        s.values.row(m) = 0.5 * (on_grid.row(m / 2) + on_grid.row(m / 2 + 1));
    }
    return s;
  }

  static Eigen::MatrixXcd grid_samples(const Grid& g, const std::function<cplx(double, double)>& a) {
    Eigen::MatrixXcd v(g.n, g.p_count());
    for (int j = 0; j < g.n; ++j)
      for (int l = 0; l < g.p_count(); ++l) v(j, l) = a(g.x(j), g.p(l));
    return v;
  }
};

inline GridFunction sample_function(const Grid& g, const std::function<cplx(double)>& f) {
  GridFunction v(g.n);
  for (int j = 0; j < g.n; ++j) v(j) = f(g.x(j));
  return v;
}

/// L2 inner product (f | g) = h sum f conj(g).
inline cplx inner(const Grid& g, const GridFunction& f, const GridFunction& k) {
  return g.h() * (f.array() * k.conjugate().array()).sum();
}

}  // namespace flatorbit::weyl

#endif
