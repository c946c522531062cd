#ifndef FLATORBIT_WEYL_SCHRODINGER_HPP
#define FLATORBIT_WEYL_SCHRODINGER_HPP

#include <climits>
#include <cmath>
#include <numbers>

#include "flatorbit/weyl/grid.hpp"

namespace flatorbit::weyl {

/// Element tZ + bY + cX of the three-dimensional Heisenberg algebra with
/// [Y, X] = Z, in exponential coordinates.
struct HeisenbergElement {
  double t = 0, b = 0, c = 0;
};

/// Group product in exponential coordinates: X.Y = X + Y + [X, Y]/2.
inline HeisenbergElement product(const HeisenbergElement& u, const HeisenbergElement& v) {
  return {u.t + v.t + 0.5 * (u.b * v.c - u.c * v.b), u.b + v.b, u.c + v.c};
}

namespace detail {

inline long grid_steps(const Grid& g, double b) {
  double s = b / g.h();
  long r = std::lround(s);
  return std::abs(s - static_cast<double>(r)) < 1e-12 ? r : LONG_MIN;
}

}  // namespace detail

/// Translation f(x) -> f(x + b) on periodic samples. Grid multiples are
/// exact circular shifts; other b use the band-limited (spectral) shift.
inline GridOperator translation(const Grid& g, double b) {
  const int n = g.n;
  GridOperator s = GridOperator::Zero(n, n);
  long r = detail::grid_steps(g, b);
  if (r != LONG_MIN) {
    for (int j = 0; j < n; ++j) s(j, static_cast<int>(((j + r) % n + n) % n)) = 1.0;
    return s;
  }
  // S = F^-1 diag(e^{i k b}) F with frequencies in [-n/2, n/2); a unit-modulus
  // Nyquist multiplier keeps S unitary and S(a) S(b) = S(a + b)
  const double two_pi = 2 * std::numbers::pi;
  Eigen::VectorXcd mult(n);
  for (int f = 0; f < n; ++f) {
    int fk = f < n / 2 ? f : f - n;
    double k = two_pi * fk / g.extent;
    mult(f) = std::polar(1.0, k * b);
  }
  // circulant: entry (j, l) depends on (j - l) mod n only
  Eigen::VectorXcd col(n);
  for (int d = 0; d < n; ++d) {
    cplx acc = 0;
    for (int f = 0; f < n; ++f) acc += mult(f) * std::polar(1.0, two_pi * f * d / n);
    col(d) = acc / static_cast<double>(n);
  }
  for (int j = 0; j < n; ++j)
    for (int l = 0; l < n; ++l) s(j, l) = col((j - l + n) % n);
  return s;
}

/// Schrodinger representation: pi(tZ + bY + cX) f(x) = e^{it} e^{icb/2} e^{icx} f(x + b),
/// so dpi(Y) = d/dx, dpi(X) = ix, dpi(Z) = i.
inline GridOperator schrodinger(const Grid& g, const HeisenbergElement& e) {
  GridOperator s = translation(g, e.b);
  for (int j = 0; j < g.n; ++j) s.row(j) *= std::polar(1.0, e.t + e.c * e.b / 2 + e.c * g.x(j));
  return s;
}

/// pi(X) C pi(-X); exact index arithmetic when b is a grid multiple.
inline GridOperator conjugate(const Grid& g, const HeisenbergElement& e, const GridOperator& c) {
  long r = detail::grid_steps(g, e.b);
  if (r == LONG_MIN) {
    HeisenbergElement inv{-e.t, -e.b, -e.c};
    return schrodinger(g, e) * c * schrodinger(g, inv);
  }
  const int n = g.n;
  GridOperator out(n, n);
  Eigen::VectorXcd ph(n);
  for (int j = 0; j < n; ++j) ph(j) = std::polar(1.0, e.c * g.x(j));
  for (int j = 0; j < n; ++j) {
    int js = static_cast<int>(((j + r) % n + n) % n);
    for (int k = 0; k < n; ++k) {
      int ks = static_cast<int>(((k + r) % n + n) % n);
      out(j, k) = ph(j) * c(js, ks) * std::conj(ph(k));
    }
  }
  return out;
}

}  // namespace flatorbit::weyl

#endif
