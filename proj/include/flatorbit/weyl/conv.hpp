#ifndef FLATORBIT_WEYL_CONV_HPP
#define FLATORBIT_WEYL_CONV_HPP

#include <cmath>
#include <algorithm>
#include <functional>
#include <string>

#include "flatorbit/weyl/schrodinger.hpp"

namespace flatorbit::weyl {

/// Square quadrature window [-half_width, half_width]^2 over (b, c) with
/// uniform node spacing. Spacing should be a multiple of h so position
/// shifts stay on the grid.
struct ConvWindow {
  double half_width = 4.0;
  double spacing = 0.125;
  /// Largest admissible |b| on the window boundary relative to max |b|.
  double tail_tolerance = 1e-12;
};

/// Averaged conjugation
///   b{C} = \int b(Y) pi(Y) C pi(-Y) dY,  Y = yb Y + yc X,
/// by the trapezoidal rule on the window. Since pi(Y) Op(a) pi(-Y) = Op(alpha(Y) a)
/// with (alpha(Y) a)(q, p) = a(q + yb, p - yc), this gives b{Op(a)} = Op(b * a) for
/// the orbit convolution (b * a) = \int b(Y) alpha(Y) a dY. Written as
/// \int b(X) pi(X)^-1 C pi(X) dX the same operator needs b(-X). Throws
/// QuadratureWindowTooSmall when b has not decayed at the window edge.
inline GridOperator conv_average(const Grid& g, const std::function<double(double, double)>& b, const GridOperator& c,
                                 const ConvWindow& win = {}) {
  if (c.rows() != g.n || c.cols() != g.n) throw GridMismatch("operator size differs from grid size");
  const int steps = static_cast<int>(std::lround(win.half_width / win.spacing));
  if (steps < 1 || std::abs(steps * win.spacing - win.half_width) > 1e-12)
    throw GridMismatch("window half-width must be a multiple of the node spacing");
  double peak = 0, edge = 0;
  for (int i = -steps; i <= steps; ++i)
    for (int k = -steps; k <= steps; ++k) {
      double v = std::abs(b(i * win.spacing, k * win.spacing));
      peak = std::max(peak, v);
      if (std::abs(i) == steps || std::abs(k) == steps) edge = std::max(edge, v);
    }
  if (peak == 0) return GridOperator::Zero(g.n, g.n);
  if (edge > win.tail_tolerance * peak)
    throw QuadratureWindowTooSmall("weight does not decay inside the quadrature window: edge/peak = " +
                                   std::to_string(edge / peak));
  const double area = win.spacing * win.spacing;
  const int n = g.n;
  GridOperator acc = GridOperator::Zero(n, n);
  for (int i = -steps; i <= steps; ++i) {
    const double yb = i * win.spacing;
    const long r = detail::grid_steps(g, yb);
    if (r == LONG_MIN) {
      for (int k = -steps; k <= steps; ++k) {
        double yc = k * win.spacing, w = b(yb, yc);
        if (w != 0) acc += (w * area) * conjugate(g, {0, yb, yc}, c);
      }
      continue;
    }
    // e^{i yc x_j} C e^{-i yc x_k} depends on yc through e^{i yc (j-k) h} only,
    // so the momentum nodes collapse into one multiplier per separation
    Eigen::VectorXcd mult = Eigen::VectorXcd::Zero(2 * n - 1);
    bool any = false;
    for (int k = -steps; k <= steps; ++k) {
      double yc = k * win.spacing, w = b(yb, yc);
      if (w == 0) continue;
      any = true;
      for (int d = -(n - 1); d <= n - 1; ++d) mult(d + n - 1) += (w * area) * std::polar(1.0, yc * d * g.h());
    }
    if (!any) continue;
    for (int k = 0; k < n; ++k) {
      const int ks = static_cast<int>(((k + r) % n + n) % n);
      for (int j = 0; j < n; ++j) {
        const int js = static_cast<int>(((j + r) % n + n) % n);
        acc(j, k) += mult(j - k + n - 1) * c(js, ks);
      }
    }
  }
  return acc;
}

}  // namespace flatorbit::weyl

#endif
