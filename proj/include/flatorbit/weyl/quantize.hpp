#ifndef FLATORBIT_WEYL_QUANTIZE_HPP
#define FLATORBIT_WEYL_QUANTIZE_HPP

#include <unsupported/Eigen/FFT>

#include <algorithm>
#include <numbers>

#include "flatorbit/weyl/grid.hpp"

namespace flatorbit::weyl {

namespace detail {

// Kernel row transform
//   out[d] = sum_l in[l] e^{i d h p_l},  d = j - k in (-N, N);
// and since h p_l = (l - N) pi / N this is (-1)^d times an inverse DFT of
// length 2N, stored at index d mod 2N.
inline Eigen::VectorXcd separation_transform(Eigen::FFT<double>& fft, const Eigen::VectorXcd& in) {
  const Eigen::Index len = in.size();
  Eigen::VectorXcd out(len);
  fft.SetFlag(Eigen::FFT<double>::Unscaled);
  fft.inv(out, in);
  for (Eigen::Index d = 1; d < len; d += 2) out(d) = -out(d);
  return out;
}

}  // namespace detail

/// Weyl quantization with the midpoint kernel
///   K(x, y) = (2 pi)^-1 \int a((x+y)/2, p) e^{i(x-y)p} dp,
/// discretized as M_jk = h K(x_j, x_k) so that M acts on samples.
inline GridOperator op_quantize(const PhaseSymbol& a) {
  const Grid& g = a.grid;
  if (a.values.rows() != g.q_count() || a.values.cols() != g.p_count())
    throw GridMismatch("symbol is not sampled on the quantization lattice");
  const int n = g.n, len = g.p_count();
  const double w = g.h() * g.dp() / (2 * std::numbers::pi);
  Eigen::FFT<double> fft;
  GridOperator m(n, n);
  for (int s = 0; s < g.q_count(); ++s) {
    Eigen::VectorXcd row = a.values.row(s).transpose();
    Eigen::VectorXcd f = detail::separation_transform(fft, row);
    int j0 = std::max(0, s - (n - 1)), j1 = std::min(n - 1, s);
    for (int j = j0; j <= j1; ++j) {
      int d = 2 * j - s;
      m(j, s - j) = w * f((d + len) % len);
    }
  }
  return m;
}

/// Wigner function W(phi, psi) on the quantization lattice, normalized so
/// that pairing(a, W(phi, psi)) = (Op(a) phi | psi) exactly. For the unit
/// Gaussian pi^{-1/4} e^{-x^2/2} it approximates pi^-1 e^{-q^2-p^2} for
/// |p| < pi/(2h); rows repeat with momentum period pi/h, and the copy
/// alternates in sign along q.
inline PhaseSymbol wigner(const Grid& g, const GridFunction& phi, const GridFunction& psi) {
  if (phi.size() != g.n || psi.size() != g.n) throw GridMismatch("function length differs from grid size");
  const int n = g.n, len = g.p_count();
  const double c = g.h() / std::numbers::pi;
  Eigen::FFT<double> fft;
  fft.SetFlag(Eigen::FFT<double>::Unscaled);
  PhaseSymbol w{g, Eigen::MatrixXcd(g.q_count(), len)};
  for (int s = 0; s < g.q_count(); ++s) {
    Eigen::VectorXcd in = Eigen::VectorXcd::Zero(len);
    int j0 = std::max(0, s - (n - 1)), j1 = std::min(n - 1, s);
    for (int j = j0; j <= j1; ++j) {
      int d = 2 * j - s;
      // sum over d of e^{i d h p_l} = (-1)^d e^{i pi d l / N}: the sign goes on the input here
      in((d + len) % len) = (d % 2 == 0 ? 1.0 : -1.0) * phi(s - j) * std::conj(psi(j));
    }
    Eigen::VectorXcd out(len);
    fft.inv(out, in);
    w.values.row(s) = c * out.transpose();
  }
  return w;
}

/// Discrete integral of a W over the lattice.
inline cplx pairing(const PhaseSymbol& a, const PhaseSymbol& w) {
  if (!(a.grid == w.grid)) throw GridMismatch("symbols live on different grids");
  return a.grid.cell() * (a.values.array() * w.values.array()).sum();
}

/// Discrete integral of a symbol over phase space.
inline cplx integrate(const PhaseSymbol& a) { return a.grid.cell() * a.values.sum(); }

}  // namespace flatorbit::weyl

#endif
