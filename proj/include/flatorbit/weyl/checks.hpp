#ifndef FLATORBIT_WEYL_CHECKS_HPP
#define FLATORBIT_WEYL_CHECKS_HPP

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "flatorbit/weyl/conv.hpp"
#include "flatorbit/weyl/quantize.hpp"
#include "flatorbit/weyl/schrodinger.hpp"
#include "flatorbit/weyl/seminorms.hpp"

namespace flatorbit::weyl {

/// One numeric check: pass iff value <= tolerance (or >= when at_least).
struct NumericCheck {
  std::string suite;
  std::string test;
  double value = 0;
  double tolerance = 0;
  bool at_least = false;
  bool pass = false;
};

inline NumericCheck make_check(std::string suite, std::string test, double value, double tol, bool at_least = false) {
  bool pass = std::isfinite(value) && (at_least ? value >= tol : value <= tol);
  return {std::move(suite), std::move(test), value, tol, at_least, pass};
}

inline double unit_gaussian(double q, double p) { return std::exp(-(q * q + p * p) / 2); }

/// Gaussian mass-one weight of variance s^2 centred at (mb, mc).
inline double gaussian_weight(double yb, double yc, double s, double mb = 0, double mc = 0) {
  double r2 = (yb - mb) * (yb - mb) + (yc - mc) * (yc - mc);
  return std::exp(-r2 / (2 * s * s)) / (2 * std::numbers::pi * s * s);
}

/// (b * a)(q, p) = \int b(y) a(q + yb, p - yc) dy for a the unit Gaussian and
/// b = gaussian_weight(., ., s, mb, mc), in closed form.
inline double convolved_unit_gaussian(double q, double p, double s, double mb = 0, double mc = 0) {
  double v = 1 + s * s;
  double u = q + mb, w = p - mc;
  return std::exp(-(u * u + w * w) / (2 * v)) / v;
}

/// ||Op(alpha(X) a) - pi(X) Op(a) pi(-X)|| / ||Op(a)|| in operator norm, with
/// (alpha(X) a)(q, p) = a(q + b, p - c). With from_grid the symbol is taken
/// from samples at the grid points (second-order midpoint reconstruction).
inline double covariance_residual(const Grid& g, const std::function<cplx(double, double)>& a,
                                  const HeisenbergElement& x, bool from_grid = false) {
  auto shifted = [&](double q, double p) { return a(q + x.b, p - x.c); };
  auto quant = [&](const std::function<cplx(double, double)>& f) {
    return from_grid ? op_quantize(PhaseSymbol::from_grid_samples(g, PhaseSymbol::grid_samples(g, f)))
                     : op_quantize(PhaseSymbol::sample(g, f));
  };
  GridOperator base = quant(a);
  GridOperator lhs = quant(shifted);
  double nb = operator_norm(base);
  if (nb == 0) return 0;
  return operator_norm(lhs - conjugate(g, x, base)) / nb;
}

inline std::vector<NumericCheck> quantize_checks(const Grid& g) {
  std::vector<NumericCheck> out;
  const std::string s = "quantize";
  GridOperator one = op_quantize(PhaseSymbol::sample(g, [](double, double) { return cplx(1); }));
  out.push_back(make_check(s, "op_one_is_identity", (one - GridOperator::Identity(g.n, g.n)).cwiseAbs().maxCoeff(), 1e-10));

  GridOperator pos = op_quantize(PhaseSymbol::sample(g, [](double q, double) { return cplx(q); }));
  GridOperator want = GridOperator::Zero(g.n, g.n);
  for (int j = 0; j < g.n; ++j) want(j, j) = g.x(j);
  out.push_back(make_check(s, "op_position_is_multiplication", (pos - want).cwiseAbs().maxCoeff(), 1e-8));

  // oracle: \int e^{-(q^2+p^2)/2} = 2 pi, so Tr Op(a) = (2 pi)^-1 \int a = 1
  GridOperator gauss = op_quantize(PhaseSymbol::sample(g, [](double q, double p) { return cplx(unit_gaussian(q, p)); }));
  out.push_back(make_check(s, "gaussian_trace", std::abs(gauss.trace() - cplx(1)), 1e-6));

  GridOperator real_sym = op_quantize(PhaseSymbol::sample(g, [](double q, double p) {
    return cplx(std::exp(-(q - 0.3) * (q - 0.3) - p * p / 3) * std::cos(q * p) + 0.2 * std::sin(p));
  }));
  out.push_back(make_check(s, "real_symbol_self_adjoint",
                           (real_sym - real_sym.adjoint()).cwiseAbs().maxCoeff() / real_sym.cwiseAbs().maxCoeff(), 1e-10));
  return out;
}

namespace detail {

struct RandomGaussians {
  std::mt19937_64 rng;
  std::uniform_real_distribution<double> centre{-1.5, 1.5};
  std::uniform_real_distribution<double> width{0.6, 1.6};
  std::uniform_real_distribution<double> freq{-2.0, 2.0};

  explicit RandomGaussians(std::uint64_t seed) : rng(seed) {}

  std::function<cplx(double, double)> symbol() {
    double q0 = centre(rng), p0 = centre(rng), sq = width(rng), sp = width(rng), a = freq(rng), b = freq(rng);
    return [=](double q, double p) {
      double env = std::exp(-(q - q0) * (q - q0) / (2 * sq * sq) - (p - p0) * (p - p0) / (2 * sp * sp));
      return std::polar(env, a * q + b * p);
    };
  }
  GridFunction vector(const Grid& g) {
    double x0 = centre(rng), s = width(rng), k = freq(rng);
    return sample_function(g, [=](double x) { return std::polar(std::exp(-(x - x0) * (x - x0) / (2 * s * s)), k * x); });
  }
};

}  // namespace detail

inline std::vector<NumericCheck> pairing_checks(const Grid& g, std::uint64_t seed) {
  std::vector<NumericCheck> out;
  const std::string s = "pairing";
  detail::RandomGaussians rnd(seed);

  double worst = 0;
  for (int t = 0; t < 20; ++t) {
    PhaseSymbol a = PhaseSymbol::sample(g, rnd.symbol());
    GridFunction phi = rnd.vector(g), psi = rnd.vector(g);
    cplx lhs = inner(g, op_quantize(a) * phi, psi);
    cplx rhs = pairing(a, wigner(g, phi, psi));
    worst = std::max(worst, std::abs(lhs - rhs) / std::abs(lhs));
  }
  out.push_back(make_check(s, "pairing_random_gaussian_triples", worst, 1e-6));

  double imag = 0, lo = 1e300, hi = 0;
  for (int t = 0; t < 5; ++t) {
    GridFunction phi = rnd.vector(g);
    PhaseSymbol w = wigner(g, phi, phi);
    imag = std::max(imag, w.values.imag().cwiseAbs().maxCoeff());
    double c = integrate(w).real() / inner(g, phi, phi).real();
    lo = std::min(lo, c);
    hi = std::max(hi, c);
  }
  out.push_back(make_check(s, "wigner_diagonal_real", imag, 1e-10));
  out.push_back(make_check(s, "wigner_normalization_spread", (hi - lo) / hi, 1e-6));

  // oracle: W(phi, phi) = pi^-1 e^{-q^2-p^2} for phi = pi^{-1/4} e^{-x^2/2}, on the band |p| < pi/(2h)
  GridFunction g0 = sample_function(g, [](double x) { return cplx(std::pow(std::numbers::pi, -0.25) * std::exp(-x * x / 2)); });
  PhaseSymbol w0 = wigner(g, g0, g0);
  double err = 0;
  for (int m = 0; m < g.q_count(); ++m)
    for (int l = 0; l < g.p_count(); ++l) {
      double q = g.q(m), p = g.p(l);
      if (std::abs(p) >= std::numbers::pi / (2 * g.h())) continue;
      err = std::max(err, std::abs(w0.values(m, l) - std::exp(-q * q - p * p) / std::numbers::pi));
    }
  out.push_back(make_check(s, "wigner_gaussian_closed_form", err, 1e-10));
  return out;
}

/// Covariance checks on g, with the convergence slope measured against the
/// grid of half the size. The nominal order 2 is that of the midpoint
/// reconstruction used when symbols are given at grid points only.
inline std::vector<NumericCheck> covariance_checks(const Grid& g) {
  std::vector<NumericCheck> out;
  const std::string s = "covariance";
  auto gauss = [](double q, double p) { return cplx(unit_gaussian(q, p)); };
  out.push_back(make_check(s, "zero_shift", covariance_residual(g, gauss, {0, 0, 0}), 0));
  out.push_back(make_check(s, "unit_position_shift", covariance_residual(g, gauss, {0, 1.0, 0}), 1e-6));
  out.push_back(make_check(s, "unit_shift_with_momentum", covariance_residual(g, gauss, {0.4, 1.0, 0.7}), 1e-6));

  // a shift off the grid exercises the spectral translation and the midpoint reconstruction
  HeisenbergElement off{0, 1.0 / 3, 0.5};
  Grid coarse(g.n / 2, g.extent);
  double fine_r = covariance_residual(g, gauss, off, true);
  double coarse_r = covariance_residual(coarse, gauss, off, true);
  double slope = std::log2(coarse_r / fine_r);
  out.push_back(make_check(s, "convergence_slope_deviation", std::abs(slope - 2.0), 0.3));

  // group law with the central term of X.Y = X + Y + [X, Y]/2
  HeisenbergElement u{0.3, 0.5, -0.8}, v{-0.1, -1.25, 0.6};
  // modulation is not periodic on the box, so compare on vectors localized away from the edge
  double law = 0;
  GridOperator lhs = schrodinger(g, u) * schrodinger(g, v);
  GridOperator rhs = schrodinger(g, product(u, v));
  for (double x0 : {-1.0, 0.0, 1.5}) {
    GridFunction f = sample_function(g, [x0](double x) { return std::polar(std::exp(-(x - x0) * (x - x0)), 0.3 * x); });
    law = std::max(law, (lhs * f - rhs * f).norm() / f.norm());
  }
  out.push_back(make_check(s, "group_law", law, 1e-8));
  GridOperator pu = schrodinger(g, u);
  out.push_back(make_check(s, "unitarity", (pu.adjoint() * pu - GridOperator::Identity(g.n, g.n)).cwiseAbs().maxCoeff(), 1e-8));
  return out;
}

inline std::vector<NumericCheck> convolution_checks(const Grid& g) {
  std::vector<NumericCheck> out;
  const std::string s = "convolution";
  const double width = 0.5;
  auto rel = [](const GridOperator& a, const GridOperator& b) { return operator_norm(a - b) / operator_norm(b); };
  GridOperator op_a = op_quantize(PhaseSymbol::sample(g, [](double q, double p) { return cplx(unit_gaussian(q, p)); }));

  auto b0 = [&](double yb, double yc) { return gaussian_weight(yb, yc, width); };
  GridOperator averaged = conv_average(g, b0, op_a);
  GridOperator op_conv = op_quantize(PhaseSymbol::sample(g, [&](double q, double p) {
    return cplx(convolved_unit_gaussian(q, p, width));
  }));
  out.push_back(make_check(s, "convolution_identity", rel(averaged, op_conv), 1e-4));

  // off-centre weight: pins which way the weight is reflected
  const double mb = 0.5, mc = 0.25;
  auto b1 = [&](double yb, double yc) { return gaussian_weight(yb, yc, width, mb, mc); };
  GridOperator op_conv1 = op_quantize(PhaseSymbol::sample(g, [&](double q, double p) {
    return cplx(convolved_unit_gaussian(q, p, width, mb, mc));
  }));
  out.push_back(make_check(s, "convolution_off_centre", rel(conv_average(g, b1, op_a, ConvWindow{5.0, 0.125}), op_conv1), 1e-4));

  // Dirac-like bump of width h/4, normalized to unit mass on the nodes
  ConvWindow narrow{4 * g.h(), g.h()};
  const double sb = g.h() / 4;
  double mass = 0;
  for (int i = -4; i <= 4; ++i)
    for (int k = -4; k <= 4; ++k) mass += gaussian_weight(i * g.h(), k * g.h(), sb) * g.h() * g.h();
  auto bump = [&](double yb, double yc) { return gaussian_weight(yb, yc, sb) / mass; };
  out.push_back(make_check(s, "approximate_identity", rel(conv_average(g, bump, op_a, narrow), op_a), 1e-3));

  // b >= 0 and C >= 0 give b{C} >= 0
  GridFunction psi = sample_function(g, [](double x) { return std::polar(std::exp(-(x - 0.7) * (x - 0.7)), 0.9 * x); });
  GridOperator rank_one = g.h() * psi * psi.adjoint();
  GridOperator pos = conv_average(g, b0, rank_one);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es((pos + pos.adjoint()) / 2.0, Eigen::EigenvaluesOnly);
  double min_eig = es.eigenvalues().minCoeff(), max_eig = es.eigenvalues().maxCoeff();
  out.push_back(make_check(s, "positivity_min_eigenvalue", -min_eig / max_eig, 1e-10));

  // linearity in b and in C
  GridOperator op_b = op_quantize(PhaseSymbol::sample(g, [](double q, double p) { return cplx(std::exp(-q * q - (p - 1) * (p - 1))); }));
  const ConvWindow wide{5.0, 0.125};
  GridOperator combo = conv_average(g, [&](double yb, double yc) { return 2 * b0(yb, yc) - 3 * b1(yb, yc); }, op_a + cplx(0, 2) * op_b, wide);
  GridOperator parts = 2.0 * conv_average(g, b0, op_a, wide) + cplx(0, 4) * conv_average(g, b0, op_b, wide) -
                       3.0 * conv_average(g, b1, op_a, wide) - cplx(0, 6) * conv_average(g, b1, op_b, wide);
  out.push_back(make_check(s, "linearity", (combo - parts).cwiseAbs().maxCoeff() / parts.cwiseAbs().maxCoeff(), 1e-12));

  bool threw = false;
  try {
    conv_average(g, b0, op_a, ConvWindow{1.0, 0.125});
  } catch (const QuadratureWindowTooSmall&) {
    threw = true;
  }
  out.push_back(make_check(s, "window_too_small_rejected", threw ? 1 : 0, 1, true));
  return out;
}

/// Seminorm study checks. The ratio bound is empirical: it records that the
/// largest observed ratio stays below 1, not a proven constant.
inline std::vector<NumericCheck> seminorm_checks(const Grid& g, std::vector<SeminormRow>* table = nullptr) {
  std::vector<NumericCheck> out;
  const std::string s = "seminorms";
  auto rows = seminorm_vs_norm_study(g, default_study_family());
  if (table) *table = rows;

  double one_dev = 0, max_ratio = 0, sin_excess = 0, gauss_err = 0;
  std::vector<const SeminormRow*> bounded;
  for (const auto& r : rows) {
    if (r.family == "one") one_dev = std::abs(r.op_norm - 1) + r.derivative[3];
    if (r.family == "sin") sin_excess = std::max(sin_excess, r.op_norm - 1);
    if (r.family == "gaussian") {
      // Op(e^{-t(q^2+p^2)}) has norm 1/(1+t)
      double t = 1 / (2 * r.parameter * r.parameter);
      gauss_err = std::max(gauss_err, std::abs(r.op_norm - 1 / (1 + t)));
    }
    if (r.family == "bounded_chirp") bounded.push_back(&r);
    max_ratio = std::max(max_ratio, r.ratio);
  }
  out.push_back(make_check(s, "unit_symbol_norm_and_derivatives", one_dev, 1e-10));
  out.push_back(make_check(s, "sine_norm_excess", sin_excess, 1e-12));
  out.push_back(make_check(s, "gaussian_norm_closed_form", gauss_err, 1e-8));
  out.push_back(make_check(s, "max_norm_to_seminorm_ratio", max_ratio, 1.0));

  // constant sup norm, growing first derivatives and growing operator norm
  bool monotone = true;
  double sup_dev = 0;
  for (std::size_t i = 0; i < bounded.size(); ++i) {
    sup_dev = std::max(sup_dev, std::abs(bounded[i]->sup - 1));
    if (i > 0)
      monotone = monotone && bounded[i]->op_norm > bounded[i - 1]->op_norm &&
                 bounded[i]->derivative[1] > bounded[i - 1]->derivative[1];
  }
  out.push_back(make_check(s, "oscillator_unit_sup", sup_dev, 1e-12));
  out.push_back(make_check(s, "oscillator_norm_and_derivative_growth", monotone ? 1 : 0, 1, true));
  out.push_back(make_check(s, "oscillator_norm_over_sup", bounded.empty() ? 0 : bounded.back()->op_norm, 2.0, true));

  // Hilbert-Schmidt: ||Op(a)||_HS^2 / \int |a|^2 across five Gaussians
  double lo = 1e300, hi = 0;
  const double shapes[5][4] = {{0, 0, 1, 1}, {0.5, -0.3, 0.7, 1.2}, {-1, 0.4, 1.3, 0.8}, {0.2, 1, 0.9, 0.6}, {1.2, -0.8, 1.5, 1.5}};
  for (const auto& sh : shapes) {
    PhaseSymbol a = PhaseSymbol::sample(g, [&](double q, double p) {
      return cplx(std::exp(-(q - sh[0]) * (q - sh[0]) / (2 * sh[2] * sh[2]) - (p - sh[1]) * (p - sh[1]) / (2 * sh[3] * sh[3])));
    });
    double hs2 = std::pow(hs_norm(op_quantize(a)), 2);
    double l2 = a.grid.cell() * a.values.cwiseAbs2().sum();
    double c = hs2 / l2;
    lo = std::min(lo, c);
    hi = std::max(hi, c);
  }
  out.push_back(make_check(s, "hs_constant_spread", (hi - lo) / hi, 1e-4));
  out.push_back(make_check(s, "hs_constant_vs_inverse_two_pi", std::abs(hi * 2 * std::numbers::pi - 1), 1e-4));
  return out;
}

/// Suites by name: pairing, covariance, convolution, seminorms, quantize.
inline std::vector<NumericCheck> run_numeric_suite(const std::string& name, const Grid& g, std::uint64_t seed) {
  if (name == "quantize") return quantize_checks(g);
  if (name == "pairing") return pairing_checks(g, seed);
  if (name == "covariance") return covariance_checks(g);
  if (name == "convolution") return convolution_checks(g);
  if (name == "seminorms") return seminorm_checks(g);
  throw Error("unknown numeric suite '" + name + "'");
}

inline const std::vector<std::string>& numeric_suite_names() {
  static const std::vector<std::string> names{"quantize", "pairing", "covariance", "convolution", "seminorms"};
  return names;
}

}  // namespace flatorbit::weyl

#endif
