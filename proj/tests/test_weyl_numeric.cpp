#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "flatorbit/weyl/checks.hpp"

using namespace flatorbit::weyl;

namespace {

constexpr double pi = std::numbers::pi;

// M_jk = (h dp / 2pi) sum_l a(q_{j+k}, p_l) e^{i (j-k) h p_l}, summed directly
GridOperator direct_quantize(const PhaseSymbol& a) {
  const Grid& g = a.grid;
  GridOperator m(g.n, g.n);
  const double scale = g.h() * g.dp() / (2 * pi);
  for (int j = 0; j < g.n; ++j)
    for (int k = 0; k < g.n; ++k) {
      cplx s = 0;
      for (int l = 0; l < g.p_count(); ++l) s += a.values(j + k, l) * std::polar(1.0, (j - k) * g.h() * g.p(l));
      m(j, k) = scale * s;
    }
  return m;
}

GridFunction bump(const Grid& g, double centre, double k) {
  return sample_function(g, [=](double x) { return std::exp(-(x - centre) * (x - centre)) * std::polar(1.0, k * x); });
}

}  // namespace

TEST(Grid, LatticeGeometry) {
  Grid g(64, 16);
  EXPECT_DOUBLE_EQ(g.h(), 0.25);
  EXPECT_DOUBLE_EQ(g.x(32), 0);
  EXPECT_DOUBLE_EQ(g.q(g.n), 0);
  EXPECT_DOUBLE_EQ(g.q(2 * 10), g.x(10) + g.x(0) + g.extent / 2);
  EXPECT_NEAR(g.cell(), pi / (2 * g.n), 1e-15);
}

TEST(Quantize, FftMatchesDirectSum) {
  Grid g(32, 8);
  auto a = PhaseSymbol::sample(g, [](double q, double p) { return cplx(std::exp(-q * q - 0.5 * p * p), q * p / (1 + q * q)); });
  EXPECT_LT((op_quantize(a) - direct_quantize(a)).norm(), 1e-10 * direct_quantize(a).norm());
}

TEST(Quantize, ConstantAndPositionSymbols) {
  Grid g(64, 16);
  auto one = op_quantize(PhaseSymbol::sample(g, [](double, double) { return cplx(1); }));
  EXPECT_LT((one - GridOperator::Identity(g.n, g.n)).norm(), 1e-10);
  auto pos = op_quantize(PhaseSymbol::sample(g, [](double q, double) { return cplx(q); }));
  for (int j = 0; j < g.n; ++j) EXPECT_NEAR(std::abs(pos(j, j) - g.x(j)), 0, 1e-9);
}

TEST(Quantize, GaussianNormClosedForm) {
  for (int n : {128, 256}) {
    Grid g(n, 16);
    for (double t : {0.25, 0.5, 1.0}) {
      auto op = op_quantize(PhaseSymbol::sample(g, [t](double q, double p) { return cplx(std::exp(-t * (q * q + p * p))); }));
      EXPECT_NEAR(operator_norm(op), 1 / (1 + t), 1e-6) << "n " << n << " t " << t;
    }
  }
}

TEST(Wigner, PairingIdentity) {
  Grid g(64, 16);
  auto phi = bump(g, 0.5, 1.0), psi = bump(g, -1.0, -0.5);
  auto a = PhaseSymbol::sample(g, [](double q, double p) { return cplx(std::cos(q) * std::exp(-p * p / 4), 0.1 * q); });
  cplx lhs = pairing(a, wigner(g, phi, psi));
  cplx rhs = inner(g, op_quantize(a) * phi, psi);
  EXPECT_LT(std::abs(lhs - rhs), 1e-10);
}

TEST(Wigner, DiagonalIsRealWithUnitMass) {
  Grid g(128, 16);
  GridFunction phi = bump(g, 0.0, 0.0);
  phi /= std::sqrt(inner(g, phi, phi).real());
  auto w = wigner(g, phi, phi);
  EXPECT_LT(w.values.imag().cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_NEAR(integrate(w).real(), 1.0, 1e-10);
}

TEST(Schrodinger, GroupLawAndUnitarity) {
  Grid g(128, 32);
  HeisenbergElement u{0.3, 0.25, 0.7}, v{-0.1, 0.5, -0.4};
  GridFunction f = bump(g, 0.0, 0.0);
  GridFunction lhs = schrodinger(g, u) * (schrodinger(g, v) * f);
  GridFunction rhs = schrodinger(g, product(u, v)) * f;
  EXPECT_LT((lhs - rhs).norm(), 1e-9 * f.norm());
  auto p = schrodinger(g, u);
  EXPECT_LT((p.adjoint() * p - GridOperator::Identity(g.n, g.n)).norm(), 1e-10);
}

TEST(Schrodinger, OffGridTranslationIsUnitary) {
  Grid g(64, 16);
  auto t = translation(g, 0.1);
  EXPECT_LT((t.adjoint() * t - GridOperator::Identity(g.n, g.n)).norm(), 1e-10);
}

TEST(Covariance, ExactForGridShifts) {
  Grid g(128, 16);
  EXPECT_LT(covariance_residual(g, unit_gaussian, {0, 0.5, 0}), 1e-10);
  EXPECT_LT(covariance_residual(g, unit_gaussian, {0, 1.0, 0.75}), 1e-8);
}

TEST(Convolution, GaussianAverageMatchesClosedForm) {
  Grid g(128, 16);
  const double s = 0.5;
  auto c = op_quantize(PhaseSymbol::sample(g, unit_gaussian));
  auto avg = conv_average(g, [s](double yb, double yc) { return gaussian_weight(yb, yc, s); }, c);
  auto want = op_quantize(PhaseSymbol::sample(g, [s](double q, double p) { return cplx(convolved_unit_gaussian(q, p, s)); }));
  EXPECT_LT((avg - want).norm() / want.norm(), 1e-6);
}

TEST(Convolution, WideWeightRejected) {
  Grid g(64, 16);
  GridOperator c = GridOperator::Identity(g.n, g.n);
  EXPECT_THROW(conv_average(g, [](double yb, double yc) { return gaussian_weight(yb, yc, 3.0); }, c),
               flatorbit::QuadratureWindowTooSmall);
  EXPECT_THROW(conv_average(Grid(32, 16), [](double, double) { return 0.0; }, c), flatorbit::GridMismatch);
}

TEST(Jet, DerivativesOfProductsAndExp) {
  auto q = Jet::q_at(0.3), p = Jet::p_at(-0.2);
  auto f = exp(q * p);  // d^2/dq dp e^{qp} = (1 + qp) e^{qp}
  EXPECT_NEAR(std::abs(f.derivative(1, 1) - (1 + 0.3 * -0.2) * std::exp(-0.06)), 0, 1e-14);
  EXPECT_NEAR(std::abs(f.derivative(3, 0) - std::pow(-0.2, 3) * std::exp(-0.06)), 0, 1e-14);
  auto s = sin(Jet(2.0) * q);
  EXPECT_NEAR(std::abs(s.derivative(3, 0) + 8 * std::cos(0.6)), 0, 1e-12);
  auto r = Jet(1.0) / (Jet(1.0) + q * q);
  EXPECT_NEAR(std::abs(r.derivative(1, 0) + 2 * 0.3 / std::pow(1.09, 2)), 0, 1e-12);
}

TEST(Seminorms, SineSymbolHasNormAtMostOne) {
  Grid g(128, 16);
  for (double lambda : {1.0, 4.0}) {
    auto row = seminorm_row(g, families::sine(lambda));
    EXPECT_LE(row.op_norm, 1 + 1e-6) << lambda;
    EXPECT_NEAR(row.sup, 1.0, 1e-2) << lambda;
    EXPECT_NEAR(row.seminorm[3], std::pow(lambda, 3) > 1 ? std::pow(lambda, 3) : 1.0, 1e-2 * std::pow(lambda, 3));
  }
}

TEST(Seminorms, HilbertSchmidtConstant) {
  Grid g(128, 16);
  for (double w : {0.5, 1.0}) {
    auto a = families::gaussian(w);
    auto op = op_quantize(a.sample(g));
    // ||Op(a)||_HS^2 = (2 pi)^-1 ||a||_2^2 and ||a||_2^2 = pi w^2
    EXPECT_NEAR(hs_norm(op) * hs_norm(op), w * w / 2, 1e-6) << w;
  }
}

TEST(NumericSuites, AllPassAtSmallGrid) {
  Grid g(128, 16);
  for (const char* name : {"quantize", "pairing", "covariance"})
    for (const auto& c : run_numeric_suite(name, g, 20240607)) EXPECT_TRUE(c.pass) << c.suite << "/" << c.test << " = " << c.value;
}
