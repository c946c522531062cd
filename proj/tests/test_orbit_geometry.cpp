#include <gtest/gtest.h>

#include "flatorbit/io.hpp"
#include "flatorbit/orbit.hpp"
#include "flatorbit/random.hpp"

using namespace flatorbit;

namespace {

OrbitData orbit_of(const std::string& name) {
  auto spec = load_algebra_spec(std::string(FLATORBIT_DATA_DIR "/") + name + ".json");
  return OrbitData(spec.algebra, *spec.xi0, spec.orbit_options());
}

}  // namespace

TEST(Flatness, BundledAlgebrasAreFlat) {
  for (const char* name : {"ex57", "ex58", "heisenberg_m1", "abelian", "semidirect_m1"}) {
    auto spec = load_algebra_spec(std::string(FLATORBIT_DATA_DIR "/") + name + ".json");
    auto r = is_flat(spec.algebra, *spec.xi0);
    EXPECT_TRUE(r.flat) << name;
    EXPECT_EQ(r.rank, r.expected_rank) << name;
  }
}

TEST(Flatness, RejectsDegenerateForms) {
  // filiform X0 < X1 < X2 < X3 with [X3,X2]=X1, [X3,X1]=X0: centre is X0 but rank 2 < 3
  LieAlgebra L({"X0", "X1", "X2", "X3"}, {{3, 2, {0, 1, 0, 0}}, {3, 1, {1, 0, 0, 0}}});
  RatVector xi{Rational(1), Rational(0), Rational(0), Rational(0)};
  auto r = is_flat(L, xi);
  EXPECT_FALSE(r.flat);
  EXPECT_EQ(r.expected_rank, 3u);
  EXPECT_THROW(OrbitData(L, xi), NotFlat);
}

TEST(Flatness, PreconditionErrors) {
  auto spec = load_algebra_spec(FLATORBIT_DATA_DIR "/heisenberg_m1.json");
  EXPECT_THROW(is_flat(spec.algebra, RatVector(3)), NonUnitCentralPairing);
  EXPECT_THROW(is_flat(spec.algebra, RatVector(2)), DimensionMismatch);
}

TEST(Orbit, NonUnitCentralValueIsNormalised) {
  auto spec = load_algebra_spec(FLATORBIT_DATA_DIR "/heisenberg_m1.json");
  RatVector xi{Rational(3), Rational(0), Rational(0)};
  OrbitData o(spec.algebra, xi);
  EXPECT_EQ(o.central_value(), Rational(3));
  EXPECT_TRUE(is_zero(o.chi_at(RatVector(o.dim()))));
}

TEST(Orbit, OmegaIsAntisymmetricAndNondegenerate) {
  for (const char* name : {"ex57", "ex58", "semidirect_m1"}) {
    auto o = orbit_of(name);
    EXPECT_EQ(o.omega().transpose(), Rational(-1) * o.omega()) << name;
    EXPECT_EQ(o.omega().rank(), o.dim()) << name;
  }
}

TEST(Orbit, ChiInverseRoundTrip) {
  auto o = orbit_of("ex58");
  RationalSampler rnd(seed_from_env());
  for (int s = 0; s < 50; ++s) {
    auto x = rnd.vector(o.dim());
    auto eta = o.chi_at(x);
    EXPECT_EQ(o.chi_inverse().evaluate(eta), x);
  }
}

TEST(Orbit, ChiIsGroupCocycle) {
  auto o = orbit_of("ex57");
  const auto& G0 = o.predual_group();
  RationalSampler rnd(17);
  for (int s = 0; s < 50; ++s) {
    auto x = rnd.vector(o.dim()), y = rnd.vector(o.dim());
    EXPECT_EQ(o.chi_at(G0.product(x, y)), o.chi_at(x) + G0.coAd(x) * o.chi_at(y));
  }
}

TEST(Orbit, OmegaTwoCocycle) {
  auto o = orbit_of("ex58");
  const auto& g0 = o.predual();
  RationalSampler rnd(19);
  auto form = [&](const RatVector& a, const RatVector& b) { return dot(a, o.omega() * b); };
  for (int s = 0; s < 50; ++s) {
    auto x = rnd.vector(o.dim()), y = rnd.vector(o.dim()), z = rnd.vector(o.dim());
    EXPECT_TRUE((form(x, g0.bracket(y, z)) + form(y, g0.bracket(z, x)) + form(z, g0.bracket(x, y))).is_zero());
  }
}

TEST(Orbit, GammaEquivariance) {
  for (const char* name : {"ex57", "ex58", "heisenberg_m1", "abelian", "semidirect_m1"}) {
    auto o = orbit_of(name);
    for (const auto& r : o.equivariance_residual()) EXPECT_TRUE(r.is_zero()) << name << ": " << r.str();
  }
}

TEST(Orbit, GammaFieldsAreLinearInX) {
  auto o = orbit_of("ex57");
  RationalSampler rnd(23);
  auto x = rnd.vector(o.dim()), y = rnd.vector(o.dim());
  EXPECT_EQ(o.gamma_field(x + y), o.gamma_field(x) + o.gamma_field(y));
}
