#include <gtest/gtest.h>

#include "flatorbit/heisenberg.hpp"
#include "flatorbit/io.hpp"
#include "flatorbit/lie_algebra.hpp"
#include "flatorbit/random.hpp"

using namespace flatorbit;

namespace {

bool check_passes(const ValidationReport& r, const std::string& name) {
  for (const auto& c : r.checks)
    if (c.name == name) return c.pass;
  ADD_FAILURE() << "no check named " << name;
  return false;
}

RatVector e(std::size_t n, std::size_t i) { return unit_vector(n, i); }

}  // namespace

TEST(LieAlgebra, BundledFourStepAlgebraIsValid) {
  auto spec = load_algebra_spec(FLATORBIT_DATA_DIR "/ex58.json");
  auto r = spec.algebra.validate();
  EXPECT_TRUE(r.ok()) << r.failures();
  EXPECT_EQ(r.center_dim, 1u);
}

TEST(LieAlgebra, JacobiFailureNamesTriple) {
  // correctly ordered, but the cyclic sum on (X2, X3, X4) is X0
  LieAlgebra L({"X0", "X1", "X2", "X3", "X4"},
               {{4, 3, {0, 0, 1, 0, 0}}, {4, 2, {0, 1, 0, 0, 0}}, {3, 2, {1, 0, 0, 0, 0}}, {3, 1, {1, 0, 0, 0, 0}}});
  auto r = L.validate();
  EXPECT_FALSE(check_passes(r, "jacobi"));
  EXPECT_TRUE(check_passes(r, "jordan_holder"));
  EXPECT_NE(r.failures().find("(X2, X3, X4)"), std::string::npos) << r.failures();
  EXPECT_THROW(L.require_valid(), ValidationError);
}

TEST(LieAlgebra, UpperTriangularBracketFailsOrdering) {
  // [X2, X1] = X2 is not strictly below both indices
  LieAlgebra L({"X1", "X2"}, {{1, 0, {0, 1}}});
  auto r = L.validate();
  EXPECT_FALSE(check_passes(r, "jordan_holder"));
  EXPECT_FALSE(check_passes(r, "nilpotent"));
}

TEST(LieAlgebra, JacobiOnRandomTriples) {
  auto spec = load_algebra_spec(FLATORBIT_DATA_DIR "/ex58.json");
  const auto& L = spec.algebra;
  RationalSampler rnd(seed_from_env());
  for (int s = 0; s < 200; ++s) {
    auto x = rnd.vector(L.dim()), y = rnd.vector(L.dim()), z = rnd.vector(L.dim());
    auto sum = L.bracket(x, L.bracket(y, z)) + L.bracket(y, L.bracket(z, x)) + L.bracket(z, L.bracket(x, y));
    ASSERT_TRUE(is_zero(sum)) << "sample " << s;
  }
}

TEST(LieAlgebra, BracketBilinearAndAntisymmetric) {
  auto L = build_heisenberg(2);
  RationalSampler rnd(7);
  for (int s = 0; s < 50; ++s) {
    auto x = rnd.vector(L.dim()), y = rnd.vector(L.dim());
    Rational a = rnd();
    EXPECT_EQ(L.bracket(x, y), -L.bracket(y, x));
    EXPECT_EQ(L.bracket(a * x, y), a * L.bracket(x, y));
  }
}

TEST(LieAlgebra, HeisenbergCentreAndStep) {
  auto L = build_heisenberg(3);
  EXPECT_EQ(L.dim(), 7u);
  EXPECT_EQ(L.center().dim(), 1u);
  EXPECT_TRUE(L.center().contains(e(7, 0)));
  EXPECT_EQ(L.step(), 2u);
}

TEST(LieAlgebra, CentreDimensions) {
  auto spec = load_algebra_spec(FLATORBIT_DATA_DIR "/abelian.json");
  auto r = spec.algebra.validate();
  EXPECT_TRUE(r.ok());
  EXPECT_EQ(r.center_dim, 1u);
  LieAlgebra flat({"A", "B", "C"}, {});
  EXPECT_EQ(flat.center().dim(), 3u);
  EXPECT_EQ(flat.step(), 1u);
}

TEST(LieAlgebra, AdMatrixMatchesBracket) {
  auto spec = load_algebra_spec(FLATORBIT_DATA_DIR "/ex57.json");
  const auto& L = spec.algebra;
  RationalSampler rnd(11);
  for (int s = 0; s < 20; ++s) {
    auto x = rnd.vector(L.dim()), y = rnd.vector(L.dim());
    EXPECT_EQ(L.ad_matrix(x) * y, L.bracket(x, y));
  }
}
