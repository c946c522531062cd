#include <gtest/gtest.h>

#include "flatorbit/group_ops.hpp"
#include "flatorbit/heisenberg.hpp"
#include "flatorbit/io.hpp"
#include "flatorbit/random.hpp"

using namespace flatorbit;

namespace {

GroupOps ex58_group() { return GroupOps(load_algebra_spec(FLATORBIT_DATA_DIR "/ex58.json").algebra); }

}  // namespace

TEST(GroupOps, HeisenbergProductLaw) {
  GroupOps G(build_heisenberg(1));
  RatVector x{Rational(1), Rational(2), Rational(3)}, y{Rational(0), Rational(5), Rational(-1)};
  // z = x0 + y0 + (x1 y2 - x2 y1)/2
  EXPECT_EQ(G.product(x, y), (RatVector{Rational(1) + Rational(-2 - 15, 2), Rational(7), Rational(2)}));
}

TEST(GroupOps, IdentityAndInverse) {
  auto G = ex58_group();
  RationalSampler rnd(3);
  RatVector zero(G.dim());
  for (int s = 0; s < 20; ++s) {
    auto x = rnd.vector(G.dim());
    EXPECT_EQ(G.product(x, zero), x);
    EXPECT_EQ(G.product(x, GroupOps::inverse(x)), zero);
  }
}

TEST(GroupOps, AssociativityOnRandomSamples) {
  auto G = ex58_group();
  RationalSampler rnd(seed_from_env());
  for (int s = 0; s < 100; ++s) {
    auto x = rnd.vector(G.dim()), y = rnd.vector(G.dim()), z = rnd.vector(G.dim());
    ASSERT_EQ(G.product(G.product(x, y), z), G.product(x, G.product(y, z))) << "sample " << s;
  }
}

TEST(GroupOps, AdIsHomomorphism) {
  auto G = ex58_group();
  RationalSampler rnd(5);
  for (int s = 0; s < 50; ++s) {
    auto x = rnd.vector(G.dim()), y = rnd.vector(G.dim());
    ASSERT_EQ(G.Ad(G.product(x, y)), G.Ad(x) * G.Ad(y));
  }
}

TEST(GroupOps, CoAdjointIsContragredient) {
  auto G = ex58_group();
  RationalSampler rnd(9);
  for (int s = 0; s < 20; ++s) {
    auto x = rnd.vector(G.dim()), y = rnd.vector(G.dim()), xi = rnd.vector(G.dim());
    EXPECT_EQ(dot(G.coAd(x) * xi, G.Ad(x) * y), dot(xi, y));
  }
}

TEST(GroupOps, TranslationFieldsOnHeisenberg) {
  GroupOps G(build_heisenberg(1));
  auto v = detail::make_vars({"x0", "x1", "x2"});
  EXPECT_EQ(G.right_translation_field(0, v), DiffOp::parse("∂x0", v));
  EXPECT_EQ(G.right_translation_field(1, v), DiffOp::parse("−x2/2·∂x0 + ∂x1", v));
  EXPECT_EQ(G.right_translation_field(2, v), DiffOp::parse("x1/2·∂x0 + ∂x2", v));
  EXPECT_EQ(G.left_translation_field(1, v), DiffOp::parse("−x2/2·∂x0 − ∂x1", v));
  EXPECT_EQ(G.left_translation_field(2, v), DiffOp::parse("x1/2·∂x0 − ∂x2", v));
}

TEST(GroupOps, LeftAndRightFieldsCommute) {
  auto G = ex58_group();
  auto v = detail::make_vars(LieAlgebra::default_labels(G.dim(), "x"));
  for (std::size_t i = 0; i < G.dim(); ++i)
    for (std::size_t j = 0; j < G.dim(); ++j)
      EXPECT_TRUE(G.right_translation_field(i, v).commutator(G.left_translation_field(j, v)).is_zero()) << i << "," << j;
}
