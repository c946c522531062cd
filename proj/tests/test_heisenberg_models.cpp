#include <gtest/gtest.h>

#include "flatorbit/heisenberg.hpp"
#include "flatorbit/io.hpp"

using namespace flatorbit;

TEST(Heisenberg, DimensionsAndFlatness) {
  for (unsigned m = 1; m <= 3; ++m) {
    auto L = build_heisenberg(m);
    EXPECT_EQ(L.dim(), 2 * m + 1);
    RatVector xi(L.dim());
    xi[0] = Rational(1);
    EXPECT_TRUE(is_flat(L, xi).flat) << m;
  }
}

TEST(Semidirect, ModelIsValidAndFlat) {
  for (unsigned m = 1; m <= 2; ++m) {
    auto model = build_semidirect(m);
    EXPECT_EQ(model.g.dim(), 4 * m + 3);
    EXPECT_TRUE(model.g.validate().ok()) << model.g.validate().failures();
    EXPECT_TRUE(is_flat(model.g, model.xi0).flat) << m;
  }
}

TEST(Semidirect, FundamentalFieldsMatchClosedForms) {
  for (unsigned m = 1; m <= 2; ++m) {
    auto rep = field_golden_check(build_semidirect(m));
    EXPECT_TRUE(rep.pass) << (rep.mismatches.empty() ? "" : rep.mismatches.front());
  }
}

TEST(Semidirect, InvariantGeneratorsSpanCommutant) {
  auto rep = invariant_golden_check(build_semidirect(1));
  EXPECT_TRUE(rep.golden.pass);
  EXPECT_EQ(rep.dimension, 6u);
  EXPECT_TRUE(rep.constants_only);
}

TEST(Semidirect, RestrictionToStarredCoordinates) {
  auto model = build_semidirect(1);
  auto res = starred_restriction(model);
  std::map<std::string, Restriction> kind;
  for (const auto& [src, r] : res.items) kind[src] = r.kind;
  EXPECT_EQ(kind.at("∂ζ*"), Restriction::Restricted);
  EXPECT_EQ(kind.at("∂ξ1"), Restriction::Vanishes);
  EXPECT_EQ(kind.at("∂η1"), Restriction::Vanishes);
  EXPECT_EQ(kind.at("∂ζ + η*1·∂ξ1 − ξ*1·∂η1"), Restriction::Vanishes);

  auto sub = detail::make_vars(starred_vars(model));
  std::vector<DiffOp> want;
  for (const auto& s : starred_expected(1)) want.push_back(DiffOp::parse(s, sub));
  EXPECT_EQ(res.basis.size(), 3u);
  EXPECT_TRUE(span_equal(res.basis, OpBasis::canonical(sub, want)));
}

TEST(Semidirect, BundledFileMatchesBuiltModel) {
  auto spec = load_algebra_spec(FLATORBIT_DATA_DIR "/semidirect_m1.json");
  auto model = build_semidirect(1);
  EXPECT_EQ(spec.algebra.labels(), model.g.labels());
  EXPECT_EQ(*spec.xi0, model.xi0);
  EXPECT_EQ(*spec.expected_invariant_ops, invariant_generators(1));
}
