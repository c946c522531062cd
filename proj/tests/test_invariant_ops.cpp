#include <gtest/gtest.h>

#include "flatorbit/invariant_ops.hpp"
#include "flatorbit/io.hpp"

using namespace flatorbit;

namespace {

struct Case {
  AlgebraSpec spec;
  OrbitData orbit;
};

Case load(const std::string& name) {
  auto spec = load_algebra_spec(std::string(FLATORBIT_DATA_DIR "/") + name + ".json");
  OrbitData o(spec.algebra, *spec.xi0, spec.orbit_options());
  return {std::move(spec), std::move(o)};
}

OpBasis golden(const Case& c) {
  std::vector<DiffOp> ops;
  for (const auto& s : *c.spec.expected_invariant_ops) ops.push_back(DiffOp::parse(s, c.orbit.eta_vars()));
  return OpBasis::canonical(c.orbit.eta_vars(), ops);
}

}  // namespace

TEST(InvariantOps, CommutantMatchesGoldens) {
  for (const char* name : {"ex57", "ex58", "heisenberg_m1", "abelian", "semidirect_m1"}) {
    auto c = load(name);
    auto r = commutant_first_order(c.orbit);
    EXPECT_EQ(r.first_order.size(), c.orbit.dim()) << name;
    EXPECT_TRUE(r.zeroth_order_constants_only) << name;
    EXPECT_TRUE(span_equal(r.first_order, golden(c))) << name;
  }
}

TEST(InvariantOps, PushforwardSpansCommutant) {
  for (const char* name : {"ex57", "ex58", "semidirect_m1"}) {
    auto c = load(name);
    auto push = invariant_ops_via_pushforward(c.orbit);
    EXPECT_TRUE(push.commute_with_gamma) << name;
    EXPECT_TRUE(span_equal(push.basis, commutant_first_order(c.orbit).first_order)) << name;
  }
}

TEST(InvariantOps, FourStepCanonicalForm) {
  auto c = load("ex58");
  auto r = commutant_first_order(c.orbit);
  std::vector<std::string> got;
  for (const auto& op : r.first_order.ops) got.push_back(op.str());
  std::vector<std::string> want{"∂1 + η1·∂2 + η1^2/2·∂3 + (η3 − η1·η2 + η1^3/3)·∂4",
                                "∂2 + η1·∂3 + (−η2 + η1^2/2)·∂4", "∂3", "∂4"};
  EXPECT_EQ(got, want);
}

TEST(InvariantOps, InvariantOperatorsCommuteWithGamma) {
  auto c = load("ex58");
  auto gammas = c.orbit.gamma_fields();
  for (const auto& op : commutant_first_order(c.orbit).first_order.ops)
    for (const auto& g : gammas) EXPECT_TRUE(op.commutator(g).is_zero()) << op.str();
}

TEST(InvariantOps, TooSmallDegreeBoundHitsLimit) {
  auto c = load("ex58");
  EXPECT_THROW(commutant_first_order(c.orbit, std::nullopt, 0u), DegreeEscalationLimit);
}

TEST(InvariantOps, GeneratedAlgebraCount) {
  auto c = load("ex58");
  auto ops = invariant_ops_via_pushforward(c.orbit).basis.ops;
  auto all = generate_algebra(ops, 2);
  EXPECT_EQ(all.size(), 15u);
  EXPECT_THROW(generate_algebra(ops, 40, 100), OrderLimit);
}

TEST(InvariantOps, SpanEqualityIgnoresBasisChoice) {
  auto c = load("ex57");
  auto ops = commutant_first_order(c.orbit).first_order.ops;
  std::vector<DiffOp> mixed{ops[0] + ops[1], ops[1], Rational(2) * ops[2], ops[3] - ops[0]};
  EXPECT_TRUE(span_equal(OpBasis::canonical(c.orbit.eta_vars(), mixed), OpBasis::canonical(c.orbit.eta_vars(), ops)));
  mixed.pop_back();
  EXPECT_FALSE(span_equal(OpBasis::canonical(c.orbit.eta_vars(), mixed), OpBasis::canonical(c.orbit.eta_vars(), ops)));
}

TEST(Restriction, ClassifiesOutcomes) {
  auto vars = detail::make_vars({"ζ*", "ξ*1", "ζ", "ξ1"});
  VarList starred{"ζ*", "ξ*1"};
  auto not_closed = restrict_to_subvariables(DiffOp::parse("∂ζ* + ζ·∂ξ*1", vars), starred);
  EXPECT_EQ(not_closed.kind, Restriction::NotClosed);
  auto vanishes = restrict_to_subvariables(DiffOp::parse("∂ζ + ξ*1·∂ξ1", vars), starred);
  EXPECT_EQ(vanishes.kind, Restriction::Vanishes);
  auto kept = restrict_to_subvariables(DiffOp::parse("∂ζ* + ξ*1·∂ξ*1 + ∂ξ1", vars), starred);
  EXPECT_EQ(kept.kind, Restriction::Restricted);
  EXPECT_EQ(kept.op.with_vars(detail::make_vars(starred)).str(), "∂ζ* + ξ*1·∂ξ*1");
}
