#ifndef FLATORBIT_SUITE_HPP
#define FLATORBIT_SUITE_HPP

#include <chrono>
#include <cstdint>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "flatorbit/heisenberg.hpp"
#include "flatorbit/invariant_ops.hpp"
#include "flatorbit/io.hpp"
#include "flatorbit/orbit.hpp"
#include "flatorbit/random.hpp"
#include "flatorbit/weyl/checks.hpp"

namespace flatorbit {

inline const std::vector<std::string>& bundled_algebras() {
  static const std::vector<std::string> names{"ex57", "ex58", "heisenberg_m1", "semidirect_m1", "abelian"};
  return names;
}

struct SuiteOptions {
  std::string data_dir = ".";
  bool numeric = true;
  std::uint64_t seed = default_seed;
  int grid_n = 256;
  double extent = 16.0;
  std::size_t samples = 100;
};

enum class Status { Pass, Fail, Skip };

inline const char* to_string(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Skip: return "skip";
  }
  return "?";
}

struct Criterion {
  int id = 0;
  std::string title;
  Status status = Status::Fail;
  std::vector<std::string> details;  // deterministic; timings are kept apart
  double seconds = 0;
  double budget = 0;  // seconds, 0 when unbounded
};

namespace detail {

inline double elapsed(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

inline std::string fmt_seconds(double s) {
  std::ostringstream o;
  o.precision(3);
  o << s << " s";
  return o.str();
}

}  // namespace detail

/// First-order commutant of a bundled algebra compared with its expected_invariant_ops.
struct GoldenOutcome {
  bool pass = false;
  std::vector<std::string> lines;
};

inline GoldenOutcome golden_invariant_ops(const AlgebraSpec& spec) {
  GoldenOutcome out;
  if (!spec.xi0 || !spec.expected_invariant_ops) {
    out.lines.push_back("no xi0 or expected_invariant_ops");
    return out;
  }
  OrbitData orbit(spec.algebra, *spec.xi0, spec.orbit_options());
  auto res = commutant_first_order(orbit);
  std::vector<DiffOp> want;
  for (const auto& s : *spec.expected_invariant_ops) want.push_back(DiffOp::parse(s, orbit.eta_vars()));
  out.pass = span_equal(res.first_order, OpBasis::canonical(orbit.eta_vars(), want));
  for (const auto& op : res.first_order.ops) out.lines.push_back(op.str());
  return out;
}

/// Exact identities on random rational samples: BCH associativity, Ad
/// homomorphism, the 2-cocycle and 1-cocycle identities of omega, the group
/// 1-cocycle identity of chi, and symbolic equivariance of gamma.
inline std::vector<CheckResult> structural_identities(const AlgebraSpec& spec, std::uint64_t seed, std::size_t samples) {
  std::vector<CheckResult> out;
  OrbitData orbit(spec.algebra, *spec.xi0, spec.orbit_options());
  const GroupOps& G = orbit.group();
  const GroupOps& G0 = orbit.predual_group();
  const LieAlgebra& g0 = orbit.predual();
  const RatMatrix& om = orbit.omega();
  const std::size_t n = G.dim(), d = orbit.dim();
  RationalSampler rnd(seed);

  auto form = [&](const RatVector& x, const RatVector& y) { return dot(x, om * y); };
  auto record = [&](const std::string& name, const std::function<bool(std::string&)>& one) {
    CheckResult c{name, true, ""};
    for (std::size_t s = 0; s < samples && c.pass; ++s) c.pass = one(c.details);
    if (c.pass) c.details = std::to_string(samples) + " samples";
    out.push_back(c);
  };

  record("bch_associativity", [&](std::string& why) {
    auto x = rnd.vector(n), y = rnd.vector(n), z = rnd.vector(n);
    if (G.product(G.product(x, y), z) == G.product(x, G.product(y, z))) return true;
    why = "fails at X = " + vector_str(x) + ", Y = " + vector_str(y) + ", Z = " + vector_str(z);
    return false;
  });
  record("ad_homomorphism", [&](std::string& why) {
    auto x = rnd.vector(n), y = rnd.vector(n);
    if (G.Ad(G.product(x, y)) == G.Ad(x) * G.Ad(y)) return true;
    why = "fails at X = " + vector_str(x) + ", Y = " + vector_str(y);
    return false;
  });
  record("omega_2_cocycle", [&](std::string& why) {
    auto x = rnd.vector(d), y = rnd.vector(d), z = rnd.vector(d);
    Rational s = form(x, g0.bracket(y, z)) + form(y, g0.bracket(z, x)) + form(z, g0.bracket(x, y));
    if (s.is_zero()) return true;
    why = "cyclic sum " + s.str() + " at X = " + vector_str(x);
    return false;
  });
  record("omega_sharp_1_cocycle", [&](std::string& why) {
    // (ad* Y) eta = -(ad Y)^T eta, and omega#(X) = omega(., X) = Omega X
    auto y = rnd.vector(d), z = rnd.vector(d);
    RatVector lhs = om * g0.bracket(y, z);
    RatVector rhs = -(g0.ad_matrix(y).transpose() * (om * z)) + g0.ad_matrix(z).transpose() * (om * y);
    if (lhs == rhs) return true;
    why = "fails at Y = " + vector_str(y) + ", Z = " + vector_str(z);
    return false;
  });
  record("chi_group_cocycle", [&](std::string& why) {
    auto x = rnd.vector(d), y = rnd.vector(d);
    RatVector lhs = orbit.chi_at(G0.product(x, y));
    RatVector rhs = orbit.chi_at(x) + G0.coAd(x) * orbit.chi_at(y);
    if (lhs == rhs) return true;
    why = "fails at X = " + vector_str(x) + ", Y = " + vector_str(y);
    return false;
  });
  {
    CheckResult c{"gamma_equivariance_symbolic", true, "all residual components vanish"};
    for (const auto& r : orbit.equivariance_residual())
      if (!r.is_zero()) {
        c.pass = false;
        c.details = "nonzero residual " + r.str();
        break;
      }
    out.push_back(c);
  }
  return out;
}

inline std::vector<Criterion> run_acceptance(const SuiteOptions& opt,
                                             const std::function<void(const Criterion&)>& on_done = {}) {
  using clock = std::chrono::steady_clock;
  std::vector<Criterion> out;
  auto finish = [&](Criterion c) {
    if (on_done) on_done(c);
    out.push_back(std::move(c));
  };
  auto guarded = [&](int id, const std::string& title, const std::function<void(Criterion&)>& body) {
    Criterion c{id, title};
    auto t0 = clock::now();
    try {
      body(c);
    } catch (const std::exception& e) {
      c.status = Status::Fail;
      c.details.push_back(std::string("error: ") + e.what());
    }
    c.seconds = detail::elapsed(t0);
    finish(std::move(c));
  };
  auto load = [&](const std::string& name) { return load_algebra_spec(opt.data_dir + "/" + name + ".json"); };
  auto golden = [&](Criterion& c, const std::string& name, double budget) {
    auto spec = load(name);
    auto t0 = clock::now();
    auto g = golden_invariant_ops(spec);
    double t = detail::elapsed(t0);
    c.details = g.lines;
    c.budget = budget;
    if (t >= budget) c.details.push_back("over the runtime budget of " + detail::fmt_seconds(budget));
    c.status = g.pass && t < budget ? Status::Pass : Status::Fail;
  };

  guarded(1, "ex57 first-order invariant operators", [&](Criterion& c) { golden(c, "ex57", 1.0); });
  guarded(2, "ex58 first-order invariant operators", [&](Criterion& c) { golden(c, "ex58", 2.0); });

  guarded(3, "semidirect model fundamental fields (m = 1, 2)", [&](Criterion& c) {
    bool ok = true;
    auto t0 = clock::now();
    for (unsigned m : {1u, 2u}) {
      auto rep = field_golden_check(build_semidirect(m));
      ok = ok && rep.pass;
      c.details.push_back("m = " + std::to_string(m) + ": " + (rep.pass ? "all fields match" : "mismatch"));
      for (const auto& mm : rep.mismatches) c.details.push_back("  " + mm);
    }
    double t = detail::elapsed(t0);
    c.budget = 2.0;
    if (t >= c.budget) c.details.push_back("over the runtime budget of 2 s");
    c.status = ok && t < 2.0 ? Status::Pass : Status::Fail;
  });

  guarded(4, "semidirect model invariant generators (m = 1 span, m = 2 dimension)", [&](Criterion& c) {
    auto t0 = clock::now();
    auto r1 = invariant_golden_check(build_semidirect(1));
    auto r2 = invariant_golden_check(build_semidirect(2));
    double t = detail::elapsed(t0);
    for (const auto& l : r1.golden.lines) c.details.push_back("m = 1: " + l);
    c.details.push_back("m = 2: dimension " + std::to_string(r2.dimension) + ", expected 10");
    c.budget = 5.0;
    if (t >= c.budget) c.details.push_back("over the runtime budget of 5 s");
    c.status = r1.golden.pass && r2.dimension == 10 && r2.constants_only && t < 5.0 ? Status::Pass : Status::Fail;
  });

  guarded(5, "restriction to starred coordinates (m = 1)", [&](Criterion& c) {
    auto model = build_semidirect(1);
    auto res = starred_restriction(model);
    auto subvars = detail::make_vars(starred_vars(model));
    std::vector<DiffOp> want;
    for (const auto& s : starred_expected(1)) want.push_back(DiffOp::parse(s, subvars));
    bool eq = res.basis.size() == want.size() && span_equal(res.basis, OpBasis::canonical(subvars, want));
    for (const auto& [src, r] : res.items)
      c.details.push_back(src + " -> " + to_string(r.kind) + (r.kind == Restriction::Restricted ? ": " + r.op.str() : ""));
    c.status = eq ? Status::Pass : Status::Fail;
  });

  guarded(6, "commutant equals pushforward on bundled algebras", [&](Criterion& c) {
    bool ok = true;
    for (const auto& name : bundled_algebras()) {
      auto spec = load(name);
      OrbitData orbit(spec.algebra, *spec.xi0, spec.orbit_options());
      auto com = commutant_first_order(orbit);
      auto push = invariant_ops_via_pushforward(orbit);
      bool eq = span_equal(com.first_order, push.basis);
      ok = ok && eq;
      c.details.push_back(name + ": " + (eq ? "equal" : "different"));
    }
    c.status = ok ? Status::Pass : Status::Fail;
  });

  guarded(7, "structural identities on random rational samples", [&](Criterion& c) {
    bool ok = true;
    for (const auto& name : bundled_algebras()) {
      auto spec = load(name);
      for (const auto& r : structural_identities(spec, opt.seed, opt.samples)) {
        ok = ok && r.pass;
        if (!r.pass) c.details.push_back(name + " " + r.name + ": " + r.details);
      }
    }
    c.details.push_back("seed " + std::to_string(opt.seed) + ", " + std::to_string(opt.samples) + " samples per identity and algebra");
    c.status = ok ? Status::Pass : Status::Fail;
  });

  guarded(8, "dimension law for first-order invariants", [&](Criterion& c) {
    bool ok = true;
    for (const auto& name : bundled_algebras()) {
      auto spec = load(name);
      OrbitData orbit(spec.algebra, *spec.xi0, spec.orbit_options());
      auto com = commutant_first_order(orbit);
      bool good = com.first_order.size() == orbit.dim() && com.zeroth_order_constants_only;
      ok = ok && good;
      c.details.push_back(name + ": dimension " + std::to_string(com.first_order.size()) + " of " +
                          std::to_string(orbit.dim()) + (com.zeroth_order_constants_only ? ", constants only" : ", extra zeroth order"));
    }
    c.status = ok ? Status::Pass : Status::Fail;
  });

  guarded(9, "abelian predual gives constant coefficients", [&](Criterion& c) {
    bool ok = true;
    for (const auto& name : {std::string("heisenberg_m1"), std::string("abelian")}) {
      auto spec = load(name);
      OrbitData orbit(spec.algebra, *spec.xi0, spec.orbit_options());
      auto com = commutant_first_order(orbit);
      bool constant = true;
      for (const auto& op : com.first_order.ops)
        for (const auto& [alpha, coef] : op.terms()) constant = constant && coef.is_constant();
      std::vector<DiffOp> partials;
      for (std::size_t k = 0; k < orbit.dim(); ++k) partials.push_back(DiffOp::partial(orbit.eta_vars(), k));
      bool all = span_equal(com.first_order, OpBasis::canonical(orbit.eta_vars(), partials));
      ok = ok && constant && all && com.zeroth_order_constants_only;
      c.details.push_back(name + ": " + (constant && all ? "span of the coordinate partials" : "non-constant coefficients"));
    }
    c.status = ok ? Status::Pass : Status::Fail;
  });

  if (!opt.numeric) {
    for (int id : {10, 11}) {
      Criterion c{id, id == 10 ? "numeric Weyl calculus suite" : "norm versus seminorm study", Status::Skip};
      c.details.push_back("numeric checks disabled");
      finish(std::move(c));
    }
    return out;
  }

  static const std::set<std::string> disclosure{"max_norm_to_seminorm_ratio", "oscillator_unit_sup",
                                                "oscillator_norm_and_derivative_growth", "oscillator_norm_over_sup"};
  std::vector<weyl::NumericCheck> numeric;
  std::vector<weyl::SeminormRow> table;
  double numeric_seconds = 0;
  std::string numeric_error;
  {
    auto t0 = clock::now();
    try {
      weyl::Grid g(opt.grid_n, opt.extent);
      for (const auto& name : weyl::numeric_suite_names()) {
        auto part = name == "seminorms" ? weyl::seminorm_checks(g, &table) : weyl::run_numeric_suite(name, g, opt.seed);
        numeric.insert(numeric.end(), part.begin(), part.end());
      }
    } catch (const std::exception& e) {
      numeric_error = e.what();
    }
    numeric_seconds = detail::elapsed(t0);
  }
  auto numeric_criterion = [&](int id, const std::string& title, bool want_disclosure) {
    Criterion c{id, title};
    bool ok = numeric_error.empty();
    if (!ok) c.details.push_back("error: " + numeric_error);
    for (const auto& k : numeric) {
      if ((disclosure.count(k.test) > 0) != want_disclosure) continue;
      ok = ok && k.pass;
      std::ostringstream line;
      line << k.suite << "/" << k.test << " = " << k.value << (k.at_least ? " >= " : " <= ") << k.tolerance
           << (k.pass ? "" : "  FAILED");
      c.details.push_back(line.str());
    }
    if (id == 10) {
      c.budget = 60.0;
      if (numeric_seconds >= c.budget) c.details.push_back("over the runtime budget of 60 s");
      ok = ok && numeric_seconds < 60.0;
    } else {
      for (const auto& r : table) {
        std::ostringstream line;
        line << r.family << "(" << r.parameter << "): sup " << r.sup << ", norm " << r.op_norm << ", seminorm " << r.seminorm[3]
             << ", ratio " << r.ratio;
        c.details.push_back(line.str());
      }
    }
    c.status = ok ? Status::Pass : Status::Fail;
    c.seconds = id == 10 ? numeric_seconds : 0;
    finish(std::move(c));
  };
  std::ostringstream title;
  title << "numeric Weyl calculus suite (N = " << opt.grid_n << ", extent " << opt.extent << ")";
  numeric_criterion(10, title.str(), false);
  numeric_criterion(11, "norm versus seminorm study", true);
  return out;
}

}  // namespace flatorbit

#endif
