#ifndef FLATORBIT_HEISENBERG_HPP
#define FLATORBIT_HEISENBERG_HPP

#include <algorithm>
#include <array>
#include <map>
#include <string>
#include <vector>

#include "flatorbit/diff_op.hpp"
#include "flatorbit/invariant_ops.hpp"
#include "flatorbit/lie_algebra.hpp"
#include "flatorbit/orbit.hpp"

namespace flatorbit {

/// Heisenberg algebra h_{2m+1} on (Z, Y_1..Y_m, X_1..X_m) with [Y_j, X_j] = Z.
inline LieAlgebra build_heisenberg(unsigned m) {
  if (m < 1) throw ValidationError("Heisenberg algebra needs m >= 1");
  const std::size_t n = 2 * m + 1;
  std::vector<std::string> labels{"Z"};
  for (unsigned k = 1; k <= m; ++k) labels.push_back("Y" + std::to_string(k));
  for (unsigned k = 1; k <= m; ++k) labels.push_back("X" + std::to_string(k));
  std::vector<BracketEntry> es;
  for (unsigned k = 1; k <= m; ++k) es.push_back({m + k, k, -unit_vector(n, 0)});  // [X_k, Y_k] = -Z
  return LieAlgebra(labels, es);
}

/// g = (R1 + h^*) x| h with the action d lambda(V)(a1 + xi) =
/// -<xi, V> 1 - (1/2) xi o ad V, together with the orbit data used for it.
struct SemidirectModel {
  unsigned m = 0;
  LieAlgebra g;
  RatVector xi0;
  std::vector<std::string> block_order;  // block names after the unit, as chosen
  VarList eta_names;                     // chart coordinate for each predual basis vector
  VarList x_names;

  std::size_t index(const std::string& label) const {
    const auto& l = g.labels();
    auto it = std::find(l.begin(), l.end(), label);
    if (it == l.end()) throw Error("no basis vector " + label);
    return static_cast<std::size_t>(it - l.begin());
  }
  OrbitOptions orbit_options() const { return {x_names, eta_names}; }
};

namespace detail {

// Canonical coordinates: 0 = unit, then h^* dual to (Z, Y_k, X_k), then h.
struct SemidirectCanon {
  unsigned m;
  std::size_t hdim() const { return 2 * m + 1; }
  std::size_t dim() const { return 2 * hdim() + 1; }
  std::size_t star(std::size_t h) const { return 1 + h; }
  std::size_t plain(std::size_t h) const { return 1 + hdim() + h; }

  RatVector bracket(const LieAlgebra& h, std::size_t a, std::size_t b) const {
    RatVector out(dim());
    auto is_plain = [&](std::size_t i) { return i >= 1 + hdim(); };
    auto is_star = [&](std::size_t i) { return i >= 1 && i < 1 + hdim(); };
    // d lambda(V) applied to the functional e_s^*
    auto act = [&](std::size_t v, std::size_t s, Rational sign) {
      if (v == s) out[0] -= sign;
      // (e_s^* o ad V)(W) = s-component of [V, W]
      for (std::size_t w = 0; w < hdim(); ++w) {
        Rational c = h.basis_bracket(v, w)[s];
        if (!c.is_zero()) out[star(w)] -= sign * c / Rational(2);
      }
    };
    if (is_plain(a) && is_plain(b)) {
      const RatVector& br = h.basis_bracket(a - 1 - hdim(), b - 1 - hdim());
      for (std::size_t k = 0; k < hdim(); ++k) out[plain(k)] = br[k];
    } else if (is_plain(a) && is_star(b)) {
      act(a - 1 - hdim(), b - 1, Rational(1));
    } else if (is_star(a) && is_plain(b)) {
      act(b - 1 - hdim(), a - 1, Rational(-1));
    }
    return out;
  }

  std::string label(std::size_t i) const {
    if (i == 0) return "1";
    auto hname = [&](std::size_t h) {
      if (h == 0) return std::string("Z");
      if (h <= m) return "Y" + std::to_string(h);
      return "X" + std::to_string(h - m);
    };
    if (i < 1 + hdim()) {
      std::string s = hname(i - 1);
      return s.substr(0, 1) + "*" + s.substr(1);
    }
    return hname(i - 1 - hdim());
  }
  std::string coord(std::size_t i) const {
    auto cname = [&](std::size_t h, bool starred) {
      std::string s = starred ? "*" : "";
      if (h == 0) return "ζ" + s;
      if (h <= m) return "η" + s + std::to_string(h);
      return "ξ" + s + std::to_string(h - m);
    };
    if (i < 1 + hdim()) return cname(i - 1, true);
    return cname(i - 1 - hdim(), false);
  }
};

}  // namespace detail

/// Builds the semidirect model, choosing the first block order (after the
/// unit) under which the basis is Jordan-Hoelder.
inline SemidirectModel build_semidirect(unsigned m) {
  if (m < 1) throw ValidationError("semidirect model needs m >= 1");
  LieAlgebra h = build_heisenberg(m);
  detail::SemidirectCanon canon{m};
  const std::size_t n = canon.dim();

  // blocks of canonical indices
  std::vector<std::pair<std::string, std::vector<std::size_t>>> blocks;
  auto range = [](std::size_t from, std::size_t count) {
    std::vector<std::size_t> r;
    for (std::size_t i = 0; i < count; ++i) r.push_back(from + i);
    return r;
  };
  blocks.push_back({"Z*", {canon.star(0)}});
  blocks.push_back({"Y*", range(canon.star(1), m)});
  blocks.push_back({"X*", range(canon.star(1 + m), m)});
  blocks.push_back({"Z", {canon.plain(0)}});
  blocks.push_back({"Y", range(canon.plain(1), m)});
  blocks.push_back({"X", range(canon.plain(1 + m), m)});

  std::array<std::size_t, 6> perm{0, 1, 2, 3, 4, 5};
  do {
    std::vector<std::size_t> order{0};
    for (auto b : perm) order.insert(order.end(), blocks[b].second.begin(), blocks[b].second.end());
    std::vector<std::size_t> pos(n);
    for (std::size_t i = 0; i < n; ++i) pos[order[i]] = i;
    std::vector<BracketEntry> es;
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i)
      for (std::size_t j = 0; j < i && ok; ++j) {
        RatVector c = canon.bracket(h, order[i], order[j]);
        if (is_zero(c)) continue;
        RatVector v(n);
        for (std::size_t k = 0; k < n; ++k) {
          v[pos[k]] = c[k];
          if (!c[k].is_zero() && pos[k] >= j) ok = false;
        }
        es.push_back({i, j, v});
      }
    if (!ok) continue;
    std::vector<std::string> labels;
    SemidirectModel model;
    for (auto c : order) labels.push_back(canon.label(c));
    model.m = m;
    model.g = LieAlgebra(labels, es);
    if (!model.g.validate().ok()) continue;
    for (auto b : perm) model.block_order.push_back(blocks[b].first);
    for (std::size_t i = 1; i < n; ++i) {
      model.eta_names.push_back(canon.coord(order[i]));
      model.x_names.push_back("x" + std::to_string(i));
    }
    // the orbit <xi, 1> = -1 carries the sign conventions of the closed forms
    model.xi0 = RatVector(n);
    model.xi0[0] = Rational(-1);
    return model;
  } while (std::next_permutation(perm.begin(), perm.end()));
  throw ValidationError("no block order yields a Jordan-Hoelder basis");
}

/// omega(V^*, V) = 1 for V in (Z, Y_k, X_k), on the predual basis of the model.
inline RatMatrix independent_omega(const SemidirectModel& model) {
  const std::size_t d = model.g.dim() - 1;
  RatMatrix w(d, d);
  for (std::size_t i = 0; i < d; ++i) {
    const std::string& l = model.g.labels()[i + 1];
    auto star = l.find('*');
    if (star == std::string::npos) continue;
    std::string plain = l.substr(0, star) + l.substr(star + 1);
    std::size_t j = model.index(plain) - 1;
    w(i, j) = Rational(1);
    w(j, i) = Rational(-1);
  }
  return w;
}

struct GoldenReport {
  bool pass = true;
  std::vector<std::string> lines;      // one per compared item
  std::vector<std::string> mismatches;
};

/// Closed forms of the fundamental vector fields, keyed by basis label.
inline std::map<std::string, std::string> field_closed_forms(unsigned m) {
  std::map<std::string, std::string> f;
  std::string sum_a, sum_b;
  for (unsigned k = 1; k <= m; ++k) {
    std::string s = std::to_string(k);
    f["X*" + s] = "∂ξ" + s;
    f["Y*" + s] = "∂η" + s;
    f["X" + s] = "−∂ξ*" + s + " − (η*" + s + "/2·∂ζ* − ζ·∂η" + s + ")";
    f["Y" + s] = "−∂η*" + s + " − (−ξ*" + s + "/2·∂ζ* + ζ·∂ξ" + s + ")";
    sum_a += (k > 1 ? " + " : "") + std::string("ξ*") + s + "·∂η" + s;
    sum_b += (k > 1 ? " + " : "") + std::string("η*") + s + "·∂ξ" + s;
  }
  f["Z*"] = "∂ζ − 1/2·(" + sum_a + " − (" + sum_b + "))";
  f["Z"] = "−∂ζ*";
  return f;
}

inline GoldenReport field_golden_check(const SemidirectModel& model) {
  OrbitData orbit(model.g, model.xi0, model.orbit_options());
  GoldenReport rep;
  auto forms = field_closed_forms(model.m);
  for (std::size_t i = 1; i < model.g.dim(); ++i) {
    const std::string& label = model.g.labels()[i];
    DiffOp got = orbit.gamma_field(i - 1);
    DiffOp want = DiffOp::parse(forms.at(label), orbit.eta_vars());
    bool eq = got == want;
    rep.lines.push_back("gamma(" + label + ") = " + got.str() + (eq ? "" : "   expected " + want.str()));
    if (!eq) {
      rep.pass = false;
      rep.mismatches.push_back(label + ": got " + got.str() + ", expected " + want.str());
    }
  }
  return rep;
}

/// The 4m+2 generators listed for the invariant algebra.
inline std::vector<std::string> invariant_generators(unsigned m) {
  std::vector<std::string> g{"∂ζ*"};
  std::string second = "∂ζ";
  for (unsigned k = 1; k <= m; ++k) second += " + η*" + std::to_string(k) + "·∂ξ" + std::to_string(k);
  for (unsigned k = 1; k <= m; ++k) second += " − ξ*" + std::to_string(k) + "·∂η" + std::to_string(k);
  g.push_back(second);
  for (unsigned k = 1; k <= m; ++k) {
    std::string s = std::to_string(k);
    g.push_back("∂ξ" + s);
    g.push_back("∂η" + s);
    g.push_back("∂ξ*" + s + " − 1/2·(ζ·∂η" + s + " + η*" + s + "·∂ζ*)");
    g.push_back("∂η*" + s + " + 1/2·(ζ·∂ξ" + s + " + ξ*" + s + "·∂ζ*)");
  }
  return g;
}

struct InvariantGoldenReport {
  GoldenReport golden;
  std::size_t dimension = 0;
  bool constants_only = false;
  unsigned degree_bound = 0;
};

inline InvariantGoldenReport invariant_golden_check(const SemidirectModel& model) {
  OrbitData orbit(model.g, model.xi0, model.orbit_options());
  auto res = commutant_first_order(orbit);
  InvariantGoldenReport rep;
  rep.dimension = res.first_order.size();
  rep.constants_only = res.zeroth_order_constants_only;
  rep.degree_bound = res.degree_bound;
  std::vector<DiffOp> listed;
  for (const auto& s : invariant_generators(model.m)) listed.push_back(DiffOp::parse(s, orbit.eta_vars()));
  bool eq = span_equal(res.first_order, OpBasis::canonical(orbit.eta_vars(), listed));
  rep.golden.pass = eq && rep.constants_only && rep.dimension == 4 * model.m + 2;
  rep.golden.lines.push_back("dimension " + std::to_string(rep.dimension) + ", expected " + std::to_string(4 * model.m + 2));
  rep.golden.lines.push_back(std::string("span equals listed generators: ") + (eq ? "yes" : "no"));
  rep.golden.lines.push_back(std::string("zeroth order part is the constants: ") + (rep.constants_only ? "yes" : "no"));
  if (!eq) rep.golden.mismatches.push_back("commutant span differs from the listed generators");
  if (!rep.constants_only) rep.golden.mismatches.push_back("zeroth-order invariants are not just constants");
  if (rep.dimension != 4 * model.m + 2) rep.golden.mismatches.push_back("wrong dimension");
  return rep;
}

/// Starred chart coordinates (the h^* part).
inline VarList starred_vars(const SemidirectModel& model) {
  VarList out;
  for (const auto& v : model.eta_names)
    if (v.find('*') != std::string::npos) out.push_back(v);
  return out;
}

struct StarredRestriction {
  OpBasis basis;                                              // over starred variables
  std::vector<std::pair<std::string, RestrictResult>> items;  // per listed generator
};

/// Restricts the listed invariant generators to functions of the starred
/// coordinates; those that vanish or leave the subspace are excluded.
inline StarredRestriction starred_restriction(const SemidirectModel& model) {
  auto all = detail::make_vars(model.eta_names);
  VarList sub = starred_vars(model);
  auto subvars = detail::make_vars(sub);
  StarredRestriction out;
  std::vector<DiffOp> kept;
  for (const auto& s : invariant_generators(model.m)) {
    auto r = restrict_to_subvariables(DiffOp::parse(s, all), sub);
    if (r.kind == Restriction::Restricted) kept.push_back(r.op.with_vars(subvars));
    out.items.emplace_back(s, std::move(r));
  }
  out.basis = OpBasis::canonical(subvars, kept);
  return out;
}

inline std::vector<std::string> starred_expected(unsigned m) {
  std::vector<std::string> g{"∂ζ*"};
  for (unsigned k = 1; k <= m; ++k) {
    std::string s = std::to_string(k);
    g.push_back("∂ξ*" + s + " − 1/2·η*" + s + "·∂ζ*");
    g.push_back("∂η*" + s + " + 1/2·ξ*" + s + "·∂ζ*");
  }
  return g;
}

}  // namespace flatorbit

#endif
