#ifndef FLATORBIT_INVARIANT_OPS_HPP
#define FLATORBIT_INVARIANT_OPS_HPP

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "flatorbit/diff_op.hpp"
#include "flatorbit/errors.hpp"
#include "flatorbit/orbit.hpp"
#include "flatorbit/rat_matrix.hpp"

namespace flatorbit {

namespace detail {

/// Column key of an operator coordinate: (derivative multi-index, monomial),
/// ordered derivative-first so zeroth-order columns lead.
struct OpKeyLess {
  bool operator()(const std::pair<Exponents, Exponents>& a, const std::pair<Exponents, Exponents>& b) const {
    GradedLexLess less;
    if (less(a.first, b.first)) return true;
    if (less(b.first, a.first)) return false;
    return less(a.second, b.second);
  }
};

/// All exponent vectors in `nvars` variables of total degree <= bound, in
/// graded-lex order.
inline std::vector<Exponents> monomials_up_to(std::size_t nvars, unsigned bound) {
  std::vector<Exponents> out;
  Exponents e(nvars, 0);
  std::function<void(std::size_t, unsigned)> rec = [&](std::size_t i, unsigned left) {
    if (i == nvars) {
      out.push_back(e);
      return;
    }
    for (unsigned k = 0; k <= left; ++k) {
      e[i] = static_cast<std::uint16_t>(k);
      rec(i + 1, left - k);
    }
    e[i] = 0;
  };
  rec(0, bound);
  std::sort(out.begin(), out.end(), GradedLexLess{});
  return out;
}

}  // namespace detail

/// Linearly independent operators in canonical reduced echelon form over the
/// (derivative, monomial) coordinates; equal spans give identical bases.
struct OpBasis {
  std::shared_ptr<const VarList> vars = detail::empty_vars();
  std::vector<DiffOp> ops;
  std::vector<std::pair<Exponents, Exponents>> columns;
  RatMatrix coefficient_matrix;

  std::size_t size() const { return ops.size(); }

  static OpBasis canonical(const std::shared_ptr<const VarList>& vars, const std::vector<DiffOp>& input) {
    std::map<std::pair<Exponents, Exponents>, std::size_t, detail::OpKeyLess> index;
    for (const auto& op : input) {
      if (op.vars() != *vars) throw DimensionMismatch("OpBasis: operator over different variables");
      for (const auto& [a, c] : op.terms())
        for (const auto& [m, r] : c.terms()) index.emplace(std::make_pair(a, m), 0);
    }
    OpBasis b;
    b.vars = vars;
    for (auto& [k, i] : index) {
      i = b.columns.size();
      b.columns.push_back(k);
    }
    RowReducer red(b.columns.size());
    for (const auto& op : input) {
      SparseRow row;
      for (const auto& [a, c] : op.terms())
        for (const auto& [m, r] : c.terms()) row.emplace_back(index.at({a, m}), r);
      std::sort(row.begin(), row.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
      red.add_row(row);
    }
    auto rows = red.reduced();
    b.coefficient_matrix = RatMatrix(rows.size(), b.columns.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      DiffOp op(vars);
      for (const auto& [c, v] : rows[i]) {
        b.coefficient_matrix(i, c) = v;
        MultiPoly p(vars);
        p.add_term(b.columns[c].second, v);
        op.add_term(b.columns[c].first, p);
      }
      b.ops.push_back(std::move(op));
    }
    return b;
  }

  bool contains(const DiffOp& op) const {
    std::vector<DiffOp> all = ops;
    all.push_back(op);
    return canonical(vars, all).size() == size();
  }
};

inline bool span_equal(const OpBasis& a, const OpBasis& b) {
  if (*a.vars != *b.vars) return false;
  return OpBasis::canonical(a.vars, a.ops).ops == OpBasis::canonical(b.vars, b.ops).ops;
}

struct CommutantResult {
  OpBasis full;         // includes the constants
  OpBasis first_order;  // rows whose leading term is a derivative
  unsigned degree_bound = 0;
  std::size_t unknowns = 0;
  bool zeroth_order_constants_only = false;
  std::vector<std::pair<unsigned, std::size_t>> history;  // (bound, dimension)
};

namespace detail {

inline CommutantResult solve_commutant(const OrbitData& orbit, const std::vector<DiffOp>& gammas, unsigned bound) {
  const auto& vars = orbit.eta_vars();
  const std::size_t d = orbit.dim();
  auto monos = monomials_up_to(d, bound);
  const std::size_t M = monos.size();
  const std::size_t unknowns = (d + 1) * M;

  using Key = std::tuple<std::size_t, Exponents, Exponents>;
  struct KeyLess {
    bool operator()(const Key& a, const Key& b) const {
      if (std::get<0>(a) != std::get<0>(b)) return std::get<0>(a) < std::get<0>(b);
      OpKeyLess l;
      return l({std::get<1>(a), std::get<2>(a)}, {std::get<1>(b), std::get<2>(b)});
    }
  };
  std::map<Key, SparseRow, KeyLess> rows;
  for (std::size_t j = 0; j <= d; ++j) {
    Exponents alpha(d, 0);
    if (j > 0) alpha[j - 1] = 1;
    for (std::size_t m = 0; m < M; ++m) {
      const std::size_t u = j * M + m;
      MultiPoly coeff(vars);
      coeff.add_term(monos[m], Rational(1));
      DiffOp E(vars);
      E.add_term(alpha, coeff);
      for (std::size_t k = 0; k < gammas.size(); ++k) {
        DiffOp c = E.commutator(gammas[k]);
        for (const auto& [a, p] : c.terms())
          for (const auto& [mono, r] : p.terms()) rows[Key{k, a, mono}].emplace_back(u, r);
      }
    }
  }
  RowReducer red(unknowns);
  for (const auto& [k, r] : rows) red.add_row(r);
  std::vector<DiffOp> sols;
  for (const auto& v : red.nullspace()) {
    DiffOp op(vars);
    for (std::size_t u = 0; u < unknowns; ++u) {
      if (v[u].is_zero()) continue;
      std::size_t j = u / M, m = u % M;
      Exponents alpha(d, 0);
      if (j > 0) alpha[j - 1] = 1;
      MultiPoly p(vars);
      p.add_term(monos[m], v[u]);
      op.add_term(alpha, p);
    }
    sols.push_back(std::move(op));
  }
  CommutantResult res;
  res.degree_bound = bound;
  res.unknowns = unknowns;
  res.full = OpBasis::canonical(vars, sols);
  std::vector<DiffOp> nonconst, zeroth;
  for (const auto& op : res.full.ops) {
    if (op.order() >= 1 && op.zeroth_order().is_zero())
      nonconst.push_back(op);
    if (!op.zeroth_order().is_zero()) zeroth.push_back(DiffOp::multiplication(op.zeroth_order(), vars));
  }
  res.first_order = OpBasis::canonical(vars, nonconst);
  OpBasis z = OpBasis::canonical(vars, zeroth);
  res.zeroth_order_constants_only =
      z.size() == 1 && z.ops[0] == DiffOp::identity(vars) && res.full.size() == res.first_order.size() + 1;
  res.history.emplace_back(bound, res.full.size());
  return res;
}

}  // namespace detail

/// First-order operators D = a_0 + sum_j a_j d_j, deg a <= bound, commuting
/// with every gamma_field. Without a bound the search starts at the
/// nilpotency step of the predual and grows until the solution space stops
/// changing and has dim g0 non-constant elements.
inline CommutantResult commutant_first_order(const OrbitData& orbit, std::optional<unsigned> bound = std::nullopt,
                                             std::optional<unsigned> cap = std::nullopt) {
  auto gammas = orbit.gamma_fields();
  if (bound) return detail::solve_commutant(orbit, gammas, *bound);
  const unsigned step = orbit.predual_group().step();
  const unsigned limit = cap ? *cap : 2 * step + 2;
  std::vector<std::pair<unsigned, std::size_t>> history;
  CommutantResult cur = detail::solve_commutant(orbit, gammas, step);
  history.push_back(cur.history.front());
  for (unsigned b = step; b <= limit; ++b) {
    CommutantResult next = detail::solve_commutant(orbit, gammas, b + 1);
    history.push_back(next.history.front());
    if (cur.first_order.size() == orbit.dim() && span_equal(cur.full, next.full)) {
      cur.history = history;
      return cur;
    }
    cur = std::move(next);
  }
  throw DegreeEscalationLimit("commutant did not stabilise up to degree " + std::to_string(limit + 1));
}

struct PushforwardResult {
  std::vector<DiffOp> fields;  // image of d rho(X_j), j = 1..d
  OpBasis basis;
  bool commute_with_gamma = false;
};

/// Pushes the right-translation fields of G0 through chi:
/// D_j = sum_k [(sum_i v_i d_i chi_k) o chi^{-1}] d_k.
inline PushforwardResult invariant_ops_via_pushforward(const OrbitData& orbit) {
  const std::size_t d = orbit.dim();
  const auto& xv = orbit.x_vars();
  const auto& ev = orbit.eta_vars();
  PushforwardResult res;
  for (std::size_t j = 0; j < d; ++j) {
    DiffOp rho = orbit.predual_group().right_translation_field(j, xv);
    std::vector<MultiPoly> coeffs;
    for (std::size_t k = 0; k < d; ++k) {
      MultiPoly w = rho.apply(orbit.chi()[k]);
      coeffs.push_back(compose(w, orbit.chi_inverse()));
    }
    res.fields.push_back(DiffOp::vector_field(ev, coeffs));
  }
  res.basis = OpBasis::canonical(ev, res.fields);
  auto gammas = orbit.gamma_fields();
  res.commute_with_gamma = true;
  for (const auto& f : res.fields)
    for (const auto& g : gammas)
      if (!f.commutator(g).is_zero()) res.commute_with_gamma = false;
  return res;
}

/// Ordered products D_1^p1 ... D_d^pd with p1 + ... + pd <= max_total_order,
/// in graded-lex order of the exponents.
inline std::vector<DiffOp> generate_algebra(const std::vector<DiffOp>& basis, unsigned max_total_order,
                                            std::size_t limit = 20000) {
  if (basis.empty()) return {};
  const std::size_t d = basis.size();
  Rational count = binomial(static_cast<unsigned>(d) + max_total_order, max_total_order);
  if (count > Rational(static_cast<long>(limit)))
    throw OrderLimit("PBW generation would produce " + count.str() + " operators (limit " + std::to_string(limit) + ")");
  const auto& vars = basis.front().shared_vars();
  std::vector<std::vector<DiffOp>> powers(d);
  for (std::size_t i = 0; i < d; ++i) {
    powers[i].push_back(DiffOp::identity(vars));
    for (unsigned k = 1; k <= max_total_order; ++k) powers[i].push_back(powers[i].back().compose(basis[i]));
  }
  std::vector<DiffOp> out;
  for (const auto& p : detail::monomials_up_to(d, max_total_order)) {
    DiffOp op = DiffOp::identity(vars);
    for (std::size_t i = 0; i < d; ++i)
      if (p[i] > 0) op = op.compose(powers[i][p[i]]);
    out.push_back(std::move(op));
  }
  return out;
}

enum class Restriction { Restricted, Vanishes, NotClosed };

inline const char* to_string(Restriction r) {
  switch (r) {
    case Restriction::Restricted:
      return "restricted";
    case Restriction::Vanishes:
      return "vanishes";
    case Restriction::NotClosed:
      return "not_closed";
  }
  return "?";
}

struct RestrictResult {
  Restriction kind = Restriction::NotClosed;
  DiffOp op;
  std::string reason;
};

/// Action of D on functions of `subset` only: derivatives in other
/// directions drop out, and what remains must have coefficients in `subset`.
inline RestrictResult restrict_to_subvariables(const DiffOp& D, const VarList& subset) {
  auto target = detail::make_vars(subset);
  std::vector<bool> inside(D.nvars(), false);
  for (std::size_t i = 0; i < D.nvars(); ++i)
    inside[i] = std::find(subset.begin(), subset.end(), D.vars()[i]) != subset.end();
  DiffOp kept(D.shared_vars());
  for (const auto& [a, c] : D.terms()) {
    bool outside = false;
    for (std::size_t i = 0; i < a.size(); ++i) outside = outside || (a[i] > 0 && !inside[i]);
    if (!outside) kept.add_term(a, c);
  }
  RestrictResult r;
  if (kept.is_zero()) {
    r.kind = Restriction::Vanishes;
    r.op = DiffOp(target);
    r.reason = "every derivative points outside the subset";
    return r;
  }
  for (const auto& [a, c] : kept.terms())
    for (const auto& v : c.used_vars())
      if (std::find(subset.begin(), subset.end(), v) == subset.end()) {
        r.kind = Restriction::NotClosed;
        r.op = kept;
        r.reason = "coefficient depends on " + v;
        return r;
      }
  r.kind = Restriction::Restricted;
  r.op = kept.with_vars(target);
  return r;
}

}  // namespace flatorbit

#endif
