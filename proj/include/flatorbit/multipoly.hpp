#ifndef FLATORBIT_MULTIPOLY_HPP
#define FLATORBIT_MULTIPOLY_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <numeric>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "flatorbit/errors.hpp"
#include "flatorbit/rational.hpp"

namespace flatorbit {

using Exponents = std::vector<std::uint16_t>;
using VarList = std::vector<std::string>;

inline unsigned total_degree(const Exponents& e) {
  return std::accumulate(e.begin(), e.end(), 0u);
}

/// Graded lexicographic order: lower total degree first; within a degree the
/// monomial with the larger exponent on the earliest variable comes first,
/// so x1 < x2 and x1^2 < x1*x2 < x2^2.
struct GradedLexLess {
  bool operator()(const Exponents& a, const Exponents& b) const {
    unsigned da = total_degree(a), db = total_degree(b);
    if (da != db) return da < db;
    return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
  }
};

namespace detail {

inline std::shared_ptr<const VarList> make_vars(VarList vars) {
  for (std::size_t i = 0; i < vars.size(); ++i)
    for (std::size_t j = i + 1; j < vars.size(); ++j)
      if (vars[i] == vars[j]) throw Error("duplicate variable '" + vars[i] + "'");
  return std::make_shared<const VarList>(std::move(vars));
}

inline const std::shared_ptr<const VarList>& empty_vars() {
  static const auto empty = std::make_shared<const VarList>();
  return empty;
}

}  // namespace detail

/// Multivariate polynomial with rational coefficients over an ordered list of
/// named variables. Zero coefficients are never stored.
class MultiPoly {
 public:
  using Terms = std::map<Exponents, Rational, GradedLexLess>;

  MultiPoly() : vars_(detail::empty_vars()) {}
  explicit MultiPoly(VarList vars) : vars_(detail::make_vars(std::move(vars))) {}
  explicit MultiPoly(std::shared_ptr<const VarList> vars) : vars_(std::move(vars)) {}

  static MultiPoly constant(const Rational& c, VarList vars = {}) {
    MultiPoly p(std::move(vars));
    p.add_term(Exponents(p.nvars(), 0), c);
    return p;
  }
  static MultiPoly constant(const Rational& c, std::shared_ptr<const VarList> vars) {
    MultiPoly p(std::move(vars));
    p.add_term(Exponents(p.nvars(), 0), c);
    return p;
  }
  /// The i-th variable of `vars` as a polynomial.
  static MultiPoly variable(std::shared_ptr<const VarList> vars, std::size_t i) {
    MultiPoly p(std::move(vars));
    Exponents e(p.nvars(), 0);
    e.at(i) = 1;
    p.add_term(std::move(e), Rational(1));
    return p;
  }
  static MultiPoly variable(const VarList& vars, std::size_t i) {
    return variable(detail::make_vars(vars), i);
  }
  static MultiPoly variable(const std::string& name) { return variable(VarList{name}, 0); }

  const VarList& vars() const { return *vars_; }
  const std::shared_ptr<const VarList>& shared_vars() const { return vars_; }
  std::size_t nvars() const { return vars_->size(); }
  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  /// Total degree; -1 for the zero polynomial.
  int degree() const {
    if (terms_.empty()) return -1;
    return static_cast<int>(total_degree(terms_.rbegin()->first));
  }

  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && total_degree(terms_.begin()->first) == 0);
  }

  Rational coefficient(const Exponents& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Rational() : it->second;
  }
  Rational constant_term() const { return coefficient(Exponents(nvars(), 0)); }

  /// Adds c * x^e; drops the term if the coefficient cancels.
  void add_term(const Exponents& e, const Rational& c) {
    if (e.size() != nvars()) throw DimensionMismatch("exponent length does not match variable count");
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  std::ptrdiff_t index_of(std::string_view name) const {
    for (std::size_t i = 0; i < vars_->size(); ++i)
      if ((*vars_)[i] == name) return static_cast<std::ptrdiff_t>(i);
    return -1;
  }

  /// Variables that actually occur with positive exponent.
  std::vector<std::string> used_vars() const {
    std::vector<bool> used(nvars(), false);
    for (const auto& [e, c] : terms_)
      for (std::size_t i = 0; i < e.size(); ++i)
        if (e[i] > 0) used[i] = true;
    std::vector<std::string> out;
    for (std::size_t i = 0; i < used.size(); ++i)
      if (used[i]) out.push_back((*vars_)[i]);
    return out;
  }

  /// Re-expresses the polynomial over `target`, which must contain every
  /// variable that occurs in it.
  MultiPoly with_vars(const std::shared_ptr<const VarList>& target) const {
    if (same_vars(*target)) {
      MultiPoly out(target);
      out.terms_ = terms_;
      return out;
    }
    std::vector<std::ptrdiff_t> pos(nvars(), -1);
    for (std::size_t i = 0; i < nvars(); ++i) {
      auto it = std::find(target->begin(), target->end(), (*vars_)[i]);
      if (it != target->end()) pos[i] = it - target->begin();
    }
    MultiPoly out(target);
    for (const auto& [e, c] : terms_) {
      Exponents ne(target->size(), 0);
      for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        if (pos[i] < 0) throw Error("variable '" + (*vars_)[i] + "' missing from target variable list");
        ne[pos[i]] = e[i];
      }
      out.terms_.emplace(std::move(ne), c);
    }
    return out;
  }
  MultiPoly with_vars(const VarList& target) const { return with_vars(detail::make_vars(target)); }

  bool same_vars(const VarList& other) const { return *vars_ == other; }

  /// Variable list of p followed by the variables of q not already present.
  static std::shared_ptr<const VarList> merged_vars(const MultiPoly& p, const MultiPoly& q) {
    if (p.vars_ == q.vars_ || *p.vars_ == *q.vars_) return p.vars_;
    if (p.nvars() == 0) return q.vars_;
    if (q.nvars() == 0) return p.vars_;
    VarList merged = *p.vars_;
    for (const auto& v : *q.vars_)
      if (std::find(merged.begin(), merged.end(), v) == merged.end()) merged.push_back(v);
    return std::make_shared<const VarList>(std::move(merged));
  }

  MultiPoly operator-() const {
    MultiPoly out(vars_);
    for (const auto& [e, c] : terms_) out.terms_.emplace(e, -c);
    return out;
  }

  MultiPoly& operator+=(const MultiPoly& o) {
    if (!(vars_ == o.vars_ || *vars_ == *o.vars_)) {
      auto m = merged_vars(*this, o);
      *this = with_vars(m);
      return *this += o.with_vars(m);
    }
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  MultiPoly& operator-=(const MultiPoly& o) { return *this += -o; }
  MultiPoly& operator*=(const Rational& s) {
    if (s.is_zero()) {
      terms_.clear();
      return *this;
    }
    for (auto& [e, c] : terms_) c *= s;
    return *this;
  }

  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(MultiPoly a, const Rational& s) { return a *= s; }
  friend MultiPoly operator*(const Rational& s, MultiPoly a) { return a *= s; }

  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    if (!(a.vars_ == b.vars_ || *a.vars_ == *b.vars_)) {
      auto m = merged_vars(a, b);
      return a.with_vars(m) * b.with_vars(m);
    }
    MultiPoly out(a.vars_);
    Exponents e(a.nvars());
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) {
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = static_cast<std::uint16_t>(ea[i] + eb[i]);
        out.add_term(e, ca * cb);
      }
    return out;
  }

  /// Exact equality of term maps after aligning variable lists.
  friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
    if (a.vars_ == b.vars_ || *a.vars_ == *b.vars_) return a.terms_ == b.terms_;
    auto m = merged_vars(a, b);
    return a.with_vars(m).terms_ == b.with_vars(m).terms_;
  }

  /// Part of total degree <= max_degree.
  MultiPoly truncated(unsigned max_degree) const {
    MultiPoly out(vars_);
    for (const auto& [e, c] : terms_)
      if (total_degree(e) <= max_degree) out.terms_.emplace(e, c);
    return out;
  }
  /// Part of total degree exactly `deg`.
  MultiPoly homogeneous_part(unsigned deg) const {
    MultiPoly out(vars_);
    for (const auto& [e, c] : terms_)
      if (total_degree(e) == deg) out.terms_.emplace(e, c);
    return out;
  }

  /// Value at a point given in this polynomial's variable order.
  Rational evaluate(std::span<const Rational> point) const {
    if (point.size() != nvars()) throw DimensionMismatch("evaluate: point has wrong length");
    Rational sum;
    for (const auto& [e, c] : terms_) {
      Rational t = c;
      for (std::size_t i = 0; i < e.size(); ++i)
        for (unsigned k = 0; k < e[i]; ++k) t *= point[i];
      sum += t;
    }
    return sum;
  }

  /// Human-readable form, e.g. "η3 − η1·η2 + 1/3·η1^3". Terms in ascending
  /// graded-lex order.
  std::string str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
      Rational mag = c.sign() < 0 ? -c : c;
      if (first) {
        if (c.sign() < 0) os << "−";
      } else {
        os << (c.sign() < 0 ? " − " : " + ");
      }
      first = false;
      std::string mono = monomial_str(e);
      if (mono.empty()) {
        os << mag.str();
      } else if (mag.is_one()) {
        os << mono;
      } else if (mag.numerator() == 1) {
        os << mono << "/" << mag.denominator().get_str();
      } else {
        os << mag.str() << "·" << mono;
      }
    }
    return os.str();
  }

  std::string monomial_str(const Exponents& e) const {
    std::string out;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!out.empty()) out += "·";
      out += (*vars_)[i];
      if (e[i] > 1) out += "^" + std::to_string(e[i]);
    }
    return out;
  }

 private:
  std::shared_ptr<const VarList> vars_;
  Terms terms_;
};

/// Formal partial derivative with respect to the variable at `index`.
inline MultiPoly partial(const MultiPoly& p, std::size_t index) {
  MultiPoly out(p.shared_vars());
  if (index >= p.nvars()) return out;
  for (const auto& [e, c] : p.terms()) {
    if (e[index] == 0) continue;
    Exponents ne = e;
    ne[index] -= 1;
    out.add_term(ne, c * Rational(e[index]));
  }
  return out;
}

/// Formal partial derivative by variable name; zero if the variable is absent.
inline MultiPoly partial(const MultiPoly& p, std::string_view var) {
  auto idx = p.index_of(var);
  if (idx < 0) return MultiPoly(p.shared_vars());
  return partial(p, static_cast<std::size_t>(idx));
}

inline MultiPoly pow(const MultiPoly& p, unsigned k) {
  MultiPoly result = MultiPoly::constant(Rational(1), p.shared_vars());
  MultiPoly base = p;
  while (k) {
    if (k & 1u) result = result * base;
    k >>= 1u;
    if (k) base = base * base;
  }
  return result;
}

/// Polynomial map: `components[i]` gives codomain coordinate `codomain_vars[i]`
/// as a polynomial in `domain_vars`.
struct PolyMap {
  std::shared_ptr<const VarList> domain_vars = detail::empty_vars();
  VarList codomain_vars;
  std::vector<MultiPoly> components;

  PolyMap() = default;
  PolyMap(VarList domain, VarList codomain, std::vector<MultiPoly> comps)
      : domain_vars(detail::make_vars(std::move(domain))),
        codomain_vars(std::move(codomain)),
        components(std::move(comps)) {
    normalize();
  }
  PolyMap(std::shared_ptr<const VarList> domain, VarList codomain, std::vector<MultiPoly> comps)
      : domain_vars(std::move(domain)), codomain_vars(std::move(codomain)), components(std::move(comps)) {
    normalize();
  }

  static PolyMap identity(const VarList& vars) {
    auto shared = detail::make_vars(vars);
    std::vector<MultiPoly> comps;
    for (std::size_t i = 0; i < vars.size(); ++i) comps.push_back(MultiPoly::variable(shared, i));
    return PolyMap(shared, vars, std::move(comps));
  }

  std::size_t size() const { return components.size(); }
  const MultiPoly& operator[](std::size_t i) const { return components[i]; }

  /// Rational image of a point given in domain order.
  std::vector<Rational> evaluate(std::span<const Rational> point) const {
    std::vector<Rational> out;
    out.reserve(components.size());
    for (const auto& c : components) out.push_back(c.evaluate(point));
    return out;
  }

  friend bool operator==(const PolyMap& a, const PolyMap& b) {
    return a.codomain_vars == b.codomain_vars && a.components == b.components;
  }

 private:
  void normalize() {
    if (components.size() != codomain_vars.size())
      throw DimensionMismatch("PolyMap: component count does not match codomain");
    for (auto& c : components) c = c.with_vars(domain_vars);
  }
};

namespace detail {

/// Caches powers of substituted components during composition.
class PowerCache {
 public:
  explicit PowerCache(const MultiPoly& base) { powers_.push_back(MultiPoly::constant(Rational(1), base.shared_vars())); powers_.push_back(base); }
  const MultiPoly& get(unsigned k) {
    while (powers_.size() <= k) powers_.push_back(powers_.back() * powers_[1]);
    return powers_[k];
  }

 private:
  std::vector<MultiPoly> powers_;
};

}  // namespace detail

/// p(subst(.)): each variable of p named in subst.codomain_vars is replaced by
/// the matching component. Throws MissingSubstitution if a variable occurring
/// in p has no component.
inline MultiPoly compose(const MultiPoly& p, const PolyMap& subst) {
  std::vector<std::ptrdiff_t> slot(p.nvars(), -1);
  for (std::size_t i = 0; i < p.nvars(); ++i) {
    auto it = std::find(subst.codomain_vars.begin(), subst.codomain_vars.end(), p.vars()[i]);
    if (it != subst.codomain_vars.end()) slot[i] = it - subst.codomain_vars.begin();
  }
  for (const auto& [e, c] : p.terms())
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] > 0 && slot[i] < 0)
        throw MissingSubstitution("no substitution for variable '" + p.vars()[i] + "'");

  std::vector<std::unique_ptr<detail::PowerCache>> caches(p.nvars());
  MultiPoly out(subst.domain_vars);
  for (const auto& [e, c] : p.terms()) {
    MultiPoly term = MultiPoly::constant(c, subst.domain_vars);
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!caches[i]) caches[i] = std::make_unique<detail::PowerCache>(subst.components[slot[i]]);
      term = term * caches[i]->get(e[i]);
    }
    out += term;
  }
  return out;
}

/// Component-wise composition outer ∘ inner.
inline PolyMap compose(const PolyMap& outer, const PolyMap& inner) {
  std::vector<MultiPoly> comps;
  comps.reserve(outer.size());
  for (const auto& c : outer.components) comps.push_back(compose(c, inner));
  return PolyMap(inner.domain_vars, outer.codomain_vars, std::move(comps));
}

}  // namespace flatorbit

#endif
