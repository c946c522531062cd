#ifndef FLATORBIT_DIFF_OP_HPP
#define FLATORBIT_DIFF_OP_HPP

#include <cctype>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "flatorbit/errors.hpp"
#include "flatorbit/multipoly.hpp"
#include "flatorbit/rational.hpp"

namespace flatorbit {

/// Linear differential operator sum_alpha a_alpha(v) d^alpha with polynomial
/// coefficients. The multi-index alpha = 0 holds the zeroth-order part.
class DiffOp {
 public:
  using Terms = std::map<Exponents, MultiPoly, GradedLexLess>;

  DiffOp() : vars_(detail::empty_vars()) {}
  explicit DiffOp(std::shared_ptr<const VarList> vars) : vars_(std::move(vars)) {}
  explicit DiffOp(VarList vars) : vars_(detail::make_vars(std::move(vars))) {}

  /// Multiplication by the polynomial p.
  static DiffOp multiplication(const MultiPoly& p, const std::shared_ptr<const VarList>& vars) {
    DiffOp d(vars);
    d.add_term(Exponents(vars->size(), 0), p);
    return d;
  }
  static DiffOp identity(const std::shared_ptr<const VarList>& vars) {
    return multiplication(MultiPoly::constant(Rational(1), vars), vars);
  }
  /// d/dv_i.
  static DiffOp partial(const std::shared_ptr<const VarList>& vars, std::size_t i) {
    Exponents a(vars->size(), 0);
    a.at(i) = 1;
    DiffOp d(vars);
    d.add_term(a, MultiPoly::constant(Rational(1), vars));
    return d;
  }
  static DiffOp partial(const std::shared_ptr<const VarList>& vars, std::string_view name) {
    for (std::size_t i = 0; i < vars->size(); ++i)
      if ((*vars)[i] == name) return partial(vars, i);
    throw Error("unknown variable '" + std::string(name) + "'");
  }
  /// First-order operator sum_i coeffs[i] d_i.
  static DiffOp vector_field(const std::shared_ptr<const VarList>& vars, const std::vector<MultiPoly>& coeffs) {
    if (coeffs.size() != vars->size()) throw DimensionMismatch("vector_field: one coefficient per variable required");
    DiffOp d(vars);
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
      Exponents a(vars->size(), 0);
      a[i] = 1;
      d.add_term(a, coeffs[i]);
    }
    return d;
  }

  const VarList& vars() const { return *vars_; }
  const std::shared_ptr<const VarList>& shared_vars() const { return vars_; }
  std::size_t nvars() const { return vars_->size(); }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// Highest |alpha|; -1 for the zero operator.
  int order() const {
    if (terms_.empty()) return -1;
    return static_cast<int>(total_degree(terms_.rbegin()->first));
  }

  MultiPoly coefficient(const Exponents& alpha) const {
    auto it = terms_.find(alpha);
    return it == terms_.end() ? MultiPoly(vars_) : it->second;
  }
  /// Coefficient of d_i.
  MultiPoly coefficient(std::size_t i) const {
    Exponents a(nvars(), 0);
    a.at(i) = 1;
    return coefficient(a);
  }
  MultiPoly zeroth_order() const { return coefficient(Exponents(nvars(), 0)); }

  void add_term(const Exponents& alpha, const MultiPoly& coeff) {
    if (alpha.size() != nvars()) throw DimensionMismatch("DiffOp: multi-index length mismatch");
    if (coeff.is_zero()) return;
    MultiPoly c = coeff.with_vars(vars_);
    auto [it, inserted] = terms_.try_emplace(alpha, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  DiffOp operator-() const {
    DiffOp d(vars_);
    for (const auto& [a, c] : terms_) d.terms_.emplace(a, -c);
    return d;
  }
  DiffOp& operator+=(const DiffOp& o) {
    check_vars(o);
    for (const auto& [a, c] : o.terms_) add_term(a, c);
    return *this;
  }
  DiffOp& operator-=(const DiffOp& o) { return *this += -o; }
  DiffOp& operator*=(const Rational& s) {
    if (s.is_zero()) terms_.clear();
    for (auto& [a, c] : terms_) c *= s;
    return *this;
  }
  friend DiffOp operator+(DiffOp a, const DiffOp& b) { return a += b; }
  friend DiffOp operator-(DiffOp a, const DiffOp& b) { return a -= b; }
  friend DiffOp operator*(const Rational& s, DiffOp a) { return a *= s; }
  friend DiffOp operator*(DiffOp a, const Rational& s) { return a *= s; }

  /// p * D (left multiplication of every coefficient).
  friend DiffOp operator*(const MultiPoly& p, const DiffOp& d) {
    DiffOp out(d.vars_);
    MultiPoly q = p.with_vars(d.vars_);
    for (const auto& [a, c] : d.terms_) out.add_term(a, q * c);
    return out;
  }

  friend bool operator==(const DiffOp& a, const DiffOp& b) {
    return *a.vars_ == *b.vars_ && a.terms_ == b.terms_;
  }

  /// D applied to p.
  MultiPoly apply(const MultiPoly& p) const {
    MultiPoly q = p.with_vars(vars_);
    MultiPoly out(vars_);
    for (const auto& [a, c] : terms_) {
      MultiPoly dq = q;
      for (std::size_t i = 0; i < a.size() && !dq.is_zero(); ++i)
        for (unsigned k = 0; k < a[i]; ++k) dq = flatorbit::partial(dq, i);
      if (!dq.is_zero()) out += c * dq;
    }
    return out;
  }

  /// Composition this ∘ other via the Leibniz rule.
  DiffOp compose(const DiffOp& other) const {
    check_vars(other);
    DiffOp out(vars_);
    const std::size_t n = nvars();
    for (const auto& [alpha, a] : terms_) {
      // enumerate gamma <= alpha
      std::vector<Exponents> gammas{Exponents(n, 0)};
      for (std::size_t i = 0; i < n; ++i) {
        if (alpha[i] == 0) continue;
        std::vector<Exponents> next;
        for (const auto& g : gammas)
          for (unsigned k = 0; k <= alpha[i]; ++k) {
            Exponents h = g;
            h[i] = static_cast<std::uint16_t>(k);
            next.push_back(std::move(h));
          }
        gammas = std::move(next);
      }
      for (const auto& gamma : gammas) {
        Rational mult(1);
        for (std::size_t i = 0; i < n; ++i) mult *= binomial(alpha[i], gamma[i]);
        for (const auto& [beta, b] : other.terms_) {
          MultiPoly db = b;
          for (std::size_t i = 0; i < n && !db.is_zero(); ++i)
            for (unsigned k = 0; k < gamma[i]; ++k) db = flatorbit::partial(db, i);
          if (db.is_zero()) continue;
          Exponents res(n);
          for (std::size_t i = 0; i < n; ++i) res[i] = static_cast<std::uint16_t>(alpha[i] - gamma[i] + beta[i]);
          out.add_term(res, (a * db) * mult);
        }
      }
    }
    return out;
  }

  /// [this, other] = this∘other − other∘this. First-order operands use the
  /// direct vector-field formula.
  DiffOp commutator(const DiffOp& other) const {
    check_vars(other);
    if (order() <= 1 && other.order() <= 1) return first_order_commutator(*this, other);
    return compose(other) - other.compose(*this);
  }

  /// Operator re-expressed over a different (super- or sub-) variable list;
  /// every variable in use must exist in `target`.
  DiffOp with_vars(const std::shared_ptr<const VarList>& target) const {
    std::vector<std::ptrdiff_t> pos(nvars(), -1);
    for (std::size_t i = 0; i < nvars(); ++i)
      for (std::size_t j = 0; j < target->size(); ++j)
        if ((*vars_)[i] == (*target)[j]) pos[i] = static_cast<std::ptrdiff_t>(j);
    DiffOp out(target);
    for (const auto& [a, c] : terms_) {
      Exponents na(target->size(), 0);
      for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        if (pos[i] < 0) throw Error("derivative in '" + (*vars_)[i] + "' has no target variable");
        na[pos[i]] = a[i];
      }
      out.add_term(na, c.with_vars(target));
    }
    return out;
  }

  /// Printed form such as "∂1 + η1·∂3 − η2·∂4". When every variable is named
  /// "η<digits>" derivatives print as "∂<digits>", otherwise as "∂<name>".
  std::string str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    // derivative terms in multi-index order, then the zeroth-order part
    for (const auto& [alpha, coeff] : terms_) {
      if (total_degree(alpha) == 0) continue;
      emit(os, first, coeff, partial_str(alpha));
    }
    auto z = terms_.find(Exponents(nvars(), 0));
    if (z != terms_.end()) emit(os, first, z->second, "");
    return os.str();
  }

  std::string partial_str(const Exponents& alpha) const {
    std::string out;
    for (std::size_t i = 0; i < alpha.size(); ++i) {
      if (alpha[i] == 0) continue;
      out += "∂" + short_name(i);
      if (alpha[i] > 1) out += "^" + std::to_string(alpha[i]);
    }
    return out;
  }

  static DiffOp parse(std::string_view text, const std::shared_ptr<const VarList>& vars);

 private:
  static DiffOp first_order_commutator(const DiffOp& A, const DiffOp& B) {
    // [a0 + sum a_i d_i, b0 + sum b_j d_j]
    //   = sum_j (A(b_j) - B(a_j)) d_j + (A'(b0) - B'(a0)) where A' drops a0
    const auto& vars = A.vars_;
    const std::size_t n = A.nvars();
    DiffOp out(vars);
    auto field_apply = [&](const DiffOp& D, const MultiPoly& p) {
      MultiPoly r(vars);
      for (const auto& [a, c] : D.terms_) {
        unsigned ord = total_degree(a);
        if (ord == 0) continue;
        std::size_t i = 0;
        while (a[i] == 0) ++i;
        MultiPoly dp = flatorbit::partial(p, i);
        if (!dp.is_zero()) r += c * dp;
      }
      return r;
    };
    Exponents zero(n, 0);
    for (std::size_t j = 0; j <= n; ++j) {
      Exponents idx = zero;
      if (j < n) idx[j] = 1;
      MultiPoly bj = B.coefficient(idx), aj = A.coefficient(idx);
      MultiPoly c = field_apply(A, bj) - field_apply(B, aj);
      out.add_term(idx, c);
    }
    return out;
  }

  static void emit(std::ostringstream& os, bool& first, const MultiPoly& coeff, const std::string& part) {
    bool single = coeff.size() == 1;
    if (single) {
      const auto& [e, c] = *coeff.terms().begin();
      bool neg = c.sign() < 0;
      Rational mag = neg ? -c : c;
      if (first)
        os << (neg ? "−" : "");
      else
        os << (neg ? " − " : " + ");
      first = false;
      std::string mono = coeff.monomial_str(e);
      std::string body;
      if (mono.empty()) {
        body = (mag.is_one() && !part.empty()) ? "" : mag.str();
      } else if (mag.is_one()) {
        body = mono;
      } else if (mag.numerator() == 1) {
        body = mono + "/" + mag.denominator().get_str();
      } else {
        body = mag.str() + "·" + mono;
      }
      if (!body.empty() && !part.empty())
        os << body << "·" << part;
      else
        os << body << part;
      return;
    }
    if (!first) os << " + ";
    first = false;
    os << "(" << coeff.str() << ")";
    if (!part.empty()) os << "·" << part;
  }

  static bool numbered_eta(const std::string& v) {
    static const std::string eta = "η";
    if (v.size() <= eta.size() || v.compare(0, eta.size(), eta) != 0) return false;
    for (std::size_t k = eta.size(); k < v.size(); ++k)
      if (!std::isdigit(static_cast<unsigned char>(v[k]))) return false;
    return true;
  }

  // "∂3" for η3 when every variable is η-numbered, otherwise the full name
  std::string short_name(std::size_t i) const {
    const std::string& v = (*vars_)[i];
    for (const auto& w : *vars_)
      if (!numbered_eta(w)) return v;
    return v.substr(std::string("η").size());
  }

  void check_vars(const DiffOp& o) const {
    if (!(vars_ == o.vars_ || *vars_ == *o.vars_)) throw DimensionMismatch("DiffOp: operands over different variables");
  }

  std::shared_ptr<const VarList> vars_;
  Terms terms_;
};

namespace detail {

/// Recursive-descent reader for printed operators. Products compose, so
/// "η1·∂3" is multiplication by η1 followed by ∂3.
class OpParser {
 public:
  OpParser(std::string_view text, std::shared_ptr<const VarList> vars) : s_(text), vars_(std::move(vars)) {}

  DiffOp run() {
    DiffOp d = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected trailing input");
    return d;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw ParseError("operator '" + std::string(s_) + "' at offset " + std::to_string(pos_) + ": " + why);
  }
  void skip() {
    while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t')) ++pos_;
  }
  bool eat(std::string_view tok) {
    skip();
    if (s_.substr(pos_, tok.size()) == tok) {
      pos_ += tok.size();
      return true;
    }
    return false;
  }
  bool peek(std::string_view tok) {
    skip();
    return s_.substr(pos_, tok.size()) == tok;
  }
  int sign_token() {
    if (eat("+")) return 1;
    if (eat("-") || eat("−")) return -1;
    return 0;
  }
  unsigned integer() {
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer");
    return static_cast<unsigned>(std::stoul(std::string(s_.substr(start, pos_ - start))));
  }
  std::optional<std::size_t> var_at() {
    std::optional<std::size_t> best;
    std::size_t best_len = 0;
    for (std::size_t i = 0; i < vars_->size(); ++i) {
      const std::string& v = (*vars_)[i];
      if (v.size() > best_len && s_.substr(pos_, v.size()) == v) {
        best = i;
        best_len = v.size();
      }
    }
    if (best) pos_ += best_len;
    return best;
  }

  DiffOp expr() {
    DiffOp acc(vars_);
    int sg = sign_token();
    DiffOp t = term();
    acc += (sg < 0 ? -t : t);
    while (true) {
      sg = sign_token();
      if (sg == 0) break;
      t = term();
      acc += (sg < 0 ? -t : t);
    }
    return acc;
  }

  bool starts_factor() {
    skip();
    if (pos_ >= s_.size()) return false;
    char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '(') return true;
    if (peek("∂")) return true;
    std::size_t save = pos_;
    bool v = var_at().has_value();
    pos_ = save;
    return v;
  }

  DiffOp term() {
    DiffOp acc = factor();
    while (true) {
      if (eat("·") || eat("*")) {
        acc = acc.compose(factor());
      } else if (eat("/")) {
        acc *= Rational(1) / Rational(static_cast<long>(integer()));
      } else if (starts_factor()) {
        acc = acc.compose(factor());
      } else {
        break;
      }
    }
    return acc;
  }

  DiffOp factor() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    if (eat("(")) {
      DiffOp inner = expr();
      if (!eat(")")) fail("expected ')'");
      return power(inner);
    }
    if (eat("−") || eat("-")) return -factor();
    if (std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      Rational r(static_cast<long>(integer()));
      return DiffOp::multiplication(MultiPoly::constant(r, vars_), vars_);
    }
    if (eat("∂")) {
      eat("_");
      std::optional<std::size_t> v = var_at();
      if (!v && pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
        std::string name = "η" + std::to_string(integer());
        for (std::size_t i = 0; i < vars_->size(); ++i)
          if ((*vars_)[i] == name) v = i;
        if (!v) fail("no variable " + name);
      }
      if (!v) fail("expected variable after ∂");
      return power(DiffOp::partial(vars_, *v));
    }
    std::optional<std::size_t> v = var_at();
    if (!v) fail("unknown symbol");
    return power(DiffOp::multiplication(MultiPoly::variable(vars_, *v), vars_));
  }

  DiffOp power(DiffOp base) {
    if (!eat("^")) return base;
    unsigned k = integer();
    DiffOp out = DiffOp::identity(vars_);
    for (unsigned i = 0; i < k; ++i) out = out.compose(base);
    return out;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  std::shared_ptr<const VarList> vars_;
};

}  // namespace detail

inline DiffOp DiffOp::parse(std::string_view text, const std::shared_ptr<const VarList>& vars) {
  return detail::OpParser(text, vars).run();
}

}  // namespace flatorbit

#endif
