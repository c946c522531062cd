#ifndef FLATORBIT_GROUP_OPS_HPP
#define FLATORBIT_GROUP_OPS_HPP

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "flatorbit/diff_op.hpp"
#include "flatorbit/lie_algebra.hpp"
#include "flatorbit/multipoly.hpp"
#include "flatorbit/rat_matrix.hpp"

namespace flatorbit {

using PolyVector = std::vector<MultiPoly>;
using PolyMatrix = std::vector<std::vector<MultiPoly>>;

inline PolyMatrix poly_matmul(const PolyMatrix& a, const PolyMatrix& b, const std::shared_ptr<const VarList>& vars) {
  const std::size_t n = a.size(), m = b.empty() ? 0 : b[0].size(), inner = b.size();
  PolyMatrix c(n, PolyVector(m, MultiPoly(vars)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < inner; ++k) {
      if (a[i][k].is_zero()) continue;
      for (std::size_t j = 0; j < m; ++j)
        if (!b[k][j].is_zero()) c[i][j] += a[i][k] * b[k][j];
    }
  return c;
}

/// Bracket of vectors with polynomial entries.
inline PolyVector symbolic_bracket(const LieAlgebra& L, const PolyVector& a, const PolyVector& b,
                                   const std::shared_ptr<const VarList>& vars) {
  const std::size_t n = L.dim();
  PolyVector out(n, MultiPoly(vars));
  for (const auto& e : L.entries()) {
    MultiPoly coeff = a[e.i] * b[e.j] - a[e.j] * b[e.i];
    if (coeff.is_zero()) continue;
    for (std::size_t k = 0; k < n; ++k)
      if (!e.value[k].is_zero()) out[k] += coeff * e.value[k];
  }
  return out;
}

/// Group structure on a nilpotent Lie algebra through exponential
/// coordinates. The product is the Dynkin form of the Baker-Campbell-Hausdorff
/// series,
///   log(e^X e^Y) = sum_k (-1)^(k-1)/k sum (r_i + s_i > 0)
///                  [X^r1 Y^s1 ... X^rk Y^sk] / (N * prod r_i! s_i!),
/// where N = sum (r_i + s_i) and [w1 w2 ... wN] = [w1, [w2, ... [w_{N-1}, wN]]].
/// Words longer than the nilpotency step vanish, so the sum is finite.
class GroupOps {
 public:
  explicit GroupOps(LieAlgebra L) : GroupOps(std::move(L), 0) {}

  /// `depth` overrides the truncation length (0 = nilpotency step); used to
  /// confirm that extra terms contribute nothing.
  GroupOps(LieAlgebra L, unsigned depth) : L_(std::move(L)) {
    L_.require_valid();
    step_ = L_.step();
    depth_ = depth ? depth : step_;
    build_product();
  }

  const LieAlgebra& algebra() const { return L_; }
  std::size_t dim() const { return L_.dim(); }
  unsigned step() const { return step_; }

  /// X ·_G Y as polynomials in (x0..x_{n-1}, y0..y_{n-1}).
  const PolyMap& symbolic_product() const { return product_; }

  RatVector product(const RatVector& x, const RatVector& y) const {
    if (x.size() != dim() || y.size() != dim()) throw DimensionMismatch("bch: vector length does not match dimension");
    RatVector point = x;
    point.insert(point.end(), y.begin(), y.end());
    return product_.evaluate(point);
  }

  static RatVector inverse(const RatVector& x) { return -x; }

  /// Ad_G(X) = exp(ad X).
  RatMatrix Ad(const RatVector& x) const {
    RatMatrix ad = L_.ad_matrix(x);
    RatMatrix term = RatMatrix::identity(dim()), sum = term;
    for (unsigned k = 1; k <= dim(); ++k) {
      term = (Rational(1) / Rational(static_cast<long>(k))) * (ad * term);
      if (term.is_zero()) break;
      sum = sum + term;
    }
    return sum;
  }

  /// Matrix of Ad*_G(X) on coordinate vectors xi_i = <xi, X_i>:
  /// (Ad*(X) xi)_j = <xi, Ad(-X) X_j>, i.e. Ad(-X)^T.
  RatMatrix coAd(const RatVector& x) const { return Ad(-x).transpose(); }

  /// exp(ad X) with X = sum vars_i X_i symbolic.
  PolyMatrix Ad_symbolic(const std::shared_ptr<const VarList>& vars) const {
    PolyMatrix ad = L_.symbolic_ad(vars);
    return exp_nilpotent(ad, vars);
  }

  static PolyMatrix exp_nilpotent(const PolyMatrix& m, const std::shared_ptr<const VarList>& vars) {
    const std::size_t n = m.size();
    PolyMatrix sum(n, PolyVector(n, MultiPoly(vars)));
    for (std::size_t i = 0; i < n; ++i) sum[i][i] = MultiPoly::constant(Rational(1), vars);
    PolyMatrix term = sum;
    for (unsigned k = 1; k <= n; ++k) {
      term = poly_matmul(m, term, vars);
      bool zero = true;
      for (auto& row : term)
        for (auto& e : row) {
          e *= Rational(1) / Rational(static_cast<long>(k));
          zero = zero && e.is_zero();
        }
      if (zero) break;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) sum[i][j] += term[i][j];
    }
    return sum;
  }

  /// d rho(X_j): (d/dt)|0 f(Y ·_G tX_j), as a vector field in `vars`.
  DiffOp right_translation_field(std::size_t j, const std::shared_ptr<const VarList>& vars) const {
    return translation_field(j, vars, false);
  }
  /// d lambda(X_j): (d/dt)|0 f((-tX_j) ·_G Y).
  DiffOp left_translation_field(std::size_t j, const std::shared_ptr<const VarList>& vars) const {
    return translation_field(j, vars, true);
  }

  const VarList& x_names() const { return x_names_; }
  const VarList& y_names() const { return y_names_; }

 private:
  DiffOp translation_field(std::size_t j, const std::shared_ptr<const VarList>& vars, bool left) const {
    const std::size_t n = dim();
    if (vars->size() != n) throw DimensionMismatch("translation field: one variable per basis vector required");
    if (j >= n) throw DimensionMismatch("translation field: basis index out of range");
    // substitution: the moving argument becomes the coordinates, the other
    // argument is set to zero after differentiation
    VarList codomain;
    std::vector<MultiPoly> comps;
    for (std::size_t i = 0; i < n; ++i) {
      codomain.push_back(x_names_[i]);
      comps.push_back(left ? MultiPoly(vars) : MultiPoly::variable(vars, i));
    }
    for (std::size_t i = 0; i < n; ++i) {
      codomain.push_back(y_names_[i]);
      comps.push_back(left ? MultiPoly::variable(vars, i) : MultiPoly(vars));
    }
    PolyMap subst(vars, codomain, comps);
    const std::string& wrt = left ? x_names_[j] : y_names_[j];
    std::vector<MultiPoly> coeffs;
    for (std::size_t k = 0; k < n; ++k) {
      MultiPoly d = compose(partial(product_[k], wrt), subst);
      coeffs.push_back(left ? -d : d);
    }
    return DiffOp::vector_field(vars, coeffs);
  }

  void build_product() {
    const std::size_t n = dim();
    VarList all;
    for (std::size_t i = 0; i < n; ++i) x_names_.push_back("x" + std::to_string(i));
    for (std::size_t i = 0; i < n; ++i) y_names_.push_back("y" + std::to_string(i));
    all = x_names_;
    all.insert(all.end(), y_names_.begin(), y_names_.end());
    auto vars = detail::make_vars(all);
    PolyVector X(n, MultiPoly(vars)), Y(n, MultiPoly(vars));
    for (std::size_t i = 0; i < n; ++i) {
      X[i] = MultiPoly::variable(vars, i);
      Y[i] = MultiPoly::variable(vars, n + i);
    }
    std::map<std::string, PolyVector> memo;
    std::function<const PolyVector&(const std::string&)> nested = [&](const std::string& w) -> const PolyVector& {
      auto it = memo.find(w);
      if (it != memo.end()) return it->second;
      PolyVector v = w.size() == 1 ? (w[0] == 'x' ? X : Y)
                                   : symbolic_bracket(L_, w[0] == 'x' ? X : Y, nested(w.substr(1)), vars);
      return memo.emplace(w, std::move(v)).first->second;
    };

    PolyVector sum(n, MultiPoly(vars));
    // enumerate k pairs (r_i, s_i) with total length <= depth
    struct Pair {
      unsigned r, s;
    };
    std::vector<Pair> seq;
    std::function<void(unsigned)> rec = [&](unsigned used) {
      if (!seq.empty()) {
        std::string word;
        Rational denom_fact(1);
        for (const auto& p : seq) {
          word.append(p.r, 'x');
          word.append(p.s, 'y');
          denom_fact *= factorial(p.r) * factorial(p.s);
        }
        const std::size_t N = word.size();
        bool vanishes = N >= 2 && word[N - 1] == word[N - 2];
        if (!vanishes) {
          const std::size_t k = seq.size();
          Rational c = Rational((k % 2 == 1) ? 1 : -1) / (Rational(static_cast<long>(k)) * Rational(static_cast<long>(N)) * denom_fact);
          const PolyVector& b = nested(word);
          for (std::size_t i = 0; i < n; ++i)
            if (!b[i].is_zero()) sum[i] += b[i] * c;
        }
      }
      for (unsigned r = 0; used + r <= depth_; ++r)
        for (unsigned s = (r == 0 ? 1 : 0); used + r + s <= depth_; ++s) {
          seq.push_back({r, s});
          rec(used + r + s);
          seq.pop_back();
        }
    };
    rec(0);
    VarList out_names;
    for (std::size_t i = 0; i < n; ++i) out_names.push_back("z" + std::to_string(i));
    product_ = PolyMap(vars, out_names, sum);
  }

  LieAlgebra L_;
  unsigned step_ = 0, depth_ = 0;
  VarList x_names_, y_names_;
  PolyMap product_;
};

}  // namespace flatorbit

#endif
