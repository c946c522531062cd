#ifndef FLATORBIT_LIE_ALGEBRA_HPP
#define FLATORBIT_LIE_ALGEBRA_HPP

#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "flatorbit/errors.hpp"
#include "flatorbit/multipoly.hpp"
#include "flatorbit/rat_matrix.hpp"
#include "flatorbit/rational.hpp"

namespace flatorbit {

/// One structure-constant record: [X_i, X_j] = value, with i > j.
struct BracketEntry {
  std::size_t i = 0, j = 0;
  RatVector value;
};

/// Linear subspace of the ambient coordinate space, stored as canonical
/// reduced row echelon basis rows.
struct Subspace {
  std::size_t ambient_dim = 0;
  std::vector<RatVector> basis;

  static Subspace span(std::size_t n, const std::vector<RatVector>& vectors) {
    RowReducer red(n);
    for (const auto& v : vectors) {
      if (v.size() != n) throw DimensionMismatch("Subspace: vector length mismatch");
      SparseRow r;
      for (std::size_t k = 0; k < n; ++k)
        if (!v[k].is_zero()) r.emplace_back(k, v[k]);
      red.add_row(r);
    }
    Subspace s{n, {}};
    for (const auto& row : red.reduced()) {
      RatVector v(n);
      for (const auto& [c, x] : row) v[c] = x;
      s.basis.push_back(std::move(v));
    }
    return s;
  }

  std::size_t dim() const { return basis.size(); }

  bool contains(const RatVector& v) const {
    std::vector<RatVector> all = basis;
    all.push_back(v);
    return span(ambient_dim, all).dim() == dim();
  }
  bool contains(const Subspace& other) const {
    std::vector<RatVector> all = basis;
    all.insert(all.end(), other.basis.begin(), other.basis.end());
    return span(ambient_dim, all).dim() == dim();
  }
  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_dim == b.ambient_dim && a.basis == b.basis;
  }
};

struct CheckResult {
  std::string name;
  bool pass = true;
  std::string details;
};

struct ValidationReport {
  std::vector<CheckResult> checks;
  std::optional<unsigned> step;  // empty if not nilpotent
  std::size_t center_dim = 0;

  bool ok() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
  std::string failures() const {
    std::string out;
    for (const auto& c : checks)
      if (!c.pass) out += (out.empty() ? "" : "; ") + c.name + ": " + c.details;
    return out;
  }
};

/// Finite-dimensional real Lie algebra given by structure constants in an
/// ordered basis. Only brackets [X_i, X_j] with i > j are stored.
class LieAlgebra {
 public:
  LieAlgebra() = default;

  /// Builds the table without validation; entries with i <= j or out-of-range
  /// indices are rejected since they cannot be encoded.
  LieAlgebra(std::vector<std::string> labels, const std::vector<BracketEntry>& entries)
      : labels_(std::move(labels)), table_(labels_.size() * labels_.size(), RatVector(labels_.size())) {
    const std::size_t n = labels_.size();
    if (n == 0) throw ValidationError("algebra dimension must be positive");
    for (const auto& e : entries) {
      if (e.i >= n || e.j >= n) throw DimensionMismatch("bracket index out of range");
      if (e.i <= e.j) throw ValidationError("bracket entries must have i > j (got i=" + std::to_string(e.i) + ", j=" + std::to_string(e.j) + ")");
      if (e.value.size() != n) throw DimensionMismatch("bracket value has wrong length");
      at(e.i, e.j) = at(e.i, e.j) + e.value;
      at(e.j, e.i) = -at(e.i, e.j);
    }
  }

  static std::vector<std::string> default_labels(std::size_t n, const std::string& stem = "X") {
    std::vector<std::string> l;
    for (std::size_t i = 0; i < n; ++i) l.push_back(stem + std::to_string(i));
    return l;
  }

  std::size_t dim() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }

  /// [X_i, X_j] in basis coordinates.
  const RatVector& basis_bracket(std::size_t i, std::size_t j) const { return table_[i * dim() + j]; }

  /// Stored (i > j) nonzero brackets in increasing (i, j) order.
  std::vector<BracketEntry> entries() const {
    std::vector<BracketEntry> out;
    for (std::size_t i = 0; i < dim(); ++i)
      for (std::size_t j = 0; j < i; ++j)
        if (!is_zero(basis_bracket(i, j))) out.push_back({i, j, basis_bracket(i, j)});
    return out;
  }

  RatVector bracket(const RatVector& x, const RatVector& y) const {
    const std::size_t n = dim();
    if (x.size() != n || y.size() != n) throw DimensionMismatch("bracket: vector length does not match dimension");
    RatVector out(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (x[i].is_zero()) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (y[j].is_zero() || i == j) continue;
        const RatVector& b = basis_bracket(i, j);
        Rational s = x[i] * y[j];
        for (std::size_t k = 0; k < n; ++k)
          if (!b[k].is_zero()) out[k] += s * b[k];
      }
    }
    return out;
  }

  /// Matrix of ad X: column j holds [X, X_j].
  RatMatrix ad_matrix(const RatVector& x) const {
    const std::size_t n = dim();
    if (x.size() != n) throw DimensionMismatch("ad_matrix: vector length does not match dimension");
    RatMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      if (x[i].is_zero()) continue;
      for (std::size_t j = 0; j < n; ++j) {
        const RatVector& b = basis_bracket(i, j);
        for (std::size_t k = 0; k < n; ++k)
          if (!b[k].is_zero()) m(k, j) += x[i] * b[k];
      }
    }
    return m;
  }

  /// ad X for X = sum_i x_i X_i with the x_i symbolic; entry (k, j) is the
  /// X_k-coefficient of [X, X_j].
  std::vector<std::vector<MultiPoly>> symbolic_ad(const std::shared_ptr<const VarList>& vars) const {
    const std::size_t n = dim();
    if (vars->size() != n) throw DimensionMismatch("symbolic_ad: need one variable per basis vector");
    std::vector<std::vector<MultiPoly>> m(n, std::vector<MultiPoly>(n, MultiPoly(vars)));
    for (std::size_t i = 0; i < n; ++i) {
      MultiPoly xi = MultiPoly::variable(vars, i);
      for (std::size_t j = 0; j < n; ++j) {
        const RatVector& b = basis_bracket(i, j);
        for (std::size_t k = 0; k < n; ++k)
          if (!b[k].is_zero()) m[k][j] += xi * b[k];
      }
    }
    return m;
  }

  /// Kernel of X -> ([X, X_j])_j.
  Subspace center() const {
    const std::size_t n = dim();
    RowReducer red(n);
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        SparseRow r;
        for (std::size_t i = 0; i < n; ++i)
          if (!basis_bracket(i, j)[k].is_zero()) r.emplace_back(i, basis_bracket(i, j)[k]);
        if (!r.empty()) red.add_row(r);
      }
    return Subspace::span(n, red.nullspace());
  }

  /// g = g^1 > g^2 = [g, g] > ... ; returns the nonzero terms. Throws
  /// NotNilpotent if the chain stalls at a nonzero subspace.
  std::vector<Subspace> lower_central_series() const {
    const std::size_t n = dim();
    std::vector<Subspace> series;
    std::vector<RatVector> all;
    for (std::size_t i = 0; i < n; ++i) all.push_back(unit_vector(n, i));
    Subspace cur = Subspace::span(n, all);
    while (cur.dim() > 0) {
      series.push_back(cur);
      std::vector<RatVector> gens;
      for (std::size_t i = 0; i < n; ++i)
        for (const auto& v : cur.basis) gens.push_back(bracket(unit_vector(n, i), v));
      Subspace next = Subspace::span(n, gens);
      if (next.dim() == cur.dim()) throw NotNilpotent("lower central series stabilizes at dimension " + std::to_string(cur.dim()));
      cur = std::move(next);
    }
    return series;
  }

  unsigned step() const { return static_cast<unsigned>(lower_central_series().size()); }

  ValidationReport validate() const {
    const std::size_t n = dim();
    ValidationReport rep;
    {
      CheckResult c{"antisymmetry", true, ""};
      for (std::size_t i = 0; i < n && c.pass; ++i) {
        if (!is_zero(basis_bracket(i, i))) c = {"antisymmetry", false, "[" + labels_[i] + ", " + labels_[i] + "] != 0"};
        for (std::size_t j = 0; j < i && c.pass; ++j)
          if (basis_bracket(i, j) != -basis_bracket(j, i))
            c = {"antisymmetry", false, "[" + labels_[i] + ", " + labels_[j] + "] != -[" + labels_[j] + ", " + labels_[i] + "]"};
      }
      rep.checks.push_back(c);
    }
    {
      CheckResult c{"jacobi", true, ""};
      for (std::size_t i = 0; i < n && c.pass; ++i)
        for (std::size_t j = i + 1; j < n && c.pass; ++j)
          for (std::size_t k = j + 1; k < n && c.pass; ++k) {
            RatVector a = unit_vector(n, i), b = unit_vector(n, j), d = unit_vector(n, k);
            RatVector s = bracket(a, bracket(b, d)) + bracket(b, bracket(d, a)) + bracket(d, bracket(a, b));
            if (!is_zero(s))
              c = {"jacobi", false,
                   "Jacobi fails for (" + labels_[i] + ", " + labels_[j] + ", " + labels_[k] + "): sum = " + vector_str(s)};
          }
      rep.checks.push_back(c);
    }
    {
      CheckResult c{"jordan_holder", true, ""};
      for (std::size_t i = 0; i < n && c.pass; ++i)
        for (std::size_t j = 0; j < i && c.pass; ++j) {
          const RatVector& b = basis_bracket(i, j);
          for (std::size_t k = j; k < n; ++k)
            if (!b[k].is_zero()) {
              c = {"jordan_holder", false,
                   "[" + labels_[i] + ", " + labels_[j] + "] has a component on " + labels_[k] + ", not strictly below both indices"};
              break;
            }
        }
      rep.checks.push_back(c);
    }
    {
      CheckResult c{"nilpotent", true, ""};
      try {
        rep.step = step();
        c.details = "step " + std::to_string(*rep.step);
      } catch (const NotNilpotent& e) {
        c = {"nilpotent", false, e.what()};
      }
      rep.checks.push_back(c);
    }
    rep.center_dim = center().dim();
    rep.checks.push_back({"center", true, "dimension " + std::to_string(rep.center_dim)});
    return rep;
  }

  /// Throws ValidationError with the failing checks if validate() fails.
  const LieAlgebra& require_valid() const {
    auto rep = validate();
    if (!rep.ok()) throw ValidationError(rep.failures());
    return *this;
  }

  /// Quotient by span{X_0} realised on span{X_1..X_{n-1}}: brackets keep
  /// their components on indices >= 1.
  LieAlgebra drop_first() const {
    const std::size_t n = dim();
    std::vector<std::string> labels(labels_.begin() + 1, labels_.end());
    std::vector<BracketEntry> es;
    for (std::size_t i = 1; i < n; ++i)
      for (std::size_t j = 1; j < i; ++j) {
        const RatVector& b = basis_bracket(i, j);
        RatVector v(b.begin() + 1, b.end());
        if (!is_zero(v)) es.push_back({i - 1, j - 1, v});
      }
    return LieAlgebra(std::move(labels), es);
  }

  friend bool operator==(const LieAlgebra& a, const LieAlgebra& b) {
    return a.labels_ == b.labels_ && a.table_ == b.table_;
  }

 private:
  RatVector& at(std::size_t i, std::size_t j) { return table_[i * dim() + j]; }

  std::vector<std::string> labels_;
  std::vector<RatVector> table_;
};

}  // namespace flatorbit

#endif
