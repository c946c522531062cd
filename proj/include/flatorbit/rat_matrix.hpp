#ifndef FLATORBIT_RAT_MATRIX_HPP
#define FLATORBIT_RAT_MATRIX_HPP

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "flatorbit/errors.hpp"
#include "flatorbit/rational.hpp"

namespace flatorbit {

using RatVector = std::vector<Rational>;

/// Sparse row: (column, value) pairs sorted by column, no zeros.
using SparseRow = std::vector<std::pair<std::size_t, Rational>>;

/// Incremental exact row reduction over sparse rows. Rows are added one at a
/// time; `reduced()` returns the canonical reduced row echelon form.
class RowReducer {
 public:
  explicit RowReducer(std::size_t cols) : cols_(cols) {}

  std::size_t cols() const { return cols_; }
  std::size_t rank() const { return pivots_.size(); }

  /// Reduces `row` against the current pivots. Returns true if it was
  /// independent (and is now stored), false if it reduced to zero.
  bool add_row(const SparseRow& row) {
    std::map<std::size_t, Rational> acc;
    for (const auto& [c, v] : row) {
      if (c >= cols_) throw DimensionMismatch("RowReducer: column out of range");
      if (!v.is_zero()) acc[c] += v;
    }
    eliminate(acc);
    if (acc.empty()) return false;
    Rational lead = acc.begin()->second;
    SparseRow stored;
    stored.reserve(acc.size());
    for (auto& [c, v] : acc) stored.emplace_back(c, v / lead);
    pivots_.emplace(stored.front().first, std::move(stored));
    dirty_ = true;
    return true;
  }

  /// Reduced rows ordered by pivot column, each with leading 1 and zeros in
  /// every other pivot column.
  std::vector<SparseRow> reduced() {
    back_substitute();
    std::vector<SparseRow> out;
    out.reserve(pivots_.size());
    for (const auto& [p, r] : pivots_) out.push_back(r);
    return out;
  }

  std::vector<std::size_t> pivot_columns() const {
    std::vector<std::size_t> out;
    for (const auto& [p, r] : pivots_) out.push_back(p);
    return out;
  }

  /// Basis of the kernel of the matrix whose rows were added: one vector per
  /// free column (increasing), with 1 there and 0 at the other free columns.
  std::vector<RatVector> nullspace() {
    back_substitute();
    std::vector<bool> is_pivot(cols_, false);
    for (const auto& [p, r] : pivots_) is_pivot[p] = true;
    std::vector<std::size_t> free_index(cols_, 0);
    std::vector<std::size_t> frees;
    for (std::size_t c = 0; c < cols_; ++c)
      if (!is_pivot[c]) {
        free_index[c] = frees.size();
        frees.push_back(c);
      }
    std::vector<RatVector> basis(frees.size(), RatVector(cols_));
    for (std::size_t k = 0; k < frees.size(); ++k) basis[k][frees[k]] = Rational(1);
    for (const auto& [p, r] : pivots_)
      for (const auto& [c, v] : r)
        if (c != p) basis[free_index[c]][p] = -v;
    return basis;
  }

  /// True if `row` lies in the span of the rows added so far.
  bool in_span(const SparseRow& row) const {
    std::map<std::size_t, Rational> acc;
    for (const auto& [c, v] : row)
      if (!v.is_zero()) acc[c] += v;
    eliminate(acc);
    return acc.empty();
  }

 private:
  void eliminate(std::map<std::size_t, Rational>& acc) const {
    for (auto it = acc.begin(); it != acc.end();) {
      if (it->second.is_zero()) {
        it = acc.erase(it);
        continue;
      }
      auto piv = pivots_.find(it->first);
      if (piv == pivots_.end()) {
        ++it;
        continue;
      }
      Rational factor = it->second;
      it = acc.erase(it);
      const SparseRow& pr = piv->second;
      for (std::size_t k = 1; k < pr.size(); ++k) {
        auto& slot = acc[pr[k].first];
        slot -= factor * pr[k].second;
      }
      // entries inserted lie strictly to the right of the erased column, so
      // `it` still points at the next unprocessed column.
      it = acc.upper_bound(piv->first);
    }
  }

  void back_substitute() {
    if (!dirty_) return;
    for (auto it = pivots_.rbegin(); it != pivots_.rend(); ++it) {
      SparseRow& row = it->second;
      bool touches = false;
      for (std::size_t k = 1; k < row.size() && !touches; ++k)
        touches = pivots_.count(row[k].first) > 0;
      if (!touches) continue;
      std::map<std::size_t, Rational> acc;
      for (std::size_t k = 1; k < row.size(); ++k) acc.emplace(row[k].first, row[k].second);
      // rows with larger pivots are already fully reduced
      for (auto a = acc.begin(); a != acc.end();) {
        auto piv = pivots_.find(a->first);
        if (a->second.is_zero()) {
          a = acc.erase(a);
          continue;
        }
        if (piv == pivots_.end()) {
          ++a;
          continue;
        }
        Rational factor = a->second;
        std::size_t col = a->first;
        acc.erase(a);
        for (std::size_t k = 1; k < piv->second.size(); ++k) acc[piv->second[k].first] -= factor * piv->second[k].second;
        a = acc.upper_bound(col);
      }
      SparseRow fresh;
      fresh.reserve(acc.size() + 1);
      fresh.emplace_back(row.front());
      for (auto& [c, v] : acc)
        if (!v.is_zero()) fresh.emplace_back(c, v);
      row = std::move(fresh);
    }
    dirty_ = false;
  }

  std::size_t cols_;
  std::map<std::size_t, SparseRow> pivots_;
  bool dirty_ = false;
};

/// Dense rectangular rational matrix.
class RatMatrix {
 public:
  RatMatrix() = default;
  RatMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  RatMatrix(std::initializer_list<std::initializer_list<Rational>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    for (const auto& r : init) {
      if (r.size() != cols_) throw DimensionMismatch("RatMatrix: ragged initializer");
      data_.insert(data_.end(), r.begin(), r.end());
    }
  }

  static RatMatrix identity(std::size_t n) {
    RatMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = Rational(1);
    return m;
  }
  static RatMatrix from_rows(const std::vector<RatVector>& rows, std::size_t cols) {
    RatMatrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw DimensionMismatch("RatMatrix: row length mismatch");
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  RatVector row(std::size_t i) const { return RatVector(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_); }
  RatVector col(std::size_t j) const {
    RatVector out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
    return out;
  }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const Rational& r) { return r.is_zero(); });
  }

  RatMatrix transpose() const {
    RatMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend RatMatrix operator*(const RatMatrix& a, const RatMatrix& b) {
    if (a.cols_ != b.rows_) throw DimensionMismatch("RatMatrix product: inner dimensions differ");
    RatMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Rational& aik = a(i, k);
        if (aik.is_zero()) continue;
        for (std::size_t j = 0; j < b.cols_; ++j)
          if (!b(k, j).is_zero()) c(i, j) += aik * b(k, j);
      }
    return c;
  }
  friend RatVector operator*(const RatMatrix& a, const RatVector& v) {
    if (a.cols_ != v.size()) throw DimensionMismatch("RatMatrix-vector product: length mismatch");
    RatVector out(a.rows_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t j = 0; j < a.cols_; ++j)
        if (!a(i, j).is_zero() && !v[j].is_zero()) out[i] += a(i, j) * v[j];
    return out;
  }
  friend RatMatrix operator+(RatMatrix a, const RatMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DimensionMismatch("RatMatrix sum: shape mismatch");
    for (std::size_t k = 0; k < a.data_.size(); ++k) a.data_[k] += b.data_[k];
    return a;
  }
  friend RatMatrix operator-(RatMatrix a, const RatMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DimensionMismatch("RatMatrix difference: shape mismatch");
    for (std::size_t k = 0; k < a.data_.size(); ++k) a.data_[k] -= b.data_[k];
    return a;
  }
  friend RatMatrix operator*(const Rational& s, RatMatrix a) {
    for (auto& x : a.data_) x *= s;
    return a;
  }
  friend bool operator==(const RatMatrix& a, const RatMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  RowReducer reducer() const {
    RowReducer red(cols_);
    for (std::size_t i = 0; i < rows_; ++i) red.add_row(sparse_row(i));
    return red;
  }

  SparseRow sparse_row(std::size_t i) const {
    SparseRow r;
    for (std::size_t j = 0; j < cols_; ++j)
      if (!(*this)(i, j).is_zero()) r.emplace_back(j, (*this)(i, j));
    return r;
  }

  /// Canonical reduced row echelon form (zero rows dropped).
  RatMatrix rref() const {
    auto red = reducer();
    auto rows = red.reduced();
    RatMatrix out(rows.size(), cols_);
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (const auto& [c, v] : rows[i]) out(i, c) = v;
    return out;
  }

  std::size_t rank() const { return reducer().rank(); }

  std::vector<RatVector> nullspace() const { return reducer().nullspace(); }

  /// Exact inverse; throws if singular or non-square.
  RatMatrix inverse() const {
    if (rows_ != cols_) throw DimensionMismatch("inverse of non-square matrix");
    RowReducer red(2 * cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
      SparseRow r = sparse_row(i);
      r.emplace_back(cols_ + i, Rational(1));
      red.add_row(r);
    }
    auto rows = red.reduced();
    if (rows.size() != rows_ || rows.back().front().first >= cols_) throw Error("matrix is singular");
    RatMatrix inv(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (const auto& [c, v] : rows[i])
        if (c >= cols_) inv(i, c - cols_) = v;
    return inv;
  }

  std::string str() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < rows_; ++i) {
      os << (i ? ", [" : "[");
      for (std::size_t j = 0; j < cols_; ++j) os << (j ? ", " : "") << (*this)(i, j);
      os << "]";
    }
    os << "]";
    return os.str();
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Rational> data_;
};

inline RatVector operator+(RatVector a, const RatVector& b) {
  if (a.size() != b.size()) throw DimensionMismatch("vector sum: length mismatch");
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}
inline RatVector operator-(RatVector a, const RatVector& b) {
  if (a.size() != b.size()) throw DimensionMismatch("vector difference: length mismatch");
  for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
  return a;
}
inline RatVector operator-(RatVector a) {
  for (auto& x : a) x = -x;
  return a;
}
inline RatVector operator*(const Rational& s, RatVector a) {
  for (auto& x : a) x *= s;
  return a;
}
inline Rational dot(const RatVector& a, const RatVector& b) {
  if (a.size() != b.size()) throw DimensionMismatch("dot: length mismatch");
  Rational s;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!a[i].is_zero() && !b[i].is_zero()) s += a[i] * b[i];
  return s;
}
inline bool is_zero(const RatVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& r) { return r.is_zero(); });
}
inline RatVector unit_vector(std::size_t n, std::size_t i) {
  RatVector v(n);
  v.at(i) = Rational(1);
  return v;
}

inline std::string vector_str(const RatVector& v) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i];
  os << ")";
  return os.str();
}

}  // namespace flatorbit

#endif
