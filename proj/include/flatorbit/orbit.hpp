#ifndef FLATORBIT_ORBIT_HPP
#define FLATORBIT_ORBIT_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "flatorbit/diff_op.hpp"
#include "flatorbit/errors.hpp"
#include "flatorbit/group_ops.hpp"
#include "flatorbit/lie_algebra.hpp"
#include "flatorbit/multipoly.hpp"
#include "flatorbit/rat_matrix.hpp"

namespace flatorbit {

/// B[i][j] = <xi0, [X_i, X_j]>.
inline RatMatrix orbit_form(const LieAlgebra& L, const RatVector& xi0) {
  const std::size_t n = L.dim();
  if (xi0.size() != n) throw DimensionMismatch("orbit_form: functional length does not match dimension");
  RatMatrix B(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) B(i, j) = dot(xi0, L.basis_bracket(i, j));
  return B;
}

struct FlatnessReport {
  bool flat = false;
  std::size_t rank = 0;
  std::size_t expected_rank = 0;  // dim g - dim z
  std::size_t center_dim = 0;
  bool center_in_radical = false;
  Subspace radical;
};

/// Flat iff rank B = dim g - dim z and z lies in the radical of B.
inline FlatnessReport is_flat(const LieAlgebra& L, const RatVector& xi0) {
  if (xi0.size() != L.dim()) throw DimensionMismatch("is_flat: functional length does not match dimension");
  if (xi0[0].is_zero()) throw NonUnitCentralPairing("<xi0, " + L.labels()[0] + "> = 0");
  RatMatrix B = orbit_form(L, (Rational(1) / xi0[0]) * xi0);
  FlatnessReport r;
  Subspace z = L.center();
  r.center_dim = z.dim();
  r.rank = B.rank();
  r.expected_rank = L.dim() - z.dim();
  r.radical = Subspace::span(L.dim(), B.nullspace());
  r.center_in_radical = r.radical.contains(z);
  r.flat = r.rank == r.expected_rank && r.center_in_radical;
  return r;
}

/// Names for the chart coordinates; empty vectors select defaults
/// x1..xd on the predual and η1..ηd on its dual.
struct OrbitOptions {
  VarList x_names;
  VarList eta_names;
};

/// Geometry of a flat coadjoint orbit O = xi0 + z^perp, with z = R X_0.
///
/// When c = <xi0, X_0> differs from 1 the base point is moved to c X_0^*,
/// which lies on the same orbit, and X_0 is rescaled to X_0/c. Afterwards the
/// base point is the dual vector of the rescaled X_0 and every predual
/// coordinate of it vanishes, so chi(0) = 0.
class OrbitData {
 public:
  OrbitData(const LieAlgebra& L, const RatVector& xi0, OrbitOptions opts = {}) : original_(L), xi0_(xi0) {
    const std::size_t n = L.dim();
    if (xi0.size() != n) throw DimensionMismatch("xi0 length does not match algebra dimension");
    if (n < 2) throw ValidationError("algebra must have dimension at least 2");
    L.require_valid();
    if (xi0[0].is_zero()) throw NonUnitCentralPairing("<xi0, " + L.labels()[0] + "> = 0");
    flatness_ = is_flat(L, xi0);
    if (!flatness_.flat)
      throw NotFlat("orbit is not flat: rank " + std::to_string(flatness_.rank) + ", expected " +
                    std::to_string(flatness_.expected_rank));
    if (flatness_.center_dim != 1)
      throw CenterNotOneDimensional("center has dimension " + std::to_string(flatness_.center_dim));
    if (!L.center().contains(unit_vector(n, 0)))
      throw ValidationError("basis vector " + L.labels()[0] + " must span the center");

    scale_ = xi0[0];
    std::vector<BracketEntry> es = L.entries();
    for (auto& e : es) e.value[0] *= scale_;
    g_ = LieAlgebra(L.labels(), es);
    g0_ = g_.drop_first();
    group_ = std::make_shared<GroupOps>(g_);
    group0_ = std::make_shared<GroupOps>(g0_);

    const std::size_t d = n - 1;
    VarList xn = opts.x_names, en = opts.eta_names;
    if (xn.empty())
      for (std::size_t i = 1; i <= d; ++i) xn.push_back("x" + std::to_string(i));
    if (en.empty())
      for (std::size_t i = 1; i <= d; ++i) en.push_back("η" + std::to_string(i));
    if (xn.size() != d || en.size() != d) throw DimensionMismatch("coordinate name lists must have length dim g - 1");
    x_vars_ = detail::make_vars(xn);
    eta_vars_ = detail::make_vars(en);

    omega_ = RatMatrix(d, d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j)
        if (i != j) omega_(i, j) = g_.basis_bracket(i + 1, j + 1)[0];

    build_chi();
    build_chi_inverse();
  }

  const LieAlgebra& original_algebra() const { return original_; }
  /// The algebra after rescaling X_0.
  const LieAlgebra& algebra() const { return g_; }
  const LieAlgebra& predual() const { return g0_; }
  const GroupOps& group() const { return *group_; }
  const GroupOps& predual_group() const { return *group0_; }
  const RatVector& xi0() const { return xi0_; }
  /// <xi0, X_0> of the input functional.
  const Rational& central_value() const { return scale_; }
  const FlatnessReport& flatness() const { return flatness_; }

  std::size_t dim() const { return g0_.dim(); }
  const std::shared_ptr<const VarList>& x_vars() const { return x_vars_; }
  const std::shared_ptr<const VarList>& eta_vars() const { return eta_vars_; }

  /// omega(X_i, X_j) on the predual basis (indices 0..d-1 for X_1..X_d).
  const RatMatrix& omega() const { return omega_; }

  /// chi: predual -> predual dual, chi_j(X) = <base, e^{-ad X} X_j>.
  const PolyMap& chi() const { return chi_; }
  const PolyMap& chi_inverse() const { return chi_inv_; }
  /// Matrix of the linear part of chi (should equal omega#).
  const RatMatrix& chi_linear() const { return chi_lin_; }

  RatVector chi_at(const RatVector& x) const {
    if (x.size() != dim()) throw DimensionMismatch("chi: vector length mismatch");
    return chi_.evaluate(x);
  }

  /// gamma(X) eta = Ad*_{G0}(X) eta + chi(X).
  RatVector gamma(const RatVector& x, const RatVector& eta) const {
    if (x.size() != dim() || eta.size() != dim()) throw DimensionMismatch("gamma: vector length mismatch");
    return group0_->coAd(x) * eta + chi_at(x);
  }

  /// Infinitesimal generator of gamma along X: the coefficient of d_k is
  /// omega(X_k, X) - <eta, [X, X_k]_0>.
  DiffOp gamma_field(const RatVector& x) const {
    const std::size_t d = dim();
    if (x.size() != d) throw DimensionMismatch("gamma_field: vector length mismatch");
    std::vector<MultiPoly> coeffs(d, MultiPoly(eta_vars_));
    for (std::size_t k = 0; k < d; ++k) {
      Rational lin;
      for (std::size_t i = 0; i < d; ++i) lin += omega_(k, i) * x[i];
      MultiPoly c = MultiPoly::constant(lin, eta_vars_);
      RatVector br = g0_.bracket(x, unit_vector(d, k));
      for (std::size_t l = 0; l < d; ++l)
        if (!br[l].is_zero()) c -= MultiPoly::variable(eta_vars_, l) * br[l];
      coeffs[k] = c;
    }
    return DiffOp::vector_field(eta_vars_, coeffs);
  }
  /// gamma_field of the j-th predual basis vector (X_{j+1} of g).
  DiffOp gamma_field(std::size_t j) const { return gamma_field(unit_vector(dim(), j)); }

  std::vector<DiffOp> gamma_fields() const {
    std::vector<DiffOp> out;
    for (std::size_t j = 0; j < dim(); ++j) out.push_back(gamma_field(j));
    return out;
  }

  /// P(Ad*_G(X) xi) - gamma(X) P(xi) with X symbolic in x_vars and xi the
  /// orbit point with chart coordinates eta_vars. Every entry is zero exactly
  /// when the chart intertwines the two actions.
  std::vector<MultiPoly> equivariance_residual() const {
    const std::size_t d = dim(), n = d + 1;
    VarList all = *x_vars_;
    all.insert(all.end(), eta_vars_->begin(), eta_vars_->end());
    auto vars = detail::make_vars(all);
    PolyVector X(n, MultiPoly(vars));
    for (std::size_t i = 0; i < d; ++i) X[i + 1] = MultiPoly::variable(vars, i);
    PolyMatrix M = GroupOps::exp_nilpotent(negate(symbolic_ad_of(g_, X, vars)), vars);
    PolyVector X0(X.begin() + 1, X.end());
    PolyMatrix M0 = GroupOps::exp_nilpotent(negate(symbolic_ad_of(g0_, X0, vars)), vars);
    std::vector<MultiPoly> res;
    for (std::size_t j = 0; j < d; ++j) {
      MultiPoly lhs = M[0][j + 1];
      for (std::size_t k = 0; k < d; ++k) lhs += MultiPoly::variable(vars, d + k) * M[k + 1][j + 1];
      MultiPoly rhs = chi_[j].with_vars(vars);
      for (std::size_t k = 0; k < d; ++k) rhs += MultiPoly::variable(vars, d + k) * M0[k][j];
      res.push_back(lhs - rhs);
    }
    return res;
  }

  /// ad X with X given by polynomial coordinates.
  static PolyMatrix symbolic_ad_of(const LieAlgebra& L, const PolyVector& X, const std::shared_ptr<const VarList>& vars) {
    const std::size_t n = L.dim();
    PolyMatrix m(n, PolyVector(n, MultiPoly(vars)));
    for (const auto& e : L.entries()) {
      // [X_i, X_j] = v contributes x_i v to column j and -x_j v to column i
      for (std::size_t k = 0; k < n; ++k) {
        if (e.value[k].is_zero()) continue;
        if (!X[e.i].is_zero()) m[k][e.j] += X[e.i] * e.value[k];
        if (!X[e.j].is_zero()) m[k][e.i] -= X[e.j] * e.value[k];
      }
    }
    return m;
  }

 private:
  static PolyMatrix negate(PolyMatrix m) {
    for (auto& row : m)
      for (auto& e : row) e = -e;
    return m;
  }

  void build_chi() {
    const std::size_t d = dim(), n = d + 1;
    PolyVector X(n, MultiPoly(x_vars_));
    for (std::size_t i = 0; i < d; ++i) X[i + 1] = MultiPoly::variable(x_vars_, i);
    PolyMatrix M = GroupOps::exp_nilpotent(negate(symbolic_ad_of(g_, X, x_vars_)), x_vars_);
    std::vector<MultiPoly> comps;
    for (std::size_t j = 0; j < d; ++j) comps.push_back(M[0][j + 1]);
    chi_ = PolyMap(x_vars_, *eta_vars_, comps);
    chi_lin_ = RatMatrix(d, d);
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t i = 0; i < d; ++i) {
        Exponents e(d, 0);
        e[i] = 1;
        chi_lin_(j, i) = chi_[j].coefficient(e);
      }
  }

  void build_chi_inverse() {
    const std::size_t d = dim();
    RatMatrix Linv;
    try {
      Linv = chi_lin_.inverse();
    } catch (const Error&) {
      throw InversionFailure("linear part of chi is singular");
    }
    std::vector<MultiPoly> higher;
    for (std::size_t j = 0; j < d; ++j) {
      MultiPoly h(x_vars_);
      for (const auto& [e, c] : chi_[j].terms())
        if (total_degree(e) >= 2) h.add_term(e, c);
      higher.push_back(h);
    }
    PolyMap H(x_vars_, *eta_vars_, higher);
    // map eta -> eta used to recognise the identity
    PolyMap id = PolyMap::identity(*eta_vars_);
    std::vector<MultiPoly> cur(d, MultiPoly(eta_vars_));
    const unsigned cap = 4 * group_->step() + 4;
    for (unsigned T = 1; T <= cap; ++T) {
      PolyMap X(eta_vars_, *x_vars_, cur);
      PolyMap HX = compose(H, X);
      std::vector<MultiPoly> next(d, MultiPoly(eta_vars_));
      for (std::size_t i = 0; i < d; ++i) {
        MultiPoly acc(eta_vars_);
        for (std::size_t j = 0; j < d; ++j) {
          if (Linv(i, j).is_zero()) continue;
          acc += (MultiPoly::variable(eta_vars_, j) - HX[j]) * Linv(i, j);
        }
        next[i] = acc.truncated(T);
      }
      bool stable = next == cur;
      cur = std::move(next);
      if (stable) {
        PolyMap candidate(eta_vars_, *x_vars_, cur);
        PolyMap check = compose(chi_, candidate);
        if (check.components == id.components) {
          chi_inv_ = candidate;
          return;
        }
      }
    }
    throw InversionFailure("chi inverse did not stabilise within degree " + std::to_string(cap));
  }

  LieAlgebra original_;
  RatVector xi0_;
  Rational scale_;
  FlatnessReport flatness_;
  LieAlgebra g_, g0_;
  std::shared_ptr<GroupOps> group_, group0_;
  std::shared_ptr<const VarList> x_vars_, eta_vars_;
  RatMatrix omega_;
  PolyMap chi_, chi_inv_;
  RatMatrix chi_lin_;
};

}  // namespace flatorbit

#endif
