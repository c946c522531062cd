#ifndef FLATORBIT_WEYL_SEMINORMS_HPP
#define FLATORBIT_WEYL_SEMINORMS_HPP

#include <algorithm>
#include <array>
#include <functional>
#include <string>
#include <vector>

#include "flatorbit/weyl/jet.hpp"
#include "flatorbit/weyl/quantize.hpp"

namespace flatorbit::weyl {

/// A symbol written once over jets, so values and derivatives come from the
/// same expression.
struct JetSymbol {
  std::string family;
  double parameter = 0;
  std::function<Jet(const Jet&, const Jet&)> f;

  cplx operator()(double q, double p) const { return f(Jet(q), Jet(p)).value(); }
  PhaseSymbol sample(const Grid& g) const {
    return PhaseSymbol::sample(g, [this](double q, double p) { return (*this)(q, p); });
  }
};

/// Largest singular value.
inline double operator_norm(const GridOperator& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m.adjoint() * m, Eigen::EigenvaluesOnly);
  return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

/// Hilbert-Schmidt norm; M_jk = h K(x_j, x_k) makes this the Frobenius norm.
inline double hs_norm(const GridOperator& m) { return m.norm(); }

/// sup over the lattice of max_{|alpha| = k} |d^alpha a|, for k = 0..3.
inline std::array<double, 4> derivative_sups(const Grid& g, const JetSymbol& a) {
  std::array<double, 4> sup{};
  for (int m = 0; m < g.q_count(); ++m)
    for (int l = 0; l < g.p_count(); ++l) {
      Jet v = a.f(Jet::q_at(g.q(m)), Jet::p_at(g.p(l)));
      for (int i = 0; i <= Jet::order; ++i)
        for (int j = 0; i + j <= Jet::order; ++j)
          sup[i + j] = std::max(sup[i + j], std::abs(v.derivative(i, j)));
    }
  return sup;
}

struct SeminormRow {
  std::string family;
  double parameter = 0;
  double sup = 0;
  double op_norm = 0;
  double hs_norm = 0;
  /// max_{|alpha| <= k} ||d^alpha a||_inf, k = 0..3
  std::array<double, 4> seminorm{};
  /// max_{1 <= |alpha| <= k} ||d^alpha a||_inf, k = 1..3 (index 0 unused)
  std::array<double, 4> derivative{};
  double ratio = 0;  ///< op_norm / seminorm[3]
};

inline SeminormRow seminorm_row(const Grid& g, const JetSymbol& a) {
  SeminormRow r{a.family, a.parameter};
  auto sups = derivative_sups(g, a);
  double run = 0;
  for (int k = 0; k <= 3; ++k) r.seminorm[k] = run = std::max(run, sups[k]);
  run = 0;
  for (int k = 1; k <= 3; ++k) r.derivative[k] = run = std::max(run, sups[k]);
  r.sup = sups[0];
  GridOperator op = op_quantize(a.sample(g));
  r.op_norm = operator_norm(op);
  r.hs_norm = hs_norm(op);
  r.ratio = r.seminorm[3] > 0 ? r.op_norm / r.seminorm[3] : 0;
  return r;
}

namespace families {

inline JetSymbol constant_one() {
  return {"one", 0, [](const Jet&, const Jet&) { return Jet(1.0); }};
}

inline JetSymbol gaussian(double width) {
  return {"gaussian", width, [width](const Jet& q, const Jet& p) {
            return exp(-(q * q + p * p) * Jet(1.0 / (2 * width * width)));
          }};
}

inline JetSymbol sine(double lambda) {
  return {"sin", lambda, [lambda](const Jet& q, const Jet&) { return sin(Jet(lambda) * q); }};
}

/// e^{i lambda q p / (1 + q^2 + p^2)}: unit modulus, bounded derivatives,
/// first derivatives linear in lambda.
inline JetSymbol bounded_chirp(double lambda) {
  return {"bounded_chirp", lambda, [lambda](const Jet& q, const Jet& p) {
            Jet phase = q * p / (Jet(1.0) + q * q + p * p);
            return exp(Jet(Jet::cplx(0, lambda)) * phase);
          }};
}

/// e^{i lambda q p} sampled on the box; unit modulus while the operator norm
/// (2/sqrt(4 - lambda^2) on the line) grows without bound as lambda -> 2.
inline JetSymbol chirp(double lambda) {
  return {"chirp", lambda, [lambda](const Jet& q, const Jet& p) {
            return exp(Jet(Jet::cplx(0, lambda)) * q * p);
          }};
}

}  // namespace families

inline std::vector<JetSymbol> default_study_family() {
  using namespace families;
  std::vector<JetSymbol> out{constant_one()};
  for (double w : {0.5, 1.0, 2.0}) out.push_back(gaussian(w));
  for (double l : {1.0, 2.0, 4.0, 8.0}) out.push_back(sine(l));
  for (double l : {1.0, 4.0, 16.0, 64.0}) out.push_back(bounded_chirp(l));
  for (double l : {0.5, 1.0, 1.5, 1.8, 1.9, 1.95}) out.push_back(chirp(l));
  return out;
}

inline std::vector<SeminormRow> seminorm_vs_norm_study(const Grid& g, const std::vector<JetSymbol>& fam) {
  std::vector<SeminormRow> rows;
  rows.reserve(fam.size());
  for (const auto& a : fam) rows.push_back(seminorm_row(g, a));
  return rows;
}

}  // namespace flatorbit::weyl

#endif
