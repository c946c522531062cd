#ifndef FLATORBIT_WEYL_JET_HPP
#define FLATORBIT_WEYL_JET_HPP

#include <array>
#include <cmath>
#include <complex>

namespace flatorbit::weyl {

/// Truncated bivariate Taylor polynomial of total order 3 in (q, p), used to
/// read off all derivatives of a symbol up to order 3 at a point.
class Jet {
 public:
  using cplx = std::complex<double>;
  static constexpr int order = 3;

  Jet() { c_.fill(0); }
  Jet(double v) : Jet() { c_[0] = v; }
  Jet(cplx v) : Jet() { c_[0] = v; }

  static Jet q_at(double q) { Jet j(q); j.at(1, 0) = 1; return j; }
  static Jet p_at(double p) { Jet j(p); j.at(0, 1) = 1; return j; }

  cplx value() const { return c_[0]; }
  cplx& at(int i, int j) { return c_[slot(i, j)]; }
  cplx at(int i, int j) const { return c_[slot(i, j)]; }
  /// d^i/dq^i d^j/dp^j at the expansion point.
  cplx derivative(int i, int j) const { return at(i, j) * fact(i) * fact(j); }

  Jet operator-() const { Jet r; for (int s = 0; s < size; ++s) r.c_[s] = -c_[s]; return r; }
  Jet& operator+=(const Jet& o) { for (int s = 0; s < size; ++s) c_[s] += o.c_[s]; return *this; }
  Jet& operator-=(const Jet& o) { for (int s = 0; s < size; ++s) c_[s] -= o.c_[s]; return *this; }
  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator*(const Jet& a, const Jet& b) {
    Jet r;
    for (int i1 = 0; i1 <= order; ++i1)
      for (int j1 = 0; i1 + j1 <= order; ++j1) {
        cplx x = a.at(i1, j1);
        if (x == cplx(0)) continue;
        for (int i2 = 0; i1 + j1 + i2 <= order; ++i2)
          for (int j2 = 0; i1 + j1 + i2 + j2 <= order; ++j2) r.at(i1 + i2, j1 + j2) += x * b.at(i2, j2);
      }
    return r;
  }
  friend Jet operator/(const Jet& a, const Jet& b) { return a * b.reciprocal(); }

  /// f(g) from f and its first three derivatives at g(0).
  Jet compose(cplx f0, cplx f1, cplx f2, cplx f3) const {
    Jet u = *this;
    u.c_[0] = 0;
    Jet u2 = u * u, u3 = u2 * u;
    Jet r(f0);
    for (int s = 0; s < size; ++s) r.c_[s] += f1 * u.c_[s] + f2 / 2.0 * u2.c_[s] + f3 / 6.0 * u3.c_[s];
    return r;
  }

  Jet reciprocal() const {
    cplx v = c_[0];
    return compose(1.0 / v, -1.0 / (v * v), 2.0 / (v * v * v), -6.0 / (v * v * v * v));
  }

 private:
  static constexpr int size = 10;
  std::array<cplx, size> c_;

  // slots ordered by total degree, then by the p exponent
  static constexpr int slot(int i, int j) {
    int d = i + j;
    return d * (d + 1) / 2 + j;
  }
  static constexpr double fact(int k) { return k <= 1 ? 1.0 : k * fact(k - 1); }
};

inline Jet exp(const Jet& g) {
  auto e = std::exp(g.value());
  return g.compose(e, e, e, e);
}
inline Jet sin(const Jet& g) {
  auto s = std::sin(g.value()), c = std::cos(g.value());
  return g.compose(s, c, -s, -c);
}
inline Jet cos(const Jet& g) {
  auto s = std::sin(g.value()), c = std::cos(g.value());
  return g.compose(c, -s, -c, s);
}

}  // namespace flatorbit::weyl

#endif
