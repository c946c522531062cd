#ifndef FLATORBIT_RATIONAL_HPP
#define FLATORBIT_RATIONAL_HPP

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

#include "flatorbit/errors.hpp"

namespace flatorbit {

/// Arbitrary-precision rational number, always in lowest terms with a
/// positive denominator.
class Rational {
 public:
  Rational() = default;
  Rational(long value) : q_(value) {}  // NOLINT(google-explicit-constructor)
  Rational(long num, long den) {
    if (den == 0) throw Error("Rational: zero denominator");
    q_ = mpq_class(num, den);
    q_.canonicalize();
  }
  explicit Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

  /// Parses "p", "-p", "p/q" (ASCII '-' or U+2212 accepted for the sign).
  static Rational parse(std::string_view text) {
    std::string s(text);
    // strip surrounding blanks
    auto b = s.find_first_not_of(" \t");
    auto e = s.find_last_not_of(" \t");
    if (b == std::string::npos) throw ParseError("empty rational literal");
    s = s.substr(b, e - b + 1);
    if (s.rfind("−", 0) == 0) s = "-" + s.substr(3);
    if (!s.empty() && s[0] == '+') s = s.substr(1);
    auto slash = s.find('/');
    auto valid_int = [](const std::string& t) {
      std::size_t i = (!t.empty() && t[0] == '-') ? 1 : 0;
      if (i >= t.size()) return false;
      for (; i < t.size(); ++i)
        if (t[i] < '0' || t[i] > '9') return false;
      return true;
    };
    mpq_class q;
    if (slash == std::string::npos) {
      if (!valid_int(s)) throw ParseError("bad rational literal '" + std::string(text) + "'");
      q = mpq_class(mpz_class(s));
    } else {
      std::string n = s.substr(0, slash), d = s.substr(slash + 1);
      if (!valid_int(n) || !valid_int(d) || d[0] == '-')
        throw ParseError("bad rational literal '" + std::string(text) + "'");
      mpz_class den(d);
      if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
      q = mpq_class(mpz_class(n), den);
    }
    return Rational(std::move(q));
  }

  /// "p/q", or "p" when q = 1.
  std::string str() const {
    if (q_.get_den() == 1) return q_.get_num().get_str();
    return q_.get_num().get_str() + "/" + q_.get_den().get_str();
  }

  bool is_zero() const { return sgn(q_) == 0; }
  bool is_one() const { return q_ == 1; }
  bool is_integer() const { return q_.get_den() == 1; }
  int sign() const { return sgn(q_); }
  double to_double() const { return q_.get_d(); }
  const mpq_class& raw() const { return q_; }
  mpz_class numerator() const { return q_.get_num(); }
  mpz_class denominator() const { return q_.get_den(); }

  Rational operator-() const { return Rational(mpq_class(-q_)); }
  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw Error("Rational: division by zero");
    q_ /= o.q_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

 private:
  mpq_class q_{0};
};

inline Rational factorial(unsigned n) {
  mpz_class f = 1;
  for (unsigned k = 2; k <= n; ++k) f *= k;
  return Rational(mpq_class(f));
}

inline Rational binomial(unsigned n, unsigned k) {
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), n, k);
  return Rational(mpq_class(b));
}

}  // namespace flatorbit

#endif
