#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace betadd {

using Int      = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/*
 * Exact arithmetic in Q(beta), beta = (1+sqrt 5)/2, the positive root of
 * x^2 = x + 1.
 *
 * A value is the coefficient pair (a, b) of a + b*beta with arbitrary
 * precision rationals. The rational backend keeps coefficients in lowest
 * terms, so representation is canonical and equality is structural.
 * Products reduce with beta^2 = beta + 1; the field conjugate sends beta
 * to 1 - beta, giving the norm N(a, b) = a^2 + ab - b^2 used for division.
 *
 * Ordering never touches floating point: a + b*beta = (s + t*sqrt 5)/2
 * with s = 2a + b, t = b, and the mixed-sign case compares s^2 with 5 t^2.
 */
class QBeta {
public:
  QBeta() = default;
  QBeta(int n) : a_(n) {}
  QBeta(long n) : a_(n) {}
  QBeta(long long n) : a_(n) {}
  QBeta(Rational a) : a_(std::move(a)) {}
  QBeta(Rational a, Rational b) : a_(std::move(a)), b_(std::move(b)) {}

  static QBeta beta() { return {0, 1}; }

  /// beta^k for any integer k, exact. beta^-1 = beta - 1. Cached for |k| <= 256.
  static QBeta beta_pow(long long k) {
    constexpr long long kCached = 256;
    static const std::vector<QBeta> table = [] {
      std::vector<QBeta> t(2 * kCached + 1);
      t[kCached] = 1;
      for (long long i = 1; i <= kCached; ++i) {
        t[kCached + i] = t[kCached + i - 1] * beta();
        t[kCached - i] = t[kCached - i + 1] * QBeta{-1, 1};
      }
      return t;
    }();
    if (k >= -kCached && k <= kCached) return table[std::size_t(k + kCached)];
    QBeta r = table[k > 0 ? 2 * kCached : 0];
    const QBeta f = k > 0 ? beta() : QBeta{-1, 1};
    for (long long i = (k > 0 ? k : -k) - kCached; i > 0; --i) r = r * f;
    return r;
  }

  const Rational& a() const { return a_; }
  const Rational& b() const { return b_; }

  bool is_zero() const { return a_ == 0 && b_ == 0; }
  bool is_rational() const { return b_ == 0; }

  /// Galois conjugate: a + b*beta -> a + b*(1 - beta).
  QBeta conjugate() const { return {a_ + b_, -b_}; }

  /// Field norm x * conj(x), a rational. Zero only for x = 0.
  Rational norm() const { return a_ * a_ + a_ * b_ - b_ * b_; }

  friend QBeta operator+(const QBeta& x, const QBeta& y) {
    return {x.a_ + y.a_, x.b_ + y.b_};
  }
  friend QBeta operator-(const QBeta& x, const QBeta& y) {
    return {x.a_ - y.a_, x.b_ - y.b_};
  }
  QBeta operator-() const { return {-a_, -b_}; }

  friend QBeta operator*(const QBeta& x, const QBeta& y) {
    // (a1 + b1 B)(a2 + b2 B) with B^2 = B + 1
    return {x.a_ * y.a_ + x.b_ * y.b_, x.a_ * y.b_ + x.b_ * y.a_ + x.b_ * y.b_};
  }

  /// x * beta as a coefficient shuffle: (a, b) -> (b, a + b).
  QBeta times_beta() const { return {b_, a_ + b_}; }
  /// x / beta, likewise: (a, b) -> (b - a, a).
  QBeta div_beta() const { return {b_ - a_, a_}; }

  QBeta inverse() const {
    if (is_zero()) throw std::domain_error("QBeta: division by zero");
    const Rational n = norm();
    return {(a_ + b_) / n, -b_ / n};
  }

  friend QBeta operator/(const QBeta& x, const QBeta& y) { return x * y.inverse(); }

  QBeta& operator+=(const QBeta& y) { return *this = *this + y; }
  QBeta& operator-=(const QBeta& y) { return *this = *this - y; }
  QBeta& operator*=(const QBeta& y) { return *this = *this * y; }
  QBeta& operator/=(const QBeta& y) { return *this = *this / y; }

  /*
   * Sign of the real embedding, in {-1, 0, +1}. Integer arithmetic only:
   * a + b*beta = (s + t*sqrt 5)/2 with s = 2a + b and t = b; the mixed-sign
   * case compares s^2 with 5 t^2, where equality cannot occur since sqrt 5 is
   * irrational. Works on raw numerators and denominators, so nothing here
   * normalizes or allocates rationals.
   */
  int sign() const {
    const Int& an = numerator(a_);
    const Int& ad = denominator(a_);
    const Int& bn = numerator(b_);
    const Int& bd = denominator(b_);
    const int ts = bn.sign();
    const Int s = 2 * an * bd + bn * ad;  // numerator of 2a + b over ad*bd
    const int ss = s.sign();
    if (ss >= 0 && ts >= 0) return (ss != 0 || ts != 0) ? 1 : 0;
    if (ss <= 0 && ts <= 0) return -1;
    // (2a+b)^2 vs 5 b^2 over the common positive square (ad*bd)^2
    const Int lhs = s * s;
    const Int rhs = 5 * bn * bn * ad * ad;
    if (ss > 0) return lhs > rhs ? 1 : -1;
    return lhs < rhs ? 1 : -1;
  }

  friend bool operator==(const QBeta&, const QBeta&) = default;

  /// Three-way comparison without building the difference, gcd-free.
  friend int cmp(const QBeta& x, const QBeta& y) {
    // x - y = p + q*beta with p = pn/pd, q = qn/qd, unnormalized
    const Int pn = numerator(x.a_) * denominator(y.a_) - numerator(y.a_) * denominator(x.a_);
    const Int qn = numerator(x.b_) * denominator(y.b_) - numerator(y.b_) * denominator(x.b_);
    const int ts = qn.sign();
    const Int pd = denominator(x.a_) * denominator(y.a_);
    const Int qd = denominator(x.b_) * denominator(y.b_);
    const Int s = 2 * pn * qd + qn * pd;
    const int ss = s.sign();
    if (ss >= 0 && ts >= 0) return (ss != 0 || ts != 0) ? 1 : 0;
    if (ss <= 0 && ts <= 0) return -1;
    const Int lhs = s * s;
    const Int rhs = 5 * qn * qn * pd * pd;
    if (ss > 0) return lhs > rhs ? 1 : -1;
    return lhs < rhs ? 1 : -1;
  }

  friend std::strong_ordering operator<=>(const QBeta& x, const QBeta& y) {
    switch (cmp(x, y)) {
      case -1: return std::strong_ordering::less;
      case 1: return std::strong_ordering::greater;
      default: return std::strong_ordering::equal;
    }
  }

  /*
   * Rational approximation with absolute error <= 2^-bits and, for nonzero
   * values, relative error <= 2^(1-bits). sqrt 5 is bracketed by integer
   * square roots of 5 * 4^k; k grows until the relative bound is met.
   */
  Rational approx(unsigned bits) const {
    if (b_ == 0) return a_;
    using boost::multiprecision::msb;
    const Int bnum = abs(numerator(b_));
    const Int bden = denominator(b_);
    const Int bceil = bnum / bden + 1;
    unsigned k = bits + 8 + static_cast<unsigned>(msb(bceil)) + 1;
    for (;;) {
      const Int p = sqrt(Int(5) << (2 * k));
      const Rational root5{p, Int(1) << k};
      const Rational v = a_ + b_ * (1 + root5) / 2;
      // |error| <= |b| * 2^-(k+1)
      const Rational err{bnum, bden * (Int(1) << (k + 1))};
      const Rational av = abs(v);
      const Rational rel{Int(2), Int(1) << bits};
      // b_ != 0 makes the value irrational, hence nonzero: the loop terminates.
      if (av > err && err <= rel * (av - err)) return v;
      k += 64;
    }
  }

  double to_double() const { return approx(96).convert_to<double>(); }

  /*
   * Fixed-point decimal rendering, rounded half away from zero at the
   * requested number of fractional digits.
   */
  std::string to_decimal(std::size_t digits) const {
    const unsigned bits = 32 + static_cast<unsigned>(4 * digits);
    Int scale = 1;
    for (std::size_t i = 0; i < digits; ++i) scale *= 10;
    const Rational q = approx(bits) * scale;
    const bool neg = q < 0;
    const Rational aq = abs(q);
    // round to nearest, half up
    const Int rounded = (2 * numerator(aq) + denominator(aq)) / (2 * denominator(aq));
    const Int ip = rounded / scale;
    const Int fp = rounded % scale;
    std::string out = neg && rounded != 0 ? "-" : "";
    out += ip.str();
    if (digits > 0) {
      std::string f = fp.str();
      out += "." + std::string(digits - f.size(), '0') + f;
    }
    return out;
  }

private:
  Rational a_;
  Rational b_;
};

inline QBeta operator*(long long n, const QBeta& x) { return QBeta(n) * x; }
inline QBeta operator*(const QBeta& x, long long n) { return x * QBeta(n); }

/// Three-way comparison as an integer in {-1, 0, +1}.
inline int compare(const QBeta& x, const QBeta& y) { return cmp(x, y); }

// Constants of the golden system, shared by every module.
inline const QBeta& beta_value() {
  static const QBeta b = QBeta::beta();
  return b;
}
inline const QBeta& inv_beta() {  // 1/beta = beta - 1
  static const QBeta v{-1, 1};
  return v;
}
inline const QBeta& inv_beta_sq() {  // 1/beta^2 = 2 - beta
  static const QBeta v{2, -1};
  return v;
}
inline const QBeta& inv_beta_cube() {  // 1/beta^3 = 2 beta - 3
  static const QBeta v{-3, 2};
  return v;
}
inline const QBeta& two_over_beta() {  // left endpoint of the digit-2 branch
  static const QBeta v{-2, 2};
  return v;
}
inline const QBeta& three_over_beta() {  // left endpoint of the digit-3 branch
  static const QBeta v{-3, 3};
  return v;
}

}  // namespace betadd
