#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>

namespace negame {

// Exact rational number. Always canonical: denominator > 0 and coprime
// to the numerator.
class Rational {
public:
  Rational() : v_(0) {}
  Rational(long n) : v_(n) {}
  Rational(long n, long d) : v_(n, d) {
    if (d == 0) throw std::invalid_argument("Rational: zero denominator");
    v_.canonicalize();
  }
  explicit Rational(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }
  explicit Rational(const mpz_class& n) : v_(n) {}
  Rational(const mpz_class& n, const mpz_class& d) : v_(n, d) {
    if (d == 0) throw std::invalid_argument("Rational: zero denominator");
    v_.canonicalize();
  }

  // Accepts "p" or "p/q" with optional sign; rejects q = 0.
  static Rational parse(const std::string& text);

  std::string str() const;

  mpz_class numerator() const { return v_.get_num(); }
  mpz_class denominator() const { return v_.get_den(); }
  const mpq_class& raw() const { return v_; }

  int sign() const { return sgn(v_); }
  bool is_integer() const { return v_.get_den() == 1; }
  double to_double() const { return v_.get_d(); }

  Rational operator-() const { return Rational(mpq_class(-v_)); }
  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.v_ == 0) throw std::invalid_argument("Rational: division by zero");
    v_ /= o.v_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.v_ == b.v_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) {
    return a.v_ != b.v_;
  }
  friend bool operator<(const Rational& a, const Rational& b) {
    return a.v_ < b.v_;
  }
  friend bool operator<=(const Rational& a, const Rational& b) {
    return a.v_ <= b.v_;
  }
  friend bool operator>(const Rational& a, const Rational& b) {
    return a.v_ > b.v_;
  }
  friend bool operator>=(const Rational& a, const Rational& b) {
    return a.v_ >= b.v_;
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r);

private:
  mpq_class v_;
};

// Rational extended with +/-infinity. Ordered; no arithmetic.
class ExtendedRational {
public:
  enum class Kind { MinusInf, Finite, PlusInf };

  ExtendedRational() : kind_(Kind::Finite) {}
  ExtendedRational(Rational v) : kind_(Kind::Finite), value_(std::move(v)) {}

  static ExtendedRational plus_infinity() { return ExtendedRational(Kind::PlusInf); }
  static ExtendedRational minus_infinity() { return ExtendedRational(Kind::MinusInf); }

  // Accepts Rational syntax plus "inf"/"+inf"/"-inf".
  static ExtendedRational parse(const std::string& text);

  bool is_finite() const { return kind_ == Kind::Finite; }
  bool is_plus_inf() const { return kind_ == Kind::PlusInf; }
  bool is_minus_inf() const { return kind_ == Kind::MinusInf; }

  // Precondition: is_finite().
  const Rational& finite() const;

  std::string str() const;

  friend bool operator==(const ExtendedRational& a, const ExtendedRational& b);
  friend bool operator<(const ExtendedRational& a, const ExtendedRational& b);
  friend bool operator<=(const ExtendedRational& a, const ExtendedRational& b) {
    return a < b || a == b;
  }
  friend bool operator>(const ExtendedRational& a, const ExtendedRational& b) {
    return b < a;
  }
  friend bool operator>=(const ExtendedRational& a, const ExtendedRational& b) {
    return b <= a;
  }
  friend bool operator!=(const ExtendedRational& a, const ExtendedRational& b) {
    return !(a == b);
  }

private:
  explicit ExtendedRational(Kind k) : kind_(k) {}

  Kind kind_;
  Rational value_;
};

}  // namespace negame
