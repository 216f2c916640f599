#include "negame/rational.hpp"

#include <ostream>
#include <stdexcept>

namespace negame {

namespace {

bool valid_integer(const std::string& s) {
  std::size_t i = 0;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (s[i] < '0' || s[i] > '9') return false;
  return true;
}

}  // namespace

Rational Rational::parse(const std::string& text) {
  auto slash = text.find('/');
  std::string num = text.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : text.substr(slash + 1);
  if (!valid_integer(num) || !valid_integer(den))
    throw std::invalid_argument("bad rational literal: '" + text + "'");
  if (num[0] == '+') num.erase(0, 1);  // mpz rejects a leading '+'
  if (den[0] == '+') den.erase(0, 1);
  mpz_class p(num), q(den);
  if (q == 0)
    throw std::invalid_argument("bad rational literal (zero denominator): '" +
                                text + "'");
  return Rational(p, q);
}

std::string Rational::str() const {
  if (v_.get_den() == 1) return v_.get_num().get_str();
  return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
  return os << r.str();
}

ExtendedRational ExtendedRational::parse(const std::string& text) {
  if (text == "inf" || text == "+inf") return plus_infinity();
  if (text == "-inf") return minus_infinity();
  return ExtendedRational(Rational::parse(text));
}

const Rational& ExtendedRational::finite() const {
  if (kind_ != Kind::Finite)
    throw std::logic_error("finite() on infinite ExtendedRational");
  return value_;
}

std::string ExtendedRational::str() const {
  switch (kind_) {
    case Kind::PlusInf: return "+inf";
    case Kind::MinusInf: return "-inf";
    default: return value_.str();
  }
}

bool operator==(const ExtendedRational& a, const ExtendedRational& b) {
  if (a.kind_ != b.kind_) return false;
  if (a.kind_ != ExtendedRational::Kind::Finite) return true;
  return a.value_ == b.value_;
}

bool operator<(const ExtendedRational& a, const ExtendedRational& b) {
  if (a.kind_ != b.kind_) return static_cast<int>(a.kind_) < static_cast<int>(b.kind_);
  if (a.kind_ != ExtendedRational::Kind::Finite) return false;
  return a.value_ < b.value_;
}

}  // namespace negame
