#include "beliefbound/rational.hpp"

#include <numeric>

#include "beliefbound/core.hpp"

namespace beliefbound {

namespace {

std::int64_t narrow(__int128 v) {
  if (v > INT64_MAX || v < INT64_MIN) fail(ErrorKind::Domain, "rational overflow");
  return static_cast<std::int64_t>(v);
}

Rational reduced(__int128 num, __int128 den) {
  if (den == 0) fail(ErrorKind::Domain, "rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  __int128 a = num < 0 ? -num : num, b = den;
  while (b != 0) {
    __int128 t = a % b;
    a = b;
    b = t;
  }
  if (a > 1) {
    num /= a;
    den /= a;
  }
  return Rational(narrow(num), narrow(den));
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) fail(ErrorKind::Domain, "rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  std::int64_t g = std::gcd(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  num_ = num;
  den_ = den;
}

Rational Rational::parse(const std::string& text) {
  auto bad = [&]() -> Rational { fail(ErrorKind::Input, "not an exact decimal: '" + text + "'"); };
  if (text.empty()) return bad();
  auto slash = text.find('/');
  if (slash != std::string::npos) {
    Rational n = parse(text.substr(0, slash));
    Rational d = parse(text.substr(slash + 1));
    if (n.den() != 1 || d.den() != 1 || d.num() == 0) return bad();
    return Rational(n.num(), d.num());
  }
  std::size_t i = 0;
  bool negative = false;
  if (text[0] == '-' || text[0] == '+') {
    negative = text[0] == '-';
    i = 1;
  }
  __int128 num = 0, den = 1;
  bool seen_digit = false, seen_point = false;
  for (; i < text.size(); ++i) {
    char ch = text[i];
    if (ch == '.') {
      if (seen_point) return bad();
      seen_point = true;
      continue;
    }
    if (ch == 'e' || ch == 'E') {
      int exp = std::stoi(text.substr(i + 1));
      for (; exp > 0; --exp) num *= 10;
      for (; exp < 0; ++exp) den *= 10;
      i = text.size();
      break;
    }
    if (ch < '0' || ch > '9') return bad();
    seen_digit = true;
    num = num * 10 + (ch - '0');
    if (seen_point) den *= 10;
    if (num > INT64_MAX || den > INT64_MAX) fail(ErrorKind::Domain, "decimal too precise for exact mode: " + text);
  }
  if (!seen_digit) return bad();
  return reduced(negative ? -num : num, den);
}

std::string Rational::str() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::operator+(const Rational& o) const {
  return reduced(static_cast<__int128>(num_) * o.den_ + static_cast<__int128>(o.num_) * den_,
                 static_cast<__int128>(den_) * o.den_);
}

Rational Rational::operator-(const Rational& o) const { return *this + Rational(-o.num_, o.den_); }

Rational Rational::operator*(const Rational& o) const {
  return reduced(static_cast<__int128>(num_) * o.num_, static_cast<__int128>(den_) * o.den_);
}

bool Rational::operator<(const Rational& o) const {
  return static_cast<__int128>(num_) * o.den_ < static_cast<__int128>(o.num_) * den_;
}

}  // namespace beliefbound
