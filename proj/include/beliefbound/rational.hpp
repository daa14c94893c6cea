#pragma once

#include <cstdint>
#include <string>

namespace beliefbound {

// Exact fraction with 64-bit parts, always reduced and with a positive
// denominator. Arithmetic that would overflow throws a domain error.
class Rational {
 public:
  Rational() = default;
  Rational(std::int64_t num, std::int64_t den = 1);

  // Parses "3", "-0.25", "1/5".
  static Rational parse(const std::string& text);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  std::string str() const;

  Rational operator+(const Rational& o) const;
  Rational operator-(const Rational& o) const;
  Rational operator*(const Rational& o) const;
  Rational& operator+=(const Rational& o) { return *this = *this + o; }

  bool operator==(const Rational&) const = default;
  bool operator<(const Rational& o) const;

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

}  // namespace beliefbound
