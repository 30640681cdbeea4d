#pragma once

#include <cstdint>
#include <string>

namespace torsmooth {

// Exact rational arithmetic on int64 numerator/denominator.
// Invariants: denominator > 0, gcd(|num|, den) == 1. Intermediate products
// run through __int128 and overflow of the reduced result throws.
// Used for sampling points on the torus, where "which rational" matters
// (functions here are not identified up to null sets).
class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(std::int64_t n) : num_(n), den_(1) {}
  Rational(std::int64_t num, std::int64_t den);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  Rational operator-() const;
  Rational operator+(const Rational& o) const;
  Rational operator-(const Rational& o) const;
  Rational operator*(const Rational& o) const;
  Rational operator/(const Rational& o) const;

  bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const Rational& o) const { return !(*this == o); }
  bool operator<(const Rational& o) const;
  bool operator<=(const Rational& o) const { return *this < o || *this == o; }
  bool operator>(const Rational& o) const { return o < *this; }
  bool operator>=(const Rational& o) const { return o <= *this; }

  // Representative in [0, 1); exact.
  Rational mod1() const;

  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  // "a/b" or "a" for integers; parse accepts both forms.
  std::string str() const;
  static Rational parse(const std::string& text);

 private:
  std::int64_t num_;
  std::int64_t den_;
};

}  // namespace torsmooth
