#include "rational.hpp"

#include <numeric>
#include <stdexcept>

namespace torsmooth {

namespace {

using i128 = __int128;

std::int64_t checked_narrow(i128 v, const char* what) {
  if (v > INT64_MAX || v < INT64_MIN) {
    throw std::overflow_error(std::string("Rational: overflow in ") + what);
  }
  return static_cast<std::int64_t>(v);
}

i128 gcd128(i128 a, i128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

struct ReducedParts {
  std::int64_t num;
  std::int64_t den;
};

ReducedParts reduce_parts(i128 num, i128 den, const char* what) {
  if (den == 0) throw std::invalid_argument("Rational: zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  i128 g = gcd128(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  return {checked_narrow(num, what), checked_narrow(den, what)};
}

Rational make_reduced(i128 num, i128 den, const char* what) {
  ReducedParts p = reduce_parts(num, den, what);
  return Rational(p.num, p.den);
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
  ReducedParts p = reduce_parts(num, den, "constructor");
  num_ = p.num;
  den_ = p.den;
}

Rational Rational::operator-() const {
  Rational r;
  r.num_ = checked_narrow(-static_cast<i128>(num_), "negation");
  r.den_ = den_;
  return r;
}

Rational Rational::operator+(const Rational& o) const {
  return make_reduced(static_cast<i128>(num_) * o.den_ + static_cast<i128>(o.num_) * den_,
                      static_cast<i128>(den_) * o.den_, "addition");
}

Rational Rational::operator-(const Rational& o) const { return *this + (-o); }

Rational Rational::operator*(const Rational& o) const {
  return make_reduced(static_cast<i128>(num_) * o.num_, static_cast<i128>(den_) * o.den_,
                      "multiplication");
}

Rational Rational::operator/(const Rational& o) const {
  if (o.num_ == 0) throw std::invalid_argument("Rational: division by zero");
  return make_reduced(static_cast<i128>(num_) * o.den_, static_cast<i128>(den_) * o.num_,
                      "division");
}

bool Rational::operator<(const Rational& o) const {
  return static_cast<i128>(num_) * o.den_ < static_cast<i128>(o.num_) * den_;
}

Rational Rational::mod1() const {
  std::int64_t m = num_ % den_;
  if (m < 0) m += den_;
  Rational r;
  r.num_ = m;
  r.den_ = den_;
  return r;
}

std::string Rational::str() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::parse(const std::string& text) {
  auto slash = text.find('/');
  try {
    if (slash == std::string::npos) {
      return Rational(std::stoll(text));
    }
    std::int64_t n = std::stoll(text.substr(0, slash));
    std::int64_t d = std::stoll(text.substr(slash + 1));
    return Rational(n, d);
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("Rational: cannot parse '" + text + "'");
  } catch (const std::out_of_range&) {
    throw std::invalid_argument("Rational: out of range '" + text + "'");
  }
}

}  // namespace torsmooth
