#include "piclab/info/rational.h"

#include <limits>
#include <stdexcept>

namespace piclab::info {

namespace {

__int128 gcd128(__int128 a, __int128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    __int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

bool fits64(__int128 v) {
  return v >= std::numeric_limits<std::int64_t>::min() &&
         v <= std::numeric_limits<std::int64_t>::max();
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) {
    throw std::invalid_argument("rational with zero denominator");
  }
  *this = from_wide(num, den);
}

Rational Rational::from_wide(__int128 num, __int128 den) {
  if (den < 0) {
    num = -num;
    den = -den;
  }
  __int128 g = gcd128(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  if (num == 0) den = 1;
  if (!fits64(num) || !fits64(den)) {
    throw std::overflow_error("rational arithmetic overflowed 64 bits");
  }
  Rational r;
  r.num_ = static_cast<std::int64_t>(num);
  r.den_ = static_cast<std::int64_t>(den);
  return r;
}

Rational& Rational::operator+=(const Rational& other) {
  if (den_ == other.den_) {
    *this = from_wide(static_cast<__int128>(num_) + other.num_, den_);
    return *this;
  }
  __int128 n = static_cast<__int128>(num_) * other.den_ +
               static_cast<__int128>(other.num_) * den_;
  __int128 d = static_cast<__int128>(den_) * other.den_;
  *this = from_wide(n, d);
  return *this;
}

Rational& Rational::operator-=(const Rational& other) { return *this += -other; }

Rational& Rational::operator*=(const Rational& other) {
  *this = from_wide(static_cast<__int128>(num_) * other.num_,
                    static_cast<__int128>(den_) * other.den_);
  return *this;
}

Rational& Rational::operator/=(const Rational& other) {
  if (other.num_ == 0) throw std::domain_error("rational division by zero");
  *this = from_wide(static_cast<__int128>(num_) * other.den_,
                    static_cast<__int128>(den_) * other.num_);
  return *this;
}

Rational Rational::operator-() const {
  Rational r;
  r.num_ = -num_;
  r.den_ = den_;
  return r;
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  __int128 lhs = static_cast<__int128>(a.num_) * b.den_;
  __int128 rhs = static_cast<__int128>(b.num_) * a.den_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string Rational::to_string() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::parse(std::string_view text) {
  auto parse_int = [&](std::string_view s) -> std::int64_t {
    if (s.empty()) throw std::invalid_argument("empty integer in rational");
    std::size_t pos = 0;
    bool neg = false;
    if (s[0] == '-' || s[0] == '+') {
      neg = s[0] == '-';
      pos = 1;
    }
    if (pos == s.size()) throw std::invalid_argument("malformed rational");
    __int128 v = 0;
    for (; pos < s.size(); ++pos) {
      char c = s[pos];
      if (c < '0' || c > '9') {
        throw std::invalid_argument("malformed rational: " + std::string(text));
      }
      v = v * 10 + (c - '0');
      if (!fits64(v)) throw std::overflow_error("rational literal too large");
    }
    return static_cast<std::int64_t>(neg ? -v : v);
  };

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    return Rational(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view frac = text.substr(dot + 1);
    std::string digits = std::string(text.substr(0, dot)) + std::string(frac);
    if (digits.empty() || digits == "-" || digits == "+") digits += "0";
    std::int64_t den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) {
      if (den > std::numeric_limits<std::int64_t>::max() / 10) {
        throw std::overflow_error("decimal literal has too many digits");
      }
      den *= 10;
    }
    return Rational(parse_int(digits), den);
  }
  return Rational(parse_int(text));
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
  return os << r.to_string();
}

}  // namespace piclab::info
