#include "dbe/rational.hpp"

#include <charconv>
#include <limits>
#include <stdexcept>

namespace dbe {

namespace {

__int128 gcd_wide(__int128 a, __int128 b) {
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
  return v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max();
}

std::int64_t parse_digits(std::string_view digits, std::string_view whole) {
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
  if (ec == std::errc::result_out_of_range) {
    throw std::overflow_error("number too large: '" + std::string(whole) + "'");
  }
  if (ec != std::errc() || ptr != digits.data() + digits.size()) {
    throw std::invalid_argument("not a number: '" + std::string(whole) + "'");
  }
  return value;
}

bool all_digits(std::string_view s) {
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

}  // namespace

Rational Rational::from_wide(__int128 num, __int128 den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const __int128 g = gcd_wide(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  if (!fits64(num) || !fits64(den)) throw std::overflow_error("rational arithmetic overflow");
  Rational r;
  r.num_ = static_cast<std::int64_t>(num);
  r.den_ = static_cast<std::int64_t>(den);
  return r;
}

Rational::Rational(std::int64_t num, std::int64_t den) { *this = from_wide(num, den); }

Rational Rational::parse(std::string_view text) {
  const std::string_view whole = text;
  if (text.empty()) throw std::invalid_argument("empty number");
  bool negative = false;
  if (text.front() == '+' || text.front() == '-') {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  if (text.empty()) throw std::invalid_argument("not a number: '" + std::string(whole) + "'");

  Rational value;
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    const auto p = text.substr(0, slash);
    const auto q = text.substr(slash + 1);
    if (p.empty() || q.empty() || !all_digits(p) || !all_digits(q)) {
      throw std::invalid_argument("not a number: '" + std::string(whole) + "'");
    }
    const std::int64_t den = parse_digits(q, whole);
    if (den == 0) throw std::invalid_argument("zero denominator: '" + std::string(whole) + "'");
    value = Rational(parse_digits(p, whole), den);
  } else if (auto dot = text.find('.'); dot != std::string_view::npos) {
    const auto ip = text.substr(0, dot);
    const auto fp = text.substr(dot + 1);
    if ((ip.empty() && fp.empty()) || !all_digits(ip) || !all_digits(fp)) {
      throw std::invalid_argument("not a number: '" + std::string(whole) + "'");
    }
    if (fp.size() > 18) throw std::overflow_error("too many decimals: '" + std::string(whole) + "'");
    std::int64_t scale = 1;
    for (std::size_t i = 0; i < fp.size(); ++i) scale *= 10;
    const std::int64_t int_part = ip.empty() ? 0 : parse_digits(ip, whole);
    const std::int64_t frac_part = fp.empty() ? 0 : parse_digits(fp, whole);
    value = from_wide(static_cast<__int128>(int_part) * scale + frac_part, scale);
  } else {
    if (!all_digits(text)) throw std::invalid_argument("not a number: '" + std::string(whole) + "'");
    value = Rational(parse_digits(text, whole));
  }
  return negative ? -value : value;
}

std::string Rational::str() const {
  return is_integer() ? std::to_string(num_) : fraction_str();
}

std::string Rational::fraction_str() const {
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational operator+(const Rational& a, const Rational& b) {
  if (a.den_ == b.den_) return Rational::from_wide(static_cast<__int128>(a.num_) + b.num_, a.den_);
  return Rational::from_wide(static_cast<__int128>(a.num_) * b.den_ + static_cast<__int128>(b.num_) * a.den_,
                             static_cast<__int128>(a.den_) * b.den_);
}

Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

Rational operator*(const Rational& a, const Rational& b) {
  return Rational::from_wide(static_cast<__int128>(a.num_) * b.num_, static_cast<__int128>(a.den_) * b.den_);
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.num_ == 0) throw std::domain_error("division by zero");
  return Rational::from_wide(static_cast<__int128>(a.num_) * b.den_, static_cast<__int128>(a.den_) * b.num_);
}

Rational Rational::operator-() const {
  if (num_ == std::numeric_limits<std::int64_t>::min()) throw std::overflow_error("rational negation overflow");
  Rational r = *this;
  r.num_ = -num_;
  return r;
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  const __int128 lhs = static_cast<__int128>(a.num_) * b.den_;
  const __int128 rhs = static_cast<__int128>(b.num_) * a.den_;
  return lhs <=> rhs;
}

}  // namespace dbe
