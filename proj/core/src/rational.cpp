#include "mtsp/rational.hpp"

#include <charconv>
#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace mtsp {
namespace {

__extension__ using Wide = __int128;

constexpr Wide kMax = std::numeric_limits<std::int64_t>::max();
constexpr Wide kMin = std::numeric_limits<std::int64_t>::min();

Wide wide_abs(Wide v) { return v < 0 ? -v : v; }

Wide wide_gcd(Wide a, Wide b) {
  a = wide_abs(a);
  b = wide_abs(b);
  while (b != 0) {
    Wide t = a % b;
    a = b;
    b = t;
  }
  return a;
}

Wide checked_mul(Wide a, Wide b) {
  // Operands are 64-bit values, so the product always fits in 128 bits.
  return a * b;
}

std::int64_t parse_int(std::string_view digits, std::string_view whole) {
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
  if (ec != std::errc{} || ptr != digits.data() + digits.size() || digits.empty()) {
    throw std::invalid_argument("not a rational literal: '" + std::string(whole) + "'");
  }
  return value;
}

}  // namespace

Rational make_reduced(std::int64_t num, std::int64_t den) noexcept { return Rational(num, den, Rational::Reduced{}); }

namespace {

Rational from_wide(Wide num, Wide den) {
  if (den == 0) throw std::domain_error("division by zero");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  Wide g = wide_gcd(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  if (num > kMax || num < kMin || den > kMax) {
    throw std::overflow_error("rational arithmetic overflow");
  }
  return make_reduced(static_cast<std::int64_t>(num), static_cast<std::int64_t>(den));
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  *this = from_wide(num, den);
}

Rational Rational::parse(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  if (s.empty()) throw std::invalid_argument("empty rational literal");

  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    return Rational(parse_int(s.substr(0, slash), text), parse_int(s.substr(slash + 1), text));
  }

  bool negative = false;
  if (s.front() == '-' || s.front() == '+') {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  std::string_view int_part = s;
  std::string_view frac_part;
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    int_part = s.substr(0, dot);
    frac_part = s.substr(dot + 1);
    if (frac_part.empty() && int_part.empty()) {
      throw std::invalid_argument("not a rational literal: '" + std::string(text) + "'");
    }
  }
  if (frac_part.find_first_of("+-") != std::string_view::npos) {
    throw std::invalid_argument("not a rational literal: '" + std::string(text) + "'");
  }
  Wide num = int_part.empty() ? 0 : parse_int(int_part, text);
  Wide den = 1;
  for (char c : frac_part) {
    if (c < '0' || c > '9') {
      throw std::invalid_argument("not a rational literal: '" + std::string(text) + "'");
    }
    num = num * 10 + (c - '0');
    den *= 10;
    if (num > kMax || den > kMax) throw std::overflow_error("rational literal too long: " + std::string(text));
  }
  return from_wide(negative ? -num : num, den);
}

Rational Rational::operator-() const { return from_wide(-Wide{num_}, den_); }

Rational& Rational::operator+=(const Rational& rhs) {
  if (den_ == rhs.den_) {
    *this = from_wide(Wide{num_} + rhs.num_, den_);
  } else {
    *this = from_wide(checked_mul(num_, rhs.den_) + checked_mul(rhs.num_, den_),
                      checked_mul(den_, rhs.den_));
  }
  return *this;
}

Rational& Rational::operator-=(const Rational& rhs) { return *this += -rhs; }

Rational& Rational::operator*=(const Rational& rhs) {
  // Cross-reduce first so intermediate values stay small.
  Wide g1 = wide_gcd(num_, rhs.den_);
  Wide g2 = wide_gcd(rhs.num_, den_);
  if (g1 == 0) g1 = 1;
  if (g2 == 0) g2 = 1;
  *this = from_wide((Wide{num_} / g1) * (Wide{rhs.num_} / g2), (Wide{den_} / g2) * (Wide{rhs.den_} / g1));
  return *this;
}

Rational& Rational::operator/=(const Rational& rhs) {
  if (rhs.num_ == 0) throw std::domain_error("division by zero");
  Rational inverse;
  inverse = from_wide(rhs.den_, rhs.num_);
  return *this *= inverse;
}

std::strong_ordering operator<=>(const Rational& lhs, const Rational& rhs) {
  if (lhs.den_ == rhs.den_) return lhs.num_ <=> rhs.num_;
  Wide a = Wide{lhs.num_} * rhs.den_;
  Wide b = Wide{rhs.num_} * lhs.den_;
  return a < b ? std::strong_ordering::less : (a > b ? std::strong_ordering::greater : std::strong_ordering::equal);
}

std::string Rational::to_string() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

std::string Rational::to_decimal(int max_fraction_digits) const {
  std::int64_t d = den_;
  int twos = 0;
  int fives = 0;
  while (d % 2 == 0) { d /= 2; ++twos; }
  while (d % 5 == 0) { d /= 5; ++fives; }
  const bool terminating = d == 1;
  const int digits = terminating ? std::max(twos, fives) : max_fraction_digits;

  Wide n = wide_abs(num_);
  Wide scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  Wide scaled = n * scale;
  Wide q = scaled / den_;
  if (!terminating && (scaled % den_) * 2 >= den_) ++q;

  Wide whole = q / scale;
  Wide frac = q % scale;
  auto to_str = [](Wide v) {
    if (v == 0) return std::string("0");
    std::string out;
    while (v > 0) {
      out.insert(out.begin(), static_cast<char>('0' + static_cast<int>(v % 10)));
      v /= 10;
    }
    return out;
  };
  std::string out = num_ < 0 && q != 0 ? "-" : "";
  out += to_str(whole);
  if (digits > 0) {
    std::string f = to_str(frac);
    f.insert(f.begin(), static_cast<std::size_t>(digits) - f.size(), '0');
    if (!terminating) {
      while (!f.empty() && f.back() == '0') f.pop_back();
    }
    if (!f.empty()) out += "." + f;
  }
  return terminating ? out : "~" + out;
}

std::ostream& operator<<(std::ostream& os, const Rational& value) { return os << value.to_string(); }

Rational abs(const Rational& value) { return value.sign() < 0 ? -value : value; }

}  // namespace mtsp
