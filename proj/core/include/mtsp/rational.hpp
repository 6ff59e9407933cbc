#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>

namespace mtsp {

/// Exact rational number with 64-bit numerator and denominator.
///
/// Always normalized: den > 0 and gcd(|num|, den) == 1, so equality is
/// structural. Every operation widens to 128 bits and throws
/// std::overflow_error if the reduced result does not fit back into 64 bits.
class Rational {
 public:
  constexpr Rational() noexcept = default;
  constexpr Rational(std::int64_t value) noexcept : num_(value) {}  // NOLINT(implicit)
  Rational(std::int64_t num, std::int64_t den);

  /// Parses "12", "-3", "0.5", "1.25", "7/3". Throws std::invalid_argument.
  static Rational parse(std::string_view text);

  std::int64_t num() const noexcept { return num_; }
  std::int64_t den() const noexcept { return den_; }
  bool is_integer() const noexcept { return den_ == 1; }
  int sign() const noexcept { return (num_ > 0) - (num_ < 0); }

  Rational operator-() const;
  Rational& operator+=(const Rational& rhs);
  Rational& operator-=(const Rational& rhs);
  Rational& operator*=(const Rational& rhs);
  Rational& operator/=(const Rational& rhs);

  friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
  friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
  friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
  friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }

  friend bool operator==(const Rational&, const Rational&) = default;
  friend std::strong_ordering operator<=>(const Rational& lhs, const Rational& rhs);

  /// "num/den", or just "num" for integers.
  std::string to_string() const;

  /// Shortest exact decimal when the denominator has only factors 2 and 5
  /// ("63.95", "22.8", "46"). Otherwise rounds half away from zero to
  /// `max_fraction_digits` places and prefixes "~".
  std::string to_decimal(int max_fraction_digits = 10) const;

  double to_double() const noexcept { return static_cast<double>(num_) / static_cast<double>(den_); }

 private:
  struct Reduced {};
  // Trusted constructor for already-normalized values.
  constexpr Rational(std::int64_t num, std::int64_t den, Reduced) noexcept : num_(num), den_(den) {}
  friend Rational make_reduced(std::int64_t num, std::int64_t den) noexcept;

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

std::ostream& operator<<(std::ostream& os, const Rational& value);

Rational abs(const Rational& value);

}  // namespace mtsp

template <>
struct std::hash<mtsp::Rational> {
  std::size_t operator()(const mtsp::Rational& r) const noexcept {
    return std::hash<std::int64_t>{}(r.num()) * 31u + std::hash<std::int64_t>{}(r.den());
  }
};
