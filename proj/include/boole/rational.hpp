#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace boole {

/// Reduced fraction over 64-bit integers. Intermediate products use 128 bits;
/// a result that does not fit back into 64 bits throws std::overflow_error.
class Rational {
public:
  constexpr Rational() = default;
  constexpr Rational(std::int64_t n) : num_(n) {}  // NOLINT: implicit from integer
  Rational(std::int64_t num, std::int64_t den);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  /// "p/q", or "p" when the denominator is 1.
  std::string to_string() const;

  /// Accepts "p/q", integers, and plain decimals such as "-0.125" (converted exactly).
  static Rational parse(std::string_view text);

  Rational operator-() const;
  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }

  friend bool operator==(const Rational& a, const Rational& b) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

  /// Largest integer not greater than the value.
  std::int64_t floor() const;

private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

}  // namespace boole
