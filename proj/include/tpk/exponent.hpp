#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>

namespace tpk {

/// Reduced fraction with a positive denominator.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Rational() = default;
  Rational(std::int64_t n, std::int64_t d = 1);

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  bool operator==(const Rational&) const = default;
};

/// Tolerance used whenever an exponent comparison involves inexact data.
inline constexpr double kExponentTolerance = 1e-12;

/// A real exponent that stays an exact fraction as long as every input was one.
///
/// Arithmetic between exact values is exact (falling back to floating point on
/// int64 overflow); anything touching an inexact value becomes inexact.
class Exponent {
 public:
  Exponent() = default;
  Exponent(std::int64_t n, std::int64_t d = 1) : exact_(Rational(n, d)), value_(exact_->value()) {}
  Exponent(Rational r) : exact_(r), value_(r.value()) {}

  static Exponent inexact(double v);
  /// Recovers an exact fraction when `v` is the double nearest to some n/d with
  /// d <= 10^6; otherwise the result is inexact.
  static Exponent from_double(double v);
  /// Parses "3", "-1/2", "0.25".
  static std::optional<Exponent> parse(const std::string& text);

  double value() const { return value_; }
  bool is_exact() const { return exact_.has_value(); }
  const std::optional<Rational>& exact() const { return exact_; }

  /// Integer test: exact for fractions, within kExponentTolerance otherwise.
  bool is_integer() const;
  std::int64_t nearest_integer() const;
  bool is_zero() const { return is_integer() && nearest_integer() == 0; }

  /// Smallest integer n with n >= *this (inexact values snap to a nearby integer first).
  std::int64_t ceil() const;

  Exponent operator-() const;
  friend Exponent operator+(const Exponent& a, const Exponent& b);
  friend Exponent operator-(const Exponent& a, const Exponent& b);
  friend Exponent operator*(const Exponent& a, const Exponent& b);
  friend Exponent operator/(const Exponent& a, const Exponent& b);
  Exponent& operator+=(const Exponent& o) { return *this = *this + o; }
  Exponent& operator-=(const Exponent& o) { return *this = *this - o; }

  std::string to_string() const;

 private:
  std::optional<Rational> exact_ = Rational(0);
  double value_ = 0.0;
};

/// Outcome of comparing two exponents. `approximate` is set when the verdict
/// `equal` came from the floating-point tolerance rather than exact arithmetic.
struct Comparison {
  std::strong_ordering order = std::strong_ordering::equal;
  bool approximate = false;

  bool less() const { return order == std::strong_ordering::less; }
  bool equal() const { return order == std::strong_ordering::equal; }
  bool greater() const { return order == std::strong_ordering::greater; }
};

Comparison compare(const Exponent& a, const Exponent& b);

inline bool operator==(const Exponent& a, const Exponent& b) { return compare(a, b).equal(); }
inline bool operator<(const Exponent& a, const Exponent& b) { return compare(a, b).less(); }
inline bool operator<=(const Exponent& a, const Exponent& b) { return !compare(a, b).greater(); }
inline bool operator>(const Exponent& a, const Exponent& b) { return compare(a, b).greater(); }
inline bool operator>=(const Exponent& a, const Exponent& b) { return !compare(a, b).less(); }

/// Hardy-space exponent pair helpers.
Exponent conjugate_exponent(const Exponent& p);  // p' with 1/p + 1/p' = 1
Exponent reciprocal(const Exponent& p);

}  // namespace tpk
