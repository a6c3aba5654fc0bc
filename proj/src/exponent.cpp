#include "tpk/exponent.hpp"

#include <cmath>
#include <cstdio>
#include <numeric>
#include <stdexcept>

namespace tpk {

namespace {

using i128 = __int128;

constexpr i128 kMax = static_cast<i128>(INT64_MAX);

std::optional<Rational> make(i128 n, i128 d) {
  if (d == 0) return std::nullopt;
  if (d < 0) {
    n = -n;
    d = -d;
  }
  i128 a = n < 0 ? -n : n, b = d;
  while (b != 0) {
    i128 t = a % b;
    a = b;
    b = t;
  }
  if (a > 1) {
    n /= a;
    d /= a;
  }
  if (n > kMax || n < -kMax || d > kMax) return std::nullopt;
  return Rational(static_cast<std::int64_t>(n), static_cast<std::int64_t>(d));
}

}  // namespace

Rational::Rational(std::int64_t n, std::int64_t d) {
  if (d == 0) throw std::invalid_argument("zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  std::int64_t g = std::gcd(n, d);
  if (g > 1) {
    n /= g;
    d /= g;
  }
  num = n;
  den = d;
}

Exponent Exponent::inexact(double v) {
  Exponent e;
  e.exact_.reset();
  e.value_ = v;
  return e;
}

Exponent Exponent::from_double(double v) {
  if (!std::isfinite(v)) return inexact(v);
  // Continued-fraction convergents up to the denominator bound.
  constexpr std::int64_t kMaxDen = 1000000;
  double x = v;
  std::int64_t h0 = 1, h1 = 0, k0 = 0, k1 = 1;
  for (int it = 0; it < 64; ++it) {
    double a = std::floor(x);
    if (std::abs(a) > 9e15) break;
    auto ai = static_cast<std::int64_t>(a);
    std::int64_t h2 = ai * h0 + h1, k2 = ai * k0 + k1;
    if (k2 > kMaxDen) break;
    h1 = h0;
    h0 = h2;
    k1 = k0;
    k0 = k2;
    if (static_cast<double>(h0) / static_cast<double>(k0) == v) return Exponent(h0, k0);
    double frac = x - a;
    if (frac == 0.0) break;
    x = 1.0 / frac;
  }
  return inexact(v);
}

std::optional<Exponent> Exponent::parse(const std::string& text) {
  auto slash = text.find('/');
  try {
    std::size_t used = 0;
    if (slash != std::string::npos) {
      std::string a = text.substr(0, slash), b = text.substr(slash + 1);
      long long n = std::stoll(a, &used);
      if (used != a.size()) return std::nullopt;
      long long d = std::stoll(b, &used);
      if (used != b.size() || d == 0) return std::nullopt;
      return Exponent(n, d);
    }
    double v = std::stod(text, &used);
    if (used != text.size()) return std::nullopt;
    return from_double(v);
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

bool Exponent::is_integer() const {
  if (exact_) return exact_->den == 1;
  return std::abs(value_ - std::round(value_)) < kExponentTolerance;
}

std::int64_t Exponent::nearest_integer() const {
  if (exact_ && exact_->den == 1) return exact_->num;
  return static_cast<std::int64_t>(std::llround(value_));
}

std::int64_t Exponent::ceil() const {
  if (exact_) {
    auto [n, d] = *exact_;
    std::int64_t q = n / d;
    if (q * d < n) ++q;
    return q;
  }
  double r = std::round(value_);
  if (std::abs(value_ - r) < kExponentTolerance) return static_cast<std::int64_t>(r);
  return static_cast<std::int64_t>(std::ceil(value_));
}

Exponent Exponent::operator-() const {
  if (exact_) return Exponent(Rational(-exact_->num, exact_->den));
  return inexact(-value_);
}

Exponent operator+(const Exponent& a, const Exponent& b) {
  if (a.exact_ && b.exact_) {
    auto r = make(static_cast<i128>(a.exact_->num) * b.exact_->den + static_cast<i128>(b.exact_->num) * a.exact_->den,
                  static_cast<i128>(a.exact_->den) * b.exact_->den);
    if (r) return Exponent(*r);
  }
  return Exponent::inexact(a.value_ + b.value_);
}

Exponent operator-(const Exponent& a, const Exponent& b) { return a + (-b); }

Exponent operator*(const Exponent& a, const Exponent& b) {
  if (a.exact_ && b.exact_) {
    auto r = make(static_cast<i128>(a.exact_->num) * b.exact_->num, static_cast<i128>(a.exact_->den) * b.exact_->den);
    if (r) return Exponent(*r);
  }
  return Exponent::inexact(a.value_ * b.value_);
}

Exponent operator/(const Exponent& a, const Exponent& b) {
  if (b.exact_ && b.exact_->num == 0) throw std::domain_error("division by zero exponent");
  if (a.exact_ && b.exact_) {
    auto r = make(static_cast<i128>(a.exact_->num) * b.exact_->den, static_cast<i128>(a.exact_->den) * b.exact_->num);
    if (r) return Exponent(*r);
  }
  return Exponent::inexact(a.value_ / b.value_);
}

std::string Exponent::to_string() const {
  if (exact_) {
    if (exact_->den == 1) return std::to_string(exact_->num);
    return std::to_string(exact_->num) + "/" + std::to_string(exact_->den);
  }
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value_);
  return buf;
}

Comparison compare(const Exponent& a, const Exponent& b) {
  if (a.is_exact() && b.is_exact()) {
    const auto& x = *a.exact();
    const auto& y = *b.exact();
    i128 l = static_cast<i128>(x.num) * y.den, r = static_cast<i128>(y.num) * x.den;
    return {l < r ? std::strong_ordering::less : l > r ? std::strong_ordering::greater : std::strong_ordering::equal,
            false};
  }
  double d = a.value() - b.value();
  if (std::abs(d) < kExponentTolerance) return {std::strong_ordering::equal, true};
  return {d < 0 ? std::strong_ordering::less : std::strong_ordering::greater, false};
}

Exponent reciprocal(const Exponent& p) { return Exponent(1) / p; }

Exponent conjugate_exponent(const Exponent& p) { return p / (p - Exponent(1)); }

}  // namespace tpk
