#include "tpk/factor_expression.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace tpk {

const char* branch_name(Branch b) { return b == Branch::Upper ? "upper" : "lower"; }

FactorExpression FactorExpression::constant(cplx c) {
  FactorExpression f;
  f.scale = c;
  return f;
}

FactorExpression FactorExpression::power(cplx a, Exponent beta, Branch branch) {
  FactorExpression f;
  f.terms.push_back({a, beta, branch});
  return f.canonical();
}

FactorExpression FactorExpression::from_rational(const RationalFunction& r) {
  FactorExpression f;
  f.scale = r.scale;
  for (const auto& z : r.zeros) f.terms.push_back({z.z, Exponent(z.mult), Branch::Upper});
  for (const auto& p : r.poles) f.terms.push_back({p.z, Exponent(-p.mult), Branch::Upper});
  return f.canonical();
}

namespace {

Branch forced_branch(const FactorTerm& t) {
  if (t.a.imag() > 0) return Branch::Lower;
  if (t.a.imag() < 0) return Branch::Upper;
  if (t.beta.is_integer()) return Branch::Upper;
  return t.branch;
}

bool key_less(const FactorTerm& x, const FactorTerm& y) {
  if (x.a.real() != y.a.real()) return x.a.real() < y.a.real();
  if (x.a.imag() != y.a.imag()) return x.a.imag() < y.a.imag();
  return x.branch < y.branch;
}

bool same_key(const FactorTerm& x, const FactorTerm& y) { return x.a == y.a && x.branch == y.branch; }

}  // namespace

FactorExpression FactorExpression::canonical() const {
  FactorExpression out;
  out.scale = scale;
  out.terms = terms;
  for (;;) {
    for (auto& t : out.terms) t.branch = forced_branch(t);
    std::sort(out.terms.begin(), out.terms.end(), key_less);
    std::vector<FactorTerm> merged;
    bool changed = false;
    for (const auto& t : out.terms) {
      if (!merged.empty() && same_key(merged.back(), t)) {
        merged.back().beta += t.beta;
        changed = true;
      } else {
        merged.push_back(t);
      }
    }
    std::erase_if(merged, [](const FactorTerm& t) { return t.beta.is_zero(); });
    out.terms = std::move(merged);
    if (!changed) break;
  }
  return out;
}

cplx FactorExpression::operator()(double xi) const {
  cplx v = scale;
  for (const auto& t : terms) {
    double im = t.a.imag() == 0.0 ? 0.0 : -t.a.imag();
    cplx z(xi - t.a.real(), im);
    if (t.beta.is_integer()) {
      v *= std::pow(z, static_cast<int>(t.beta.nearest_integer()));
      continue;
    }
    double arg = std::atan2(z.imag(), z.real());
    if (t.branch == Branch::Upper && arg <= -kPi / 2) arg += 2 * kPi;
    if (t.branch == Branch::Lower && arg > kPi / 2) arg -= 2 * kPi;
    double b = t.beta.value();
    v *= std::polar(std::pow(std::abs(z), b), b * arg);
  }
  return v;
}

FactorExpression FactorExpression::operator*(const FactorExpression& o) const {
  FactorExpression f;
  f.scale = scale * o.scale;
  f.terms = terms;
  f.terms.insert(f.terms.end(), o.terms.begin(), o.terms.end());
  return f.canonical();
}

FactorExpression FactorExpression::operator/(const FactorExpression& o) const { return *this * o.inverse(); }

FactorExpression FactorExpression::inverse() const {
  FactorExpression f;
  f.scale = 1.0 / scale;
  for (const auto& t : terms) f.terms.push_back({t.a, -t.beta, t.branch});
  return f.canonical();
}

FactorExpression FactorExpression::conj() const {
  FactorExpression f;
  f.scale = std::conj(scale);
  for (const auto& t : terms)
    f.terms.push_back({std::conj(t.a), t.beta, t.branch == Branch::Upper ? Branch::Lower : Branch::Upper});
  return f.canonical();
}

Exponent FactorExpression::degree() const {
  Exponent d{0};
  for (const auto& t : terms) d += t.beta;
  return d;
}

bool FactorExpression::is_fractional() const {
  return std::any_of(terms.begin(), terms.end(), [](const FactorTerm& t) { return !t.beta.is_integer(); });
}

Exponent FactorExpression::exponent_at(cplx a) const {
  Exponent e{0};
  for (const auto& t : terms)
    if (t.a == a) e += t.beta;
  return e;
}

std::string FactorExpression::to_string() const {
  char buf[96];
  std::snprintf(buf, sizeof buf, "(%.12g%+.12gi)", scale.real(), scale.imag());
  std::string s = buf;
  for (const auto& t : terms) {
    std::snprintf(buf, sizeof buf, "*(x-(%.12g%+.12gi))^(%s)", t.a.real(), t.a.imag(), t.beta.to_string().c_str());
    s += buf;
    if (t.a.imag() == 0.0 && !t.beta.is_integer()) s += t.branch == Branch::Upper ? "[U]" : "[L]";
  }
  return s;
}

namespace {

bool same_terms(const FactorExpression& x, const FactorExpression& y) {
  if (x.terms.size() != y.terms.size()) return false;
  for (std::size_t i = 0; i < x.terms.size(); ++i) {
    const auto& s = x.terms[i];
    const auto& t = y.terms[i];
    if (std::abs(s.a - t.a) > 1e-12 * (1 + std::abs(s.a)) || s.branch != t.branch || !(s.beta == t.beta))
      return false;
  }
  return true;
}

}  // namespace

bool same_form(const FactorExpression& a, const FactorExpression& b, double tol) {
  auto x = a.canonical(), y = b.canonical();
  return same_terms(x, y) && std::abs(x.scale - y.scale) <= tol * std::abs(x.scale);
}

bool same_up_to_constant(const FactorExpression& a, const FactorExpression& b) {
  return same_terms(a.canonical(), b.canonical());
}

}  // namespace tpk
