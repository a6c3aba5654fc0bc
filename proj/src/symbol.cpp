#include "tpk/symbol.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>

#include "tpk/errors.hpp"

namespace tpk {

double cayley_angle(double xi) {
  if (xi < 0) return -2.0 * std::atan(1.0 / xi);
  return kPi + 2.0 * std::atan(xi);
}

double cayley_angle_shifted(double xi) {
  if (xi > 0) return -2.0 * std::atan(1.0 / xi);
  return 2.0 * std::atan(xi) - kPi;
}

RationalFunction RationalFunction::constant(cplx c) {
  RationalFunction f;
  f.scale = c;
  return f;
}

RationalFunction RationalFunction::r_power(int n) {
  RationalFunction f;
  if (n > 0) {
    f.zeros.push_back({kI, n});
    f.poles.push_back({-kI, n});
  } else if (n < 0) {
    f.zeros.push_back({-kI, -n});
    f.poles.push_back({kI, -n});
  }
  return f;
}

cplx RationalFunction::operator()(cplx xi) const {
  cplx v = scale;
  for (const auto& z : zeros) v *= std::pow(xi - z.z, z.mult);
  for (const auto& p : poles) v /= std::pow(xi - p.z, p.mult);
  return v;
}

namespace {

int total(const std::vector<Root>& roots, bool upper_only) {
  int n = 0;
  for (const auto& r : roots)
    if (!upper_only || r.z.imag() > 0) n += r.mult;
  return n;
}

bool root_less(const cplx& a, const cplx& b) {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

}  // namespace

int RationalFunction::zero_count() const { return total(zeros, false); }
int RationalFunction::pole_count() const { return total(poles, false); }
int RationalFunction::zeros_upper() const { return total(zeros, true); }
int RationalFunction::poles_upper() const { return total(poles, true); }

RationalFunction RationalFunction::canonical() const {
  auto cmp = [](const cplx& a, const cplx& b) { return root_less(a, b); };
  std::map<cplx, int, decltype(cmp)> net(cmp);
  for (const auto& z : zeros) net[z.z] += z.mult;
  for (const auto& p : poles) net[p.z] -= p.mult;
  RationalFunction out;
  out.scale = scale;
  for (const auto& [z, m] : net) {
    if (m > 0) out.zeros.push_back({z, m});
    if (m < 0) out.poles.push_back({z, -m});
  }
  return out;
}

RationalFunction RationalFunction::operator*(const RationalFunction& o) const {
  RationalFunction out;
  out.scale = scale * o.scale;
  out.zeros = zeros;
  out.zeros.insert(out.zeros.end(), o.zeros.begin(), o.zeros.end());
  out.poles = poles;
  out.poles.insert(out.poles.end(), o.poles.begin(), o.poles.end());
  return out.canonical();
}

RationalFunction RationalFunction::inverse() const {
  RationalFunction out;
  out.scale = 1.0 / scale;
  out.zeros = poles;
  out.poles = zeros;
  return out;
}

std::string Location::to_string() const {
  if (infinite) return "inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", c);
  return buf;
}

double BranchPower::phase(double xi, Side side) const {
  if (location.infinite) return cayley_angle_shifted(xi);
  bool left = xi < location.c || (xi == location.c && side == Side::Left);
  return left ? cayley_angle(xi) : cayley_angle_shifted(xi);
}

cplx BranchPower::operator()(double xi, Side side) const {
  double phi = alpha.value() * phase(xi, side);
  return {std::cos(phi), std::sin(phi)};
}

cplx BranchPower::at_plus_infinity() const { return 1.0; }

cplx BranchPower::at_minus_infinity() const {
  if (!location.infinite) return 1.0;
  double phi = -2.0 * kPi * alpha.value();
  return {std::cos(phi), std::sin(phi)};
}

cplx evaluate(const PCSymbol& symbol, double xi, Side side) {
  cplx v = symbol.rational(cplx(xi, 0.0));
  for (const auto& j : symbol.jumps) v *= j(xi, side);
  return v;
}

std::pair<cplx, cplx> limits_at(const PCSymbol& symbol, const Location& point) {
  if (!point.infinite) return {evaluate(symbol, point.c, Side::Left), evaluate(symbol, point.c, Side::Right)};
  cplx plus = symbol.rational.at_infinity(), minus = plus;
  for (const auto& j : symbol.jumps) {
    plus *= j.at_plus_infinity();
    minus *= j.at_minus_infinity();
  }
  return {plus, minus};
}

Exponent normalize_exponent(const Exponent& alpha, const Exponent& upper) {
  return alpha - Exponent((alpha - upper).ceil());
}

namespace {

Exponent upper_bound_at(const Location& point, const Exponent& p) {
  return point.infinite ? Exponent(1) - reciprocal(p) : reciprocal(p);
}

}  // namespace

Exponent jump_exponent(const PCSymbol& symbol, const Location& point) {
  auto [a, b] = limits_at(symbol, point);
  if (std::abs(a) == 0.0 || std::abs(b) == 0.0)
    throw Error(ErrorCode::ZeroLimit, "one-sided limit vanishes at " + point.to_string());
  Exponent alpha{0};
  for (const auto& j : symbol.jumps)
    if (j.location == point) alpha += j.alpha;
  return normalize_exponent(alpha, upper_bound_at(point, symbol.p));
}

PCDecomposition decompose_pc(const PCSymbol& symbol) {
  PCDecomposition d;
  d.p = symbol.p;
  const Exponent inv_p = reciprocal(symbol.p);
  const Exponent inv_q = Exponent(1) - inv_p;

  // Sum exponents per location so that repeated locations behave as one jump.
  std::vector<std::pair<Location, Exponent>> merged;
  for (const auto& j : symbol.jumps) {
    if (!std::isfinite(j.alpha.value()))
      throw Error(ErrorCode::UnsupportedExponent, "non-finite exponent at " + j.location.to_string());
    auto it = std::find_if(merged.begin(), merged.end(), [&](const auto& m) { return m.first == j.location; });
    if (it == merged.end())
      merged.emplace_back(j.location, j.alpha);
    else
      it->second += j.alpha;
  }

  int absorbed = 0;
  for (const auto& [loc, alpha] : merged) {
    const Exponent& upper = loc.infinite ? inv_q : inv_p;
    std::int64_t n = (alpha - upper).ceil();
    Exponent a = alpha - Exponent(n);
    absorbed += static_cast<int>(n);
    if (a.is_zero()) continue;
    auto at_upper = compare(a, upper);
    if (at_upper.equal() && at_upper.approximate)
      d.warnings.push_back("exponent at " + loc.to_string() + " matches the range boundary only within tolerance");
    if (loc.infinite) {
      d.alpha_inf = a;
    } else if (at_upper.equal()) {
      d.critical_jumps.push_back(loc.c);
    } else {
      d.regular_jumps.push_back({loc.c, a});
    }
  }
  std::sort(d.regular_jumps.begin(), d.regular_jumps.end(),
            [](const RegularJump& x, const RegularJump& y) { return x.c < y.c; });
  std::sort(d.critical_jumps.begin(), d.critical_jumps.end());
  d.h = (symbol.rational * RationalFunction::r_power(absorbed)).canonical();
  return d;
}

PCSymbol recompose(const PCDecomposition& d) {
  PCSymbol s;
  s.p = d.p;
  s.rational = d.h;
  if (!d.alpha_inf.is_zero()) s.jumps.push_back({Location::inf(), d.alpha_inf});
  for (const auto& j : d.regular_jumps) s.jumps.push_back({Location::at(j.c), j.alpha});
  for (double c : d.critical_jumps) s.jumps.push_back({Location::at(c), reciprocal(d.p)});
  return s;
}

cplx evaluate(const PCDecomposition& d, double xi, Side side) { return evaluate(recompose(d), xi, side); }

const char* diagnostic_name(Diagnostic d) {
  switch (d) {
    case Diagnostic::RootOnRealAxis: return "RootOnRealAxis";
    case Diagnostic::DegreeMismatch: return "DegreeMismatch";
    case Diagnostic::DuplicateJumpLocation: return "DuplicateJumpLocation";
    case Diagnostic::NonRealExponent: return "NonRealExponent";
  }
  return "Unknown";
}

std::vector<Diagnostic> validate(const PCSymbol& symbol) {
  std::vector<Diagnostic> out;
  const auto& f = symbol.rational;
  auto on_axis = [](const Root& r) { return r.z.imag() == 0.0; };
  if (std::any_of(f.zeros.begin(), f.zeros.end(), on_axis) || std::any_of(f.poles.begin(), f.poles.end(), on_axis))
    out.push_back(Diagnostic::RootOnRealAxis);
  if (f.zero_count() != f.pole_count()) out.push_back(Diagnostic::DegreeMismatch);
  for (std::size_t a = 0; a < symbol.jumps.size(); ++a)
    for (std::size_t b = a + 1; b < symbol.jumps.size(); ++b)
      if (symbol.jumps[a].location == symbol.jumps[b].location) {
        out.push_back(Diagnostic::DuplicateJumpLocation);
        a = symbol.jumps.size();
        break;
      }
  for (const auto& j : symbol.jumps)
    if (!std::isfinite(j.alpha.value())) {
      out.push_back(Diagnostic::NonRealExponent);
      break;
    }
  return out;
}

PCSymbol operator*(const PCSymbol& a, const PCSymbol& b) {
  PCSymbol s;
  s.p = a.p;
  s.rational = a.rational * b.rational;
  s.jumps = a.jumps;
  for (const auto& j : b.jumps) {
    auto it = std::find_if(s.jumps.begin(), s.jumps.end(), [&](const BranchPower& x) { return x.location == j.location; });
    if (it == s.jumps.end())
      s.jumps.push_back(j);
    else
      it->alpha += j.alpha;
  }
  return s;
}

}  // namespace tpk
