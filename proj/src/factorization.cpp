#include "tpk/factorization.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "tpk/errors.hpp"

namespace tpk {

namespace {

// beta * t > -1 (strict); an exact tie is divergent.
bool exceeds_minus_one(const Exponent& bt, const std::string& where) {
  auto c = compare(bt, Exponent(-1));
  if (c.equal() && c.approximate)
    throw Error(ErrorCode::UndecidableOnBoundary, "integrability exponent within tolerance of -1 " + where);
  return c.greater();
}

bool analytic_on(const FactorExpression& f, HalfPlane side) {
  for (const auto& t : f.terms) {
    double im = t.a.imag();
    bool same_side = side == HalfPlane::Plus ? im > 0 : im < 0;
    if (same_side) {
      if (!t.beta.is_integer() || t.beta.nearest_integer() < 0) return false;
    } else if (im == 0 && !t.beta.is_integer()) {
      Branch need = side == HalfPlane::Plus ? Branch::Upper : Branch::Lower;
      if (t.branch != need) return false;
    }
  }
  return true;
}

FactorExpression unweighted(const FactorExpression& f, Space space) {
  if (!space.weighted) return f;
  cplx base = space.side == HalfPlane::Plus ? -kI : kI;
  return f * FactorExpression::power(base, Exponent(-1));
}

// Exponents at real base points, summed over branches.
std::vector<std::pair<double, Exponent>> real_exponents(const FactorExpression& f) {
  std::vector<std::pair<double, Exponent>> out;
  for (const auto& t : f.terms) {
    if (t.a.imag() != 0.0) continue;
    auto it = std::find_if(out.begin(), out.end(), [&](const auto& e) { return e.first == t.a.real(); });
    if (it == out.end())
      out.emplace_back(t.a.real(), t.beta);
    else
      it->second += t.beta;
  }
  return out;
}

bool bounded_invertible(const FactorExpression& f, HalfPlane side) {
  for (const auto& t : f.terms) {
    if (!t.beta.is_integer()) return false;
    double im = t.a.imag();
    if (side == HalfPlane::Minus ? im <= 0 : im >= 0) return false;
  }
  return f.degree().is_zero();
}

Exponent conj_exp(const Exponent& p) { return conjugate_exponent(p); }

}  // namespace

bool space_membership(const FactorExpression& f0, Space space, const Exponent& t) {
  if (!(t > Exponent(1))) throw Error(ErrorCode::InvalidArgument, "space exponent must exceed 1");
  if (f0.scale == cplx(0.0)) return true;
  auto f = unweighted(f0, space);
  if (!analytic_on(f, space.side)) return false;
  for (const auto& [a, beta] : real_exponents(f))
    if (!exceeds_minus_one(beta * t, "at a real base point")) return false;
  // decay at infinity: degree * t < -1, i.e. -degree * t > 1
  Exponent dt = f.degree() * t;
  auto c = compare(dt, Exponent(-1));
  if (c.equal() && c.approximate)
    throw Error(ErrorCode::UndecidableOnBoundary, "decay exponent within tolerance of -1 at infinity");
  return c.less();
}

Interval membership_interval(const FactorExpression& f0, Space space) {
  auto f = unweighted(f0, space);
  const double inf = std::numeric_limits<double>::infinity();
  if (f0.scale == cplx(0.0)) return {1.0, inf};
  if (!analytic_on(f, space.side)) return {1.0, 1.0};
  Interval iv{1.0, inf};
  for (const auto& [a, beta] : real_exponents(f))
    if (beta.value() < 0) iv.hi = std::min(iv.hi, -1.0 / beta.value());
  double d = f.degree().value();
  if (d >= 0) return {1.0, 1.0};
  iv.lo = std::max(iv.lo, -1.0 / d);
  return iv;
}

const char* tri_name(Tri t) {
  switch (t) {
    case Tri::No: return "no";
    case Tri::Yes: return "yes";
    case Tri::Undecided: return "undecided";
  }
  return "undecided";
}

Tri membership(const FactorExpression& f, Space space, const Exponent& t) {
  try {
    return space_membership(f, space, t) ? Tri::Yes : Tri::No;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::UndecidableOnBoundary) return Tri::Undecided;
    throw;
  }
}

FactorClass FactorClass::p_class(const Exponent& p) { return {Kind::P, p, conj_exp(p)}; }
FactorClass FactorClass::js_class(const Exponent& j, const Exponent& s) { return {Kind::JS, j, s}; }

cplx Factorization::operator()(double xi) const {
  return minus(xi) * std::pow(r_of(cplx(xi, 0.0)), index) * plus(xi);
}

MembershipFlags compute_flags(const FactorExpression& minus, const FactorExpression& plus, const Exponent& p) {
  MembershipFlags m;
  Exponent q = conj_exp(p);
  m.minus_in_Hp_minus = membership(minus, kWminus, p);
  m.plus_inv_in_Hp_plus = membership(plus.inverse(), kWplus, p);
  m.minus_inv_in_Hq_minus = membership(minus.inverse(), kWminus, q);
  m.plus_in_Hq_plus = membership(plus, kWplus, q);
  return m;
}

bool is_js_factorization(const FactorExpression& minus, const FactorExpression& plus, const Exponent& j,
                         const Exponent& s) {
  if (!(j > Exponent(1)) || !(s > Exponent(1))) return false;
  if (reciprocal(j) + reciprocal(s) > Exponent(1)) return false;
  return space_membership(minus, kWminus, j) && space_membership(minus.inverse(), kWminus, s) &&
         space_membership(plus, kWplus, s) && space_membership(plus.inverse(), kWplus, j);
}

Factorization normalized(Factorization f) {
  f.minus.scale *= f.plus.scale;
  f.plus.scale = 1.0;
  return f;
}

Factorization js_factorization(const FactorExpression& minus, int index, const FactorExpression& plus,
                               const Exponent& j, const Exponent& s, const Exponent& p) {
  bool ok;
  try {
    ok = is_js_factorization(minus, plus, j, s);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::UndecidableOnBoundary) throw Error(ErrorCode::MembershipUndecided, e.what());
    throw;
  }
  if (!ok)
    throw Error(ErrorCode::InvalidArgument,
                "factors do not form a (" + j.to_string() + "," + s.to_string() + ")-factorization");
  Factorization f;
  f.minus = minus.canonical();
  f.plus = plus.canonical();
  f.index = index;
  f.cls = (j == p && s == conj_exp(p)) ? FactorClass::p_class(p) : FactorClass::js_class(j, s);
  f.p = p;
  f.bounded = bounded_invertible(f.minus, HalfPlane::Minus) && bounded_invertible(f.plus, HalfPlane::Plus);
  f = normalized(f);
  f.flags = compute_flags(f.minus, f.plus, p);
  return f;
}

Factorization rational_wh(const RationalFunction& h0, const Exponent& p) {
  auto h = h0.canonical();
  int k = h.zeros_upper() - h.poles_upper();
  Factorization f;
  f.p = p;
  f.index = k;
  f.cls = FactorClass::p_class(p);
  f.bounded = true;
  f.minus = FactorExpression::constant(h.scale);
  f.plus = FactorExpression::constant(1.0);
  auto place = [&](cplx z, int m) {
    auto& side = z.imag() > 0 ? f.minus : f.plus;
    side = side * FactorExpression::power(z, Exponent(m));
  };
  for (const auto& z : h.zeros) place(z.z, z.mult);
  for (const auto& q : h.poles) place(q.z, -q.mult);
  f.minus = f.minus * FactorExpression::power(kI, Exponent(-k));
  f.plus = f.plus * FactorExpression::power(-kI, Exponent(k));
  f.flags = compute_flags(f.minus, f.plus, p);
  return f;
}

namespace {

// h_- (xi-i)^a_inf prod ((xi-i)/(xi-c))^a  and  h_+ (xi+i)^-a_inf prod ((xi-c)/(xi+i))^a.
Factorization pc_factors(const PCDecomposition& d) {
  Factorization f = rational_wh(d.h, d.p);
  f.minus = f.minus * FactorExpression::power(kI, d.alpha_inf);
  f.plus = f.plus * FactorExpression::power(-kI, -d.alpha_inf);
  for (const auto& j : d.regular_jumps) {
    f.minus = f.minus * FactorExpression::power(kI, j.alpha) * FactorExpression::power(j.c, -j.alpha, Branch::Lower);
    f.plus = f.plus * FactorExpression::power(j.c, j.alpha, Branch::Upper) * FactorExpression::power(-kI, -j.alpha);
  }
  f.bounded = d.alpha_inf.is_zero() && d.regular_jumps.empty();
  f.flags = compute_flags(f.minus, f.plus, d.p);
  return f;
}

}  // namespace

Factorization pc_p_factorization(const PCDecomposition& d) {
  if (d.alpha_inf == Exponent(1) - reciprocal(d.p))
    throw Error(ErrorCode::NoPFactorization, "alpha_inf equals 1/p' = " + (Exponent(1) - reciprocal(d.p)).to_string());
  if (!d.critical_jumps.empty())
    throw Error(ErrorCode::NoPFactorization, "jump exponent 1/p at a finite point");
  auto f = pc_factors(d);
  f.cls = FactorClass::p_class(d.p);
  return f;
}

QsFactorization qs_factorization(const PCDecomposition& d) {
  if (!d.critical_jumps.empty())
    throw Error(ErrorCode::InvalidArgument, "critical jumps must be split off before the (q,p')-factorization");
  Exponent inv_q = Exponent(1) - reciprocal(d.p);
  if (!(d.alpha_inf == inv_q)) return {pc_p_factorization(d), d.p};

  double bound = std::numeric_limits<double>::infinity();
  for (const auto& j : d.regular_jumps)
    if (j.alpha.value() > 0) bound = std::min(bound, 1.0 / j.alpha.value());
  Exponent q = std::isinf(bound) ? d.p + Exponent(1) : Exponent::from_double(std::sqrt(d.p.value() * bound));

  auto f = pc_factors(d);
  Exponent s = conj_exp(d.p);
  f.cls = FactorClass::js_class(q, s);
  if (!is_js_factorization(f.minus, f.plus, q, s))
    throw Error(ErrorCode::InconsistentCheck, "constructed factors fail the (q,p') memberships");
  return {f, q};
}

namespace {

std::optional<FactorClass> product_class(const Factorization& a, const Factorization& b, const Factorization& c) {
  if (b.bounded && c.bounded) return FactorClass::p_class(a.p);
  if (b.bounded || c.bounded) {
    const auto& other = b.bounded ? c : b;
    if (is_js_factorization(a.minus, a.plus, other.cls.j, other.cls.s)) return other.cls;
    return std::nullopt;
  }
  // b is an (m, l)-, c a (j, s)-factorization: 1/p' = 1/l + 1/s, 1/q' = 1/m + 1/j.
  Exponent inv_pp = reciprocal(b.cls.s) + reciprocal(c.cls.s);
  Exponent inv_qq = reciprocal(b.cls.j) + reciprocal(c.cls.j);
  if (!(inv_pp < Exponent(1)) || !(inv_qq < Exponent(1))) return std::nullopt;
  Exponent pp = reciprocal(Exponent(1) - inv_pp), qq = reciprocal(Exponent(1) - inv_qq);
  if (!is_js_factorization(a.minus, a.plus, pp, qq)) return std::nullopt;
  if (pp == a.p && qq == conj_exp(a.p)) return FactorClass::p_class(a.p);
  return FactorClass::js_class(pp, qq);
}

}  // namespace

Factorization product_factorization(const Factorization& b, const Factorization& c) {
  Factorization a;
  a.p = b.p;
  a.minus = b.minus * c.minus;
  a.plus = b.plus * c.plus;
  a.index = b.index + c.index;
  a = normalized(a);

  if (auto cls = product_class(a, b, c)) {
    a.cls = *cls;
    a.bounded = b.bounded && c.bounded;
    a.flags = compute_flags(a.minus, a.plus, a.p);
    return a;
  }

  // (xi-i)^n in minus against (xi+i)^-n in plus is r^n.
  Exponent n = a.minus.exponent_at(kI);
  if (n.is_integer() && !n.is_zero() && a.plus.exponent_at(-kI) == -n) {
    Factorization moved = a;
    moved.minus = a.minus * FactorExpression::power(kI, -n);
    moved.plus = a.plus * FactorExpression::power(-kI, n);
    moved.index += static_cast<int>(n.nearest_integer());
    moved.flags = compute_flags(moved.minus, moved.plus, moved.p);
    if (bounded_invertible(moved.minus, HalfPlane::Minus) && bounded_invertible(moved.plus, HalfPlane::Plus)) {
      moved.bounded = true;
      moved.cls = FactorClass::p_class(moved.p);
      return moved;
    }
    if (auto cls = product_class(moved, b, c)) {
      moved.cls = *cls;
      return moved;
    }
  }
  throw Error(ErrorCode::ClassArithmeticViolation, "the product is not a factorization of the implied class");
}

}  // namespace tpk
