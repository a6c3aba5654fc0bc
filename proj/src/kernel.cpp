#include "tpk/kernel.hpp"

#include <algorithm>
#include <cmath>

#include "tpk/errors.hpp"

namespace tpk {

namespace {

FactorExpression xi_plus_i(const Exponent& e) { return FactorExpression::power(-kI, e); }

KernelDescription build(const FactorExpression& multiplier, int n, std::vector<double> vanish, std::string rule) {
  KernelDescription k;
  k.multiplier = multiplier.canonical();
  k.model_degree = std::max(0, n);
  k.vanish_at = std::move(vanish);
  k.rule = std::move(rule);
  k.dimension = std::max(0, k.model_degree - static_cast<int>(k.vanish_at.size()));
  if (k.vanish_at.empty()) {
    for (const auto& e : model_space_basis(k.model_degree)) k.basis.push_back(k.multiplier * e);
    return k;
  }
  FactorExpression common = k.multiplier * xi_plus_i(Exponent(-k.model_degree));
  for (double d : k.vanish_at) common = common * FactorExpression::power(d, Exponent(1));
  for (int m = 0; m < k.dimension; ++m) k.basis.push_back(common * FactorExpression::power(0.0, Exponent(m)));
  return k;
}

void require_decided(const MembershipFlags& f) {
  for (Tri t : {f.minus_in_Hp_minus, f.plus_inv_in_Hp_plus, f.minus_inv_in_Hq_minus, f.plus_in_Hq_plus})
    if (t == Tri::Undecided) throw Error(ErrorCode::MembershipUndecided, "a factor membership sits on a boundary");
}

bool case_one(const MembershipFlags& f) {
  return f.minus_in_Hp_minus == Tri::Yes && f.plus_inv_in_Hp_plus == Tri::Yes;
}

// Bounded on the line: no negative total exponent at a real point, no growth at infinity.
bool bounded_on_line(const FactorExpression& g) {
  if (g.degree() > Exponent(0)) return false;
  for (const auto& t : g.terms)
    if (t.a.imag() == 0.0 && g.exponent_at(t.a) < Exponent(0)) return false;
  return true;
}

}  // namespace

int InnerOuterSplit::blaschke_degree() const {
  int d = 0;
  for (const auto& z : blaschke_zeros) d += z.second;
  return d;
}

FactorExpression InnerOuterSplit::inner() const {
  FactorExpression b;
  for (const auto& [a, m] : blaschke_zeros)
    b = b * FactorExpression::power(a, Exponent(m)) * FactorExpression::power(std::conj(a), Exponent(-m));
  return b;
}

std::vector<FactorExpression> model_space_basis(int n) {
  std::vector<FactorExpression> out;
  for (int j = 0; j < n; ++j) out.push_back(FactorExpression::power(kI, Exponent(j)) * xi_plus_i(Exponent(-j - 1)));
  return out;
}

KernelDescription kernel_from_qs(const Factorization& f) {
  require_decided(f.flags);
  if (case_one(f.flags)) return build(f.plus.inverse(), -f.index, {}, "qs-i");
  return build(f.plus.inverse() * xi_plus_i(Exponent(-1)), -f.index - 1, {}, "qs-ii");
}

KernelDescription adjoint_kernel_from_qs(const Factorization& f) {
  if (!bounded_on_line(f.minus * f.plus))
    throw Error(ErrorCode::UnboundedSymbol, "the adjoint kernel needs a bounded symbol");
  require_decided(f.flags);
  FactorExpression conj_inv = f.minus.inverse().conj();
  if (case_one(f.flags)) return build(conj_inv, f.index, {}, "adjoint-i");
  // The top-degree polynomial survives only if g_-^{-1} and g_+ lie in the unweighted H_{p'}.
  if (f.index > 0) {
    Exponent q = conjugate_exponent(f.p);
    Tri a = membership(f.minus.inverse(), kHminus, q), b = membership(f.plus, kHplus, q);
    if (a == Tri::Undecided || b == Tri::Undecided)
      throw Error(ErrorCode::MembershipUndecided, "an H_{p'} membership sits on a boundary");
    if (a == Tri::Yes && b == Tri::Yes) return build(conj_inv * xi_plus_i(Exponent(1)), f.index + 1, {}, "adjoint-ii");
  }
  return build(conj_inv, f.index, {}, "adjoint-ii");
}

KernelDescription pc_kernel(const PCSymbol& symbol) {
  auto d = decompose_pc(symbol);
  auto wh = rational_wh(d.h, d.p);
  const Exponent inv_p = reciprocal(d.p);
  const Exponent inv_q = Exponent(1) - inv_p;

  FactorExpression m = wh.plus.inverse() * xi_plus_i(d.alpha_inf);
  for (double c : d.critical_jumps)
    m = m * xi_plus_i(inv_p) * FactorExpression::power(c, -inv_p, Branch::Upper);
  for (const auto& j : d.regular_jumps)
    m = m * xi_plus_i(j.alpha) * FactorExpression::power(j.c, -j.alpha, Branch::Upper);

  auto cmp = compare(d.alpha_inf, inv_q);
  int n = -wh.index;
  KernelDescription k;
  if (cmp.equal())
    k = build(m * xi_plus_i(Exponent(-1)), n - 1, d.critical_jumps, "pc-ii");
  else
    k = build(m, n, d.critical_jumps, "pc-i");
  k.warnings = d.warnings;
  if (cmp.approximate && cmp.equal())
    k.warnings.push_back("alpha_inf matched 1/p' only within tolerance");
  return k;
}

FactorExpression kernel_shift_multiplier(const std::vector<std::pair<double, Exponent>>& jumps) {
  FactorExpression m;
  for (std::size_t a = 0; a < jumps.size(); ++a) {
    const auto& [c, beta] = jumps[a];
    if (!(beta > Exponent(0)) || !(beta < Exponent(1)))
      throw Error(ErrorCode::ExponentOutOfRange, "shift exponent " + beta.to_string() + " is not in (0,1)");
    for (std::size_t b = 0; b < a; ++b)
      if (jumps[b].first == c) throw Error(ErrorCode::InvalidArgument, "repeated shift point");
    m = m * xi_plus_i(beta) * FactorExpression::power(c, -beta, Branch::Upper);
  }
  return m;
}

InnerOuterSplit inner_outer_rational(const FactorExpression& f0) {
  auto f = f0.canonical();
  InnerOuterSplit s;
  s.outer = FactorExpression::constant(f.scale);
  for (const auto& t : f.terms) {
    if (!t.beta.is_integer()) throw Error(ErrorCode::InvalidArgument, "inner-outer split needs integer exponents");
    int m = static_cast<int>(t.beta.nearest_integer());
    if (t.a.imag() == 0.0) {
      if (m > 0) throw Error(ErrorCode::ZeroOnRealAxis, "zero on the real axis at " + std::to_string(t.a.real()));
      throw Error(ErrorCode::InvalidArgument, "pole on the real axis");
    }
    if (t.a.imag() > 0 && m < 0) throw Error(ErrorCode::InvalidArgument, "pole in the upper half-plane");
    if (t.a.imag() > 0) {
      s.blaschke_zeros.emplace_back(t.a, m);
      s.outer = s.outer * FactorExpression::power(std::conj(t.a), Exponent(m));
    } else {
      s.outer = s.outer * FactorExpression::power(t.a, t.beta);
    }
  }
  return s;
}

KernelDescription minimal_kernel_star(const FactorExpression& f, const Exponent& p) {
  if (!space_membership(f, kHplus, p)) throw Error(ErrorCode::InvalidArgument, "f is not in H_p^+");
  auto s = inner_outer_rational(f);
  const int b = s.blaschke_degree();
  // O (xi+i) K_{rB} = O * {P / prod (xi - conj a) : deg P <= b}
  FactorExpression common = s.outer;
  for (const auto& [a, m] : s.blaschke_zeros) common = common * FactorExpression::power(std::conj(a), Exponent(-m));
  KernelDescription k;
  k.rule = "min-star";
  k.multiplier = s.outer * xi_plus_i(Exponent(1));
  k.model_degree = b + 1;
  k.dimension = b + 1;
  for (int j = 0; j <= b; ++j)
    k.basis.push_back(common * FactorExpression::power(kI, Exponent(j)) * xi_plus_i(Exponent(b - j)));
  return k;
}

cplx ConjugateTaggedSymbol::operator()(double xi) const { return direct(xi) * std::conj(conjugated(xi)); }

FactorExpression ConjugateTaggedSymbol::flatten() const { return direct * conjugated.conj(); }

ConjugateTaggedSymbol minimal_kernel_symbol_Q(const FactorExpression& f, const FactorExpression& Q0,
                                              const Exponent& p) {
  auto Q = Q0.canonical();
  if (Q.scale == cplx(0.0)) throw Error(ErrorCode::QNotBoundedBelow, "Q is zero");
  for (const auto& t : Q.terms) {
    if (t.a.imag() == 0.0) throw Error(ErrorCode::QNotBoundedBelow, "Q has a zero or pole on the real axis");
    if (t.a.imag() > 0) throw Error(ErrorCode::QNotBoundedBelow, "Q is not outer in the upper half-plane");
  }
  if (Q.degree() < Exponent(0)) throw Error(ErrorCode::QNotBoundedBelow, "Q decays at infinity");
  if (!space_membership(Q * f, kHplus, p)) throw Error(ErrorCode::QfNotInHp, "Qf is not in H_p^+");
  auto s = inner_outer_rational(f);
  return {s.outer.inverse(), Q * s.inner() * s.outer};
}

}  // namespace tpk
