#pragma once

#include <optional>
#include <string>

#include "tpk/factor_expression.hpp"
#include "tpk/symbol.hpp"

namespace tpk {

enum class HalfPlane { Plus, Minus };

/// H_t^{+-} (plain) or the weighted spaces (xi +- i) H_t^{+-}.
struct Space {
  bool weighted = false;
  HalfPlane side = HalfPlane::Plus;
};

inline constexpr Space kHplus{false, HalfPlane::Plus};
inline constexpr Space kHminus{false, HalfPlane::Minus};
inline constexpr Space kWplus{true, HalfPlane::Plus};
inline constexpr Space kWminus{true, HalfPlane::Minus};

/// Decides f in the space by exponent bookkeeping: analyticity on the requested
/// side, local integrability beta t > -1 at each real base point, and decay
/// degree * t < -1 at infinity (one degree of growth allowed in the weighted spaces).
/// Exact ties diverge and return false; ties that are only within tolerance throw
/// UndecidableOnBoundary.
bool space_membership(const FactorExpression& f, Space space, const Exponent& t);

/// Open interval (lo, hi) of t > 1 for which f belongs to the space; empty when lo >= hi.
struct Interval {
  double lo;
  double hi;
  bool empty() const { return !(lo < hi); }
  bool contains(double t) const { return lo < t && t < hi; }
};
Interval membership_interval(const FactorExpression& f, Space space);

enum class Tri { No, Yes, Undecided };
const char* tri_name(Tri t);
Tri membership(const FactorExpression& f, Space space, const Exponent& t);

struct MembershipFlags {
  Tri minus_in_Hp_minus = Tri::Undecided;
  Tri plus_inv_in_Hp_plus = Tri::Undecided;
  Tri minus_inv_in_Hq_minus = Tri::Undecided;  // q = p'
  Tri plus_in_Hq_plus = Tri::Undecided;
};

struct FactorClass {
  enum class Kind { P, JS };
  Kind kind = Kind::P;
  Exponent j{2};
  Exponent s{2};

  static FactorClass p_class(const Exponent& p);
  static FactorClass js_class(const Exponent& j, const Exponent& s);
};

/// g = minus * r^index * plus. `p` is the exponent of the Hardy space the
/// operator acts on; the flags refer to it.
struct Factorization {
  FactorExpression minus;
  int index = 0;
  FactorExpression plus;
  FactorClass cls;
  /// Factors and their inverses are bounded analytic on their half-planes.
  bool bounded = false;
  Exponent p{2};
  MembershipFlags flags;

  cplx operator()(double xi) const;
};

MembershipFlags compute_flags(const FactorExpression& minus, const FactorExpression& plus, const Exponent& p);

/// True when minus in H_j^-, minus^-1 in H_s^-, plus in H_s^+, plus^-1 in H_j^+ (weighted spaces).
bool is_js_factorization(const FactorExpression& minus, const FactorExpression& plus, const Exponent& j,
                         const Exponent& s);

/// Accepts a user-supplied factorization after checking the (j, s) memberships.
Factorization js_factorization(const FactorExpression& minus, int index, const FactorExpression& plus,
                               const Exponent& j, const Exponent& s, const Exponent& p);

Factorization rational_wh(const RationalFunction& h, const Exponent& p);
Factorization pc_p_factorization(const PCDecomposition& d);

struct QsFactorization {
  Factorization factorization;
  Exponent q;
};
/// (q, p')-factorization of a decomposition without critical jumps. Coincides with
/// pc_p_factorization (q = p) unless alpha_inf = 1/p'.
QsFactorization qs_factorization(const PCDecomposition& d);

Factorization product_factorization(const Factorization& b, const Factorization& c);

/// Moves all constants into the minus factor so that plus has scale 1.
Factorization normalized(Factorization f);

}  // namespace tpk
