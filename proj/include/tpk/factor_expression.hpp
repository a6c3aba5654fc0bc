#pragma once

#include <string>
#include <vector>

#include "tpk/exponent.hpp"
#include "tpk/symbol.hpp"

namespace tpk {

/// Which half-plane a power (xi - a)^beta is analytic in. Upper puts the cut
/// below the base point, Lower above it.
enum class Branch { Upper, Lower };

const char* branch_name(Branch b);

struct FactorTerm {
  cplx a;
  Exponent beta;
  Branch branch = Branch::Upper;
};

/// scale * prod (xi - a)^beta, evaluated on the real line.
struct FactorExpression {
  cplx scale{1.0, 0.0};
  std::vector<FactorTerm> terms;

  static FactorExpression constant(cplx c);
  static FactorExpression power(cplx a, Exponent beta, Branch branch = Branch::Upper);
  static FactorExpression from_rational(const RationalFunction& f);

  /// Sorted by (Re a, Im a, branch), equal keys merged, zero exponents removed.
  /// Non-real bases take the branch they are analytic across (Im a < 0 -> Upper).
  FactorExpression canonical() const;

  cplx operator()(double xi) const;

  FactorExpression operator*(const FactorExpression& o) const;
  FactorExpression operator/(const FactorExpression& o) const;
  FactorExpression inverse() const;
  /// The function xi -> conj(f(xi)) on the real line.
  FactorExpression conj() const;

  /// Growth exponent at infinity: |f(xi)| ~ |xi|^degree.
  Exponent degree() const;
  bool is_fractional() const;
  /// Exponent of the term based at a, summed over branches.
  Exponent exponent_at(cplx a) const;

  std::string to_string() const;
};

/// Exact-form comparison after canonicalization: same terms and |scale - scale'| <= tol |scale|.
bool same_form(const FactorExpression& a, const FactorExpression& b, double tol = 1e-12);
/// Same terms; scales may differ by a nonzero constant.
bool same_up_to_constant(const FactorExpression& a, const FactorExpression& b);

}  // namespace tpk
