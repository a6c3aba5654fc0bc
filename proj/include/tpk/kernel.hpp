#pragma once

#include <string>
#include <utility>
#include <vector>

#include "tpk/factorization.hpp"

namespace tpk {

/// ker = multiplier * {P / (xi+i)^n : deg P <= n-1, P(d) = 0 for d in vanish_at}.
struct KernelDescription {
  int dimension = 0;
  FactorExpression multiplier;
  int model_degree = 0;
  std::vector<double> vanish_at;
  std::vector<FactorExpression> basis;
  /// Which branch of the kernel formula applied: "qs-i", "qs-ii", "pc-i", "pc-ii",
  /// "adjoint-i", "adjoint-ii", "min-star".
  std::string rule;
  std::vector<std::string> warnings;
};

struct InnerOuterSplit {
  /// Zeros in the open upper half-plane with multiplicities.
  std::vector<std::pair<cplx, int>> blaschke_zeros;
  FactorExpression outer;

  int blaschke_degree() const;
  /// prod ((xi-a)/(xi-conj a))^m
  FactorExpression inner() const;
};

/// 1/(xi+i) ((xi-i)/(xi+i))^j, j = 0..n-1.
std::vector<FactorExpression> model_space_basis(int n);

KernelDescription kernel_from_qs(const Factorization& f);
/// Kernel of the adjoint in H_{p'}; the symbol must be bounded.
KernelDescription adjoint_kernel_from_qs(const Factorization& f);
KernelDescription pc_kernel(const PCSymbol& symbol);

/// prod ((xi+i)/(xi-c_j))^{beta_j}, beta_j in (0,1), analytic in the upper half-plane.
FactorExpression kernel_shift_multiplier(const std::vector<std::pair<double, Exponent>>& jumps);

InnerOuterSplit inner_outer_rational(const FactorExpression& f);

/// Smallest kernel containing f over all symbols: O_+ (xi+i) K_{rB}.
KernelDescription minimal_kernel_star(const FactorExpression& f, const Exponent& p);

/// direct(xi) * conj(conjugated(xi)).
struct ConjugateTaggedSymbol {
  FactorExpression direct;
  FactorExpression conjugated;

  cplx operator()(double xi) const;
  FactorExpression flatten() const;
};

/// conj(Q I O) / O for f = I O; the symbol whose kernel is the Q-minimal kernel of f.
ConjugateTaggedSymbol minimal_kernel_symbol_Q(const FactorExpression& f, const FactorExpression& Q,
                                              const Exponent& p);

}  // namespace tpk
