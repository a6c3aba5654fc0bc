#pragma once

#include <functional>
#include <vector>

#include "tpk/cayley_grid.hpp"
#include "tpk/factor_expression.hpp"

namespace tpk {

using ModulusFunction = std::function<double(double)>;

/// ||P+(g phi)|| / ||g phi|| on a Cayley grid of size N (p = 2). The leading
/// singularity at infinity is split off analytically before the grid split.
double kernel_residual(const RealFunction& g, const FactorExpression& phi, int N,
                       const std::vector<double>& avoid = {});
/// Also removes the power/jump singularities at the jumps of the symbol and the real base points of phi.
double kernel_residual(const PCSymbol& symbol, const FactorExpression& phi, int N);

/// Fourier coefficients c_n, n = -K..K, of g(xi(w)) on the circle from M samples.
std::vector<cplx> circle_coefficients(const RealFunction& g, int K, int M, const std::vector<double>& avoid = {});

inline constexpr double kDefaultGapRatio = 1e3;
inline constexpr int kRankFineGrid = 1 << 15;

struct RankEstimate {
  int N = 0;
  int estimate = 0;
  /// sigma just above the cut over sigma just below; infinite when nothing is cut.
  double gap = 0.0;
  /// Set when the symbol is not 2-nonsingular: the truncations then need not separate.
  bool advisory = false;
  std::vector<double> singular_values;
};

/// Counts small singular values of the 2N x N section (c_{i-j}) of the Toeplitz matrix.
RankEstimate toeplitz_rank_oracle(const RealFunction& g, int N, double gap_ratio = kDefaultGapRatio,
                                  const std::vector<double>& avoid = {});
RankEstimate toeplitz_rank_oracle(const PCSymbol& symbol, int N, double gap_ratio = kDefaultGapRatio);

struct SzegoResult {
  bool finite = true;
  /// Estimates of the integral of |log W|/(1+t^2) at N and 2N points.
  double coarse = 0.0;
  double value = 0.0;
};

SzegoResult szego_check(const ModulusFunction& W, int N = 1024);
SzegoResult szego_check(const FactorExpression& f, int N = 1024);

struct OuterSamples {
  CayleyGrid grid;
  std::vector<cplx> values;
};

/// exp(log W + i * conjugate function of log W) on the grid.
OuterSamples outer_from_modulus(const ModulusFunction& W, int N);
/// W = |f|; the growth |xi+i|^deg f is split off and restored as (xi+i)^deg f.
OuterSamples outer_from_modulus(const FactorExpression& f, int N);

}  // namespace tpk
