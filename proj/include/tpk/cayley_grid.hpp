#pragma once

#include <functional>
#include <vector>

#include "tpk/symbol.hpp"

namespace tpk {

using RealFunction = std::function<cplx(double)>;

/// Points xi_m = i(1+w_m)/(1-w_m), w_m = exp(i theta_m), theta_m = 2 pi (m + offset)/N.
/// The offset keeps every sample away from xi = infinity.
struct CayleyGrid {
  int N = 0;
  double offset = 0.5;
  std::vector<double> theta;
  std::vector<double> xi;
  std::vector<cplx> w;

  /// N must be a power of two. When a point of `avoid` falls on a sample the grid
  /// is rotated by a quarter sample.
  static CayleyGrid make(int N, const std::vector<double>& avoid = {});

  std::vector<cplx> sample(const RealFunction& f) const;
};

bool is_power_of_two(int n);

/// Jump locations of a symbol (finite ones), for CayleyGrid::make.
std::vector<double> finite_jump_locations(const PCSymbol& symbol);

enum class Sign { Plus, Minus };

/// Splits circle samples into nonnegative (Plus) and negative (Minus) frequencies.
std::vector<cplx> circle_split(const std::vector<cplx>& samples, Sign sign);

/// Pi^{+-} phi = (xi+i) P^{+-}(phi/(xi+i)); on the circle this is a plain frequency split.
std::vector<cplx> projection_pi(const CayleyGrid& grid, const std::vector<cplx>& phi, Sign sign);

/// Riesz projection P^{+-} on the line (p = 2), transplanted through the unitary
/// weight 1/(1-w).
std::vector<cplx> riesz_project(const CayleyGrid& grid, const std::vector<cplx>& f, Sign sign);

struct CanonicalFactors {
  CayleyGrid grid;
  std::vector<cplx> minus;
  std::vector<cplx> plus;
  double residual = 0.0;
};

/// g_{+-} = exp(Pi^{+-} log g) on the grid. Requires winding number 0.
CanonicalFactors canonical_fft(const PCSymbol& symbol, int N);
CanonicalFactors canonical_fft(const RealFunction& g, int N);

}  // namespace tpk
