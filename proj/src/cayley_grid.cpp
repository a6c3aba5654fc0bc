#include "tpk/cayley_grid.hpp"

#include <cmath>
#include <unsupported/Eigen/FFT>

#include "tpk/errors.hpp"

namespace tpk {

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

CayleyGrid CayleyGrid::make(int N, const std::vector<double>& avoid) {
  if (!is_power_of_two(N) || N < 4) throw Error(ErrorCode::InvalidArgument, "grid size must be a power of two");
  CayleyGrid g;
  g.N = N;
  for (double c : avoid) {
    double pos = cayley_angle(c) * N / (2 * kPi) - g.offset;
    if (std::abs(pos - std::round(pos)) < 1e-9) g.offset = 0.75;
  }
  g.theta.resize(N);
  g.xi.resize(N);
  g.w.resize(N);
  for (int m = 0; m < N; ++m) {
    double th = 2 * kPi * (m + g.offset) / N;
    g.theta[m] = th;
    g.xi[m] = -1.0 / std::tan(th / 2);
    g.w[m] = std::polar(1.0, th);
  }
  return g;
}

std::vector<cplx> CayleyGrid::sample(const RealFunction& f) const {
  std::vector<cplx> out(N);
  for (int m = 0; m < N; ++m) out[m] = f(xi[m]);
  return out;
}

std::vector<double> finite_jump_locations(const PCSymbol& symbol) {
  std::vector<double> out;
  for (const auto& j : symbol.jumps)
    if (!j.location.infinite) out.push_back(j.location.c);
  return out;
}

std::vector<cplx> circle_split(const std::vector<cplx>& samples, Sign sign) {
  const std::size_t n = samples.size();
  Eigen::FFT<double> fft;
  std::vector<cplx> spec;
  fft.fwd(spec, samples);
  for (std::size_t k = 0; k < n; ++k) {
    bool plus = k < n / 2;
    if (plus != (sign == Sign::Plus)) spec[k] = 0.0;
  }
  std::vector<cplx> out;
  fft.inv(out, spec);
  return out;
}

std::vector<cplx> projection_pi(const CayleyGrid&, const std::vector<cplx>& phi, Sign sign) {
  return circle_split(phi, sign);
}

std::vector<cplx> riesz_project(const CayleyGrid& grid, const std::vector<cplx>& f, Sign sign) {
  std::vector<cplx> F(f.size());
  for (std::size_t m = 0; m < f.size(); ++m) F[m] = f[m] / (1.0 - grid.w[m]);
  auto P = circle_split(F, sign);
  for (std::size_t m = 0; m < f.size(); ++m) P[m] *= 1.0 - grid.w[m];
  return P;
}

namespace {

CanonicalFactors factor_samples(const CayleyGrid& grid, const std::vector<cplx>& g) {
  const int N = grid.N;
  std::vector<cplx> logg(N);
  double arg = std::arg(g[0]);
  for (int m = 0; m < N; ++m) {
    if (!std::isfinite(g[m].real()) || !std::isfinite(g[m].imag()) || g[m] == cplx(0.0))
      throw Error(ErrorCode::NonFiniteSample, "symbol sample is zero or not finite");
    if (m > 0) {
      double step = std::arg(g[m] / g[m - 1]);
      if (std::abs(step) > kPi / 2)
        throw Error(ErrorCode::BranchUnwrapFailure, "phase step " + std::to_string(step) + " between samples");
      arg += step;
    }
    logg[m] = cplx(std::log(std::abs(g[m])), arg);
  }
  double closing = std::arg(g[0] / g[N - 1]);
  double turns = (arg + closing - std::arg(g[0])) / (2 * kPi);
  if (std::abs(turns) > 0.5)
    throw Error(ErrorCode::NonzeroIndex, "sampled winding number is " + std::to_string(std::lround(turns)));

  auto lp = projection_pi(grid, logg, Sign::Plus);
  auto lm = projection_pi(grid, logg, Sign::Minus);
  CanonicalFactors out;
  out.grid = grid;
  out.plus.resize(N);
  out.minus.resize(N);
  for (int m = 0; m < N; ++m) {
    out.plus[m] = std::exp(lp[m]);
    out.minus[m] = std::exp(lm[m]);
    out.residual = std::max(out.residual, std::abs(out.minus[m] * out.plus[m] - g[m]));
  }
  return out;
}

}  // namespace

CanonicalFactors canonical_fft(const RealFunction& g, int N) {
  auto grid = CayleyGrid::make(N);
  return factor_samples(grid, grid.sample(g));
}

CanonicalFactors canonical_fft(const PCSymbol& symbol, int N) {
  if (N < 1024) throw Error(ErrorCode::InvalidArgument, "canonical_fft needs N >= 1024");
  // winding is decided on the curve, not on the grid
  PCSymbol s = symbol;
  auto d = decompose_pc(s);
  int k = d.h.zeros_upper() - d.h.poles_upper();
  if (k != 0) throw Error(ErrorCode::NonzeroIndex, "index is " + std::to_string(k));
  auto grid = CayleyGrid::make(N, finite_jump_locations(symbol));
  return factor_samples(grid, grid.sample([&](double x) { return evaluate(symbol, x); }));
}

}  // namespace tpk
