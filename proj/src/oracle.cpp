#include "tpk/oracle.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <unsupported/Eigen/FFT>

#include "tpk/curve.hpp"
#include "tpk/errors.hpp"

namespace tpk {

namespace {

bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

double l2(const std::vector<cplx>& v) {
  double s = 0;
  for (auto z : v) s += std::norm(z);
  return std::sqrt(s);
}

RealFunction as_function(const PCSymbol& s) {
  return [s](double x) { return evaluate(s, x); };
}

void require_bounded(const PCSymbol& s) {
  auto h = s.rational.canonical();
  int deg = 0;
  for (const auto& z : h.zeros) deg += z.mult;
  for (const auto& p : h.poles) deg -= p.mult;
  if (deg > 0) throw Error(ErrorCode::UnboundedSymbol, "rational part grows at infinity");
  for (const auto& p : h.poles)
    if (p.z.imag() == 0.0) throw Error(ErrorCode::UnboundedSymbol, "pole on the real axis");
}

std::vector<double> log_modulus(const CayleyGrid& grid, const ModulusFunction& W) {
  std::vector<double> L(grid.N);
  for (int m = 0; m < grid.N; ++m) {
    double w = W(grid.xi[m]);
    if (!std::isfinite(w) || w <= 0) throw Error(ErrorCode::NonFiniteSample, "modulus sample is not positive");
    L[m] = std::log(w);
  }
  return L;
}

double szego_integral(const ModulusFunction& W, int N) {
  auto grid = CayleyGrid::make(N);
  double s = 0;
  for (int m = 0; m < N; ++m) {
    double w = W(grid.xi[m]);
    s += std::isfinite(w) && w > 0 ? std::abs(std::log(w)) : std::numeric_limits<double>::infinity();
  }
  // dt/(1+t^2) = dtheta/2
  return s * kPi / N;
}

}  // namespace

namespace {

// Leading behaviour F ~ left |d|^gamma (d < 0), right |d|^gamma (d > 0) of the
// transplanted function near the circle point e, d = theta - theta_e.
struct Singularity {
  cplx e;
  double gamma;
  cplx left, right;
};

constexpr double kFarPoint = 1e5;

// Leading coefficients C_+- of g phi ~ C |xi|^d as xi -> +-inf, Richardson-extrapolated.
std::pair<cplx, cplx> far_coefficients(const RealFunction& gphi, double d) {
  auto at = [&](double x) { return gphi(x) / std::pow(std::abs(x), d); };
  cplx plus = 2.0 * at(2 * kFarPoint) - at(kFarPoint);
  cplx minus = 2.0 * at(-2 * kFarPoint) - at(-kFarPoint);
  return {plus, minus};
}

// xi -> inf is w = 1; 1 - w ~ -i d and |xi| ~ 2 / |d|.
Singularity infinity_singularity(const RealFunction& gphi, double d) {
  auto [plus, minus] = far_coefficients(gphi, d);
  double k = std::pow(2.0, d);
  return {1.0, -d - 1, cplx(0, -k) * plus, cplx(0, k) * minus};
}

// Subtracts a model with the same leading singularities whose split is known exactly,
// splits the remainder on the grid, and adds the exact plus part of the model back.
std::vector<cplx> plus_part(const CayleyGrid& grid, std::vector<cplx> F, const std::vector<Singularity>& sings) {
  std::vector<cplx> exact(grid.N, 0.0);
  for (const auto& s : sings) {
    if (!(s.gamma > -1 && s.gamma < 1) || !finite(s.left) || !finite(s.right)) continue;
    bool jump_only = std::abs(s.gamma) < 1e-9;
    cplx a, b;
    if (jump_only) {
      // log(1 - w/e) - log(1 - e/w) = i d - i pi sgn(d)
      a = cplx(0, 1) * (s.right - s.left) / (2 * kPi);
    } else {
      // (1 - w/e)^gamma ~ |d|^gamma e^{-i pi gamma sgn(d)/2}; the minus model is its conjugate.
      cplx q = std::polar(1.0, kPi * s.gamma / 2);
      cplx det = std::conj(q) * std::conj(q) - q * q;
      a = (s.right * std::conj(q) - s.left * q) / det;
      b = (s.left * std::conj(q) - s.right * q) / det;
    }
    for (int m = 0; m < grid.N; ++m) {
      cplx z = 1.0 - grid.w[m] * std::conj(s.e);
      if (jump_only) {
        cplx L = std::log(z);
        F[m] -= a * (L - std::conj(L));
        exact[m] += a * L;
      } else {
        cplx u = std::pow(z, s.gamma);
        F[m] -= a * u + b * std::conj(u);
        // the constant term of the minus model sits in the plus half
        exact[m] += a * u + b;
      }
    }
  }
  auto P = circle_split(F, Sign::Plus);
  for (int m = 0; m < grid.N; ++m) P[m] += exact[m];
  return P;
}

double residual_with(const CayleyGrid& grid, const RealFunction& gphi, const std::vector<Singularity>& sings) {
  std::vector<cplx> F(grid.N);
  for (int m = 0; m < grid.N; ++m) {
    F[m] = gphi(grid.xi[m]) / (1.0 - grid.w[m]);
    if (!finite(F[m])) throw Error(ErrorCode::NonFiniteSample, "g phi is not finite at xi = " + std::to_string(grid.xi[m]));
  }
  double total = l2(F);
  if (total == 0.0) throw Error(ErrorCode::InvalidArgument, "g phi vanishes on the grid");
  return l2(plus_part(grid, std::move(F), sings)) / total;
}

}  // namespace

double kernel_residual(const RealFunction& g, const FactorExpression& phi, int N, const std::vector<double>& avoid) {
  auto grid = CayleyGrid::make(N, avoid);
  RealFunction gphi = [&](double x) { return g(x) * phi(x); };
  // growth exponent at infinity, estimated from two far samples on each side
  auto slope = [&](double x) { return std::log(std::abs(gphi(2 * x)) / std::abs(gphi(x))) / std::log(2.0); };
  double d = 0.5 * ((2 * slope(2 * kFarPoint) - slope(kFarPoint)) + (2 * slope(-2 * kFarPoint) - slope(-kFarPoint)));
  std::vector<Singularity> sings;
  if (std::isfinite(d)) sings.push_back(infinity_singularity(gphi, d));
  return residual_with(grid, gphi, sings);
}

double kernel_residual(const PCSymbol& symbol, const FactorExpression& phi, int N) {
  auto jumps = finite_jump_locations(symbol);
  auto grid = CayleyGrid::make(N, jumps);
  auto f = phi.canonical();
  RealFunction gphi = [&](double x) { return evaluate(symbol, x) * f(x); };

  std::vector<double> points = jumps;
  for (const auto& t : f.terms)
    if (t.a.imag() == 0.0) points.push_back(t.a.real());
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());

  std::vector<Singularity> sings;
  for (double c : points) {
    FactorExpression rest = FactorExpression::constant(f.scale);
    double gamma = 0;
    cplx left_phase = 1.0;
    for (const auto& t : f.terms) {
      if (t.a == cplx(c, 0.0)) {
        double b = t.beta.value();
        gamma += b;
        left_phase *= std::polar(1.0, (t.branch == Branch::Upper ? kPi : -kPi) * b);
      } else {
        rest.terms.push_back(t);
      }
    }
    auto [gl, gr] = limits_at(symbol, Location::at(c));
    cplx e = (cplx(c, 0) - kI) / (cplx(c, 0) + kI);
    // xi - c ~ (1 + c^2) d / 2
    cplx k = rest(c) * std::pow((1 + c * c) / 2, gamma) / (1.0 - e);
    sings.push_back({e, gamma, gl * k * left_phase, gr * k});
  }
  double d = f.degree().value();
  for (const auto& z : symbol.rational.zeros) d += z.mult;
  for (const auto& q : symbol.rational.poles) d -= q.mult;
  sings.push_back(infinity_singularity(gphi, d));
  return residual_with(grid, gphi, sings);
}

std::vector<cplx> circle_coefficients(const RealFunction& g, int K, int M, const std::vector<double>& avoid) {
  if (2 * K + 1 > M) throw Error(ErrorCode::InvalidArgument, "too few samples for the requested coefficients");
  auto grid = CayleyGrid::make(M, avoid);
  auto samples = grid.sample(g);
  for (auto z : samples)
    if (!finite(z)) throw Error(ErrorCode::NonFiniteSample, "symbol sample is not finite");
  Eigen::FFT<double> fft;
  std::vector<cplx> spec;
  fft.fwd(spec, samples);
  // samples sit at theta_m = 2 pi (m + offset)/M, so bin n carries exp(2 pi i n offset / M)
  std::vector<cplx> c(2 * K + 1);
  for (int n = -K; n <= K; ++n) {
    int bin = ((n % M) + M) % M;
    c[n + K] = spec[bin] * std::polar(1.0 / M, -2 * kPi * n * grid.offset / M);
  }
  return c;
}

RankEstimate toeplitz_rank_oracle(const RealFunction& g, int N, double gap_ratio, const std::vector<double>& avoid) {
  if (N < 2) throw Error(ErrorCode::InvalidArgument, "section size must be at least 2");
  if (!(gap_ratio > 1)) throw Error(ErrorCode::InvalidArgument, "gap ratio must exceed 1");
  const int K = 2 * N;
  auto c = circle_coefficients(g, K, std::max(kRankFineGrid, 1 << static_cast<int>(std::ceil(std::log2(8.0 * K)))), avoid);
  Eigen::MatrixXcd T(2 * N, N);
  for (int i = 0; i < 2 * N; ++i)
    for (int j = 0; j < N; ++j) T(i, j) = c[i - j + K];
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(T);
  Eigen::VectorXd sv = svd.singularValues();

  RankEstimate r;
  r.N = N;
  r.singular_values.assign(sv.data(), sv.data() + sv.size());
  double cut = sv(0) / gap_ratio;
  int big = 0;
  while (big < N && sv(big) >= cut) ++big;
  r.estimate = N - big;
  if (r.estimate == 0) {
    r.gap = std::numeric_limits<double>::infinity();
    return r;
  }
  r.gap = sv(big) > 0 ? sv(big - 1) / sv(big) : std::numeric_limits<double>::infinity();
  if (r.gap < gap_ratio)
    throw Error(ErrorCode::NoSpectralGap, "singular values " + std::to_string(sv(big - 1)) + " and " +
                                              std::to_string(sv(big)) + " straddle the cut");
  return r;
}

RankEstimate toeplitz_rank_oracle(const PCSymbol& symbol, int N, double gap_ratio) {
  require_bounded(symbol);
  PCSymbol two = symbol;
  two.p = Exponent(2);
  bool advisory;
  try {
    advisory = !nonsingularity(two).nonsingular;
  } catch (const Error&) {
    advisory = true;
  }
  auto r = toeplitz_rank_oracle(as_function(symbol), N, gap_ratio, finite_jump_locations(symbol));
  r.advisory = advisory;
  return r;
}

SzegoResult szego_check(const ModulusFunction& W, int N) {
  SzegoResult r;
  r.coarse = szego_integral(W, N);
  r.value = szego_integral(W, 2 * N);
  if (!std::isfinite(r.value) || !std::isfinite(r.coarse))
    r.finite = false;
  else if (r.coarse > 0)
    r.finite = r.value / r.coarse < 2.0;
  return r;
}

SzegoResult szego_check(const FactorExpression& f, int N) {
  return szego_check([&](double x) { return std::abs(f(x)); }, N);
}

OuterSamples outer_from_modulus(const ModulusFunction& W, int N) {
  if (!szego_check(W, N).finite) throw Error(ErrorCode::SzegoViolated, "log W is not integrable against dt/(1+t^2)");
  OuterSamples out;
  out.grid = CayleyGrid::make(N);
  auto L = log_modulus(out.grid, W);
  std::vector<cplx> Lc(L.begin(), L.end());
  double mean = std::accumulate(L.begin(), L.end(), 0.0) / N;
  // c_0 + 2 sum_{n>0} c_n w^n has real part log W
  auto A = circle_split(Lc, Sign::Plus);
  out.values.resize(N);
  for (int m = 0; m < N; ++m) out.values[m] = std::exp(2.0 * A[m] - mean);
  return out;
}

OuterSamples outer_from_modulus(const FactorExpression& f, int N) {
  Exponent d = f.degree();
  auto growth = FactorExpression::power(-kI, d);
  auto rest = f / growth;
  auto out = outer_from_modulus([&](double x) { return std::abs(rest(x)); }, N);
  for (int m = 0; m < N; ++m) out.values[m] *= growth(out.grid.xi[m]);
  return out;
}

}  // namespace tpk
