#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "tpk/cayley_grid.hpp"
#include "tpk/errors.hpp"
#include "tpk/factorization.hpp"

using namespace tpk;

namespace {

double max_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double d = 0;
  for (std::size_t k = 0; k < a.size(); ++k) d = std::max(d, std::abs(a[k] - b[k]));
  return d;
}

std::vector<cplx> on_grid(const CayleyGrid& g, cplx (*f)(double)) {
  std::vector<cplx> v(g.N);
  for (int m = 0; m < g.N; ++m) v[m] = f(g.xi[m]);
  return v;
}

}  // namespace

TEST_CASE("grid points lie on the Cayley circle") {
  auto g = CayleyGrid::make(64);
  for (int m = 0; m < g.N; ++m) {
    CHECK(std::abs(oracle::r(g.xi[m]) - g.w[m]) < 1e-12);
    CHECK(std::isfinite(g.xi[m]));
  }
  CHECK_THROWS_AS(CayleyGrid::make(100), Error);
}

TEST_CASE("grid rotates away from a jump on a sample") {
  // theta = 2 pi (m + 1/2)/N at m = 0, N = 8 is pi/8
  double c = -1.0 / std::tan(oracle::pi / 16);
  auto g = CayleyGrid::make(8, {c});
  CHECK(g.offset == 0.75);
  for (double x : g.xi) CHECK(std::abs(x - c) > 1e-6);
  CHECK(CayleyGrid::make(8, {0.123}).offset == 0.5);
}

TEST_CASE("constants go to Pi+") {
  auto g = CayleyGrid::make(256);
  std::vector<cplx> one(g.N, cplx(2.0, -1.0));
  CHECK(max_diff(projection_pi(g, one, Sign::Plus), one) < 1e-13);
  CHECK(max_diff(projection_pi(g, one, Sign::Minus), std::vector<cplx>(g.N)) < 1e-13);
}

TEST_CASE("projections of 1/(x^2+1)") {
  auto g = CayleyGrid::make(1024);
  auto phi = on_grid(g, [](double x) { return cplx(1.0 / (x * x + 1)); });
  // 1/(x^2+1) = (1/2i)(1/(x-i) - 1/(x+i)) and 1/(x-i) = -1/(2i) + (anti-analytic part)
  auto plus = on_grid(g, [](double x) {
    const cplx c = 1.0 / cplx(0, 2);
    return c * (-c - 1.0 / cplx(x, 1));
  });
  auto minus = on_grid(g, [](double x) {
    const cplx c = 1.0 / cplx(0, 2);
    return c * (1.0 / cplx(x, -1) + c);
  });
  CHECK(max_diff(projection_pi(g, phi, Sign::Plus), plus) < 1e-12);
  CHECK(max_diff(projection_pi(g, phi, Sign::Minus), minus) < 1e-12);
}

TEST_CASE("projections are complementary and idempotent") {
  auto g = CayleyGrid::make(512);
  std::vector<cplx> f(g.N);
  for (auto& v : f) v = cplx(oracle::uniform(-1, 1), oracle::uniform(-1, 1));
  for (auto proj : {projection_pi, riesz_project}) {
    auto p = proj(g, f, Sign::Plus);
    auto m = proj(g, f, Sign::Minus);
    std::vector<cplx> sum(g.N);
    for (int k = 0; k < g.N; ++k) sum[k] = p[k] + m[k];
    CHECK(max_diff(sum, f) < 1e-12);
    CHECK(max_diff(proj(g, p, Sign::Plus), p) < 1e-12);
    CHECK(max_diff(proj(g, m, Sign::Plus), std::vector<cplx>(g.N)) < 1e-12);
  }
}

TEST_CASE("Riesz projection keeps 1/(x+i) and kills 1/(x-i)") {
  auto g = CayleyGrid::make(1 << 12);
  auto up = on_grid(g, [](double x) { return 1.0 / cplx(x, 1); });
  auto down = on_grid(g, [](double x) { return 1.0 / cplx(x, -1); });
  CHECK(max_diff(riesz_project(g, up, Sign::Plus), up) < 1e-8);
  CHECK(max_diff(riesz_project(g, down, Sign::Plus), std::vector<cplx>(g.N)) < 1e-8);
  // a decaying mixture
  auto mix = on_grid(g, [](double x) { return 1.0 / (cplx(x, 2) * cplx(x, -3)); });
  auto mix_plus = on_grid(g, [](double x) { return (1.0 / cplx(0, -5)) / cplx(x, 2); });
  CHECK(max_diff(riesz_project(g, mix, Sign::Plus), mix_plus) < 1e-8);
}

TEST_CASE("canonical_fft recovers the rational factors") {
  // winding 0: zero 2i and pole i upstairs, zero -i and pole -2i downstairs
  RationalFunction h;
  h.zeros = {{cplx(0, 2), 1}, {cplx(0, -1), 1}};
  h.poles = {{cplx(0, 1), 1}, {cplx(0, -2), 1}};
  PCSymbol s{h, {}, Exponent(2)};
  auto f = canonical_fft(s, 1 << 12);
  CHECK(f.residual < 1e-12);
  // minus is analytic in C-: (x-2i)/(x-i); plus: (x+i)/(x+2i); up to reciprocal constants
  cplx km = f.minus[0] / ((f.grid.xi[0] - cplx(0, 2)) / (f.grid.xi[0] - cplx(0, 1)));
  cplx kp = f.plus[0] / ((f.grid.xi[0] + cplx(0, 1)) / (f.grid.xi[0] + cplx(0, 2)));
  CHECK(std::abs(km * kp - 1.0) < 1e-10);
  double err = 0;
  for (int m = 0; m < f.grid.N; ++m) {
    cplx x = f.grid.xi[m];
    err = std::max(err, std::abs(f.minus[m] - km * (x - cplx(0, 2)) / (x - cplx(0, 1))));
    err = std::max(err, std::abs(f.plus[m] - kp * (x + cplx(0, 1)) / (x + cplx(0, 2))));
  }
  CHECK(err < 1e-10);
}

TEST_CASE("canonical_fft rejects nonzero index and fast phase") {
  PCSymbol r{RationalFunction::r_power(1), {}, Exponent(2)};
  CHECK_THROWS_WITH_AS(canonical_fft(r, 1024), doctest::Contains("NonzeroIndex"), Error);
  auto wild = [](double x) { return std::exp(cplx(0, 1000.0 * x / (1 + x * x))); };
  CHECK_THROWS_WITH_AS(canonical_fft(wild, 1024), doctest::Contains("BranchUnwrapFailure"), Error);
  auto wind = [](double x) { return cplx(x, -1) / cplx(x, 1); };
  CHECK_THROWS_WITH_AS(canonical_fft(wind, 1024), doctest::Contains("NonzeroIndex"), Error);
}

TEST_CASE("canonical_fft converges as N doubles") {
  // roots close to the axis, so the factors are still visibly inexact at 2^10
  RationalFunction h;
  h.zeros = {{cplx(0.3, 0.02), 1}, {cplx(-1, -0.03), 1}};
  h.poles = {{cplx(0.5, 0.04), 1}, {cplx(2, -0.02), 1}};
  PCSymbol s{h, {}, Exponent(2)};
  auto exact = rational_wh(h, Exponent(2));
  auto factor_error = [&](const CanonicalFactors& f) {
    cplx k = f.minus[0] / exact.minus(f.grid.xi[0]);
    double e = 0;
    for (int m = 0; m < f.grid.N; ++m) {
      double x = f.grid.xi[m];
      e = std::max(e, std::abs(f.minus[m] - k * exact.minus(x)) / std::abs(exact.minus(x)));
    }
    return e;
  };
  double prev = 1e300;
  for (int N = 1 << 10; N <= 1 << 13; N *= 2) {
    auto f = canonical_fft(s, N);
    // g_- g_+ = exp(log g) holds on the grid up to rounding for every N
    CHECK(f.residual < 1e-11);
    double e = factor_error(f);
    CHECK(e < prev);
    prev = e;
  }
  CHECK(prev < 1e-8);
}
