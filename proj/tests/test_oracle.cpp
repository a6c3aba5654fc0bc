#include <cmath>

#include "doctest.h"
#include "fixtures.hpp"
#include "oracles.hpp"
#include "tpk/errors.hpp"
#include "tpk/kernel.hpp"
#include "tpk/oracle.hpp"

using namespace tpk;
using namespace fixtures;

namespace {

FactorExpression pw(cplx a, int n, int d = 1) { return FactorExpression::power(a, Exponent(n, d)); }

// max |a - k b| / |b| with k fixed by the first sample
double aligned_error(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  cplx k = a[0] / b[0];
  double e = 0;
  for (std::size_t m = 0; m < a.size(); ++m) e = std::max(e, std::abs(a[m] - k * b[m]) / std::abs(b[m]));
  return e;
}

PCSymbol rational(RationalFunction h) {
  PCSymbol s;
  s.rational = h;
  return s;
}

}  // namespace

TEST_CASE("residual of model space elements") {
  auto rbar = [](double x) { return std::conj(oracle::r(x)); };
  auto r = [](double x) { return oracle::r(x); };
  CHECK(kernel_residual(rbar, pw(-kI, -1), 1024) < 1e-12);
  for (int N : {256, 1024, 4096}) CHECK(kernel_residual(r, pw(-kI, -1), N) > 0.1);
  CHECK(kernel_residual(rational(RationalFunction::r_power(-1)), pw(-kI, -1), 256) < 1e-12);
}

TEST_CASE("residual of the first jump example") {
  auto k = pc_kernel(ex1());
  for (const auto& phi : k.basis) CHECK(kernel_residual(ex1(), phi, 1 << 14) < 1e-3);
  // same values with the symbol written out independently
  auto g = [](double x) {
    cplx z(x, 0);
    return std::pow(z + kI, 3) / ((z - 2.0 * kI) * (z - 3.0 * kI) * (z - 4.0 * kI)) * oracle::r_inf_power(0.5, x);
  };
  CHECK(kernel_residual(g, k.basis[0], 1 << 12) == doctest::Approx(kernel_residual(ex1(), k.basis[0], 1 << 12)));
}

TEST_CASE("residual near power singularities at jumps") {
  // kernel functions blow up like |xi - c|^{-0.4} at the jump
  PCSymbol s = jump(Location::at(0.5), Exponent(2, 5));
  s.rational = RationalFunction::r_power(-2) * s.rational;
  auto k = pc_kernel(s);
  REQUIRE(k.dimension > 0);
  for (const auto& phi : k.basis) {
    double coarse = kernel_residual(s, phi, 1 << 10), fine = kernel_residual(s, phi, 1 << 14);
    CHECK(fine < 1e-4);
    CHECK(fine < coarse);
  }
  // multiplying by r^3 leaves the kernel
  auto off = k.basis[0] * FactorExpression::from_rational(RationalFunction::r_power(3));
  CHECK(kernel_residual(s, off, 1 << 14) > 0.1);
}

TEST_CASE("residual rejects samples at poles") {
  auto grid = CayleyGrid::make(64);
  auto one = [](double) { return cplx(1.0); };
  CHECK_THROWS_WITH_AS(kernel_residual(one, pw(grid.xi[3], -1), 64), doctest::Contains("NonFiniteSample"), Error);
}

TEST_CASE("circle coefficients") {
  auto c = circle_coefficients([](double x) { return oracle::r(x); }, 4, 64);
  for (int n = -4; n <= 4; ++n) CHECK(std::abs(c[n + 4] - (n == 1 ? 1.0 : 0.0)) < 1e-13);
  auto d = circle_coefficients([](double x) { return 1.0 / cplx(x, 1); }, 3, 64);
  CHECK(std::abs(d[3] - 1.0 / cplx(0, 2)) < 1e-13);
  CHECK(std::abs(d[4] + 1.0 / cplx(0, 2)) < 1e-13);
  CHECK(std::abs(d[2]) < 1e-13);
}

TEST_CASE("rank oracle on rational symbols") {
  CHECK(toeplitz_rank_oracle(rational(RationalFunction::r_power(1)), 64).estimate == 0);
  auto r3 = toeplitz_rank_oracle(rational(RationalFunction::r_power(-3)), 64);
  CHECK(r3.estimate == 3);
  CHECK(r3.gap > 1e10);
  CHECK_FALSE(r3.advisory);
  auto h = toeplitz_rank_oracle(rational(ex1_h()), 128, 1e3);
  CHECK(h.estimate == 3);
  CHECK(h.estimate == -rational_wh(ex1_h(), Exponent(2)).index);
}

TEST_CASE("rank oracle with a jump") {
  // r^{-2} r_0^{-0.4}: case (i), dimension 2
  PCSymbol s = jump(Location::at(0), Exponent(-2, 5));
  s.rational = RationalFunction::r_power(-2);
  CHECK(pc_kernel(s).dimension == 2);
  auto est = toeplitz_rank_oracle(s, 128, 20);
  CHECK(est.estimate == 2);
  CHECK_FALSE(est.advisory);
}

TEST_CASE("rank oracle flags 2-singular symbols and missing gaps") {
  PCSymbol s = jump(Location::inf(), Exponent(1, 2));
  try {
    auto est = toeplitz_rank_oracle(s, 64);
    CHECK(est.advisory);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NoSpectralGap);
  }
  PCSymbol grow;
  grow.rational.zeros = {{cplx(0, 1), 1}};
  CHECK_THROWS_WITH_AS(toeplitz_rank_oracle(grow, 16), doctest::Contains("UnboundedSymbol"), Error);
  // 2 + cos(theta): singular values fill [1, 3] densely, so no cut separates them
  auto band = [](double x) { return cplx(2.0 + oracle::r(x).real()); };
  CHECK_THROWS_WITH_AS(toeplitz_rank_oracle(band, 64, 2.0), doctest::Contains("NoSpectralGap"), Error);
}

TEST_CASE("Szego condition") {
  auto one = szego_check([](double) { return 1.0; });
  CHECK(one.finite);
  CHECK(one.value == 0.0);
  // integral of log(1+t^2)/2/(1+t^2) over R is pi log 2
  auto a = szego_check(pw(-kI, 1), 4096);
  CHECK(a.finite);
  CHECK(a.value == doctest::Approx(oracle::pi * std::log(2.0)).epsilon(1e-3));
  auto b = szego_check([](double x) { return std::exp(x * x); });
  CHECK_FALSE(b.finite);
}

TEST_CASE("outer functions from moduli") {
  auto c = outer_from_modulus([](double) { return 2.5; }, 256);
  for (auto v : c.values) CHECK(std::abs(v - 2.5) < 1e-12);

  auto lin = outer_from_modulus(pw(-kI, 1), 1 << 12);
  std::vector<cplx> exact;
  for (double x : lin.grid.xi) exact.push_back(cplx(x, 1));
  CHECK(aligned_error(lin.values, exact) < 1e-6);

  auto W = [](double x) { return std::abs(cplx(x, 2) / cplx(x, 3)); };
  auto q = outer_from_modulus(W, 1 << 12);
  std::vector<cplx> qexact;
  for (double x : q.grid.xi) qexact.push_back(cplx(x, 2) / cplx(x, 3));
  CHECK(aligned_error(q.values, qexact) < 1e-6);
  for (int m = 0; m < q.grid.N; ++m) CHECK(std::abs(std::abs(q.values[m]) - W(q.grid.xi[m])) < 1e-8 * W(q.grid.xi[m]));

  CHECK_THROWS_WITH_AS(outer_from_modulus([](double x) { return std::exp(x * x); }, 256),
                       doctest::Contains("SzegoViolated"), Error);
}

TEST_CASE("outer synthesis is analytic in the upper half-plane") {
  auto W = [](double x) { return std::abs(cplx(x, 0.5) * cplx(x - 1, 2) / (cplx(x, 1) * cplx(x + 2, 1))); };
  auto o = outer_from_modulus(W, 1 << 12);
  // negative circle frequencies of O vanish
  auto minus = circle_split(o.values, Sign::Minus);
  double e = 0, n = 0;
  for (int m = 0; m < o.grid.N; ++m) {
    e = std::max(e, std::abs(minus[m]));
    n = std::max(n, std::abs(o.values[m]));
  }
  CHECK(e < 1e-10 * n);
}
