#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "tpk/factor_expression.hpp"

using namespace tpk;

namespace {

// Boundary value of the principal power from just above / below the axis.
cplx from_above(double x, cplx a, double b) { return std::pow(cplx(x, 0) - a + cplx(0, 1e-14), b); }
cplx from_below(double x, cplx a, double b) { return std::pow(cplx(x, 0) - a - cplx(0, 1e-14), b); }

}  // namespace

TEST_CASE("real-base branches are boundary values from the analytic side") {
  for (double b : {0.5, -0.25, 1.0 / 3.0, 1.5}) {
    auto up = FactorExpression::power(2.0, Exponent::from_double(b), Branch::Upper);
    auto lo = FactorExpression::power(2.0, Exponent::from_double(b), Branch::Lower);
    for (double x : {-10.0, 0.0, 1.9, 2.1, 30.0}) {
      CHECK(std::abs(up(x) - from_above(x, 2.0, b)) < 1e-9 * std::abs(up(x)));
      CHECK(std::abs(lo(x) - from_below(x, 2.0, b)) < 1e-9 * std::abs(lo(x)));
    }
  }
}

TEST_CASE("non-real bases get the branch they are analytic across") {
  auto f = FactorExpression::power(kI, Exponent(1, 2), Branch::Upper);
  CHECK(f.terms[0].branch == Branch::Lower);
  auto g = FactorExpression::power(-kI, Exponent(-1, 3), Branch::Lower);
  CHECK(g.terms[0].branch == Branch::Upper);
  for (double x : oracle::random_points(20)) {
    CHECK(std::abs(f(x) - std::pow(cplx(x, -1), 0.5)) < 1e-12 * std::abs(f(x)));
    CHECK(std::abs(g(x) - std::pow(cplx(x, 1), -1.0 / 3.0)) < 1e-12 * std::abs(g(x)));
  }
}

TEST_CASE("canonical form merges and drops") {
  auto f = FactorExpression::power(-kI, Exponent(1, 2)) * FactorExpression::power(-kI, Exponent(1, 2)) *
           FactorExpression::power(kI, Exponent(1)) * FactorExpression::power(kI, Exponent(-1));
  REQUIRE(f.terms.size() == 1);
  CHECK(f.terms[0].beta == Exponent(1));
  CHECK(f.degree() == Exponent(1));
  // real base: two upper halves make an integer power, which is branch-free
  auto g = FactorExpression::power(0.0, Exponent(1, 2), Branch::Lower) *
           FactorExpression::power(0.0, Exponent(1, 2), Branch::Lower);
  REQUIRE(g.terms.size() == 1);
  CHECK(g.terms[0].branch == Branch::Upper);
  CHECK(std::abs(g(-3.0) - cplx(-3.0)) < 1e-12);
}

TEST_CASE("conjugation, inverse and rational import") {
  RationalFunction h;
  h.scale = cplx(2, 1);
  h.zeros = {{-kI, 3}};
  h.poles = {{2.0 * kI, 1}, {3.0 * kI, 1}, {4.0 * kI, 1}};
  auto f = FactorExpression::from_rational(h) * FactorExpression::power(1.0, Exponent(1, 4), Branch::Upper);
  for (double x : oracle::random_points(20)) {
    if (x == 1.0) continue;
    CHECK(std::abs(f.conj()(x) - std::conj(f(x))) < 1e-12 * std::abs(f(x)));
    CHECK(std::abs(f.inverse()(x) * f(x) - 1.0) < 1e-12);
    cplx expected = h(cplx(x, 0)) * from_above(x, 1.0, 0.25);
    CHECK(std::abs(f(x) - expected) < 1e-9 * std::abs(expected));
  }
  CHECK(f.degree() == Exponent(1, 4));
  CHECK(f.is_fractional());
  CHECK_FALSE(FactorExpression::from_rational(h).is_fractional());
}

TEST_CASE("form comparisons") {
  auto a = FactorExpression::power(-kI, Exponent(-1)) * FactorExpression::constant(2.0);
  auto b = FactorExpression::power(-kI, Exponent(-1)) * FactorExpression::constant(5.0);
  CHECK(same_up_to_constant(a, b));
  CHECK_FALSE(same_form(a, b));
  CHECK(same_form(a, a * FactorExpression::constant(1.0)));
}
