#pragma once

#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "tpk/exponent.hpp"

namespace tpk {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline const cplx kI{0.0, 1.0};

enum class Side { Left, Right };

/// Cayley angle theta(xi) = pi + 2 atan(xi) in (0, 2 pi), computed without
/// cancellation near either end.
double cayley_angle(double xi);
/// theta(xi) - 2 pi, accurate for large positive xi.
double cayley_angle_shifted(double xi);

/// r(xi) = (xi - i)/(xi + i).
inline cplx r_of(cplx xi) { return (xi - kI) / (xi + kI); }

struct Root {
  cplx z;
  int mult = 1;
};

/// scale * prod (xi - z)^m / prod (xi - p)^m, kept in factored form.
struct RationalFunction {
  cplx scale{1.0, 0.0};
  std::vector<Root> zeros;
  std::vector<Root> poles;

  static RationalFunction constant(cplx c);
  /// r^n, zeros at i and poles at -i (swapped for negative n).
  static RationalFunction r_power(int n);

  cplx operator()(cplx xi) const;
  /// Value at infinity; only meaningful when degrees match.
  cplx at_infinity() const { return scale; }

  int zero_count() const;
  int pole_count() const;
  int zeros_upper() const;
  int poles_upper() const;

  /// Merges equal roots and cancels common zeros and poles.
  RationalFunction canonical() const;
  RationalFunction operator*(const RationalFunction& o) const;
  RationalFunction inverse() const;
};

/// A point of the extended real line.
struct Location {
  bool infinite = false;
  double c = 0.0;

  static Location inf() { return {true, 0.0}; }
  static Location at(double c) { return {false, c}; }
  bool operator==(const Location& o) const {
    return infinite == o.infinite && (infinite || c == o.c);
  }
  std::string to_string() const;
};

/// r_c^alpha: a branch of r^alpha whose only discontinuity on the extended line is at c.
struct BranchPower {
  Location location;
  Exponent alpha;

  /// Argument used for r_c^alpha = exp(i alpha phi).
  double phase(double xi, Side side) const;
  cplx operator()(double xi, Side side = Side::Left) const;
  /// Limits as xi -> +inf and xi -> -inf.
  cplx at_plus_infinity() const;
  cplx at_minus_infinity() const;
};

struct PCSymbol {
  RationalFunction rational;
  std::vector<BranchPower> jumps;
  Exponent p{2};
};

struct RegularJump {
  double c;
  Exponent alpha;
};

struct PCDecomposition {
  RationalFunction h;
  Exponent p{2};
  Exponent alpha_inf{0};
  std::vector<RegularJump> regular_jumps;
  std::vector<double> critical_jumps;
  /// Non-fatal notes, e.g. an exponent matched a boundary only within tolerance.
  std::vector<std::string> warnings;
};

cplx evaluate(const PCSymbol& symbol, double xi, Side side = Side::Left);
/// (g(point^-), g(point^+)); at infinity (g(+inf), g(-inf)).
std::pair<cplx, cplx> limits_at(const PCSymbol& symbol, const Location& point);
/// Jump exponent at `point`, normalized into (-1/p, 1/p'] at infinity and
/// (-1/p', 1/p] at finite points.
Exponent jump_exponent(const PCSymbol& symbol, const Location& point);
PCDecomposition decompose_pc(const PCSymbol& symbol);
/// Evaluates the product h * r_inf^alpha_inf * prod r_c^alpha * prod r_d^{1/p}.
cplx evaluate(const PCDecomposition& d, double xi, Side side = Side::Left);
/// The symbol that a decomposition represents.
PCSymbol recompose(const PCDecomposition& d);

/// Shifts alpha by the integer that brings it into (upper - 1, upper].
Exponent normalize_exponent(const Exponent& alpha, const Exponent& upper);

enum class Diagnostic { RootOnRealAxis, DegreeMismatch, DuplicateJumpLocation, NonRealExponent };
const char* diagnostic_name(Diagnostic d);
std::vector<Diagnostic> validate(const PCSymbol& symbol);

PCSymbol operator*(const PCSymbol& a, const PCSymbol& b);

}  // namespace tpk
