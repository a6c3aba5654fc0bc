// Symbols shared by several test files.
#pragma once

#include "oracles.hpp"
#include "tpk/symbol.hpp"

namespace fixtures {

using namespace tpk;

// (xi+i)^3 / ((xi-2i)(xi-3i)(xi-4i))
inline RationalFunction ex1_h() {
  RationalFunction h;
  h.zeros = {{-kI, 3}};
  h.poles = {{2.0 * kI, 1}, {3.0 * kI, 1}, {4.0 * kI, 1}};
  return h;
}

// (xi+i)^2 / ((xi-2i)(xi-3i))
inline RationalFunction ex2_h() {
  RationalFunction h;
  h.zeros = {{-kI, 2}};
  h.poles = {{2.0 * kI, 1}, {3.0 * kI, 1}};
  return h;
}

inline PCSymbol jump(Location at, Exponent a, Exponent p = Exponent(2)) {
  PCSymbol s;
  s.p = p;
  s.jumps.push_back({at, a});
  return s;
}

// ex1_h * r_inf^{1/2}
inline PCSymbol ex1() {
  PCSymbol s = jump(Location::inf(), Exponent(1, 2));
  s.rational = ex1_h();
  return s;
}

// ex2_h * r_inf^{1/2} * r_0^{1/2}
inline PCSymbol ex2() {
  PCSymbol s = ex1();
  s.rational = ex2_h();
  s.jumps.push_back({Location::at(0), Exponent(1, 2)});
  return s;
}

inline cplx random_root() {
  return cplx(oracle::uniform(-3, 3), oracle::uniform(0.3, 3.0) * (oracle::uniform_int(0, 1) ? 1 : -1));
}

inline PCSymbol random_symbol(Exponent p) {
  PCSymbol s;
  s.p = p;
  s.rational.scale = std::polar(oracle::uniform(0.5, 2.0), oracle::uniform(-3, 3));
  int n = oracle::uniform_int(0, 3);
  for (int k = 0; k < n; ++k) {
    s.rational.zeros.push_back({random_root(), 1});
    s.rational.poles.push_back({random_root(), 1});
  }
  int nj = oracle::uniform_int(0, 3);
  for (int k = 0; k < nj; ++k) s.jumps.push_back({Location::at(-2.5 + 1.9 * k), Exponent(oracle::uniform_int(-9, 9), 10)});
  if (oracle::uniform_int(0, 1)) s.jumps.push_back({Location::inf(), Exponent(oracle::uniform_int(-4, 4), 10)});
  return s;
}

}  // namespace fixtures
