#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tpk/symbol.hpp"

namespace tpk {

struct CurvePoint {
  enum class Kind { Xi, Arc };
  Kind kind = Kind::Xi;
  /// xi for Xi points (+-inf at the ends), w for Arc points (+-inf at the arc ends).
  double param = 0.0;
  /// Jump location of an Arc point.
  Location at;
  cplx value;

  std::string kind_tag() const;
};

struct CurvePolyline {
  std::vector<CurvePoint> points;
  bool closed = true;
};

/// Point of the arc joining g(c-) (w = +inf) to g(c+) (w = -inf). `tau` is the
/// exponent in coth(pi(i tau + w)): 1/p' at finite points, 1/p at infinity.
cplx arc_value(cplx left, cplx right, double w, double tau);

inline constexpr int kDefaultLineSamples = 2048;
inline constexpr int kDefaultArcSamples = 64;

CurvePolyline sample_curve(const PCSymbol& symbol, int n_line = kDefaultLineSamples,
                           int n_arc = kDefaultArcSamples);

/// Winding number of the closed polyline around 0.
int winding_index(const CurvePolyline& curve);

/// Smallest distance from the origin to any segment of the polyline.
double min_segment_distance(const CurvePolyline& curve);
double max_modulus(const CurvePolyline& curve);

struct Witness {
  std::string tag;
  double modulus;
};

struct SingularityReport {
  bool nonsingular = true;
  std::vector<Witness> witnesses;
  std::optional<int> index;
};

SingularityReport nonsingularity(const PCSymbol& symbol, int n_line = kDefaultLineSamples,
                                 int n_arc = kDefaultArcSamples);

enum class CurveFormat { Csv, Svg };
std::string export_curve(const CurvePolyline& curve, CurveFormat format);

}  // namespace tpk
