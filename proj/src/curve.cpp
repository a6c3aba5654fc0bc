#include "tpk/curve.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "tpk/errors.hpp"

namespace tpk {

namespace {

constexpr double kArcHalfWidth = 6.0;
constexpr double kCothCutoff = 1e12;
constexpr double kOriginRelTol = 1e-6;
constexpr double kWindingResidue = 0.05;
const double kInf = std::numeric_limits<double>::infinity();

struct JumpEvent {
  Location at;
  double theta;
  double tau;
};

// Arc parameters from w = +inf down to w = -inf, uniform in tanh(pi w) and
// always containing w = 0.
std::vector<double> arc_parameters(int n_arc) {
  std::vector<double> ws;
  ws.push_back(kInf);
  for (int k = n_arc - 1; k >= 1; --k) {
    double u = -1.0 + 2.0 * k / n_arc;
    double w = std::clamp(std::atanh(u) / kPi, -kArcHalfWidth, kArcHalfWidth);
    ws.push_back(w);
  }
  if (n_arc % 2 == 1) {
    ws.push_back(0.0);
    std::sort(ws.begin() + 1, ws.end(), std::greater<>());
  }
  ws.push_back(-kInf);
  return ws;
}

void append_arc(std::vector<CurvePoint>& out, const Location& at, cplx left, cplx right, double tau, int n_arc,
                bool with_ends) {
  for (double w : arc_parameters(n_arc)) {
    if (!with_ends && std::isinf(w)) continue;
    cplx v = arc_value(left, right, w, tau);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) continue;
    CurvePoint pt;
    pt.kind = CurvePoint::Kind::Arc;
    pt.param = w;
    pt.at = at;
    pt.value = v;
    out.push_back(pt);
  }
}

double segment_distance(cplx a, cplx b) {
  cplx d = b - a;
  double len2 = std::norm(d);
  if (len2 == 0.0) return std::abs(a);
  double t = std::clamp(-(a.real() * d.real() + a.imag() * d.imag()) / len2, 0.0, 1.0);
  return std::abs(a + t * d);
}

std::string format_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12e", v);
  return buf;
}

}  // namespace

std::string CurvePoint::kind_tag() const {
  if (kind == Kind::Xi) return "xi";
  return "arc@" + at.to_string();
}

cplx arc_value(cplx left, cplx right, double w, double tau) {
  if (w == kInf) return left;
  if (w == -kInf) return right;
  cplx t = std::tanh(cplx(kPi * w, kPi * tau));
  if (std::abs(t) * kCothCutoff < 1.0) return {std::nan(""), std::nan("")};
  cplx coth = 1.0 / t;
  return 0.5 * (left + right) + 0.5 * (left - right) * coth;
}

CurvePolyline sample_curve(const PCSymbol& symbol, int n_line, int n_arc) {
  if (n_line < 16 || n_arc < 16) throw Error(ErrorCode::InvalidArgument, "n_line and n_arc must be at least 16");
  const double inv_p = 1.0 / symbol.p.value();
  const double inv_q = 1.0 - inv_p;

  std::vector<JumpEvent> events;
  bool jump_at_inf = false;
  for (const auto& j : symbol.jumps) {
    if (jump_exponent(symbol, j.location).is_zero()) continue;
    if (j.location.infinite) {
      jump_at_inf = true;
      continue;
    }
    if (std::any_of(events.begin(), events.end(), [&](const JumpEvent& e) { return e.at == j.location; })) continue;
    events.push_back({j.location, cayley_angle(j.location.c), inv_q});
  }
  std::sort(events.begin(), events.end(), [](const JumpEvent& a, const JumpEvent& b) { return a.theta < b.theta; });

  CurvePolyline curve;
  auto& pts = curve.points;
  auto [g_plus_inf, g_minus_inf] = limits_at(symbol, Location::inf());
  pts.push_back({CurvePoint::Kind::Xi, -kInf, {}, g_minus_inf});

  std::size_t next = 0;
  auto flush_until = [&](double theta) {
    while (next < events.size() && events[next].theta < theta) {
      const auto& e = events[next++];
      auto [l, r] = limits_at(symbol, e.at);
      append_arc(pts, e.at, l, r, e.tau, n_arc, true);
    }
  };
  for (int k = 1; k < n_line; ++k) {
    double theta = 2.0 * kPi * k / n_line;
    flush_until(theta);
    if (next > 0 && events[next - 1].theta == theta) continue;
    if (next < events.size() && events[next].theta == theta) {
      flush_until(std::nextafter(theta, 10.0));
      continue;
    }
    double xi = -1.0 / std::tan(theta / 2.0);
    pts.push_back({CurvePoint::Kind::Xi, xi, {}, evaluate(symbol, xi)});
  }
  flush_until(2.0 * kPi);
  pts.push_back({CurvePoint::Kind::Xi, kInf, {}, g_plus_inf});
  if (jump_at_inf) append_arc(pts, Location::inf(), g_plus_inf, g_minus_inf, inv_p, n_arc, false);
  pts.push_back(pts.front());
  curve.closed = true;
  return curve;
}

double max_modulus(const CurvePolyline& curve) {
  double m = 0.0;
  for (const auto& p : curve.points) m = std::max(m, std::abs(p.value));
  return m;
}

double min_segment_distance(const CurvePolyline& curve) {
  double d = kInf;
  const auto& pts = curve.points;
  for (std::size_t k = 0; k + 1 < pts.size(); ++k) d = std::min(d, segment_distance(pts[k].value, pts[k + 1].value));
  if (pts.size() == 1) d = std::abs(pts[0].value);
  return d;
}

int winding_index(const CurvePolyline& curve) {
  const auto& pts = curve.points;
  if (pts.empty()) return 0;
  double eps = kOriginRelTol * max_modulus(curve);
  for (const auto& p : pts)
    if (std::abs(p.value) < eps || std::abs(p.value) == 0.0)
      throw Error(ErrorCode::CurveThroughOrigin, "curve passes within tolerance of 0 at " + p.kind_tag());
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < pts.size(); ++k) total += std::arg(pts[k + 1].value / pts[k].value);
  if (!curve.closed) total += std::arg(pts.front().value / pts.back().value);
  double turns = total / (2.0 * kPi);
  double rounded = std::round(turns);
  if (std::abs(turns - rounded) >= kWindingResidue)
    throw Error(ErrorCode::NonIntegerWinding, "accumulated argument is " + std::to_string(turns) + " turns");
  return static_cast<int>(rounded);
}

SingularityReport nonsingularity(const PCSymbol& symbol, int n_line, int n_arc) {
  auto d = decompose_pc(symbol);
  const Exponent inv_q = Exponent(1) - reciprocal(symbol.p);
  SingularityReport rep;
  rep.nonsingular = d.critical_jumps.empty() && !(d.alpha_inf == inv_q);

  auto curve = sample_curve(symbol, n_line, n_arc);
  double scale = max_modulus(curve);
  double eps = kOriginRelTol * scale;
  double dist = min_segment_distance(curve);

  const CurvePoint* nearest = &curve.points.front();
  for (const auto& p : curve.points)
    if (std::abs(p.value) < std::abs(nearest->value)) nearest = &p;
  std::string tag = nearest->kind_tag() + ":" + format_double(nearest->param);
  rep.witnesses.push_back({tag, std::abs(nearest->value)});

  if (rep.nonsingular && dist <= eps)
    throw Error(ErrorCode::InconsistentCheck, "exponents are in range but the sampled curve touches 0");
  if (!rep.nonsingular && dist > eps)
    throw Error(ErrorCode::InconsistentCheck, "an exponent is on the boundary but the sampled curve avoids 0");
  if (rep.nonsingular) rep.index = winding_index(curve);
  return rep;
}

std::string export_curve(const CurvePolyline& curve, CurveFormat format) {
  std::ostringstream os;
  if (format == CurveFormat::Csv) {
    os << "param_kind,param_value,re,im\n";
    for (const auto& p : curve.points)
      os << p.kind_tag() << ',' << format_double(p.param) << ',' << format_double(p.value.real()) << ','
         << format_double(p.value.imag()) << '\n';
    return os.str();
  }
  double lo_x = 0, hi_x = 0, lo_y = 0, hi_y = 0;
  for (const auto& p : curve.points) {
    lo_x = std::min(lo_x, p.value.real());
    hi_x = std::max(hi_x, p.value.real());
    lo_y = std::min(lo_y, p.value.imag());
    hi_y = std::max(hi_y, p.value.imag());
  }
  double span = std::max({hi_x - lo_x, hi_y - lo_y, 1e-12});
  double pad = 0.05 * span;
  double size = 600.0, k = size / (span + 2 * pad);
  auto sx = [&](double x) { return (x - lo_x + pad) * k; };
  auto sy = [&](double y) { return (hi_y - y + pad) * k; };
  char buf[64];
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << size << "\" height=\"" << size
     << "\">\n";
  os << "<polyline fill=\"none\" stroke=\"black\" stroke-width=\"1\" points=\"";
  for (const auto& p : curve.points) {
    std::snprintf(buf, sizeof buf, "%.3f,%.3f ", sx(p.value.real()), sy(p.value.imag()));
    os << buf;
  }
  os << "\"/>\n";
  std::snprintf(buf, sizeof buf, "%.3f\" cy=\"%.3f", sx(0.0), sy(0.0));
  os << "<circle cx=\"" << buf << "\" r=\"3\" fill=\"red\"/>\n";
  os << "</svg>\n";
  return os.str();
}

}  // namespace tpk
