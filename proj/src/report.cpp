#include "tpk/report.hpp"

#include <cmath>
#include <cstdio>

#include "tpk/errors.hpp"

namespace tpk {

namespace {

void emit(const Json& j, std::string& out, int depth) {
  const std::string pad(2 * depth + 2, ' '), close(2 * depth, ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += pad + Json(it.key()).dump() + ": ";
        emit(it.value(), out, depth + 1);
      }
      out += "\n" + close + "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      // arrays of scalars stay on one line
      bool flat = std::all_of(j.begin(), j.end(), [](const Json& e) { return e.is_primitive(); });
      out += flat ? "[" : "[\n";
      bool first = true;
      for (const auto& e : j) {
        if (!first) out += flat ? ", " : ",\n";
        first = false;
        if (!flat) out += pad;
        emit(e, out, depth + 1);
      }
      out += flat ? "]" : "\n" + close + "]";
      return;
    }
    case Json::value_t::number_float: {
      double v = j.get<double>() + 0.0;  // no signed zeros
      if (!std::isfinite(v)) {
        out += "null";
        return;
      }
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.12e", v);
      out += buf;
      return;
    }
    default:
      out += j.dump();
  }
}

Exponent exponent_from_json(const Json& j) {
  if (j.is_number()) return Exponent::from_double(j.get<double>());
  if (j.is_string()) {
    if (auto e = Exponent::parse(j.get<std::string>())) return *e;
  }
  throw Error(ErrorCode::InvalidArgument, "exponent must be a number or an \"n/d\" string");
}

std::vector<Root> roots_from_json(const Json& j) {
  std::vector<Root> out;
  if (j.is_null()) return out;
  for (const auto& r : j) {
    if (!r.is_array() || r.size() < 2 || r.size() > 3)
      throw Error(ErrorCode::InvalidArgument, "a root is [re, im] or [re, im, mult]");
    int mult = r.size() == 3 ? r[2].get<int>() : 1;
    if (mult < 1) throw Error(ErrorCode::InvalidArgument, "root multiplicity must be positive");
    out.push_back({cplx(r[0].get<double>(), r[1].get<double>()), mult});
  }
  return out;
}

Json roots_json(const std::vector<Root>& roots) {
  Json a = Json::array();
  for (const auto& r : roots) a.push_back({r.z.real(), r.z.imag(), r.mult});
  return a;
}

Json rational_json(const RationalFunction& h) {
  return Json{{"scale", complex_json(h.scale)}, {"zeros", roots_json(h.zeros)}, {"poles", roots_json(h.poles)}};
}

}  // namespace

std::string dump(const Json& j) {
  std::string out;
  emit(j, out, 0);
  out += "\n";
  return out;
}

PCSymbol symbol_from_json(const Json& j, std::optional<Exponent> p) {
  try {
    PCSymbol s;
    s.p = p ? *p : (j.contains("p") ? exponent_from_json(j["p"]) : Exponent(2));
    if (j.contains("rational")) {
      const auto& r = j["rational"];
      if (r.contains("scale")) s.rational.scale = cplx(r["scale"][0].get<double>(), r["scale"][1].get<double>());
      if (r.contains("zeros")) s.rational.zeros = roots_from_json(r["zeros"]);
      if (r.contains("poles")) s.rational.poles = roots_from_json(r["poles"]);
    }
    if (j.contains("jumps")) {
      for (const auto& jp : j["jumps"]) {
        const auto& loc = jp.at("location");
        Location at = loc.is_string() ? Location::inf() : Location::at(loc.get<double>());
        if (loc.is_string() && loc.get<std::string>() != "inf")
          throw Error(ErrorCode::InvalidArgument, "jump location must be a number or \"inf\"");
        s.jumps.push_back({at, exponent_from_json(jp.at("alpha"))});
      }
    }
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, std::string("malformed symbol JSON: ") + e.what());
  }
}

Json symbol_to_json(const PCSymbol& s) {
  Json jumps = Json::array();
  for (const auto& j : s.jumps)
    jumps.push_back(Json{{"location", j.location.infinite ? Json("inf") : Json(j.location.c)},
                         {"alpha", j.alpha.value()}});
  return Json{{"p", s.p.value()}, {"rational", rational_json(s.rational)}, {"jumps", jumps}};
}

Json exponent_json(const Exponent& e) { return e.value(); }

Json complex_json(cplx z) { return Json::array({z.real(), z.imag()}); }

Json factor_json(const FactorExpression& f0) {
  auto f = f0.canonical();
  Json terms = Json::array();
  for (const auto& t : f.terms) terms.push_back({t.a.real(), t.a.imag(), t.beta.value(), branch_name(t.branch)});
  return Json{{"scale", complex_json(f.scale)}, {"terms", terms}};
}

Json decomposition_json(const PCDecomposition& d) {
  Json regular = Json::array();
  for (const auto& j : d.regular_jumps) regular.push_back(Json{{"location", j.c}, {"alpha", j.alpha.value()}});
  Json critical = Json::array();
  for (double c : d.critical_jumps) critical.push_back(c);
  return Json{{"h", rational_json(d.h)},
              {"index", d.h.zeros_upper() - d.h.poles_upper()},
              {"alpha_inf", d.alpha_inf.value()},
              {"regular_jumps", regular},
              {"critical_jumps", critical}};
}

Json factorization_json(const Factorization& f) {
  Json membership{{"minus_in_Hp_minus", tri_name(f.flags.minus_in_Hp_minus)},
                  {"plus_inv_in_Hp_plus", tri_name(f.flags.plus_inv_in_Hp_plus)},
                  {"minus_inv_in_Hq_minus", tri_name(f.flags.minus_inv_in_Hq_minus)},
                  {"plus_in_Hq_plus", tri_name(f.flags.plus_in_Hq_plus)}};
  auto terms = [](const FactorExpression& e) {
    Json a = Json::array();
    for (const auto& t : e.canonical().terms) a.push_back({t.a.real(), t.a.imag(), t.beta.value(), branch_name(t.branch)});
    return a;
  };
  return Json{{"class", f.cls.kind == FactorClass::Kind::P ? "p" : "js"},
              {"p", f.p.value()},
              {"j", f.cls.j.value()},
              {"s", f.cls.s.value()},
              {"k", f.index},
              {"minus", terms(f.minus)},
              {"plus", terms(f.plus)},
              {"scale", complex_json(f.minus.scale * f.plus.scale)},
              {"bounded", f.bounded},
              {"membership", membership}};
}

Json kernel_json(const KernelDescription& k) {
  Json basis = Json::array();
  for (const auto& b : k.basis) basis.push_back(factor_json(b));
  Json vanish = Json::array();
  for (double d : k.vanish_at) vanish.push_back(d);
  Json warnings = Json::array();
  for (const auto& w : k.warnings) warnings.push_back(w);
  return Json{{"dimension", k.dimension}, {"multiplier", factor_json(k.multiplier)},
              {"model_degree", k.model_degree}, {"vanish_at", vanish},
              {"basis", basis},           {"case", k.rule},
              {"warnings", warnings}};
}

Json rank_json(const RankEstimate& r) {
  return Json{{"N", r.N}, {"estimate", r.estimate}, {"gap", r.gap}, {"advisory", r.advisory}};
}

}  // namespace tpk
