#include "tpk/cli.hpp"

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "tpk/curve.hpp"
#include "tpk/errors.hpp"
#include "tpk/expression.hpp"
#include "tpk/kernel.hpp"
#include "tpk/oracle.hpp"
#include "tpk/report.hpp"

namespace tpk {

namespace {

struct Options {
  std::string p_text;
  std::string symbol;
  std::string out;
  std::string q_text;
  std::string format;
  int N = 1 << 14;
  int rank_N = 128;
  int n_line = kDefaultLineSamples;
  int n_arc = kDefaultArcSamples;
  double gap_ratio = kDefaultGapRatio;
};

std::string trim(const std::string& s) {
  auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return {};
  auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::optional<Exponent> parse_p(const std::string& text) {
  if (text.empty()) return std::nullopt;
  auto p = Exponent::parse(text);
  if (!p) throw Error(ErrorCode::SyntaxError, "--p expects a number or n/d, got '" + text + "'");
  if (!(*p > Exponent(1))) throw Error(ErrorCode::InvalidArgument, "p must exceed 1");
  return p;
}

void write(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::InvalidArgument, "cannot write " + path);
  f << text;
}

void require_valid(const PCSymbol& s) {
  auto diags = validate(s);
  if (diags.empty()) return;
  std::string msg;
  for (auto d : diags) msg += std::string(msg.empty() ? "" : ", ") + diagnostic_name(d);
  throw Error(ErrorCode::InvalidArgument, "symbol is not admissible: " + msg);
}

PCSymbol conjugate_symbol(const PCSymbol& s) {
  PCSymbol c;
  c.p = conjugate_exponent(s.p);
  c.rational.scale = std::conj(s.rational.scale);
  for (const auto& z : s.rational.zeros) c.rational.zeros.push_back({std::conj(z.z), z.mult});
  for (const auto& q : s.rational.poles) c.rational.poles.push_back({std::conj(q.z), q.mult});
  for (const auto& j : s.jumps) c.jumps.push_back({j.location, -j.alpha});
  return c;
}

Json analyze(const PCSymbol& s, const Options& o) {
  Json diags = Json::array();
  for (auto d : validate(s)) diags.push_back(diagnostic_name(d));
  if (!diags.empty()) return Json{{"status", "invalid-symbol"}, {"diagnostics", diags}};
  auto d = decompose_pc(s);
  auto rep = nonsingularity(s, o.n_line, o.n_arc);
  Json witnesses = Json::array();
  for (const auto& w : rep.witnesses) witnesses.push_back(Json{{"tag", w.tag}, {"modulus", w.modulus}});
  Json warnings = Json::array();
  for (const auto& w : d.warnings) warnings.push_back(w);
  return Json{{"status", "ok"},
              {"p", s.p.value()},
              {"symbol", symbol_to_json(s)},
              {"decomposition", decomposition_json(d)},
              {"nonsingular", rep.nonsingular},
              {"index", rep.index ? Json(*rep.index) : Json(nullptr)},
              {"witnesses", witnesses},
              {"warnings", warnings}};
}

Json factorize(const PCSymbol& s) {
  require_valid(s);
  auto d = decompose_pc(s);
  try {
    auto f = pc_p_factorization(d);
    return Json{{"status", "ok"}, {"factorization", factorization_json(f)}};
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NoPFactorization) throw;
    Json j{{"status", "no-p-factorization"}, {"reason", e.what()}};
    if (d.critical_jumps.empty()) {
      auto qs = qs_factorization(d);
      j["qs_factorization"] = factorization_json(qs.factorization);
      j["q"] = qs.q.value();
    }
    return j;
  }
}

Json kernel(const PCSymbol& s) {
  require_valid(s);
  Json j{{"status", "ok"}};
  j.update(kernel_json(pc_kernel(s)));
  return j;
}

Json adjoint_kernel(const PCSymbol& s) {
  require_valid(s);
  auto d = decompose_pc(s);
  KernelDescription k;
  if (d.critical_jumps.empty())
    k = adjoint_kernel_from_qs(qs_factorization(d).factorization);
  else
    k = pc_kernel(conjugate_symbol(s));
  Json j{{"status", "ok"}, {"space_exponent", conjugate_exponent(s.p).value()}};
  j.update(kernel_json(k));
  return j;
}

FactorExpression as_factor(const PCSymbol& s) {
  if (!s.jumps.empty()) throw Error(ErrorCode::UnsupportedConstruct, "expected a rational function without r(c) factors");
  return FactorExpression::from_rational(s.rational);
}

Json minimal_kernel(const PCSymbol& s, const Options& o) {
  auto f = as_factor(s);
  Json j{{"status", "ok"}};
  j.update(kernel_json(minimal_kernel_star(f, s.p)));
  if (!o.q_text.empty()) {
    auto Q = as_factor(load_symbol(o.q_text, s.p));
    auto sym = minimal_kernel_symbol_Q(f, Q, s.p);
    j["symbol_Q"] = Json{{"direct", factor_json(sym.direct)}, {"conjugated", factor_json(sym.conjugated)}};
  }
  return j;
}

Json verify(const PCSymbol& s, const Options& o) {
  require_valid(s);
  if (!(s.p == Exponent(2))) throw Error(ErrorCode::InvalidArgument, "numerical verification runs at p = 2");
  auto k = pc_kernel(s);
  Json residuals = Json::array();
  for (std::size_t b = 0; b < k.basis.size(); ++b)
    residuals.push_back(Json{{"basis_index", b}, {"N", o.N}, {"value", kernel_residual(s, k.basis[b], o.N)}});
  Json j{{"status", "ok"}, {"dimension", k.dimension}, {"residuals", residuals}};
  if (k.dimension == 0)
    j["probe"] = Json{{"N", o.N}, {"value", kernel_residual(s, FactorExpression::power(-kI, Exponent(-1)), o.N)}};
  try {
    j["rank_oracle"] = rank_json(toeplitz_rank_oracle(s, o.rank_N, o.gap_ratio));
  } catch (const Error& e) {
    j["rank_oracle"] = Json{{"N", o.rank_N}, {"error", e.what()}};
  }
  return j;
}

std::string plot_curve(const PCSymbol& s, const Options& o) {
  require_valid(s);
  std::string fmt = o.format;
  if (fmt.empty()) fmt = std::filesystem::path(o.out).extension() == ".csv" ? "csv" : "svg";
  auto curve = sample_curve(s, o.n_line, o.n_arc);
  return export_curve(curve, fmt == "csv" ? CurveFormat::Csv : CurveFormat::Svg);
}

}  // namespace

PCSymbol load_symbol(const std::string& source, std::optional<Exponent> p) {
  std::string text = source;
  std::error_code ec;
  if (std::filesystem::is_regular_file(source, ec)) {
    std::ifstream f(source);
    std::stringstream ss;
    ss << f.rdbuf();
    text = ss.str();
  }
  text = trim(text);
  if (!text.empty() && text[0] == '{') {
    Json j;
    try {
      j = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      throw Error(ErrorCode::SyntaxError, std::string("symbol JSON: ") + e.what());
    }
    return symbol_from_json(j, p);
  }
  return lower(parse_symbol(text), p ? *p : Exponent(2));
}

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Toeplitz operators with piecewise continuous symbols on Hardy spaces of the half-plane", "tpk"};
  app.require_subcommand(1);
  Options o;
  auto common = [&](CLI::App* sub) {
    sub->add_option("--p", o.p_text, "Hardy space exponent (default 2)");
    sub->add_option("--symbol", o.symbol, "symbol file or inline expression")->required();
    sub->add_option("--out", o.out, "output path (default stdout)");
    sub->add_option("--n-line", o.n_line, "curve samples along the line")->check(CLI::PositiveNumber);
    sub->add_option("--n-arc", o.n_arc, "curve samples per jump arc")->check(CLI::PositiveNumber);
    return sub;
  };
  auto* a = common(app.add_subcommand("analyze", "decomposition, nonsingularity and index"));
  auto* f = common(app.add_subcommand("factorize", "p-factorization or the (q,p')-factorization"));
  auto* k = common(app.add_subcommand("kernel", "kernel dimension and basis"));
  auto* ak = common(app.add_subcommand("adjoint-kernel", "kernel of the adjoint"));
  auto* mk = common(app.add_subcommand("minimal-kernel", "minimal kernel of a rational function"));
  mk->add_option("--Q", o.q_text, "outer weight for the symbol of the Q-minimal kernel");
  auto* v = common(app.add_subcommand("verify", "numerical residuals and rank estimate (p = 2)"));
  v->add_option("--N", o.N, "grid size for residuals (power of two)");
  v->add_option("--rank-N", o.rank_N, "section size for the rank estimate");
  v->add_option("--gap-ratio", o.gap_ratio, "singular value gap for the rank estimate");
  auto* pc = common(app.add_subcommand("plot-curve", "curve of the symbol with jump arcs"));
  pc->add_option("--format", o.format, "csv or svg (default from --out extension)")
      ->check(CLI::IsMember({"csv", "svg"}));

  std::vector<std::string> storage{"tpk"};
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : storage) argv.push_back(s.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    if (v->parsed() && !is_power_of_two(o.N)) throw Error(ErrorCode::InvalidArgument, "--N must be a power of two");
    auto p = parse_p(o.p_text);
    auto s = load_symbol(o.symbol, p);
    if (pc->parsed()) {
      write(o.out, plot_curve(s, o), out);
      return 0;
    }
    Json report;
    if (a->parsed()) report = analyze(s, o);
    if (f->parsed()) report = factorize(s);
    if (k->parsed()) report = kernel(s);
    if (ak->parsed()) report = adjoint_kernel(s);
    if (mk->parsed()) report = minimal_kernel(s, o);
    if (v->parsed()) report = verify(s, o);
    write(o.out, dump(report), out);
    return report["status"] == "invalid-symbol" ? 2 : 0;
  } catch (const Error& e) {
    err << "tpk: " << e.what() << "\n";
    if (e.code() == ErrorCode::SyntaxError || e.code() == ErrorCode::UnsupportedConstruct) return 1;
    try {
      write(o.out, dump(Json{{"status", "error"}, {"code", code_name(e.code())}, {"message", e.what()}}), out);
    } catch (const Error&) {
    }
    return 2;
  }
}

}  // namespace tpk
