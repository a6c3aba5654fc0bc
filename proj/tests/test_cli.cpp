#include <cmath>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

#include "doctest.h"
#include "fixtures.hpp"
#include "oracles.hpp"
#include "tpk/cli.hpp"
#include "tpk/errors.hpp"
#include "tpk/expression.hpp"
#include "tpk/report.hpp"

using namespace tpk;
using namespace fixtures;

namespace {

double max_gap(const PCSymbol& a, const PCSymbol& b, int n = 50) {
  double e = 0;
  for (double x : oracle::random_points(n)) {
    cplx u = evaluate(a, x), v = evaluate(b, x);
    e = std::max(e, std::abs(u - v) / std::max(1.0, std::abs(v)));
  }
  return e;
}

const char* kEx1 = "((x+i)^3/((x-2i)*(x-3i)*(x-4i))) * r(inf)^(1/2)";
const char* kEx2 = "r(0)^(1/2) * r(inf)^(1/2) * ((x+i)^2/((x-2i)*(x-3i)))";

ExprPtr leaf_or_tree(int depth);

ExprPtr make(Expr e) { return std::make_shared<const Expr>(std::move(e)); }

ExprPtr leaf() {
  Expr e;
  switch (oracle::uniform_int(0, 3)) {
    case 0:
      e.value = std::round(oracle::uniform(0, 50)) / 8;
      break;
    case 1:
      e.value = oracle::uniform(0, 3);
      e.imaginary = true;
      break;
    case 2:
      e.kind = Expr::Kind::Variable;
      break;
    default:
      e.kind = Expr::Kind::Jump;
      e.location = oracle::uniform_int(0, 1) ? Location::inf() : Location::at(oracle::uniform(-4, 4));
  }
  return make(std::move(e));
}

ExprPtr leaf_or_tree(int depth) {
  if (depth == 0 || oracle::uniform_int(0, 3) == 0) return leaf();
  Expr e;
  int k = oracle::uniform_int(0, 5);
  if (k == 5) {
    e.kind = Expr::Kind::Neg;
    e.lhs = leaf_or_tree(depth - 1);
  } else if (k == 4) {
    e.kind = Expr::Kind::Pow;
    e.lhs = leaf_or_tree(depth - 1);
    e.exponent = oracle::uniform_int(0, 1) ? Exponent(oracle::uniform_int(-5, 5), oracle::uniform_int(1, 7))
                                           : Exponent::inexact(oracle::uniform(-2, 2));
  } else {
    static const Expr::Kind ops[] = {Expr::Kind::Add, Expr::Kind::Sub, Expr::Kind::Mul, Expr::Kind::Div};
    e.kind = ops[k];
    e.lhs = leaf_or_tree(depth - 1);
    e.rhs = leaf_or_tree(depth - 1);
  }
  return make(std::move(e));
}

int run(std::vector<std::string> args, std::string& out) {
  std::ostringstream o, e;
  int code = run_command(args, o, e);
  out = o.str();
  return code;
}

}  // namespace

TEST_CASE("example expressions parse to the expected symbols") {
  CHECK(max_gap(lower(parse_symbol(kEx1), Exponent(2)), ex1()) < 1e-12);
  CHECK(max_gap(lower(parse_symbol(kEx2), Exponent(2)), ex2()) < 1e-12);
  auto one = lower(parse_symbol("1"), Exponent(2));
  CHECK(one.jumps.empty());
  CHECK(one.rational.zeros.empty());
  CHECK(one.rational.scale == cplx(1.0));
  // a bare r is the rational function (x-i)/(x+i)
  auto r = lower(parse_symbol("r^2 * 2"), Exponent(2));
  for (double x : oracle::random_points(10)) CHECK(std::abs(evaluate(r, x) - 2.0 * std::pow(oracle::r(x), 2)) < 1e-12);
}

TEST_CASE("linear sums and constants") {
  auto s = lower(parse_symbol("(2*x - 1 + 3i) / (x/2 + 4i)"), Exponent(2));
  for (double x : oracle::random_points(10)) {
    cplx expect = (2.0 * x - 1.0 + cplx(0, 3)) / (x / 2 + cplx(0, 4));
    CHECK(std::abs(evaluate(s, x) - expect) < 1e-12 * std::abs(expect));
  }
  auto t = lower(parse_symbol("-(x+i)^(-2) * (x - 5i)^2 * r(1.5)^(-1/3)"), Exponent(3));
  CHECK(t.p == Exponent(3));
  CHECK(t.jumps[0].alpha == Exponent(-1, 3));
}

TEST_CASE("syntax errors carry a position and the expected tokens") {
  CHECK_THROWS_WITH_AS(parse_symbol("(x+"), doctest::Contains("line 1, column 4"), Error);
  CHECK_THROWS_WITH_AS(parse_symbol("x +\n * 2"), doctest::Contains("line 2, column 2"), Error);
  CHECK_THROWS_WITH_AS(parse_symbol("r(abc)"), doctest::Contains("expected a real number or 'inf'"), Error);
  CHECK_THROWS_WITH_AS(parse_symbol("x^1.5"), doctest::Contains("SyntaxError"), Error);
  CHECK_THROWS_WITH_AS(parse_symbol("x y"), doctest::Contains("end of input"), Error);
}

TEST_CASE("unsupported constructs") {
  CHECK_THROWS_WITH_AS(lower(parse_symbol("x^2 + 1"), Exponent(2)), doctest::Contains("UnsupportedConstruct"), Error);
  CHECK_THROWS_WITH_AS(lower(parse_symbol("r(0) + 1"), Exponent(2)), doctest::Contains("UnsupportedConstruct"), Error);
  CHECK_THROWS_WITH_AS(lower(parse_symbol("(x+i)^(1/2)"), Exponent(2)), doctest::Contains("UnsupportedConstruct"),
                       Error);
}

TEST_CASE("pretty printing round-trips") {
  for (int n = 0; n < 200; ++n) {
    auto e = leaf_or_tree(4);
    auto text = pretty_print(e);
    auto back = parse_symbol(text);
    CHECK_MESSAGE(same_tree(e, back), text);
    CHECK(same_tree(parse_symbol(pretty_print(back)), back));
  }
  CHECK(same_tree(parse_symbol(pretty_print(parse_symbol(kEx1))), parse_symbol(kEx1)));
}

TEST_CASE("JSON and expressions lower to the same symbol") {
  auto from_text = lower(parse_symbol(kEx1), Exponent(2));
  auto j = Json::parse(R"({"p": 2, "rational": {"scale": [1, 0], "zeros": [[0, -1, 3]],
      "poles": [[0, 2, 1], [0, 3, 1], [0, 4, 1]]}, "jumps": [{"location": "inf", "alpha": 0.5}]})");
  auto from_json = symbol_from_json(j);
  CHECK(max_gap(from_text, from_json) < 1e-12);
  CHECK(from_json.jumps[0].alpha == Exponent(1, 2));
  for (int n = 0; n < 20; ++n) {
    auto s = random_symbol(Exponent(2));
    auto back = symbol_from_json(Json::parse(dump(symbol_to_json(s))));
    CHECK(max_gap(s, back) < 1e-10);
  }
  CHECK(symbol_from_json(Json::parse(R"({"jumps": [{"location": 1, "alpha": "1/3"}]})")).jumps[0].alpha ==
        Exponent(1, 3));
  CHECK_THROWS_AS(symbol_from_json(Json::parse(R"({"jumps": [{"location": "nowhere", "alpha": 1}]})")), Error);
}

TEST_CASE("JSON output uses fixed float formatting") {
  Json j{{"a", 0.5}, {"b", -0.0}, {"c", 3}, {"d", std::nan("")}, {"e", Json::array({1.0, "x"})}};
  auto text = dump(j);
  CHECK(text.find("\"a\": 5.000000000000e-01") != std::string::npos);
  CHECK(text.find("\"b\": 0.000000000000e+00") != std::string::npos);
  CHECK(text.find("\"c\": 3") != std::string::npos);
  CHECK(text.find("\"d\": null") != std::string::npos);
  CHECK(Json::parse(text)["e"][1] == "x");
}

TEST_CASE("command line") {
  auto dir = std::filesystem::temp_directory_path() / "tpk_cli_test";
  std::filesystem::create_directories(dir);
  auto ex1_path = (dir / "ex1.txt").string();
  std::ofstream(ex1_path) << kEx1 << "\n";
  auto report = (dir / "report.json").string();

  std::string out;
  CHECK(run({"kernel", "--p", "2", "--symbol", ex1_path, "--out", report}, out) == 0);
  std::ifstream in(report);
  auto j = Json::parse(in);
  CHECK(j["dimension"] == 2);
  CHECK(j["basis"].size() == 2);

  std::string a, b;
  run({"factorize", "--symbol", kEx2}, a);
  run({"factorize", "--symbol", kEx2}, b);
  CHECK(a == b);
  CHECK(Json::parse(a)["status"] == "no-p-factorization");
  CHECK(run({"kernel", "--symbol", kEx2}, out) == 0);
  CHECK(Json::parse(out)["dimension"] == 0);

  CHECK(run({"factorize", "--symbol", "r(inf)^(1/2)"}, out) == 0);
  auto f = Json::parse(out);
  CHECK(f["status"] == "no-p-factorization");
  CHECK(f["qs_factorization"]["k"] == 0);
  CHECK(run({"adjoint-kernel", "--symbol", "r(inf)^(1/2)"}, out) == 0);
  CHECK(Json::parse(out)["dimension"] == 0);
  CHECK(run({"factorize", "--symbol", "r(0)^(1/4)"}, out) == 0);
  CHECK(Json::parse(out)["status"] == "ok");

  CHECK(run({"analyze", "--symbol", "r^(-2)"}, out) == 0);
  auto an = Json::parse(out);
  CHECK(an["nonsingular"] == true);
  CHECK(an["index"] == -2);

  CHECK(run({"minimal-kernel", "--symbol", "(x-2i)^2/(x+i)^3"}, out) == 0);
  CHECK(Json::parse(out)["dimension"] == 3);

  CHECK(run({"verify", "--p", "2", "--symbol", ex1_path, "--N", "16384"}, out) == 0);
  for (const auto& r : Json::parse(out)["residuals"]) CHECK(r["value"].get<double>() < 1e-3);

  auto svg = (dir / "curve.svg").string();
  CHECK(run({"plot-curve", "--p", "2", "--symbol", ex1_path, "--out", svg}, out) == 0);
  std::ifstream s(svg);
  std::string body((std::istreambuf_iterator<char>(s)), {});
  CHECK(body.find("<polyline") != std::string::npos);
  CHECK(run({"plot-curve", "--symbol", ex1_path, "--format", "csv"}, out) == 0);
  CHECK(out.rfind("param_kind,param_value,re,im\n", 0) == 0);

  // usage and parse errors exit 1, domain errors 2 with a structured report
  CHECK(run({"kernel"}, out) == 1);
  CHECK(run({"nonsense"}, out) == 1);
  CHECK(run({"kernel", "--symbol", "(x+"}, out) == 1);
  CHECK(run({"kernel", "--symbol", "x^2+1"}, out) == 1);
  CHECK(run({"kernel", "--symbol", "x-1"}, out) == 2);
  CHECK(Json::parse(out)["status"] == "error");
  CHECK(run({"verify", "--symbol", "r", "--N", "1000"}, out) == 2);
  CHECK(run({"kernel", "--p", "1", "--symbol", "r"}, out) == 2);
  std::filesystem::remove_all(dir);
}
