#include "tpk/expression.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <variant>
#include <vector>

#include "tpk/errors.hpp"

namespace tpk {

namespace {

ExprPtr node(Expr e) { return std::make_shared<const Expr>(std::move(e)); }

ExprPtr binary(Expr::Kind k, ExprPtr a, ExprPtr b) {
  Expr e;
  e.kind = k;
  e.lhs = std::move(a);
  e.rhs = std::move(b);
  return node(std::move(e));
}

class Parser {
 public:
  explicit Parser(const std::string& text) : s_(text) {}

  ExprPtr parse() {
    auto e = sum();
    skip();
    if (pos_ < s_.size()) fail("'+', '-', '*', '/', '^' or end of input");
    return e;
  }

 private:
  const std::string& s_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& expected) const {
    int line = 1, col = 1;
    for (std::size_t k = 0; k < pos_ && k < s_.size(); ++k) {
      if (s_[k] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::string found = pos_ < s_.size() ? "'" + std::string(1, s_[pos_]) + "'" : "end of input";
    throw Error(ErrorCode::SyntaxError, "line " + std::to_string(line) + ", column " + std::to_string(col) +
                                            ": expected " + expected + ", found " + found);
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("'") + c + "'");
  }

  bool at_word(const char* w) const {
    std::size_t n = std::char_traits<char>::length(w);
    if (s_.compare(pos_, n, w) != 0) return false;
    return pos_ + n >= s_.size() || !std::isalnum(static_cast<unsigned char>(s_[pos_ + n]));
  }

  ExprPtr sum() {
    auto e = product();
    for (;;) {
      if (accept('+'))
        e = binary(Expr::Kind::Add, e, product());
      else if (accept('-'))
        e = binary(Expr::Kind::Sub, e, product());
      else
        return e;
    }
  }

  ExprPtr product() {
    auto e = unary();
    for (;;) {
      if (accept('*'))
        e = binary(Expr::Kind::Mul, e, unary());
      else if (accept('/'))
        e = binary(Expr::Kind::Div, e, unary());
      else
        return e;
    }
  }

  ExprPtr unary() {
    if (accept('-')) {
      Expr e;
      e.kind = Expr::Kind::Neg;
      e.lhs = unary();
      return node(std::move(e));
    }
    return power();
  }

  ExprPtr power() {
    auto base = primary();
    if (!accept('^')) return base;
    Expr e;
    e.kind = Expr::Kind::Pow;
    e.lhs = base;
    e.exponent = exponent();
    return node(std::move(e));
  }

  std::string number_text(bool allow_slash) {
    skip();
    std::size_t start = pos_;
    if (pos_ < s_.size() && s_[pos_] == '-') ++pos_;
    bool digits = false;
    while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.')) {
      digits = true;
      ++pos_;
    }
    if (digits && pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
      std::size_t save = pos_++;
      if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) ++pos_;
      if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      else
        pos_ = save;
    }
    if (!digits) {
      pos_ = start;
      return {};
    }
    std::string text = s_.substr(start, pos_ - start);
    skip();
    if (allow_slash && pos_ < s_.size() && s_[pos_] == '/') {
      ++pos_;
      skip();
      std::size_t d = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (d == pos_) fail("an integer denominator");
      text += "/" + s_.substr(d, pos_ - d);
    }
    return text;
  }

  Exponent exponent() {
    skip();
    bool paren = accept('(');
    std::string text = number_text(paren);
    if (text.empty()) fail(paren ? "a rational exponent" : "an integer exponent or '('");
    if (!paren && text.find_first_of(".eE") != std::string::npos) fail("an integer exponent or '('");
    auto e = Exponent::parse(text);
    if (!e) fail("a rational exponent");
    if (paren) expect(')');
    return *e;
  }

  ExprPtr primary() {
    skip();
    if (accept('(')) {
      auto e = sum();
      expect(')');
      return e;
    }
    if (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.')) {
      std::string text = number_text(false);
      Expr e;
      e.value = std::stod(text);
      if (pos_ < s_.size() && s_[pos_] == 'i' && at_word("i")) {
        ++pos_;
        e.imaginary = true;
      }
      return node(std::move(e));
    }
    if (at_word("i")) {
      ++pos_;
      Expr e;
      e.value = 1.0;
      e.imaginary = true;
      return node(std::move(e));
    }
    if (at_word("x")) {
      ++pos_;
      Expr e;
      e.kind = Expr::Kind::Variable;
      return node(std::move(e));
    }
    if (pos_ < s_.size() && s_[pos_] == 'r' && (pos_ + 1 == s_.size() || !std::isalnum(static_cast<unsigned char>(s_[pos_ + 1])))) {
      ++pos_;
      Expr e;
      e.kind = Expr::Kind::Jump;
      e.location = Location::inf();
      if (accept('(')) {
        skip();
        if (at_word("inf")) {
          pos_ += 3;
        } else {
          std::string text = number_text(false);
          if (text.empty()) fail("a real number or 'inf'");
          e.location = Location::at(std::stod(text));
        }
        expect(')');
      }
      return node(std::move(e));
    }
    fail("a number, 'i', 'x', 'r' or '('");
  }
};

std::string number_string(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

const char* op_text(Expr::Kind k) {
  switch (k) {
    case Expr::Kind::Add: return " + ";
    case Expr::Kind::Sub: return " - ";
    case Expr::Kind::Mul: return " * ";
    default: return " / ";
  }
}

// Intermediate value while lowering: a linear polynomial a x + b, or a general product.
struct Linear {
  cplx a, b;
};
using Value = std::variant<Linear, PCSymbol>;

PCSymbol as_symbol(const Value& v, const Exponent& p) {
  if (auto s = std::get_if<PCSymbol>(&v)) return *s;
  const auto& l = std::get<Linear>(v);
  PCSymbol s;
  s.p = p;
  if (l.a == cplx(0.0)) {
    if (l.b == cplx(0.0)) throw Error(ErrorCode::UnsupportedConstruct, "the zero symbol");
    s.rational.scale = l.b;
  } else {
    s.rational.scale = l.a;
    s.rational.zeros.push_back({-l.b / l.a, 1});
  }
  return s;
}

PCSymbol inverse(PCSymbol s) {
  s.rational = s.rational.inverse();
  for (auto& j : s.jumps) j.alpha = -j.alpha;
  return s;
}

PCSymbol int_power(const PCSymbol& s, const Exponent& e) {
  PCSymbol out;
  out.p = s.p;
  auto n = e.nearest_integer();
  PCSymbol base = n < 0 ? inverse(s) : s;
  for (std::int64_t k = 0; k < std::abs(n); ++k) out = out * base;
  return out;
}

Value eval(const ExprPtr& e, const Exponent& p) {
  switch (e->kind) {
    case Expr::Kind::Number:
      return Linear{0.0, e->imaginary ? cplx(0, e->value) : cplx(e->value, 0)};
    case Expr::Kind::Variable:
      return Linear{1.0, 0.0};
    case Expr::Kind::Jump: {
      PCSymbol s;
      s.p = p;
      s.jumps.push_back({e->location, Exponent(1)});
      return s;
    }
    case Expr::Kind::Neg: {
      auto v = eval(e->lhs, p);
      if (auto l = std::get_if<Linear>(&v)) return Linear{-l->a, -l->b};
      auto s = std::get<PCSymbol>(v);
      s.rational.scale = -s.rational.scale;
      return s;
    }
    case Expr::Kind::Add:
    case Expr::Kind::Sub: {
      auto x = eval(e->lhs, p), y = eval(e->rhs, p);
      auto lx = std::get_if<Linear>(&x), ly = std::get_if<Linear>(&y);
      if (!lx || !ly) throw Error(ErrorCode::UnsupportedConstruct, "sums are limited to linear terms in x");
      double sign = e->kind == Expr::Kind::Add ? 1.0 : -1.0;
      return Linear{lx->a + sign * ly->a, lx->b + sign * ly->b};
    }
    case Expr::Kind::Mul:
    case Expr::Kind::Div: {
      auto x = eval(e->lhs, p), y = eval(e->rhs, p);
      auto lx = std::get_if<Linear>(&x), ly = std::get_if<Linear>(&y);
      // keep constants as constants so that "2*x + 1" stays linear
      if (lx && ly && (lx->a == cplx(0.0) || ly->a == cplx(0.0))) {
        if (e->kind == Expr::Kind::Mul) {
          if (lx->a == cplx(0.0)) return Linear{lx->b * ly->a, lx->b * ly->b};
          return Linear{ly->b * lx->a, ly->b * lx->b};
        }
        if (ly->a == cplx(0.0)) {
          if (ly->b == cplx(0.0)) throw Error(ErrorCode::UnsupportedConstruct, "division by zero");
          return Linear{lx->a / ly->b, lx->b / ly->b};
        }
      }
      auto sx = as_symbol(x, p), sy = as_symbol(y, p);
      return e->kind == Expr::Kind::Mul ? sx * sy : sx * inverse(sy);
    }
    case Expr::Kind::Pow: {
      auto base = eval(e->lhs, p);
      const auto& ex = e->exponent;
      if (ex.is_integer()) {
        if (auto l = std::get_if<Linear>(&base); l && l->a == cplx(0.0))
          return Linear{0.0, std::pow(l->b, static_cast<int>(ex.nearest_integer()))};
        return int_power(as_symbol(base, p), ex);
      }
      auto s = as_symbol(base, p);
      // only r(c)^alpha takes fractional powers; a constant rational part must be 1
      auto h = s.rational.canonical();
      if (!h.zeros.empty() || !h.poles.empty() || h.scale != cplx(1.0))
        throw Error(ErrorCode::UnsupportedConstruct, "fractional powers apply to r(c) only");
      for (auto& j : s.jumps) j.alpha = j.alpha * ex;
      return s;
    }
  }
  throw Error(ErrorCode::InvalidArgument, "unknown expression node");
}

}  // namespace

ExprPtr parse_symbol(const std::string& text) { return Parser(text).parse(); }

std::string pretty_print(const ExprPtr& e) {
  switch (e->kind) {
    case Expr::Kind::Number:
      if (e->imaginary) return number_string(e->value) + "i";
      return number_string(e->value);
    case Expr::Kind::Variable:
      return "x";
    case Expr::Kind::Jump:
      return e->location.infinite ? "r(inf)" : "r(" + number_string(e->location.c) + ")";
    case Expr::Kind::Neg:
      return "(-" + pretty_print(e->lhs) + ")";
    case Expr::Kind::Pow:
      return "(" + pretty_print(e->lhs) + ")^(" + e->exponent.to_string() + ")";
    default:
      return "(" + pretty_print(e->lhs) + op_text(e->kind) + pretty_print(e->rhs) + ")";
  }
}

bool same_tree(const ExprPtr& a, const ExprPtr& b) {
  if (!a || !b) return !a && !b;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case Expr::Kind::Number:
      return a->value == b->value && a->imaginary == b->imaginary;
    case Expr::Kind::Variable:
      return true;
    case Expr::Kind::Jump:
      return a->location == b->location;
    case Expr::Kind::Pow:
      return a->exponent.is_exact() == b->exponent.is_exact() && a->exponent == b->exponent &&
             same_tree(a->lhs, b->lhs);
    default:
      return same_tree(a->lhs, b->lhs) && same_tree(a->rhs, b->rhs);
  }
}

PCSymbol lower(const ExprPtr& e, const Exponent& p) {
  auto s = as_symbol(eval(e, p), p);
  s.p = p;
  s.rational = s.rational.canonical();
  return s;
}

}  // namespace tpk
