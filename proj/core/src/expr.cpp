#include "wqcm/expr.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace wqcm {

namespace {

using Node = Expr::Node;
using Kind = Expr::Kind;
using NodePtr = std::shared_ptr<const Node>;

NodePtr make(Kind kind, NodePtr lhs = nullptr, NodePtr rhs = nullptr) {
  auto n = std::make_shared<Node>();
  n->kind = kind;
  n->lhs = std::move(lhs);
  n->rhs = std::move(rhs);
  return n;
}

class Parser {
 public:
  Parser(std::string_view text, const std::vector<std::string>& coords)
      : text_(text), coords_(coords) {}

  NodePtr parse_all() {
    skip_ws();
    if (pos_ >= text_.size()) fail("empty expression");
    NodePtr e = parse_expr();
    skip_ws();
    if (pos_ < text_.size()) fail(std::string("unexpected '") + text_[pos_] + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { fail_at(msg, pos_); }

  [[noreturn]] void fail_at(const std::string& msg, std::size_t at) const {
    int line = 1;
    int col = 1;
    for (std::size_t i = 0; i < at && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError(msg, line, col);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  NodePtr parse_expr() {
    NodePtr lhs = parse_term();
    for (;;) {
      if (accept('+')) {
        lhs = make(Kind::add, lhs, parse_term());
      } else if (accept('-')) {
        lhs = make(Kind::sub, lhs, parse_term());
      } else {
        return lhs;
      }
    }
  }

  NodePtr parse_term() {
    NodePtr lhs = parse_unary();
    for (;;) {
      if (accept('*')) {
        lhs = make(Kind::mul, lhs, parse_unary());
      } else if (accept('/')) {
        lhs = make(Kind::div, lhs, parse_unary());
      } else {
        return lhs;
      }
    }
  }

  NodePtr parse_unary() {
    if (accept('-')) return make(Kind::neg, parse_unary());
    return parse_power();
  }

  NodePtr parse_power() {
    NodePtr base = parse_primary();
    while (accept('^')) {
      skip_ws();
      const std::size_t start = pos_;
      bool negative = false;
      if (pos_ < text_.size() && text_[pos_] == '-') {
        negative = true;
        ++pos_;
        skip_ws();
      }
      const std::size_t digits = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (pos_ == digits) fail_at("non-integer exponent", start);
      if (pos_ < text_.size() &&
          (text_[pos_] == '.' || text_[pos_] == 'e' || text_[pos_] == 'E' ||
           std::isalpha(static_cast<unsigned char>(text_[pos_])))) {
        fail_at("non-integer exponent", start);
      }
      const std::string num(text_.substr(digits, pos_ - digits));
      if (num.size() > 6) fail_at("exponent too large", start);
      auto n = std::make_shared<Node>();
      n->kind = Kind::powi;
      n->lhs = base;
      n->exponent = (negative ? -1 : 1) * std::stoi(num);
      base = n;
    }
    return base;
  }

  NodePtr parse_primary() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of expression");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      NodePtr e = parse_expr();
      if (!accept(')')) fail("expected ')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_identifier();
    fail(std::string("unexpected '") + c + "'");
  }

  NodePtr parse_number() {
    const std::size_t start = pos_;
    auto digits = [&] {
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    };
    digits();
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      digits();
    }
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t save = pos_;
      ++pos_;
      if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
      const std::size_t exp_digits = pos_;
      digits();
      if (pos_ == exp_digits) pos_ = save;
    }
    const std::string num(text_.substr(start, pos_ - start));
    if (num == ".") fail_at("malformed number", start);
    auto n = std::make_shared<Node>();
    n->kind = Kind::literal;
    n->literal = std::strtod(num.c_str(), nullptr);
    return n;
  }

  NodePtr parse_identifier() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    const std::string name(text_.substr(start, pos_ - start));
    skip_ws();
    const bool call = pos_ < text_.size() && text_[pos_] == '(';
    if (call) {
      Kind kind;
      if (name == "sin") {
        kind = Kind::sin;
      } else if (name == "cos") {
        kind = Kind::cos;
      } else if (name == "exp") {
        kind = Kind::exp;
      } else if (name == "sqrt") {
        kind = Kind::sqrt;
      } else {
        fail_at("unknown function '" + name + "'", start);
      }
      ++pos_;
      NodePtr arg = parse_expr();
      if (!accept(')')) fail("expected ')'");
      return make(kind, arg);
    }
    const auto it = std::find(coords_.begin(), coords_.end(), name);
    if (it == coords_.end()) fail_at("unknown identifier '" + name + "'", start);
    auto n = std::make_shared<Node>();
    n->kind = Kind::coordinate;
    n->index = static_cast<int>(it - coords_.begin());
    return n;
  }

  std::string_view text_;
  const std::vector<std::string>& coords_;
  std::size_t pos_ = 0;
};

Jet2 eval_jet_node(const Node& n, const Point& p) {
  switch (n.kind) {
    case Kind::literal:
      return Jet2::constant(p.dim(), n.literal);
    case Kind::coordinate:
      return Jet2::coordinate(p, n.index);
    case Kind::add:
      return eval_jet_node(*n.lhs, p) + eval_jet_node(*n.rhs, p);
    case Kind::sub:
      return eval_jet_node(*n.lhs, p) - eval_jet_node(*n.rhs, p);
    case Kind::mul:
      return eval_jet_node(*n.lhs, p) * eval_jet_node(*n.rhs, p);
    case Kind::div:
      return eval_jet_node(*n.lhs, p) / eval_jet_node(*n.rhs, p);
    case Kind::neg:
      return -eval_jet_node(*n.lhs, p);
    case Kind::sin:
      return sin(eval_jet_node(*n.lhs, p));
    case Kind::cos:
      return cos(eval_jet_node(*n.lhs, p));
    case Kind::exp:
      return exp(eval_jet_node(*n.lhs, p));
    case Kind::sqrt:
      return sqrt(eval_jet_node(*n.lhs, p));
    case Kind::powi:
      return powi(eval_jet_node(*n.lhs, p), n.exponent);
  }
  throw Error("corrupt expression tree");
}

double eval_node(const Node& n, const Point& p) {
  switch (n.kind) {
    case Kind::literal:
      return n.literal;
    case Kind::coordinate:
      if (n.index >= p.dim()) throw DimensionError("point has too few coordinates");
      return p[n.index];
    case Kind::add:
      return eval_node(*n.lhs, p) + eval_node(*n.rhs, p);
    case Kind::sub:
      return eval_node(*n.lhs, p) - eval_node(*n.rhs, p);
    case Kind::mul:
      return eval_node(*n.lhs, p) * eval_node(*n.rhs, p);
    case Kind::div: {
      const double d = eval_node(*n.rhs, p);
      if (d == 0.0) throw DomainError("division by zero");
      return eval_node(*n.lhs, p) / d;
    }
    case Kind::neg:
      return -eval_node(*n.lhs, p);
    case Kind::sin:
      return std::sin(eval_node(*n.lhs, p));
    case Kind::cos:
      return std::cos(eval_node(*n.lhs, p));
    case Kind::exp:
      return std::exp(eval_node(*n.lhs, p));
    case Kind::sqrt: {
      const double v = eval_node(*n.lhs, p);
      if (!(v > 0.0)) throw DomainError("sqrt of non-positive value");
      return std::sqrt(v);
    }
    case Kind::powi:
      // Same path as the jet so values agree bit for bit.
      return eval_jet_node(n, p).value();
  }
  throw Error("corrupt expression tree");
}

int max_coord_node(const Node& n) {
  int m = n.kind == Kind::coordinate ? n.index : -1;
  if (n.lhs) m = std::max(m, max_coord_node(*n.lhs));
  if (n.rhs) m = std::max(m, max_coord_node(*n.rhs));
  return m;
}

bool equal_nodes(const Node& a, const Node& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Kind::literal:
      return a.literal == b.literal;
    case Kind::coordinate:
      return a.index == b.index;
    case Kind::powi:
      if (a.exponent != b.exponent) return false;
      break;
    default:
      break;
  }
  if ((a.lhs == nullptr) != (b.lhs == nullptr) || (a.rhs == nullptr) != (b.rhs == nullptr)) {
    return false;
  }
  if (a.lhs && !equal_nodes(*a.lhs, *b.lhs)) return false;
  if (a.rhs && !equal_nodes(*a.rhs, *b.rhs)) return false;
  return true;
}

std::string format_literal(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void print_node(const Node& n, const std::vector<std::string>& coords, std::string& out) {
  auto binary = [&](const char* op) {
    out += '(';
    print_node(*n.lhs, coords, out);
    out += op;
    print_node(*n.rhs, coords, out);
    out += ')';
  };
  auto call = [&](const char* name) {
    out += name;
    out += '(';
    print_node(*n.lhs, coords, out);
    out += ')';
  };
  switch (n.kind) {
    case Kind::literal:
      out += format_literal(n.literal);
      return;
    case Kind::coordinate:
      out += coords.at(n.index);
      return;
    case Kind::add:
      return binary(" + ");
    case Kind::sub:
      return binary(" - ");
    case Kind::mul:
      return binary("*");
    case Kind::div:
      return binary("/");
    case Kind::neg:
      out += "(-";
      print_node(*n.lhs, coords, out);
      out += ')';
      return;
    case Kind::sin:
      return call("sin");
    case Kind::cos:
      return call("cos");
    case Kind::exp:
      return call("exp");
    case Kind::sqrt:
      return call("sqrt");
    case Kind::powi:
      out += '(';
      print_node(*n.lhs, coords, out);
      out += ")^";
      out += std::to_string(n.exponent);
      return;
  }
}

}  // namespace

Expr Expr::literal(double v) {
  // The parser never produces negative literals; keep that shape so printing round-trips.
  if (v < 0.0) return Expr(make(Kind::neg, literal(-v).root_));
  auto n = std::make_shared<Node>();
  n->kind = Kind::literal;
  n->literal = v;
  return Expr(n);
}

Expr Expr::coordinate(int i) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::coordinate;
  n->index = i;
  return Expr(n);
}

Jet2 Expr::eval_jet(const Point& p) const {
  if (!root_) throw Error("evaluating an empty expression");
  if (max_coordinate() >= p.dim()) throw DimensionError("point has too few coordinates");
  return eval_jet_node(*root_, p);
}

double Expr::eval(const Point& p) const {
  if (!root_) throw Error("evaluating an empty expression");
  return eval_node(*root_, p);
}

int Expr::max_coordinate() const { return root_ ? max_coord_node(*root_) : -1; }

std::string Expr::print(const std::vector<std::string>& coords) const {
  std::string out;
  if (root_) print_node(*root_, coords, out);
  return out;
}

bool operator==(const Expr& a, const Expr& b) {
  if (!a.root_ || !b.root_) return a.root_ == b.root_;
  return equal_nodes(*a.root_, *b.root_);
}

Expr parse(std::string_view text, const std::vector<std::string>& coords) {
  return Expr(Parser(text, coords).parse_all());
}

}  // namespace wqcm
