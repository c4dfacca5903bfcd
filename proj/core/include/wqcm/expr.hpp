#pragma once

// Closed-form coordinate expressions.
//
// Grammar (whitespace insignificant, left-associative binary operators):
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := '-' unary | power
//   power   := primary ('^' ['-'] integer)*
//   primary := number | coordinate | func '(' expr ')' | '(' expr ')'
//   func    := sin | cos | exp | sqrt

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "wqcm/jet.hpp"
#include "wqcm/point.hpp"

namespace wqcm {

class Expr {
 public:
  enum class Kind { literal, coordinate, add, sub, mul, div, neg, sin, cos, exp, sqrt, powi };

  struct Node {
    Kind kind = Kind::literal;
    double literal = 0.0;
    int index = 0;     // coordinate index
    int exponent = 0;  // powi
    std::shared_ptr<const Node> lhs;
    std::shared_ptr<const Node> rhs;
  };

  Expr() = default;
  explicit Expr(std::shared_ptr<const Node> root) : root_(std::move(root)) {}

  static Expr literal(double v);
  static Expr coordinate(int i);

  bool empty() const { return root_ == nullptr; }
  const Node& root() const { return *root_; }

  Jet2 eval_jet(const Point& p) const;
  double eval(const Point& p) const;

  // Largest coordinate index referenced, or -1.
  int max_coordinate() const;
  bool is_constant() const { return max_coordinate() < 0; }

  // Text that parses back to a structurally equal tree.
  std::string print(const std::vector<std::string>& coords) const;

  friend bool operator==(const Expr& a, const Expr& b);

 private:
  std::shared_ptr<const Node> root_;
};

Expr parse(std::string_view text, const std::vector<std::string>& coords);

}  // namespace wqcm
