#pragma once

// Truncated Taylor jets for forward-mode differentiation of chart functions.
//
// Jet2 carries value, gradient and Hessian of a scalar at a point. The Hessian
// is stored as a packed upper triangle, so symmetry holds by construction.
// Jet1 is the order-one companion produced when a Jet2 is differentiated
// once; Jet1 differentiated once more is a plain double.

#include <span>
#include <utility>
#include <vector>

#include "wqcm/errors.hpp"
#include "wqcm/point.hpp"

namespace wqcm {

class Jet1 {
 public:
  Jet1() = default;
  Jet1(double value, std::vector<double> gradient)
      : value_(value), gradient_(std::move(gradient)) {}

  static Jet1 constant(int dim, double c) { return Jet1(c, std::vector<double>(dim, 0.0)); }

  int dim() const { return static_cast<int>(gradient_.size()); }
  double value() const { return value_; }
  double gradient(int i) const { return gradient_[i]; }
  std::span<const double> gradient() const { return gradient_; }

  Jet1& operator+=(const Jet1& b);
  Jet1& operator-=(const Jet1& b);
  Jet1& operator*=(double s);

 private:
  double value_ = 0.0;
  std::vector<double> gradient_;
};

Jet1 operator+(const Jet1& a, const Jet1& b);
Jet1 operator-(const Jet1& a, const Jet1& b);
Jet1 operator*(const Jet1& a, const Jet1& b);
Jet1 operator/(const Jet1& a, const Jet1& b);
Jet1 operator-(const Jet1& a);
Jet1 operator*(double s, const Jet1& a);
Jet1 operator*(const Jet1& a, double s);
Jet1 operator+(const Jet1& a, double s);

class Jet2 {
 public:
  Jet2() = default;

  /// Seeds. `coordinate` throws DimensionError when i is outside [0, dim).
  static Jet2 constant(int dim, double c);
  static Jet2 coordinate(const Point& p, int i);

  int dim() const { return static_cast<int>(gradient_.size()); }
  double value() const { return value_; }
  double gradient(int i) const { return gradient_[i]; }
  std::span<const double> gradient() const { return gradient_; }
  double hessian(int i, int j) const { return hessian_[packed_index(i, j)]; }
  std::span<const double> packed_hessian() const { return hessian_; }

  Jet2& operator+=(const Jet2& b);
  Jet2& operator-=(const Jet2& b);

  int packed_index(int i, int j) const {
    if (i > j) std::swap(i, j);
    const int d = dim();
    return i * d - i * (i - 1) / 2 + (j - i);
  }

  friend bool operator==(const Jet2&, const Jet2&) = default;

 private:
  friend Jet2 operator+(const Jet2&, const Jet2&);
  friend Jet2 operator-(const Jet2&, const Jet2&);
  friend Jet2 operator*(const Jet2&, const Jet2&);
  friend Jet2 operator/(const Jet2&, const Jet2&);
  friend Jet2 operator-(const Jet2&);
  friend Jet2 operator*(double, const Jet2&);
  friend Jet2 compose(const Jet2&, double, double, double);

  Jet2(double value, std::vector<double> gradient, std::vector<double> hessian)
      : value_(value), gradient_(std::move(gradient)), hessian_(std::move(hessian)) {}

  double value_ = 0.0;
  std::vector<double> gradient_;
  std::vector<double> hessian_;
};

Jet2 operator+(const Jet2& a, const Jet2& b);
Jet2 operator-(const Jet2& a, const Jet2& b);
Jet2 operator*(const Jet2& a, const Jet2& b);
Jet2 operator/(const Jet2& a, const Jet2& b);
Jet2 operator-(const Jet2& a);
Jet2 operator*(double s, const Jet2& a);

// Chain rule for a scalar function with value f0 and derivatives f1, f2 at a.value().
Jet2 compose(const Jet2& a, double f0, double f1, double f2);

Jet2 sin(const Jet2& a);
Jet2 cos(const Jet2& a);
Jet2 exp(const Jet2& a);
Jet2 sqrt(const Jet2& a);
Jet2 powi(const Jet2& a, int k);

enum class BinaryOp { add, sub, mul, div };
enum class UnaryOp { neg, sin, cos, exp, sqrt, powi };

Jet2 jet_binary(BinaryOp op, const Jet2& a, const Jet2& b);
Jet2 jet_unary(UnaryOp op, const Jet2& a, int k = 0);

// One derivative lowers the order by one.
Jet1 partial(const Jet2& a, int k);
inline double partial(const Jet1& a, int k) { return a.gradient(k); }
Jet1 truncate(const Jet2& a);
inline double truncate(const Jet1& a) { return a.value(); }

template <class S>
using lower_t = decltype(partial(std::declval<const S&>(), 0));

template <class S>
S zero_like(int dim);
template <>
inline double zero_like<double>(int) { return 0.0; }
template <>
inline Jet1 zero_like<Jet1>(int dim) { return Jet1::constant(dim, 0.0); }
template <>
inline Jet2 zero_like<Jet2>(int dim) { return Jet2::constant(dim, 0.0); }

inline double value_of(double a) { return a; }
inline double value_of(const Jet1& a) { return a.value(); }
inline double value_of(const Jet2& a) { return a.value(); }

}  // namespace wqcm
