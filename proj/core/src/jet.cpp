#include "wqcm/jet.hpp"

#include <cmath>
#include <string>

namespace wqcm {

namespace {

void require_same_dim(int a, int b) {
  if (a != b) {
    throw DimensionError("jet dimension mismatch: " + std::to_string(a) + " vs " +
                         std::to_string(b));
  }
}

double ipow(double x, int k) {
  // k >= 0
  double result = 1.0;
  double base = x;
  while (k > 0) {
    if (k & 1) result *= base;
    base *= base;
    k >>= 1;
  }
  return result;
}

}  // namespace

// ---------------------------------------------------------------------------
// Jet1
// ---------------------------------------------------------------------------

Jet1& Jet1::operator+=(const Jet1& b) {
  require_same_dim(dim(), b.dim());
  value_ += b.value_;
  for (int i = 0; i < dim(); ++i) gradient_[i] += b.gradient_[i];
  return *this;
}

Jet1& Jet1::operator-=(const Jet1& b) {
  require_same_dim(dim(), b.dim());
  value_ -= b.value_;
  for (int i = 0; i < dim(); ++i) gradient_[i] -= b.gradient_[i];
  return *this;
}

Jet1& Jet1::operator*=(double s) {
  value_ *= s;
  for (double& g : gradient_) g *= s;
  return *this;
}

Jet1 operator+(const Jet1& a, const Jet1& b) {
  Jet1 r = a;
  r += b;
  return r;
}

Jet1 operator-(const Jet1& a, const Jet1& b) {
  Jet1 r = a;
  r -= b;
  return r;
}

Jet1 operator*(const Jet1& a, const Jet1& b) {
  require_same_dim(a.dim(), b.dim());
  std::vector<double> g(a.dim());
  for (int i = 0; i < a.dim(); ++i) g[i] = a.value() * b.gradient(i) + b.value() * a.gradient(i);
  return Jet1(a.value() * b.value(), std::move(g));
}

Jet1 operator/(const Jet1& a, const Jet1& b) {
  require_same_dim(a.dim(), b.dim());
  if (b.value() == 0.0) throw DomainError("division by a jet with zero value");
  const double q = a.value() / b.value();
  std::vector<double> g(a.dim());
  for (int i = 0; i < a.dim(); ++i) g[i] = (a.gradient(i) - q * b.gradient(i)) / b.value();
  return Jet1(q, std::move(g));
}

Jet1 operator-(const Jet1& a) { return -1.0 * a; }

Jet1 operator*(double s, const Jet1& a) {
  Jet1 r = a;
  r *= s;
  return r;
}

Jet1 operator*(const Jet1& a, double s) { return s * a; }

Jet1 operator+(const Jet1& a, double s) {
  std::vector<double> g(a.gradient().begin(), a.gradient().end());
  return Jet1(a.value() + s, std::move(g));
}

// ---------------------------------------------------------------------------
// Jet2
// ---------------------------------------------------------------------------

Jet2 Jet2::constant(int dim, double c) {
  return Jet2(c, std::vector<double>(dim, 0.0), std::vector<double>(dim * (dim + 1) / 2, 0.0));
}

Jet2 Jet2::coordinate(const Point& p, int i) {
  const int d = p.dim();
  if (i < 0 || i >= d) {
    throw DimensionError("coordinate index " + std::to_string(i) + " out of range for dimension " +
                         std::to_string(d));
  }
  Jet2 r = constant(d, p[i]);
  r.gradient_[i] = 1.0;
  return r;
}

Jet2& Jet2::operator+=(const Jet2& b) {
  require_same_dim(dim(), b.dim());
  value_ += b.value_;
  for (std::size_t i = 0; i < gradient_.size(); ++i) gradient_[i] += b.gradient_[i];
  for (std::size_t i = 0; i < hessian_.size(); ++i) hessian_[i] += b.hessian_[i];
  return *this;
}

Jet2& Jet2::operator-=(const Jet2& b) {
  require_same_dim(dim(), b.dim());
  value_ -= b.value_;
  for (std::size_t i = 0; i < gradient_.size(); ++i) gradient_[i] -= b.gradient_[i];
  for (std::size_t i = 0; i < hessian_.size(); ++i) hessian_[i] -= b.hessian_[i];
  return *this;
}

Jet2 operator+(const Jet2& a, const Jet2& b) {
  Jet2 r = a;
  r += b;
  return r;
}

Jet2 operator-(const Jet2& a, const Jet2& b) {
  Jet2 r = a;
  r -= b;
  return r;
}

Jet2 operator*(const Jet2& a, const Jet2& b) {
  require_same_dim(a.dim(), b.dim());
  const int d = a.dim();
  const double av = a.value_;
  const double bv = b.value_;
  std::vector<double> g(d);
  for (int i = 0; i < d; ++i) g[i] = av * b.gradient_[i] + bv * a.gradient_[i];
  std::vector<double> h(a.hessian_.size());
  int idx = 0;
  for (int i = 0; i < d; ++i) {
    for (int j = i; j < d; ++j, ++idx) {
      // Grouped so that a*b and b*a round identically.
      h[idx] = (av * b.hessian_[idx] + bv * a.hessian_[idx]) +
               (a.gradient_[i] * b.gradient_[j] + b.gradient_[i] * a.gradient_[j]);
    }
  }
  return Jet2(av * bv, std::move(g), std::move(h));
}

Jet2 operator/(const Jet2& a, const Jet2& b) {
  require_same_dim(a.dim(), b.dim());
  if (b.value_ == 0.0) throw DomainError("division by a jet with zero value");
  const int d = a.dim();
  const double bv = b.value_;
  const double q = a.value_ / bv;
  std::vector<double> g(d);
  for (int i = 0; i < d; ++i) g[i] = (a.gradient_[i] - q * b.gradient_[i]) / bv;
  std::vector<double> h(a.hessian_.size());
  int idx = 0;
  for (int i = 0; i < d; ++i) {
    for (int j = i; j < d; ++j, ++idx) {
      h[idx] = (a.hessian_[idx] - q * b.hessian_[idx] -
                (g[i] * b.gradient_[j] + b.gradient_[i] * g[j])) /
               bv;
    }
  }
  return Jet2(q, std::move(g), std::move(h));
}

Jet2 operator-(const Jet2& a) { return -1.0 * a; }

Jet2 operator*(double s, const Jet2& a) {
  Jet2 r = a;
  r.value_ *= s;
  for (double& v : r.gradient_) v *= s;
  for (double& v : r.hessian_) v *= s;
  return r;
}

Jet2 compose(const Jet2& a, double f0, double f1, double f2) {
  const int d = a.dim();
  std::vector<double> g(d);
  for (int i = 0; i < d; ++i) g[i] = f1 * a.gradient_[i];
  std::vector<double> h(a.hessian_.size());
  int idx = 0;
  for (int i = 0; i < d; ++i) {
    for (int j = i; j < d; ++j, ++idx) {
      h[idx] = f2 * a.gradient_[i] * a.gradient_[j] + f1 * a.hessian_[idx];
    }
  }
  return Jet2(f0, std::move(g), std::move(h));
}

Jet2 sin(const Jet2& a) {
  const double s = std::sin(a.value());
  return compose(a, s, std::cos(a.value()), -s);
}

Jet2 cos(const Jet2& a) {
  const double c = std::cos(a.value());
  return compose(a, c, -std::sin(a.value()), -c);
}

Jet2 exp(const Jet2& a) {
  const double e = std::exp(a.value());
  return compose(a, e, e, e);
}

Jet2 sqrt(const Jet2& a) {
  if (!(a.value() > 0.0)) {
    throw DomainError("sqrt of non-positive value " + std::to_string(a.value()));
  }
  const double r = std::sqrt(a.value());
  return compose(a, r, 0.5 / r, -0.25 / (r * a.value()));
}

Jet2 powi(const Jet2& a, int k) {
  if (k == 0) return Jet2::constant(a.dim(), 1.0);
  if (k < 0) {
    if (a.value() == 0.0) throw DomainError("negative power of a jet with zero value");
    return Jet2::constant(a.dim(), 1.0) / powi(a, -k);
  }
  const double x = a.value();
  const double f0 = ipow(x, k);
  const double f1 = k * ipow(x, k - 1);
  const double f2 = k >= 2 ? static_cast<double>(k) * (k - 1) * ipow(x, k - 2) : 0.0;
  return compose(a, f0, f1, f2);
}

Jet2 jet_binary(BinaryOp op, const Jet2& a, const Jet2& b) {
  switch (op) {
    case BinaryOp::add:
      return a + b;
    case BinaryOp::sub:
      return a - b;
    case BinaryOp::mul:
      return a * b;
    case BinaryOp::div:
      return a / b;
  }
  throw Error("unknown binary op");
}

Jet2 jet_unary(UnaryOp op, const Jet2& a, int k) {
  switch (op) {
    case UnaryOp::neg:
      return -a;
    case UnaryOp::sin:
      return sin(a);
    case UnaryOp::cos:
      return cos(a);
    case UnaryOp::exp:
      return exp(a);
    case UnaryOp::sqrt:
      return sqrt(a);
    case UnaryOp::powi:
      return powi(a, k);
  }
  throw Error("unknown unary op");
}

Jet1 partial(const Jet2& a, int k) {
  const int d = a.dim();
  std::vector<double> g(d);
  for (int j = 0; j < d; ++j) g[j] = a.hessian(k, j);
  return Jet1(a.gradient(k), std::move(g));
}

Jet1 truncate(const Jet2& a) {
  return Jet1(a.value(), std::vector<double>(a.gradient().begin(), a.gradient().end()));
}

}  // namespace wqcm
