#pragma once

// Component containers for tensor fields at a point, generic over the scalar
// type (Jet2, Jet1 or double). A field whose components are jets of order k
// supports k further differentiations; every differential operator below
// returns components one order lower.

#include <Eigen/Dense>
#include <vector>

#include "wqcm/jet.hpp"

namespace wqcm {

template <class S>
struct Vec {
  std::vector<S> c;

  Vec() = default;
  explicit Vec(std::vector<S> comps) : c(std::move(comps)) {}

  int size() const { return static_cast<int>(c.size()); }
  S& operator[](int i) { return c[i]; }
  const S& operator[](int i) const { return c[i]; }
};

// Row-major square matrix; for a (1,1)-tensor T, entry (i, j) is T^i_j.
template <class S>
struct Mat {
  int n = 0;
  std::vector<S> a;

  Mat() = default;
  Mat(int size, const S& fill) : n(size), a(static_cast<std::size_t>(size) * size, fill) {}

  S& operator()(int r, int c) { return a[static_cast<std::size_t>(r) * n + c]; }
  const S& operator()(int r, int c) const { return a[static_cast<std::size_t>(r) * n + c]; }
};

template <class S>
int field_dim(const S& s) {
  if constexpr (std::is_same_v<S, double>) {
    return 0;
  } else {
    return s.dim();
  }
}

// ---------------------------------------------------------------------------
// Conversions
// ---------------------------------------------------------------------------

template <class S>
Vec<lower_t<S>> lower(const Vec<S>& v) {
  Vec<lower_t<S>> out;
  out.c.reserve(v.c.size());
  for (const S& s : v.c) out.c.push_back(truncate(s));
  return out;
}

template <class S>
Mat<lower_t<S>> lower(const Mat<S>& m) {
  Mat<lower_t<S>> out;
  out.n = m.n;
  out.a.reserve(m.a.size());
  for (const S& s : m.a) out.a.push_back(truncate(s));
  return out;
}

template <class S>
Eigen::VectorXd values(const Vec<S>& v) {
  Eigen::VectorXd out(v.size());
  for (int i = 0; i < v.size(); ++i) out[i] = value_of(v[i]);
  return out;
}

template <class S>
Eigen::MatrixXd values(const Mat<S>& m) {
  Eigen::MatrixXd out(m.n, m.n);
  for (int i = 0; i < m.n; ++i) {
    for (int j = 0; j < m.n; ++j) out(i, j) = value_of(m(i, j));
  }
  return out;
}

// Column k holds d/dx^k of each component.
inline Eigen::MatrixXd derivatives(const Vec<Jet1>& v) {
  const int d = v.size();
  Eigen::MatrixXd out(d, d);
  for (int i = 0; i < d; ++i) {
    for (int k = 0; k < d; ++k) out(i, k) = v[i].gradient(k);
  }
  return out;
}

inline Eigen::MatrixXd derivative(const Mat<Jet1>& m, int k) {
  Eigen::MatrixXd out(m.n, m.n);
  for (int i = 0; i < m.n; ++i) {
    for (int j = 0; j < m.n; ++j) out(i, j) = m(i, j).gradient(k);
  }
  return out;
}

// Constant-coefficient vector field with the given chart components.
template <class S>
Vec<S> constant_field(const Eigen::VectorXd& x, int dim) {
  Vec<S> out;
  for (int i = 0; i < x.size(); ++i) {
    S s = zero_like<S>(dim);
    if constexpr (std::is_same_v<S, double>) {
      s = x[i];
    } else {
      s = s + S::constant(dim, x[i]);
    }
    out.c.push_back(s);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Algebra
// ---------------------------------------------------------------------------

template <class S>
Vec<S> apply(const Mat<S>& m, const Vec<S>& v) {
  const int d = m.n;
  const int dim = field_dim(v[0]);
  Vec<S> out;
  out.c.assign(d, zero_like<S>(dim));
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) out[i] += m(i, j) * v[j];
  }
  return out;
}

template <class S>
Mat<S> compose(const Mat<S>& a, const Mat<S>& b) {
  const int d = a.n;
  const int dim = field_dim(a.a[0]);
  Mat<S> out(d, zero_like<S>(dim));
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      for (int k = 0; k < d; ++k) out(i, j) += a(i, k) * b(k, j);
    }
  }
  return out;
}

// w(v) for a one-form w.
template <class S>
S contract(const Vec<S>& w, const Vec<S>& v) {
  S acc = zero_like<S>(field_dim(w[0]));
  for (int i = 0; i < w.size(); ++i) acc += w[i] * v[i];
  return acc;
}

// B(x, y) = x^i B_ij y^j for a covariant 2-tensor.
template <class S>
S bilinear(const Mat<S>& b, const Vec<S>& x, const Vec<S>& y) {
  return contract(x, apply(b, y));
}

// ---------------------------------------------------------------------------
// Differential operators on fields
// ---------------------------------------------------------------------------

// X(phi) = X^k d_k phi
template <class S>
lower_t<S> directional(const Vec<S>& x, const S& phi) {
  lower_t<S> acc = zero_like<lower_t<S>>(field_dim(phi));
  for (int k = 0; k < x.size(); ++k) acc += truncate(x[k]) * partial(phi, k);
  return acc;
}

// [X, Y]^i = X^j d_j Y^i - Y^j d_j X^i
template <class S>
Vec<lower_t<S>> lie_bracket(const Vec<S>& x, const Vec<S>& y) {
  Vec<lower_t<S>> out;
  for (int i = 0; i < x.size(); ++i) out.c.push_back(directional(x, y[i]) - directional(y, x[i]));
  return out;
}

// (L_V T)^i_j = V^k d_k T^i_j - T^k_j d_k V^i + T^i_k d_j V^k
template <class S>
Mat<lower_t<S>> lie_derivative(const Vec<S>& v, const Mat<S>& t) {
  using L = lower_t<S>;
  const int d = t.n;
  const int dim = field_dim(t.a[0]);
  Mat<L> out(d, zero_like<L>(dim));
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      L acc = directional(v, t(i, j));
      for (int k = 0; k < d; ++k) {
        acc -= truncate(t(k, j)) * partial(v[i], k);
        acc += truncate(t(i, k)) * partial(v[k], j);
      }
      out(i, j) = acc;
    }
  }
  return out;
}

// (L_V T)X = [V, TX] - T[V, X], evaluated from the bracket definition.
template <class S>
Vec<lower_t<S>> lie_derivative_applied(const Vec<S>& v, const Mat<S>& t, const Vec<S>& x) {
  const Vec<lower_t<S>> first = lie_bracket(v, apply(t, x));
  const Vec<lower_t<S>> second = apply(lower(t), lie_bracket(v, x));
  Vec<lower_t<S>> out = first;
  for (int i = 0; i < out.size(); ++i) out[i] -= second[i];
  return out;
}

// d eta with the one-half normalization: (d eta)_ij = (d_i eta_j - d_j eta_i) / 2.
template <class S>
Mat<lower_t<S>> exterior_derivative(const Vec<S>& eta) {
  using L = lower_t<S>;
  const int d = eta.size();
  Mat<L> out(d, zero_like<L>(field_dim(eta[0])));
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) out(i, j) = 0.5 * (partial(eta[j], i) - partial(eta[i], j));
  }
  return out;
}

// 2 d eta(X, Y) = X(eta(Y)) - Y(eta(X)) - eta([X, Y]) for arbitrary fields.
template <class S>
lower_t<S> exterior_derivative_applied(const Vec<S>& eta, const Vec<S>& x, const Vec<S>& y) {
  const lower_t<S> a = directional(x, contract(eta, y));
  const lower_t<S> b = directional(y, contract(eta, x));
  const lower_t<S> c = contract(lower(eta), lie_bracket(x, y));
  return 0.5 * ((a - b) - c);
}

// dPhi on fields: one third of the six-term cyclic formula.
template <class S>
lower_t<S> exterior_derivative_applied(const Mat<S>& phi, const Vec<S>& x, const Vec<S>& y,
                                       const Vec<S>& z) {
  using L = lower_t<S>;
  const Mat<L> phi0 = lower(phi);
  L acc = directional(x, bilinear(phi, y, z));
  acc += directional(y, bilinear(phi, z, x));
  acc += directional(z, bilinear(phi, x, y));
  acc -= bilinear(phi0, lie_bracket(x, y), lower(z));
  acc -= bilinear(phi0, lie_bracket(z, x), lower(y));
  acc -= bilinear(phi0, lie_bracket(y, z), lower(x));
  return (1.0 / 3.0) * acc;
}

// Fully antisymmetric 3-form components.
template <class S>
struct ThreeForm {
  int n = 0;
  std::vector<S> a;
  S& operator()(int i, int j, int k) { return a[(static_cast<std::size_t>(i) * n + j) * n + k]; }
  const S& operator()(int i, int j, int k) const {
    return a[(static_cast<std::size_t>(i) * n + j) * n + k];
  }
};

// On coordinate fields the brackets vanish: dPhi_ijk = (d_i Phi_jk + d_j Phi_ki + d_k Phi_ij) / 3.
template <class S>
ThreeForm<lower_t<S>> exterior_derivative(const Mat<S>& phi) {
  using L = lower_t<S>;
  const int d = phi.n;
  ThreeForm<L> out{d, std::vector<L>(static_cast<std::size_t>(d) * d * d,
                                     zero_like<L>(field_dim(phi.a[0])))};
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      for (int k = 0; k < d; ++k) {
        out(i, j, k) =
            (1.0 / 3.0) * (partial(phi(j, k), i) + partial(phi(k, i), j) + partial(phi(i, j), k));
      }
    }
  }
  return out;
}

}  // namespace wqcm
