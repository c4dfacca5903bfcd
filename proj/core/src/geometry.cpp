#include "wqcm/geometry.hpp"

#include <cmath>

namespace wqcm {

MetricEval MetricEval::from_jets(const Mat<Jet2>& gj) {
  const int d = gj.n;
  MetricEval m;
  m.g = values(gj);
  m.dg.assign(d, MatrixXd::Zero(d, d));
  m.ddg.assign(d, std::vector<MatrixXd>(d, MatrixXd::Zero(d, d)));
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      const Jet2& e = gj(i, j);
      for (int k = 0; k < d; ++k) {
        m.dg[k](i, j) = e.gradient(k);
        for (int l = 0; l < d; ++l) m.ddg[l][k](i, j) = e.hessian(l, k);
      }
    }
  }
  Eigen::LLT<MatrixXd> llt(m.g);
  if (llt.info() != Eigen::Success) throw NumericalError("metric is not positive definite");
  m.g_inv = llt.solve(MatrixXd::Identity(d, d));
  return m;
}

Connection christoffel(const MetricEval& m) {
  const int d = m.dim();
  Connection c;
  c.d = d;
  c.gamma.assign(d, MatrixXd::Zero(d, d));
  c.dgamma.assign(d, std::vector<MatrixXd>(d, MatrixXd::Zero(d, d)));

  // First kind, lowered index first: first[l](i, j) = Gamma_{l,ij}.
  std::vector<MatrixXd> first(d, MatrixXd::Zero(d, d));
  for (int l = 0; l < d; ++l) {
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) {
        first[l](i, j) = 0.5 * (m.dg[i](j, l) + m.dg[j](i, l) - m.dg[l](i, j));
      }
    }
  }
  for (int k = 0; k < d; ++k) {
    for (int l = 0; l < d; ++l) c.gamma[k] += m.g_inv(k, l) * first[l];
  }

  for (int mm = 0; mm < d; ++mm) {
    const MatrixXd dginv = -m.g_inv * m.dg[mm] * m.g_inv;
    for (int l = 0; l < d; ++l) {
      MatrixXd dfirst(d, d);
      for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
          dfirst(i, j) = 0.5 * (m.ddg[mm][i](j, l) + m.ddg[mm][j](i, l) - m.ddg[mm][l](i, j));
        }
      }
      for (int k = 0; k < d; ++k) {
        c.dgamma[mm][k] += dginv(k, l) * first[l] + m.g_inv(k, l) * dfirst;
      }
    }
  }
  return c;
}

Riemann riemann(const Connection& c) {
  const int d = c.d;
  Riemann r;
  r.d = d;
  r.r.assign(static_cast<std::size_t>(d) * d * d * d, 0.0);
  for (int l = 0; l < d; ++l) {
    for (int k = 0; k < d; ++k) {
      for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
          double v = c.dgamma[i][l](j, k) - c.dgamma[j][l](i, k);
          for (int m = 0; m < d; ++m) {
            v += c.gamma[l](i, m) * c.gamma[m](j, k) - c.gamma[l](j, m) * c.gamma[m](i, k);
          }
          r.at(l, k, i, j) = v;
        }
      }
    }
  }
  return r;
}

MatrixXd nabla_vector(const Vec<Jet1>& v, const Connection& c) {
  const int d = c.d;
  MatrixXd n = derivatives(v);
  const VectorXd v0 = values(v);
  for (int i = 0; i < d; ++i) {
    for (int k = 0; k < d; ++k) n(i, k) += c.gamma[i].row(k).dot(v0);
  }
  return n;
}

MatrixXd nabla_oneform(const Vec<Jet1>& w, const Connection& c) {
  const int d = c.d;
  MatrixXd n = derivatives(w);
  const VectorXd w0 = values(w);
  for (int i = 0; i < d; ++i) {
    for (int k = 0; k < d; ++k) {
      for (int m = 0; m < d; ++m) n(i, k) -= c.gamma[m](k, i) * w0[m];
    }
  }
  return n;
}

std::vector<MatrixXd> nabla_tensor11(const Mat<Jet1>& t, const Connection& c) {
  const int d = c.d;
  const MatrixXd t0 = values(t);
  std::vector<MatrixXd> n(d);
  for (int k = 0; k < d; ++k) {
    // Gamma_k(i, m) = Gamma^i_{km}
    MatrixXd gk(d, d);
    for (int i = 0; i < d; ++i) gk.row(i) = c.gamma[i].row(k);
    n[k] = derivative(t, k) + gk * t0 - t0 * gk;
  }
  return n;
}

std::vector<MatrixXd> nabla_metric(const MetricEval& m, const Connection& c) {
  const int d = c.d;
  std::vector<MatrixXd> n(d);
  for (int k = 0; k < d; ++k) {
    MatrixXd gk(d, d);
    for (int i = 0; i < d; ++i) gk.row(i) = c.gamma[i].row(k);
    // d_k g_ij - Gamma^m_{ki} g_mj - Gamma^m_{kj} g_im
    n[k] = m.dg[k] - gk.transpose() * m.g - m.g * gk;
  }
  return n;
}

VectorXd covariant_derivative(const Vec<Jet1>& v, const VectorXd& x, const Connection& c) {
  return nabla_vector(v, c) * x;
}

VectorXd covariant_derivative_oneform(const Vec<Jet1>& w, const VectorXd& x, const Connection& c) {
  return nabla_oneform(w, c) * x;
}

MatrixXd covariant_derivative(const Mat<Jet1>& t, const VectorXd& x, const Connection& c) {
  return along(nabla_tensor11(t, c), x);
}

MatrixXd along(const std::vector<MatrixXd>& nabla, const VectorXd& x) {
  MatrixXd out = MatrixXd::Zero(nabla[0].rows(), nabla[0].cols());
  for (int k = 0; k < x.size(); ++k) out += x[k] * nabla[k];
  return out;
}

MatrixXd lie_derivative_metric(const MetricEval& m, const MatrixXd& nabla_x) {
  const MatrixXd gn = m.g * nabla_x;
  return gn + gn.transpose();
}

MatrixXd lie_derivative_metric_coordinates(const MetricEval& m, const Vec<Jet1>& x) {
  const int d = m.dim();
  const VectorXd x0 = values(x);
  const MatrixXd dx = derivatives(x);  // dx(k, i) = d_i X^k
  MatrixXd out = MatrixXd::Zero(d, d);
  for (int k = 0; k < d; ++k) out += x0[k] * m.dg[k];
  out += dx.transpose() * m.g + m.g * dx;
  return out;
}

VectorXd curvature(const Riemann& r, const VectorXd& x, const VectorXd& y, const VectorXd& z) {
  const int d = r.d;
  VectorXd out = VectorXd::Zero(d);
  for (int l = 0; l < d; ++l) {
    double acc = 0.0;
    for (int k = 0; k < d; ++k) {
      if (z[k] == 0.0) continue;
      for (int i = 0; i < d; ++i) {
        if (x[i] == 0.0) continue;
        for (int j = 0; j < d; ++j) acc += r(l, k, i, j) * x[i] * y[j] * z[k];
      }
    }
    out[l] = acc;
  }
  return out;
}

double sectional(const MatrixXd& g, const Riemann& r, const VectorXd& x, const VectorXd& y) {
  const double xy = inner(g, x, y);
  const double den = inner(g, x, x) * inner(g, y, y) - xy * xy;
  if (den < 1e-12) throw NumericalError("degenerate plane in sectional curvature");
  return inner(g, curvature(r, x, y, y), x) / den;
}

double ricci(const MatrixXd& g, const Riemann& r, const VectorXd& x, const VectorXd& y,
             const MatrixXd& frame) {
  double acc = 0.0;
  for (int a = 0; a < frame.cols(); ++a) {
    const VectorXd e = frame.col(a);
    acc += inner(g, curvature(r, e, x, y), e);
  }
  return acc;
}

double ricci_coordinates(const Riemann& r, const VectorXd& x, const VectorXd& y) {
  const int d = r.d;
  double acc = 0.0;
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      for (int k = 0; k < d; ++k) acc += r(i, k, i, j) * x[j] * y[k];
    }
  }
  return acc;
}

MatrixXd gram_schmidt(const MatrixXd& g, const MatrixXd& candidates, double pivot_tol) {
  std::vector<VectorXd> kept;
  for (int c = 0; c < candidates.cols(); ++c) {
    VectorXd v = candidates.col(c);
    // Two passes keep the result orthogonal to rounding.
    for (int pass = 0; pass < 2; ++pass) {
      for (const VectorXd& q : kept) v -= inner(g, q, v) * q;
    }
    const double nv = norm(g, v);
    if (nv < pivot_tol) continue;
    kept.push_back(v / nv);
  }
  MatrixXd out(candidates.rows(), static_cast<int>(kept.size()));
  for (int c = 0; c < static_cast<int>(kept.size()); ++c) out.col(c) = kept[c];
  return out;
}

MatrixXd orthonormal_frame(const MatrixXd& g) {
  return gram_schmidt(g, MatrixXd::Identity(g.rows(), g.cols()));
}

}  // namespace wqcm
