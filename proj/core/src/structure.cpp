#include "wqcm/structure.hpp"

#include <cmath>

namespace wqcm {

namespace {

Mat<Jet2> eval_matrix(const ExprMatrix& m, const Point& p, bool symmetric) {
  const int d = m.size;
  Mat<Jet2> out(d, Jet2::constant(p.dim(), 0.0));
  for (int i = 0; i < d; ++i) {
    for (int j = symmetric ? i : 0; j < d; ++j) {
      out(i, j) = m(i, j).eval_jet(p);
      if (symmetric) out(j, i) = out(i, j);
    }
  }
  return out;
}

double three_form_of(const ThreeForm<double>& w, const VectorXd& x, const VectorXd& y,
                     const VectorXd& z) {
  double acc = 0.0;
  for (int i = 0; i < w.n; ++i) {
    if (x[i] == 0.0) continue;
    for (int j = 0; j < w.n; ++j) {
      if (y[j] == 0.0) continue;
      for (int k = 0; k < w.n; ++k) acc += w(i, j, k) * x[i] * y[j] * z[k];
    }
  }
  return acc;
}

}  // namespace

double PointEval::dphi_of(const VectorXd& x, const VectorXd& y, const VectorXd& z) const {
  return three_form_of(dphi, x, y, z);
}

double PointEval::ddeta_of(const VectorXd& x, const VectorXd& y, const VectorXd& z) const {
  return three_form_of(ddeta, x, y, z);
}

WeakACM::WeakACM(StructureDef def) : def_(std::move(def)) {
  const int d = def_.dim();
  if (static_cast<int>(def_.coords.size()) != d || def_.metric.size != d || def_.f.size != d ||
      static_cast<int>(def_.xi.size()) != d || static_cast<int>(def_.domain.size()) != d ||
      (def_.Q && def_.Q->size != d)) {
    throw DimensionError("structure '" + def_.name + "' has inconsistent dimensions");
  }
}

PointEval WeakACM::evaluate(const Point& p) const {
  const int d = dim();
  if (p.dim() != d) throw DimensionError("point dimension does not match the chart");
  if (!contains(def_.domain, p)) throw NumericalError("point lies outside the chart domain");

  PointEval e;
  e.point = p;
  e.n = n();
  e.d = d;

  e.g_jet = eval_matrix(def_.metric, p, true);
  e.f_jet = eval_matrix(def_.f, p, false);
  for (const Expr& x : def_.xi) e.xi_jet.c.push_back(x.eval_jet(p));

  e.eta_jet = apply(e.g_jet, e.xi_jet);
  const Mat<Jet2> ff = compose(e.f_jet, e.f_jet);
  e.Q_jet = Mat<Jet2>(d, Jet2::constant(d, 0.0));
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) e.Q_jet(i, j) = e.xi_jet[i] * e.eta_jet[j] - ff(i, j);
  }
  e.phi_jet = compose(e.g_jet, e.f_jet);
  e.h_jet = lie_derivative(e.xi_jet, e.f_jet);
  for (Jet1& c : e.h_jet.a) c *= 0.5;

  e.metric = MetricEval::from_jets(e.g_jet);
  e.connection = christoffel(e.metric);
  e.curvature = riemann(e.connection);

  e.g = e.metric.g;
  e.g_inv = e.metric.g_inv;
  e.f = values(e.f_jet);
  e.xi = values(e.xi_jet);
  e.eta = values(e.eta_jet);
  e.Q = values(e.Q_jet);
  e.Qt = e.Q - MatrixXd::Identity(d, d);
  e.phi = values(e.phi_jet);
  e.h = values(e.h_jet);

  Eigen::FullPivLU<MatrixXd> lu(e.Q);
  lu.setThreshold(1e-12);
  if (!lu.isInvertible()) throw NumericalError("Q is singular at the point");
  e.Q_inv = lu.inverse();

  const Vec<Jet1> xi1 = lower(e.xi_jet);
  const Vec<Jet1> eta1 = lower(e.eta_jet);
  const Mat<Jet1> f1 = lower(e.f_jet);
  const Mat<Jet1> Q1 = lower(e.Q_jet);

  e.deta = values(exterior_derivative(eta1));
  e.nabla_f = nabla_tensor11(f1, e.connection);
  e.nabla_Q = nabla_tensor11(Q1, e.connection);
  e.nabla_h = nabla_tensor11(e.h_jet, e.connection);
  e.nabla_xi = nabla_vector(xi1, e.connection);
  e.nabla_eta = nabla_oneform(eta1, e.connection);
  e.lie_xi_Q = values(lie_derivative(xi1, Q1));
  e.lie_xi_g = lie_derivative_metric(e.metric, e.nabla_xi);
  e.dphi = exterior_derivative(lower(e.phi_jet));
  e.ddeta = exterior_derivative(exterior_derivative(e.eta_jet));

  if (def_.Q) {
    MatrixXd q(d, d);
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) q(i, j) = (*def_.Q)(i, j).eval(p);
    }
    e.Q_explicit = q;
  }
  return e;
}

HParts h_tensor(const PointEval& e) {
  HParts parts;
  parts.h = e.h;
  parts.h_adjoint = e.g_inv * e.h.transpose() * e.g;
  parts.sym = 0.5 * (parts.h + parts.h_adjoint);
  parts.skew = 0.5 * (parts.h - parts.h_adjoint);
  return parts;
}

VectorXd nijenhuis(const Mat<Jet1>& f, const Vec<Jet1>& x, const Vec<Jet1>& y) {
  const Mat<double> f0 = lower(f);
  const Vec<Jet1> fx = apply(f, x);
  const Vec<Jet1> fy = apply(f, y);
  const VectorXd f2xy = values(apply(compose(f0, f0), lie_bracket(x, y)));
  const VectorXd bfxfy = values(lie_bracket(fx, fy));
  const VectorXd fbfxy = values(apply(f0, lie_bracket(fx, y)));
  const VectorXd fbxfy = values(apply(f0, lie_bracket(x, fy)));
  return f2xy + bfxfy - fbfxy - fbxfy;
}

NTensors n_tensors(const PointEval& e, const VectorXd& x, const VectorXd& y) {
  const int d = e.d;
  const Vec<Jet1> xf = constant_field<Jet1>(x, d);
  const Vec<Jet1> yf = constant_field<Jet1>(y, d);
  const Mat<Jet1> f1 = lower(e.f_jet);

  NTensors t;
  t.nijenhuis = nijenhuis(f1, xf, yf);
  t.N1 = t.nijenhuis + 2.0 * e.deta_of(x, y) * e.xi;
  t.N2 = 2.0 * e.deta_of(e.f * x, y) - 2.0 * e.deta_of(e.f * y, x);
  t.N3 = values(lie_derivative_applied(lower(e.xi_jet), f1, xf));
  t.N4 = 2.0 * e.deta_of(e.xi, x);
  return t;
}

ConeEval build_cone(const PointEval& e, double t) {
  const int d = e.d;
  const int D = d + 1;
  ConeEval c;
  c.J = MatrixXd::Zero(D, D);
  c.J.topLeftCorner(d, d) = e.f;
  c.J.block(0, d, d, 1) = e.xi;
  c.J.block(d, 0, 1, d) = -e.eta.transpose();

  c.P = MatrixXd::Zero(D, D);
  c.P.topLeftCorner(d, d) = e.Q;
  c.P(d, d) = 1.0;

  const double scale = std::exp(-2.0 * t);
  c.gbar = MatrixXd::Zero(D, D);
  c.gbar.topLeftCorner(d, d) = scale * e.g;
  c.gbar(d, d) = scale;

  c.j2_plus_p = (c.J * c.J + c.P).cwiseAbs().maxCoeff();
  c.compatibility = (c.J.transpose() * c.gbar * c.J - c.gbar * c.P).cwiseAbs().maxCoeff();
  return c;
}

}  // namespace wqcm
