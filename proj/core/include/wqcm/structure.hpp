#pragma once

// Weak almost-contact metric structure (f, Q, xi, eta, g) on a chart.
//
// The definition supplies g, f and xi. Everything else is derived:
//   eta = g(xi, .),  Q = -f^2 + eta (x) xi,  Qt = Q - id,  Phi(X, Y) = g(X, fY),
//   h = (1/2) L_xi f.
// Derived fields are built by jet arithmetic, so each carries exact first
// (and for eta, Q, Phi also second) derivatives.

#include <optional>

#include "wqcm/geometry.hpp"
#include "wqcm/structure_def.hpp"

namespace wqcm {

// Everything the checks need at one point.
struct PointEval {
  Point point;
  int n = 0;
  int d = 0;

  // Component fields with derivatives.
  Mat<Jet2> g_jet;
  Mat<Jet2> f_jet;
  Vec<Jet2> xi_jet;
  Vec<Jet2> eta_jet;
  Mat<Jet2> Q_jet;
  Mat<Jet2> phi_jet;
  Mat<Jet1> h_jet;

  MetricEval metric;
  Connection connection;
  Riemann curvature;

  // Values.
  MatrixXd g, g_inv, f, Q, Qt, Q_inv, phi, h, deta;
  VectorXd xi, eta;
  std::optional<MatrixXd> Q_explicit;

  // nabla_f[k] = nabla_k f; nabla_xi(i, k) = nabla_k xi^i; nabla_eta(i, k) = nabla_k eta_i.
  std::vector<MatrixXd> nabla_f, nabla_Q, nabla_h;
  MatrixXd nabla_xi, nabla_eta;

  MatrixXd lie_xi_Q;  // L_xi Q
  MatrixXd lie_xi_g;  // L_xi g as a bilinear form
  ThreeForm<double> dphi;
  ThreeForm<double> ddeta;  // d(d eta)

  // Convenience accessors.
  MatrixXd nabla_f_along(const VectorXd& x) const { return along(nabla_f, x); }
  double gg(const VectorXd& x, const VectorXd& y) const { return inner(g, x, y); }
  double eta_of(const VectorXd& x) const { return eta.dot(x); }
  double phi_of(const VectorXd& x, const VectorXd& y) const { return x.dot(phi * y); }
  double deta_of(const VectorXd& x, const VectorXd& y) const { return x.dot(deta * y); }
  double dphi_of(const VectorXd& x, const VectorXd& y, const VectorXd& z) const;
  double ddeta_of(const VectorXd& x, const VectorXd& y, const VectorXd& z) const;
};

class WeakACM {
 public:
  explicit WeakACM(StructureDef def);

  const StructureDef& def() const { return def_; }
  const std::string& name() const { return def_.name; }
  int n() const { return def_.n; }
  int dim() const { return def_.dim(); }

  // Throws NumericalError when the point lies outside the chart box, g is not
  // positive definite, or Q is singular there.
  PointEval evaluate(const Point& p) const;

 private:
  StructureDef def_;
};

// Same as WeakACM construction; named after the operation it performs.
inline WeakACM derive_components(StructureDef def) { return WeakACM(std::move(def)); }

struct HParts {
  MatrixXd h;
  MatrixXd h_adjoint;  // g^{-1} h^T g
  MatrixXd sym;
  MatrixXd skew;
};

HParts h_tensor(const PointEval& e);

struct NTensors {
  VectorXd N1;
  double N2 = 0.0;
  VectorXd N3;  // N3(X)
  double N4 = 0.0;
  VectorXd nijenhuis;  // [f, f](X, Y)
};

// Evaluated on constant-coefficient fields X, Y in the chart.
NTensors n_tensors(const PointEval& e, const VectorXd& x, const VectorXd& y);

// [f, f](X, Y) = f^2[X,Y] + [fX, fY] - f[fX, Y] - f[X, fY] on arbitrary fields.
VectorXd nijenhuis(const Mat<Jet1>& f, const Vec<Jet1>& x, const Vec<Jet1>& y);

// Almost-Hermitian cone on M x R at (p, t): block order (chart coords..., t).
struct ConeEval {
  MatrixXd J;
  MatrixXd P;
  MatrixXd gbar;
  double j2_plus_p = 0.0;       // max |J^2 + P| entry
  double compatibility = 0.0;   // max |gbar(JX, JY) - gbar(X, PY)| over the coordinate frame
};

ConeEval build_cone(const PointEval& e, double t);

}  // namespace wqcm
