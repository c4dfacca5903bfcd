#pragma once

// Levi-Civita connection, covariant and Lie derivatives, and curvature on a chart.
//
// Curvature convention: R_{X,Y} Z = nabla_X nabla_Y Z - nabla_Y nabla_X Z - nabla_{[X,Y]} Z,
// so that K(X, Y) = g(R_{X,Y} Y, X) / |X ^ Y|^2 is +1 on the unit sphere and on every
// plane containing the Reeb field of a Sasakian structure.

#include <Eigen/Dense>
#include <vector>

#include "wqcm/fields.hpp"

namespace wqcm {

using Eigen::MatrixXd;
using Eigen::VectorXd;

// Metric with first and second coordinate derivatives at one point.
struct MetricEval {
  MatrixXd g;
  MatrixXd g_inv;
  std::vector<MatrixXd> dg;                // dg[k](i, j) = d_k g_ij
  std::vector<std::vector<MatrixXd>> ddg;  // ddg[l][k](i, j) = d_l d_k g_ij

  int dim() const { return static_cast<int>(g.rows()); }

  // Throws NumericalError when g is not positive definite.
  static MetricEval from_jets(const Mat<Jet2>& g);
};

struct Connection {
  int d = 0;
  std::vector<MatrixXd> gamma;                // gamma[k](i, j) = Gamma^k_ij
  std::vector<std::vector<MatrixXd>> dgamma;  // dgamma[m][k](i, j) = d_m Gamma^k_ij
};

// Gamma^k_ij = 1/2 g^{kl} (d_i g_jl + d_j g_il - d_l g_ij), with its first derivatives.
Connection christoffel(const MetricEval& m);

// Components R^l_{kij}: (R_{X,Y} Z)^l = R^l_{kij} X^i Y^j Z^k.
struct Riemann {
  int d = 0;
  std::vector<double> r;
  double operator()(int l, int k, int i, int j) const {
    return r[((static_cast<std::size_t>(l) * d + k) * d + i) * d + j];
  }
  double& at(int l, int k, int i, int j) {
    return r[((static_cast<std::size_t>(l) * d + k) * d + i) * d + j];
  }
};

Riemann riemann(const Connection& c);

// ---------------------------------------------------------------------------
// Covariant derivatives. The full arrays hold nabla_k of each component; the
// contracted forms return nabla_X of the field.
// ---------------------------------------------------------------------------

// N(i, k) = nabla_k V^i
MatrixXd nabla_vector(const Vec<Jet1>& v, const Connection& c);
// N(i, k) = nabla_k w_i
MatrixXd nabla_oneform(const Vec<Jet1>& w, const Connection& c);
// N[k](i, j) = nabla_k T^i_j
std::vector<MatrixXd> nabla_tensor11(const Mat<Jet1>& t, const Connection& c);
// N[k](i, j) = nabla_k g_ij; vanishes for the Levi-Civita connection.
std::vector<MatrixXd> nabla_metric(const MetricEval& m, const Connection& c);

VectorXd covariant_derivative(const Vec<Jet1>& v, const VectorXd& x, const Connection& c);
VectorXd covariant_derivative_oneform(const Vec<Jet1>& w, const VectorXd& x, const Connection& c);
MatrixXd covariant_derivative(const Mat<Jet1>& t, const VectorXd& x, const Connection& c);

// Contracts a nabla_tensor11 array with a direction.
MatrixXd along(const std::vector<MatrixXd>& nabla, const VectorXd& x);

// (L_X g)(Y, Z) = g(nabla_Y X, Z) + g(nabla_Z X, Y), as a matrix.
MatrixXd lie_derivative_metric(const MetricEval& m, const MatrixXd& nabla_x);
// Coordinate route: X^k d_k g_ij + g_kj d_i X^k + g_ik d_j X^k.
MatrixXd lie_derivative_metric_coordinates(const MetricEval& m, const Vec<Jet1>& x);

// ---------------------------------------------------------------------------
// Curvature
// ---------------------------------------------------------------------------

VectorXd curvature(const Riemann& r, const VectorXd& x, const VectorXd& y, const VectorXd& z);

// Throws NumericalError when |X ^ Y|^2 < 1e-12.
double sectional(const MatrixXd& g, const Riemann& r, const VectorXd& x, const VectorXd& y);

// Trace of Z -> R_{Z,X} Y over a g-orthonormal frame (columns of `frame`).
double ricci(const MatrixXd& g, const Riemann& r, const VectorXd& x, const VectorXd& y,
             const MatrixXd& frame);
// Same trace taken in coordinates: R^i_{kij} X^j Y^k.
double ricci_coordinates(const Riemann& r, const VectorXd& x, const VectorXd& y);

// ---------------------------------------------------------------------------
// Frames
// ---------------------------------------------------------------------------

inline double inner(const MatrixXd& g, const VectorXd& x, const VectorXd& y) {
  return x.dot(g * y);
}
inline double norm(const MatrixXd& g, const VectorXd& x) { return std::sqrt(inner(g, x, x)); }

// Modified Gram-Schmidt of `candidates` (columns, in order) against g. Columns whose
// residual norm falls below `pivot_tol` are dropped.
MatrixXd gram_schmidt(const MatrixXd& g, const MatrixXd& candidates, double pivot_tol = 1e-12);

// g-orthonormal frame from the coordinate frame in column order.
MatrixXd orthonormal_frame(const MatrixXd& g);

}  // namespace wqcm
