#pragma once

// Class-membership residuals, the f-basis and the contact volume.
//
// Every identity is written as a list of signed terms that should sum to zero.
// raw = |sum| (g-norm for vectors), normalized = raw / (1 + largest term size).
// Verdicts compare the normalized value against a tolerance tier.

#include <algorithm>
#include <initializer_list>
#include <string>
#include <vector>

#include "wqcm/sampling.hpp"
#include "wqcm/structure.hpp"

namespace wqcm {

struct Tolerances {
  double algebraic = 1e-10;
  double deriv = 1e-9;
  double curv = 1e-8;
};

struct Residual {
  double raw = 0.0;
  double normalized = 0.0;
};

Residual residual(const MatrixXd& g, std::initializer_list<VectorXd> terms);
Residual residual(std::initializer_list<double> terms);
// Residual of `value >= bound`; zero when it holds.
Residual one_sided(double value, double bound);

// Running maximum of both residual forms.
struct MaxResidual {
  double raw = 0.0;
  double normalized = 0.0;
  void add(const Residual& r) {
    raw = std::max(raw, r.raw);
    normalized = std::max(normalized, r.normalized);
  }
  void merge(const MaxResidual& o) {
    raw = std::max(raw, o.raw);
    normalized = std::max(normalized, o.normalized);
  }
};

// ---------------------------------------------------------------------------
// Pointwise defining-equation residuals
// ---------------------------------------------------------------------------

// (nabla_X f)Y + (nabla_{fX} f)fY - 2 g(X,Y) xi + eta(Y)(X + hX + eta(X) xi)
Residual quasi_residual(const PointEval& e, const VectorXd& x, const VectorXd& y);
// (nabla_X f)Y - g(X,Y) xi + eta(Y) X
Residual sasakian_residual(const PointEval& e, const VectorXd& x, const VectorXd& y);
// (nabla_Y f)Y - g(Y,Y) xi + eta(Y) Y
Residual nearly_sasakian_residual(const PointEval& e, const VectorXd& y);
// d eta(X, Y) - Phi(X, Y)
Residual contact_metric_residual(const PointEval& e, const VectorXd& x, const VectorXd& y);
// N1(X, Y)
Residual normal_residual(const PointEval& e, const VectorXd& x, const VectorXd& y);
// (L_xi g)(X, Y)
Residual killing_residual(const PointEval& e, const VectorXd& x, const VectorXd& y);
// nabla_X xi + fX
Residual nabla_xi_residual(const PointEval& e, const VectorXd& x);
// (nabla_xi f) X
Residual nabla_xi_f_residual(const PointEval& e, const VectorXd& x);

// Maxima over all ordered pairs of `dirs` at one point.
MaxResidual quasi_at(const PointEval& e, const std::vector<VectorXd>& dirs);
MaxResidual nabla_xi_f_at(const PointEval& e, const std::vector<VectorXd>& dirs);
MaxResidual contact_metric_at(const PointEval& e, const std::vector<VectorXd>& dirs);
MaxResidual killing_at(const PointEval& e, const std::vector<VectorXd>& dirs);

// ---------------------------------------------------------------------------
// validate_axioms
// ---------------------------------------------------------------------------

struct NamedResidual {
  std::string name;
  double max_raw = 0.0;
  double max_residual = 0.0;  // normalized
  double tol = 0.0;
  bool pass = true;
  std::string detail;
};

struct AxiomReport {
  std::string structure;
  int points = 0;
  std::vector<NamedResidual> residuals;
  bool pass() const;
  const NamedResidual& at(const std::string& name) const;
};

// Weak a.c.m. axioms and the algebraic identities that follow from them.
// Throws NumericalError when a point lies outside the chart box.
AxiomReport validate_axioms(const WeakACM& s, const std::vector<Point>& points,
                            const Tolerances& tol, std::uint64_t seed = 7);

// ---------------------------------------------------------------------------
// f-basis
// ---------------------------------------------------------------------------

struct EigenResult {
  VectorXd values;   // unsorted, in solver order
  MatrixXd vectors;  // columns
  int sweeps = 0;
};

// Cyclic Jacobi for a small symmetric matrix. Converged when the off-diagonal
// Frobenius norm is below 1e-13 * max(1, |A|). Throws NumericalError otherwise.
EigenResult jacobi_eigen(const MatrixXd& a, int max_sweeps = 100);

struct FBasis {
  Point point;
  VectorXd xi;
  std::vector<VectorXd> e;
  std::vector<VectorXd> fe;
  std::vector<double> lambda;  // ascending
};

struct FBasisCheck {
  double orthogonality = 0.0;  // max |g(u, v)| over distinct basis vectors
  double unit = 0.0;           // max |g(e_i, e_i) - 1| and |g(xi, xi) - 1|
  double eigen = 0.0;          // max |Q e_i - l_i e_i|, |Q fe_i - l_i fe_i|
  double fe_norm = 0.0;        // max |g(fe_i, fe_i) - l_i|
  double trace = 0.0;          // |tr Q - 1 - 2 sum l_i|
  double max() const;
};

// Throws NumericalError when Q is not positive definite on ker eta or the
// deflation loses rank.
FBasis f_basis(const PointEval& e);
FBasisCheck check_f_basis(const PointEval& e, const FBasis& b);

// Pfaffian of an even-size antisymmetric matrix.
double pfaffian(const MatrixXd& a);

// eta ^ (d eta)^n on (xi, e_1, fe_1, ..., e_n, fe_n), taken as
// eta(xi) * n! * Pf[d eta(v_a, v_b)].
double contact_volume(const PointEval& e, const FBasis& b);

// ---------------------------------------------------------------------------
// class_residuals
// ---------------------------------------------------------------------------

struct ClassVerdict {
  std::string name;
  double max_residual = 0.0;        // normalized, over points and direction pairs
  double max_raw = 0.0;
  double canonical_residual = 0.0;  // raw, at X = Y = e_1 of the first point's f-basis
  double tol = 0.0;
  bool pass = true;
};

struct ClassReport {
  std::string structure;
  int points = 0;
  std::vector<ClassVerdict> classes;
  const ClassVerdict& at(const std::string& name) const;
};

// Classes, in order: weak-acm-axioms, contact-metric, quasi, normal, sasakian,
// nearly-sasakian, killing-xi, k-contact.
ClassReport class_residuals(const WeakACM& s, const std::vector<Point>& points,
                            const Tolerances& tol, std::uint64_t seed = 7);

}  // namespace wqcm
