#pragma once

// Independent oracles and fixtures shared by the unit and acceptance tests.
// Nothing here calls into the code under test beyond plain value evaluation.

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "wqcm/catalog.hpp"
#include "wqcm/expr.hpp"
#include "wqcm/sampling.hpp"
#include "wqcm/structure.hpp"

namespace wqcm::testing {

using Eigen::MatrixXd;
using Eigen::VectorXd;

inline Point shifted(const Point& p, int i, double h) {
  Point q = p;
  q.coords[i] += h;
  return q;
}

inline Point shifted(const Point& p, int i, double hi, int j, double hj) {
  Point q = shifted(p, i, hi);
  q.coords[j] += hj;
  return q;
}

// Central difference of a scalar function of the point.
template <class F>
double fd_gradient(const F& fn, const Point& p, int i, double h = 1e-5) {
  return (fn(shifted(p, i, h)) - fn(shifted(p, i, -h))) / (2.0 * h);
}

template <class F>
double fd_hessian(const F& fn, const Point& p, int i, int j, double h = 1e-4) {
  if (i == j) {
    return (fn(shifted(p, i, h)) - 2.0 * fn(p) + fn(shifted(p, i, -h))) / (h * h);
  }
  return (fn(shifted(p, i, h, j, h)) - fn(shifted(p, i, h, j, -h)) - fn(shifted(p, i, -h, j, h)) +
          fn(shifted(p, i, -h, j, -h))) /
         (4.0 * h * h);
}

inline double rel_err(double got, double want) {
  return std::abs(got - want) / std::max(1.0, std::abs(want));
}

// Metric values only, no jets: g_ij(p) from the structure's expressions.
inline MatrixXd metric_values(const StructureDef& def, const Point& p) {
  const int d = def.dim();
  MatrixXd g(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) g(i, j) = def.metric(i, j).eval(p);
  }
  return g;
}

// Christoffel symbols from centrally differenced metric values.
// gamma[k](i, j) = Gamma^k_ij.
inline std::vector<MatrixXd> fd_christoffel(const StructureDef& def, const Point& p,
                                            double h = 1e-5) {
  const int d = def.dim();
  std::vector<MatrixXd> dg(d);
  for (int k = 0; k < d; ++k) {
    dg[k] = (metric_values(def, shifted(p, k, h)) - metric_values(def, shifted(p, k, -h))) /
            (2.0 * h);
  }
  const MatrixXd ginv = metric_values(def, p).inverse();
  std::vector<MatrixXd> gamma(d, MatrixXd::Zero(d, d));
  for (int k = 0; k < d; ++k) {
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) {
        double acc = 0.0;
        for (int l = 0; l < d; ++l) {
          acc += ginv(k, l) * 0.5 * (dg[i](j, l) + dg[j](i, l) - dg[l](i, j));
        }
        gamma[k](i, j) = acc;
      }
    }
  }
  return gamma;
}

// Orthonormal basis of ker eta = xi^perp with respect to g, from Eigen's QR.
inline MatrixXd ker_eta_basis(const PointEval& e) {
  const int d = e.d;
  Eigen::LLT<MatrixXd> llt(e.g);
  const MatrixXd L = llt.matrixL();
  // In the Euclidean picture y = L^T x, g-orthogonality becomes ordinary orthogonality.
  const VectorXd xi_hat = L.transpose() * e.xi;
  Eigen::HouseholderQR<MatrixXd> qr(xi_hat);
  const MatrixXd full = qr.householderQ() * MatrixXd::Identity(d, d);
  const MatrixXd rest = full.rightCols(d - 1);
  return L.transpose().triangularView<Eigen::Upper>().solve(rest);
}

// Spectrum of Q restricted to ker eta, via Eigen's self-adjoint solver.
inline VectorXd ker_eta_spectrum(const PointEval& e) {
  const MatrixXd B = ker_eta_basis(e);
  const MatrixXd A = B.transpose() * e.g * e.Q * B;
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(0.5 * (A + A.transpose()));
  return es.eigenvalues();
}

// A g-unit vector orthogonal to xi drawn from the generator.
inline VectorXd random_unit_perp(const PointEval& e, std::mt19937_64& rng) {
  std::normal_distribution<double> nd;
  VectorXd v(e.d);
  for (int i = 0; i < e.d; ++i) v[i] = nd(rng);
  v -= e.xi.dot(e.g * v) * e.xi;
  return v / std::sqrt(v.dot(e.g * v));
}

struct Fixture {
  std::string source;
  StructureDef def;
};

inline std::vector<Fixture> catalog_fixtures() {
  std::vector<Fixture> out;
  for (const char* s : {"sasakian-r3", "sasakian-r5", "sasakian-r7", "scaled?s=2", "scaled?s=0.5",
                        "scaled?n=2,s=3", "product", "flat-const"}) {
    out.push_back({s, parse_builtin(s)});
  }
  return out;
}

inline std::vector<Fixture> sasakian_fixtures() {
  std::vector<Fixture> out;
  for (const char* s : {"sasakian-r3", "sasakian-r5"}) out.push_back({s, parse_builtin(s)});
  return out;
}

struct ExprCase {
  std::string text;
  std::vector<std::string> coords;
  DomainBox box;
};

// Every non-constant component of the built-in structures, plus expressions that
// exercise each primitive. The second group lives on boxes where sqrt and division
// stay valid.
inline std::vector<ExprCase> expression_corpus() {
  std::vector<ExprCase> out;
  std::vector<std::string> seen;
  for (const Fixture& fx : catalog_fixtures()) {
    const StructureDef& def = fx.def;
    auto take = [&](const Expr& e) {
      if (e.is_constant()) return;
      const std::string text = e.print(def.coords);
      for (const std::string& s : seen) {
        if (s == text) return;
      }
      seen.push_back(text);
      out.push_back({text, def.coords, def.domain});
    };
    for (const Expr& e : def.metric.entries) take(e);
    for (const Expr& e : def.f.entries) take(e);
    for (const Expr& e : def.xi) take(e);
  }

  const std::vector<std::string> xyz = {"x", "y", "z"};
  const DomainBox pos(3, Interval{0.5, 2.0});
  for (const char* text : {
           "x*y",
           "x/y",
           "x^2*z",
           "x^3 - 2*x*y + z^4",
           "sin(x)",
           "cos(x*y)",
           "exp(x - z)",
           "sqrt(x + y)",
           "sin(x)^2 + cos(x)^2",
           "1/(x*x + y*y + z*z)",
           "x^-2 * y",
           "exp(sin(x) * cos(y))",
           "sqrt(1 + x^2 + y^2)",
           "(x + y + z)^5 / 7",
           "-x*y*z",
           "sin(x + 2*y - z) * exp(-y)",
           "cos(z)^3 - sin(y)^3",
           "x / (1 + y*z)",
           "sqrt(x*y*z) - x",
           "exp(x*y*z) / (2 + sin(z))",
           "((x - y) * (y - z)) * (z - x)",
           "y*y/4 + 1/4 + sin(x)*z",
           "sqrt(exp(x) + exp(y))",
           "cos(sqrt(x*z))",
           "1/sqrt(x) + 1/sqrt(z)",
           "x^4*y^-1 - z^2/x",
           "sin(cos(sin(x*y)))",
           "exp(-x^2 - y^2) * z",
           "(x + 1/x)^2 - (y - 1/y)^2",
           "-(-x - -y) * -z",
       }) {
    out.push_back({text, xyz, pos});
  }
  return out;
}

}  // namespace wqcm::testing
