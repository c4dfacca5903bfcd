#include "wqcm/classify.hpp"

#include <cmath>
#include <sstream>

namespace wqcm {

Residual residual(const MatrixXd& g, std::initializer_list<VectorXd> terms) {
  VectorXd sum = VectorXd::Zero(g.rows());
  double largest = 0.0;
  for (const VectorXd& t : terms) {
    sum += t;
    largest = std::max(largest, norm(g, t));
  }
  const double raw = std::sqrt(std::max(0.0, inner(g, sum, sum)));
  return {raw, raw / (1.0 + largest)};
}

Residual residual(std::initializer_list<double> terms) {
  double sum = 0.0;
  double largest = 0.0;
  for (double t : terms) {
    sum += t;
    largest = std::max(largest, std::abs(t));
  }
  const double raw = std::abs(sum);
  return {raw, raw / (1.0 + largest)};
}

Residual one_sided(double value, double bound) {
  const double raw = std::max(0.0, bound - value);
  return {raw, raw / (1.0 + std::max(std::abs(value), std::abs(bound)))};
}

Residual quasi_residual(const PointEval& e, const VectorXd& x, const VectorXd& y) {
  const VectorXd fx = e.f * x;
  const double ey = e.eta_of(y);
  return residual(e.g, {e.nabla_f_along(x) * y, e.nabla_f_along(fx) * (e.f * y),
                        -2.0 * e.gg(x, y) * e.xi, ey * x, ey * (e.h * x),
                        ey * e.eta_of(x) * e.xi});
}

Residual sasakian_residual(const PointEval& e, const VectorXd& x, const VectorXd& y) {
  return residual(e.g, {e.nabla_f_along(x) * y, -e.gg(x, y) * e.xi, e.eta_of(y) * x});
}

Residual nearly_sasakian_residual(const PointEval& e, const VectorXd& y) {
  return residual(e.g, {e.nabla_f_along(y) * y, -e.gg(y, y) * e.xi, e.eta_of(y) * y});
}

Residual contact_metric_residual(const PointEval& e, const VectorXd& x, const VectorXd& y) {
  return residual({e.deta_of(x, y), -e.phi_of(x, y)});
}

Residual normal_residual(const PointEval& e, const VectorXd& x, const VectorXd& y) {
  const NTensors t = n_tensors(e, x, y);
  return residual(e.g, {t.nijenhuis, 2.0 * e.deta_of(x, y) * e.xi});
}

Residual killing_residual(const PointEval& e, const VectorXd& x, const VectorXd& y) {
  return residual({e.gg(e.nabla_xi * x, y), e.gg(e.nabla_xi * y, x)});
}

Residual nabla_xi_residual(const PointEval& e, const VectorXd& x) {
  return residual(e.g, {e.nabla_xi * x, e.f * x});
}

Residual nabla_xi_f_residual(const PointEval& e, const VectorXd& x) {
  return residual(e.g, {e.nabla_f_along(e.xi) * x});
}

namespace {

template <class F>
MaxResidual over_pairs(const std::vector<VectorXd>& dirs, F&& fn) {
  MaxResidual m;
  for (const VectorXd& x : dirs) {
    for (const VectorXd& y : dirs) m.add(fn(x, y));
  }
  return m;
}

template <class F>
MaxResidual over_dirs(const std::vector<VectorXd>& dirs, F&& fn) {
  MaxResidual m;
  for (const VectorXd& x : dirs) m.add(fn(x));
  return m;
}

}  // namespace

MaxResidual quasi_at(const PointEval& e, const std::vector<VectorXd>& dirs) {
  return over_pairs(dirs, [&](const VectorXd& x, const VectorXd& y) {
    return quasi_residual(e, x, y);
  });
}

MaxResidual nabla_xi_f_at(const PointEval& e, const std::vector<VectorXd>& dirs) {
  return over_dirs(dirs, [&](const VectorXd& x) { return nabla_xi_f_residual(e, x); });
}

MaxResidual contact_metric_at(const PointEval& e, const std::vector<VectorXd>& dirs) {
  return over_pairs(dirs, [&](const VectorXd& x, const VectorXd& y) {
    return contact_metric_residual(e, x, y);
  });
}

MaxResidual killing_at(const PointEval& e, const std::vector<VectorXd>& dirs) {
  return over_pairs(dirs, [&](const VectorXd& x, const VectorXd& y) {
    return killing_residual(e, x, y);
  });
}

// ---------------------------------------------------------------------------
// validate_axioms
// ---------------------------------------------------------------------------

bool AxiomReport::pass() const {
  return std::all_of(residuals.begin(), residuals.end(),
                     [](const NamedResidual& r) { return r.pass; });
}

const NamedResidual& AxiomReport::at(const std::string& name) const {
  for (const NamedResidual& r : residuals) {
    if (r.name == name) return r;
  }
  throw Error("no residual named '" + name + "'");
}

namespace {

class AxiomAccumulator {
 public:
  AxiomAccumulator(double tol, bool has_q) : tol_(tol) {
    for (const char* name : {"metric-positive", "eta-xi", "f-squared", "metric-compatibility",
                             "f-xi", "eta-f", "eta-Q", "Q-f-commute", "Qt-xi", "eta-Qt",
                             "f-skew", "Q-self-adjoint", "Q-positive", "rank-f"}) {
      add_name(name);
    }
    if (has_q) add_name("Q-consistency");
  }

  void add(const std::string& name, const Residual& r) { find(name).add(r); }
  void fail(const std::string& name, const std::string& why) {
    forced_fail_.push_back(name);
    details_.emplace_back(name, why);
  }

  std::vector<NamedResidual> finish() const {
    std::vector<NamedResidual> out;
    for (std::size_t i = 0; i < names_.size(); ++i) {
      NamedResidual r;
      r.name = names_[i];
      r.max_raw = maxima_[i].raw;
      r.max_residual = maxima_[i].normalized;
      r.tol = tol_;
      r.pass = r.max_residual <= tol_;
      for (const std::string& f : forced_fail_) {
        if (f == r.name) r.pass = false;
      }
      for (const auto& [n, why] : details_) {
        if (n == r.name && r.detail.empty()) r.detail = why;
      }
      out.push_back(r);
    }
    return out;
  }

 private:
  void add_name(const std::string& name) {
    names_.push_back(name);
    maxima_.emplace_back();
  }
  MaxResidual& find(const std::string& name) {
    for (std::size_t i = 0; i < names_.size(); ++i) {
      if (names_[i] == name) return maxima_[i];
    }
    throw Error("unknown axiom residual '" + name + "'");
  }

  double tol_;
  std::vector<std::string> names_;
  std::vector<MaxResidual> maxima_;
  std::vector<std::string> forced_fail_;
  std::vector<std::pair<std::string, std::string>> details_;
};

MatrixXd metric_values(const StructureDef& def, const Point& p) {
  const int d = def.dim();
  MatrixXd g(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = i; j < d; ++j) g(i, j) = g(j, i) = def.metric(i, j).eval(p);
  }
  return g;
}

std::string format_double(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

}  // namespace

AxiomReport validate_axioms(const WeakACM& s, const std::vector<Point>& points,
                            const Tolerances& tol, std::uint64_t seed) {
  AxiomReport report;
  report.structure = s.name();
  report.points = static_cast<int>(points.size());
  AxiomAccumulator acc(tol.algebraic, s.def().Q.has_value());

  for (int idx = 0; idx < static_cast<int>(points.size()); ++idx) {
    const Point& p = points[idx];
    if (!contains(s.def().domain, p)) throw NumericalError("sample point outside the chart domain");

    const MatrixXd gv = metric_values(s.def(), p);
    const double gmin = Eigen::SelfAdjointEigenSolver<MatrixXd>(gv, Eigen::EigenvaluesOnly)
                            .eigenvalues()
                            .minCoeff();
    acc.add("metric-positive", {std::max(0.0, -gmin), std::max(0.0, -gmin)});
    if (!(gmin > 0.0)) {
      acc.fail("metric-positive", "metric not positive definite, min eigenvalue " +
                                      format_double(gmin));
      continue;
    }

    const PointEval e = s.evaluate(p);
    const std::vector<VectorXd> dirs = direction_set(e.g, seed, idx);

    acc.add("eta-xi", residual({e.eta_of(e.xi), -1.0}));
    acc.add("f-xi", residual(e.g, {e.f * e.xi}));
    acc.add("Qt-xi", residual(e.g, {e.Qt * e.xi}));

    for (const VectorXd& x : dirs) {
      const VectorXd fx = e.f * x;
      acc.add("f-squared", residual(e.g, {e.f * fx, e.Q * x, -e.eta_of(x) * e.xi}));
      acc.add("eta-f", residual({e.eta_of(fx)}));
      acc.add("eta-Q", residual({e.eta_of(e.Q * x), -e.eta_of(x)}));
      acc.add("eta-Qt", residual({e.eta_of(e.Qt * x)}));
      acc.add("Q-f-commute", residual(e.g, {e.Q * fx, -(e.f * (e.Q * x))}));
      for (const VectorXd& y : dirs) {
        acc.add("metric-compatibility",
                residual({e.gg(fx, e.f * y), -e.gg(x, e.Q * y), e.eta_of(x) * e.eta_of(y)}));
        acc.add("f-skew", residual({e.gg(fx, y), e.gg(x, e.f * y)}));
        acc.add("Q-self-adjoint", residual({e.gg(e.Q * x, y), -e.gg(x, e.Q * y)}));
      }
    }

    // Spectrum of Q and singular values of f in a g-orthonormal frame.
    const MatrixXd b = orthonormal_frame(e.g);
    const MatrixXd qs = b.transpose() * e.g * e.Q * b;
    const double qmin = Eigen::SelfAdjointEigenSolver<MatrixXd>(0.5 * (qs + qs.transpose()),
                                                               Eigen::EigenvaluesOnly)
                            .eigenvalues()
                            .minCoeff();
    acc.add("Q-positive", {std::max(0.0, -qmin), std::max(0.0, -qmin)});
    if (!(qmin > 0.0)) acc.fail("Q-positive", "min eigenvalue " + format_double(qmin));

    const MatrixXd fb = b.transpose() * e.g * e.f * b;
    const VectorXd sv = Eigen::JacobiSVD<MatrixXd>(fb).singularValues();  // descending
    const double smallest = sv[sv.size() - 1];
    acc.add("rank-f", {smallest, smallest / (1.0 + sv[0])});
    if (sv.size() >= 2 && sv[sv.size() - 2] <= 1e-6) {
      acc.fail("rank-f", "rank f below 2n, second-smallest singular value " +
                             format_double(sv[sv.size() - 2]));
    }

    if (e.Q_explicit) {
      const double raw = (*e.Q_explicit - e.Q).cwiseAbs().maxCoeff();
      acc.add("Q-consistency", {raw, raw / (1.0 + e.Q.cwiseAbs().maxCoeff())});
    }
  }
  report.residuals = acc.finish();
  return report;
}

// ---------------------------------------------------------------------------
// f-basis
// ---------------------------------------------------------------------------

EigenResult jacobi_eigen(const MatrixXd& a_in, int max_sweeps) {
  const int m = static_cast<int>(a_in.rows());
  MatrixXd a = 0.5 * (a_in + a_in.transpose());
  MatrixXd v = MatrixXd::Identity(m, m);
  const double scale = std::max(1.0, a.norm());
  auto off = [&] {
    double s = 0.0;
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) {
        if (i != j) s += a(i, j) * a(i, j);
      }
    }
    return std::sqrt(s);
  };

  int sweep = 0;
  for (; sweep <= max_sweeps; ++sweep) {
    if (off() < 1e-13 * scale) {
      EigenResult r;
      r.values = a.diagonal();
      r.vectors = v;
      r.sweeps = sweep;
      return r;
    }
    if (sweep == max_sweeps) break;
    for (int p = 0; p < m - 1; ++p) {
      for (int q = p + 1; q < m; ++q) {
        if (a(p, q) == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (int k = 0; k < m; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < m; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        for (int k = 0; k < m; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }
  throw NumericalError("Jacobi eigen-solver did not converge");
}

namespace {

int dominant_index(const VectorXd& v) {
  int best = 0;
  for (int i = 1; i < v.size(); ++i) {
    if (std::abs(v[i]) > std::abs(v[best]) * (1.0 + 1e-12)) best = i;
  }
  return best;
}

}  // namespace

FBasis f_basis(const PointEval& e) {
  const int d = e.d;
  FBasis out;
  out.point = e.point;
  out.xi = e.xi / norm(e.g, e.xi);

  MatrixXd cand(d, d + 1);
  cand.col(0) = out.xi;
  cand.rightCols(d) = MatrixXd::Identity(d, d);
  MatrixXd frame = gram_schmidt(e.g, cand);
  if (frame.cols() != d) throw NumericalError("cannot build an orthonormal frame");
  MatrixXd b = frame.rightCols(d - 1);

  for (int i = 0; i < e.n; ++i) {
    const MatrixXd a = b.transpose() * e.g * e.Q * b;
    const EigenResult eig = jacobi_eigen(a);
    const double lmin = eig.values.minCoeff();
    if (!(lmin > 0.0)) throw NumericalError("Q is not positive definite on ker eta");

    int pick = -1;
    int pick_dom = 0;
    for (int k = 0; k < eig.values.size(); ++k) {
      if (eig.values[k] - lmin > 1e-10 * std::max(1.0, std::abs(lmin))) continue;
      const int dom = dominant_index(b * eig.vectors.col(k));
      if (pick < 0 || dom < pick_dom) {
        pick = k;
        pick_dom = dom;
      }
    }
    VectorXd ev = b * eig.vectors.col(pick);
    ev /= norm(e.g, ev);
    if (ev[dominant_index(ev)] < 0.0) ev = -ev;
    const VectorXd fev = e.f * ev;

    out.e.push_back(ev);
    out.fe.push_back(fev);
    out.lambda.push_back(inner(e.g, ev, e.Q * ev));

    if (i + 1 == e.n) break;
    MatrixXd next(d, b.cols() + 2);
    next.col(0) = ev;
    next.col(1) = fev / norm(e.g, fev);
    next.rightCols(b.cols()) = b;
    const MatrixXd deflated = gram_schmidt(e.g, next, 1e-8);
    if (deflated.cols() != b.cols()) throw NumericalError("f-basis deflation lost rank");
    b = deflated.rightCols(b.cols() - 2);
  }
  return out;
}

double FBasisCheck::max() const {
  return std::max({orthogonality, unit, eigen, fe_norm, trace});
}

FBasisCheck check_f_basis(const PointEval& e, const FBasis& b) {
  FBasisCheck c;
  std::vector<VectorXd> all{b.xi};
  for (int i = 0; i < static_cast<int>(b.e.size()); ++i) {
    all.push_back(b.e[i]);
    all.push_back(b.fe[i]);
  }
  for (std::size_t i = 0; i < all.size(); ++i) {
    for (std::size_t j = i + 1; j < all.size(); ++j) {
      c.orthogonality = std::max(c.orthogonality, std::abs(inner(e.g, all[i], all[j])));
    }
  }
  c.unit = std::abs(inner(e.g, b.xi, b.xi) - 1.0);
  double lsum = 0.0;
  for (int i = 0; i < static_cast<int>(b.e.size()); ++i) {
    const double l = b.lambda[i];
    lsum += l;
    c.unit = std::max(c.unit, std::abs(inner(e.g, b.e[i], b.e[i]) - 1.0));
    c.eigen = std::max(c.eigen, norm(e.g, e.Q * b.e[i] - l * b.e[i]));
    c.eigen = std::max(c.eigen, norm(e.g, e.Q * b.fe[i] - l * b.fe[i]));
    c.fe_norm = std::max(c.fe_norm, std::abs(inner(e.g, b.fe[i], b.fe[i]) - l));
  }
  c.trace = std::abs(e.Q.trace() - 1.0 - 2.0 * lsum);
  return c;
}

double pfaffian(const MatrixXd& a) {
  const int m = static_cast<int>(a.rows());
  if (m % 2 != 0) throw DimensionError("Pfaffian of an odd-size matrix");
  if (m == 0) return 1.0;
  double acc = 0.0;
  for (int j = 1; j < m; ++j) {
    if (a(0, j) == 0.0) continue;
    std::vector<int> keep;
    for (int k = 1; k < m; ++k) {
      if (k != j) keep.push_back(k);
    }
    MatrixXd minor(m - 2, m - 2);
    for (int r = 0; r < m - 2; ++r) {
      for (int s = 0; s < m - 2; ++s) minor(r, s) = a(keep[r], keep[s]);
    }
    const double sign = (j % 2 == 1) ? 1.0 : -1.0;
    acc += sign * a(0, j) * pfaffian(minor);
  }
  return acc;
}

double contact_volume(const PointEval& e, const FBasis& b) {
  const int n = static_cast<int>(b.e.size());
  std::vector<VectorXd> v;
  for (int i = 0; i < n; ++i) {
    v.push_back(b.e[i]);
    v.push_back(b.fe[i]);
  }
  MatrixXd m(2 * n, 2 * n);
  for (int a = 0; a < 2 * n; ++a) {
    for (int c = 0; c < 2 * n; ++c) m(a, c) = e.deta_of(v[a], v[c]);
  }
  double factorial = 1.0;
  for (int k = 2; k <= n; ++k) factorial *= k;
  return e.eta_of(b.xi) * factorial * pfaffian(m);
}

// ---------------------------------------------------------------------------
// class_residuals
// ---------------------------------------------------------------------------

const ClassVerdict& ClassReport::at(const std::string& name) const {
  for (const ClassVerdict& c : classes) {
    if (c.name == name) return c;
  }
  throw Error("no class named '" + name + "'");
}

ClassReport class_residuals(const WeakACM& s, const std::vector<Point>& points,
                            const Tolerances& tol, std::uint64_t seed) {
  ClassReport report;
  report.structure = s.name();
  report.points = static_cast<int>(points.size());

  const AxiomReport axioms = validate_axioms(s, points, tol, seed);
  ClassVerdict weak{"weak-acm-axioms", 0.0, 0.0, 0.0, tol.algebraic, axioms.pass()};
  for (const NamedResidual& r : axioms.residuals) {
    weak.max_residual = std::max(weak.max_residual, r.max_residual);
    weak.max_raw = std::max(weak.max_raw, r.max_raw);
  }
  report.classes.push_back(weak);
  if (!axioms.pass()) {
    // Derived objects are not trustworthy without the axioms; every class fails.
    for (const char* name : {"contact-metric", "quasi", "normal", "sasakian", "nearly-sasakian",
                             "killing-xi", "k-contact"}) {
      report.classes.push_back({name, 0.0, 0.0, 0.0, tol.deriv, false});
    }
    return report;
  }

  MaxResidual contact, quasi, normal, sasakian, nearly, killing;
  double c_contact = 0.0, c_quasi = 0.0, c_normal = 0.0, c_sasakian = 0.0, c_nearly = 0.0,
         c_killing = 0.0;
  for (int idx = 0; idx < static_cast<int>(points.size()); ++idx) {
    const PointEval e = s.evaluate(points[idx]);
    const std::vector<VectorXd> dirs = direction_set(e.g, seed, idx);
    for (const VectorXd& x : dirs) {
      nearly.add(nearly_sasakian_residual(e, x));
      for (const VectorXd& y : dirs) {
        contact.add(contact_metric_residual(e, x, y));
        quasi.add(quasi_residual(e, x, y));
        normal.add(normal_residual(e, x, y));
        sasakian.add(sasakian_residual(e, x, y));
        killing.add(killing_residual(e, x, y));
      }
    }
    if (idx == 0) {
      const VectorXd e1 = f_basis(e).e[0];
      c_contact = contact_metric_residual(e, e1, e.f * e1).raw;
      c_quasi = quasi_residual(e, e1, e1).raw;
      c_normal = normal_residual(e, e1, e.f * e1).raw;
      c_sasakian = sasakian_residual(e, e1, e1).raw;
      c_nearly = nearly_sasakian_residual(e, e1).raw;
      c_killing = killing_residual(e, e1, e1).raw;
    }
  }

  auto verdict = [&](const char* name, const MaxResidual& m, double canonical) {
    return ClassVerdict{name, m.normalized, m.raw, canonical, tol.deriv, m.normalized <= tol.deriv};
  };
  report.classes.push_back(verdict("contact-metric", contact, c_contact));
  report.classes.push_back(verdict("quasi", quasi, c_quasi));
  report.classes.push_back(verdict("normal", normal, c_normal));
  report.classes.push_back(verdict("sasakian", sasakian, c_sasakian));
  report.classes.push_back(verdict("nearly-sasakian", nearly, c_nearly));
  report.classes.push_back(verdict("killing-xi", killing, c_killing));

  MaxResidual kc = contact;
  kc.merge(killing);
  ClassVerdict k = verdict("k-contact", kc, std::max(c_contact, c_killing));
  k.pass = report.at("contact-metric").pass && report.at("killing-xi").pass;
  report.classes.push_back(k);
  return report;
}

}  // namespace wqcm
