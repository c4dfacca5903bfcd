#include "wqcm/suites.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <limits>
#include <thread>

namespace wqcm {

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::pass:
      return "pass";
    case Verdict::fail:
      return "fail";
    case Verdict::skipped:
      return "skipped";
  }
  return "skipped";
}

bool CheckReport::failed() const {
  return std::any_of(checks.begin(), checks.end(),
                     [](const CheckRecord& c) { return c.verdict == Verdict::fail; });
}

const CheckRecord& CheckReport::at(const std::string& id) const {
  for (const CheckRecord& c : checks) {
    if (c.id == id) return c;
  }
  throw Error("no check with id '" + id + "'");
}

namespace {

struct Hypothesis {
  std::string name;
  MaxResidual value;
  double tol = 0.0;
  bool met() const { return value.normalized <= tol; }
};

// One check evaluated at one point.
struct Outcome {
  std::vector<Hypothesis> hyps;
  MaxResidual conclusion;
  std::vector<std::pair<std::string, double>> info;  // extra raw values for the detail field
};

struct Spec {
  std::string id;
  std::string paper;
  double tol = 0.0;
};

// Everything shared by the checks at one point.
struct Context {
  PointEval e;
  std::vector<VectorXd> dirs;
  std::vector<VectorXd> ker;  // g-unit projections of dirs onto ker eta
  MatrixXd frame;             // g-orthonormal
  FBasis basis;
  MaxResidual quasi;
  MaxResidual nabla_xi_f;
  MaxResidual contact;
  MaxResidual killing;
  double quasi_e1 = 0.0;
};

Context make_context(const WeakACM& s, const Point& p, int idx, const SuiteOptions& o) {
  Context c;
  c.e = s.evaluate(p);
  c.dirs = direction_set(c.e.g, o.plan.seed, idx);
  for (const VectorXd& x : c.dirs) {
    const VectorXd k = x - c.e.eta_of(x) * c.e.xi;
    const double nk = norm(c.e.g, k);
    if (nk > 1e-6) c.ker.push_back(k / nk);
  }
  c.frame = orthonormal_frame(c.e.g);
  c.basis = f_basis(c.e);
  c.quasi = quasi_at(c.e, c.dirs);
  c.nabla_xi_f = nabla_xi_f_at(c.e, c.dirs);
  c.contact = contact_metric_at(c.e, c.dirs);
  c.killing = killing_at(c.e, c.dirs);
  c.quasi_e1 = quasi_residual(c.e, c.basis.e[0], c.basis.e[0]).raw;
  return c;
}

template <class F>
MaxResidual each(const std::vector<VectorXd>& dirs, F&& fn) {
  MaxResidual m;
  for (const VectorXd& x : dirs) m.add(fn(x));
  return m;
}

template <class F>
MaxResidual pairs(const std::vector<VectorXd>& dirs, F&& fn) {
  MaxResidual m;
  for (const VectorXd& x : dirs) {
    for (const VectorXd& y : dirs) m.add(fn(x, y));
  }
  return m;
}

MaxResidual single(const Residual& r) {
  MaxResidual m;
  m.add(r);
  return m;
}

// Max-abs residual of a component array against the size of its reference entries.
MaxResidual component_residual(double max_abs, double scale) {
  return single({max_abs, max_abs / (1.0 + scale)});
}

std::string format(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

using PointFn = std::function<std::vector<Outcome>(const Context&)>;

CheckReport run_checks(const std::string& suite, const WeakACM& s, const SuiteOptions& opts,
                       const std::vector<Spec>& specs, const PointFn& fn) {
  const std::vector<Point> points = sample_points(opts.plan, s.def().domain);
  const int count = static_cast<int>(points.size());
  std::vector<std::vector<Outcome>> results(count);
  std::vector<std::exception_ptr> errors(count);

  auto work = [&](int i) {
    try {
      results[i] = fn(make_context(s, points[i], i, opts));
    } catch (...) {
      errors[i] = std::current_exception();
    }
  };

  int threads = opts.threads > 0 ? opts.threads
                                 : static_cast<int>(std::thread::hardware_concurrency());
  threads = std::clamp(threads, 1, std::max(1, count));
  if (threads == 1) {
    for (int i = 0; i < count; ++i) work(i);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        for (int i = t; i < count; i += threads) work(i);
      });
    }
    for (std::thread& th : pool) th.join();
  }
  for (const std::exception_ptr& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  CheckReport report;
  report.suite = suite;
  report.structure = s.name();
  report.seed = opts.plan.seed;
  report.tol = opts.tol;

  for (std::size_t k = 0; k < specs.size(); ++k) {
    CheckRecord rec;
    rec.id = specs[k].id;
    rec.paper = specs[k].paper;
    rec.tol = specs[k].tol;

    MaxResidual concl;
    std::vector<Hypothesis> hyp_max;
    std::vector<std::pair<std::string, double>> info_max;
    for (int i = 0; i < count; ++i) {
      const Outcome& o = results[i].at(k);
      bool met = true;
      for (const Hypothesis& h : o.hyps) {
        met = met && h.met();
        auto it = std::find_if(hyp_max.begin(), hyp_max.end(),
                               [&](const Hypothesis& m) { return m.name == h.name; });
        if (it == hyp_max.end()) {
          hyp_max.push_back(h);
        } else {
          it->value.merge(h.value);
        }
      }
      for (const auto& [name, v] : o.info) {
        auto it = std::find_if(info_max.begin(), info_max.end(),
                               [&](const auto& m) { return m.first == name; });
        if (it == info_max.end()) {
          info_max.emplace_back(name, v);
        } else {
          it->second = std::max(it->second, v);
        }
      }
      if (met) {
        ++rec.points;
        concl.merge(o.conclusion);
      }
    }

    if (rec.points == 0) {
      rec.verdict = Verdict::skipped;
    } else {
      rec.max_residual = concl.normalized;
      rec.verdict = concl.normalized <= rec.tol ? Verdict::pass : Verdict::fail;
    }

    std::string detail;
    if (!hyp_max.empty()) {
      detail = rec.points == 0 ? "hypotheses unmet" : "hypotheses met";
      detail += " at " + std::to_string(rec.points == 0 ? count : rec.points) + "/" +
                std::to_string(count) + " points;";
      for (const Hypothesis& h : hyp_max) {
        detail += " " + h.name + " max " + format(h.value.normalized) + " (raw " +
                  format(h.value.raw) + ", tol " + format(h.tol) + ");";
      }
    }
    for (const auto& [name, v] : info_max) detail += " " + name + " " + format(v) + ";";
    if (!detail.empty() && detail.back() == ';') detail.pop_back();
    if (!detail.empty() && detail.front() == ' ') detail.erase(0, 1);
    rec.detail = detail;
    report.checks.push_back(rec);
  }
  return report;
}

// ---------------------------------------------------------------------------
// Identity suite
// ---------------------------------------------------------------------------

std::vector<Spec> identity_specs(const Tolerances& t) {
  const double lemma = 10.0 * t.deriv;
  return {
      {"algebraic.f-xi", "E-wquasi-1", t.algebraic},
      {"algebraic.eta-f", "E-wquasi-1", t.algebraic},
      {"algebraic.eta-Q", "E-wquasi-1", t.algebraic},
      {"algebraic.Q-f-commute", "E-wquasi-1", t.algebraic},
      {"algebraic.Qt-xi", "E-wquasi-1", t.algebraic},
      {"algebraic.eta-Qt", "E-wquasi-1", t.algebraic},
      {"algebraic.metric-compatibility", "E-nS-2.2", t.algebraic},
      {"n2.covariant-form", "Eq-2.9", t.deriv},
      {"h.xi-annihilates", "P-2.3", t.deriv},
      {"n3.xi-annihilates", "P-2.3", t.deriv},
      {"lemma.C2", "E-C2", lemma},
      {"lemma.nabla-xi-f", "E-C3", lemma},
      {"lemma.xi-geodesic", "E-C4", lemma},
      {"lemma.nabla-xi-eta", "E-C4", lemma},
      {"lemma.Q-nabla-xi", "E-Qnabla", lemma},
      {"lemma.nabla-xi-Q", "E-Qnabla", lemma},
      {"lemma.lie-xi-Q", "E-nS-xi", lemma},
      {"lemma.nabla-along-xi-Q", "E-nS-xi", lemma},
      {"lemma.hf-anticommute", "E-31A", lemma},
      {"lemma.hQ-commute", "E-31B", lemma},
      {"h.alternative-formula", "Eq-2.11b", lemma},
      {"h.skew-part-n2", "Eq-2.14", lemma},
  };
}

std::vector<Outcome> identity_point(const Context& c, const Tolerances& t) {
  const PointEval& e = c.e;
  const Hypothesis quasi{"quasi", c.quasi, t.deriv};
  const Hypothesis nxf{"nabla_xi f", c.nabla_xi_f, t.deriv};
  auto fx = [&](const VectorXd& x) -> VectorXd { return e.f * x; };
  auto neta = [&](const VectorXd& x, const VectorXd& y) { return (e.nabla_eta * x).dot(y); };
  auto n2 = [&](const VectorXd& x, const VectorXd& y) {
    return 2.0 * e.deta_of(fx(x), y) - 2.0 * e.deta_of(fx(y), x);
  };
  const MatrixXd nabla_xi_Q = along(e.nabla_Q, e.xi);

  std::vector<Outcome> out;
  auto ungated = [&](MaxResidual m) { out.push_back({{}, m, {}}); };
  auto gated = [&](const Hypothesis& h, MaxResidual m) { out.push_back({{h}, m, {}}); };

  ungated(single(residual(e.g, {e.f * e.xi})));
  ungated(each(c.dirs, [&](const VectorXd& x) { return residual({e.eta_of(fx(x))}); }));
  ungated(each(c.dirs, [&](const VectorXd& x) {
    return residual({e.eta_of(e.Q * x), -e.eta_of(x)});
  }));
  ungated(each(c.dirs, [&](const VectorXd& x) {
    return residual(e.g, {e.Q * fx(x), -(e.f * (e.Q * x))});
  }));
  ungated(single(residual(e.g, {e.Qt * e.xi})));
  ungated(each(c.dirs, [&](const VectorXd& x) { return residual({e.eta_of(e.Qt * x)}); }));
  ungated(pairs(c.dirs, [&](const VectorXd& x, const VectorXd& y) {
    return residual({e.gg(fx(x), fx(y)), -e.gg(x, e.Q * y), e.eta_of(x) * e.eta_of(y)});
  }));
  ungated(pairs(c.dirs, [&](const VectorXd& x, const VectorXd& y) {
    return residual({n2(x, y), -neta(fx(x), y), neta(y, fx(x)), neta(fx(y), x), -neta(x, fx(y))});
  }));
  ungated(single(residual(e.g, {e.h * e.xi})));
  ungated(single(residual(e.g, {n_tensors(e, e.xi, e.xi).N3})));

  gated(quasi, pairs(c.dirs, [&](const VectorXd& x, const VectorXd& y) {
          return residual({neta(x, e.Q * y), neta(fx(x), fx(y)), 2.0 * e.gg(fx(x), y)});
        }));
  gated(quasi, each(c.dirs, [&](const VectorXd& x) { return nabla_xi_f_residual(e, x); }));
  gated(quasi, single(residual(e.g, {e.nabla_xi * e.xi})));
  gated(quasi, each(c.dirs, [&](const VectorXd& x) { return residual({neta(e.xi, x)}); }));
  gated(quasi, each(c.dirs, [&](const VectorXd& x) {
          return residual(e.g, {e.Q * (e.nabla_xi * x), fx(x), e.f * (e.h * x)});
        }));
  gated(quasi, each(c.dirs, [&](const VectorXd& x) {
          return residual(e.g, {e.nabla_xi * (e.Q * x), fx(x), e.f * (e.h * x)});
        }));
  gated(quasi, each(c.dirs, [&](const VectorXd& x) { return residual(e.g, {e.lie_xi_Q * x}); }));
  gated(quasi, each(c.dirs, [&](const VectorXd& x) { return residual(e.g, {nabla_xi_Q * x}); }));
  gated(quasi, each(c.dirs, [&](const VectorXd& x) {
          return residual(e.g, {e.h * fx(x), e.f * (e.h * x)});
        }));
  gated(quasi, each(c.dirs, [&](const VectorXd& x) {
          return residual(e.g, {e.h * (e.Q * x), -(e.Q * (e.h * x))});
        }));
  gated(nxf, each(c.dirs, [&](const VectorXd& x) {
          return residual(e.g,
                          {2.0 * (e.h * x), -(e.f * (e.nabla_xi * x)), e.nabla_xi * fx(x)});
        }));
  gated(nxf, pairs(c.dirs, [&](const VectorXd& x, const VectorXd& y) {
          return residual({e.gg(e.h * x, y), -e.gg(e.h * y, x), 0.5 * n2(x, y)});
        }));
  return out;
}

// ---------------------------------------------------------------------------
// Curvature suite
// ---------------------------------------------------------------------------

// Shared curvature quantities at a point.
struct CurvatureData {
  double ric_xi = 0.0;
  double tr_h2 = 0.0;
  double k2_lhs = 0.0;
  double k2_rhs = 0.0;
  double lambda_max = 0.0;
  double tr_q = 0.0;
  MaxResidual ksum;  // one-sided residual of K(xi,X) + K(xi,fX) >= 0 on ker eta
  double ksum_min = 0.0;
};

CurvatureData curvature_data(const Context& c) {
  const PointEval& e = c.e;
  CurvatureData d;
  d.ric_xi = ricci(e.g, e.curvature, e.xi, e.xi, c.frame);
  d.tr_h2 = (e.h * e.h).trace();
  d.tr_q = e.Q.trace();
  double lsq = 0.0;
  for (std::size_t i = 0; i < c.basis.e.size(); ++i) {
    const double l = c.basis.lambda[i];
    d.k2_lhs += l * (sectional(e.g, e.curvature, e.xi, c.basis.e[i]) +
                     sectional(e.g, e.curvature, e.xi, c.basis.fe[i]));
    lsq += l * l;
    d.lambda_max = std::max(d.lambda_max, l);
  }
  d.k2_rhs = e.n - d.tr_h2 + lsq;
  d.ksum_min = std::numeric_limits<double>::infinity();
  for (const VectorXd& x : c.ker) {
    const double k = sectional(e.g, e.curvature, e.xi, x) +
                     sectional(e.g, e.curvature, e.xi, e.f * x);
    d.ksum_min = std::min(d.ksum_min, k);
    d.ksum.add(one_sided(k, 0.0));
  }
  return d;
}

double lambda_bound(const Context& c, const CurvatureData& d) {
  const int n = c.e.n;
  return n - d.tr_h2 + (d.tr_q - 1.0) * (d.tr_q - 1.0) / (4.0 * n);
}

std::vector<Spec> curvature_specs(const Tolerances& t) {
  return {
      {"levi-civita.metric-compat", "plumbing", t.algebraic},
      {"levi-civita.torsion-free", "plumbing", t.algebraic},
      {"curvature.antisymmetry", "plumbing", t.deriv},
      {"curvature.pair-symmetry", "plumbing", t.deriv},
      {"curvature.bianchi", "plumbing", t.deriv},
      {"exterior.dd-eta", "plumbing", t.algebraic},
      {"ricci.two-routes", "plumbing", t.curv},
      {"prop.nabla-xi-h", "E-Lie-Q1", t.curv},
      {"prop.xi-curvature-operator", "E-Lie-Q2", t.curv},
      {"ricci.xi-planes-sum", "E-K2", t.curv},
      {"ricci.xi-xi", "T-04", t.curv},
      {"ricci.lambda-bound", "E-lambda-1", t.curv},
  };
}

std::vector<Outcome> curvature_point(const Context& c, const Tolerances& t) {
  const PointEval& e = c.e;
  const int d = e.d;
  const Riemann& r = e.curvature;
  const Hypothesis quasi{"quasi", c.quasi, t.deriv};
  const Hypothesis contact{"contact-metric", c.contact, t.deriv};
  const CurvatureData cd = curvature_data(c);
  const Hypothesis ksum{"K(xi,X)+K(xi,fX)>=0", cd.ksum, t.curv};
  auto R = [&](const VectorXd& x, const VectorXd& y, const VectorXd& z) {
    return curvature(r, x, y, z);
  };

  std::vector<Outcome> out;
  auto ungated = [&](MaxResidual m) { out.push_back({{}, m, {}}); };

  // Levi-Civita properties.
  {
    double worst = 0.0;
    double scale = 0.0;
    for (const MatrixXd& m : nabla_metric(e.metric, e.connection)) {
      worst = std::max(worst, m.cwiseAbs().maxCoeff());
    }
    for (const MatrixXd& m : e.metric.dg) scale = std::max(scale, m.cwiseAbs().maxCoeff());
    ungated(component_residual(worst, scale));
  }
  {
    const Mat<Jet1> f1 = lower(e.f_jet);
    const Mat<Jet1> q1 = lower(e.Q_jet);
    ungated(pairs(c.dirs, [&](const VectorXd& a, const VectorXd& b) {
      const Vec<Jet1> x = apply(f1, constant_field<Jet1>(a, d));
      const Vec<Jet1> y = apply(q1, constant_field<Jet1>(b, d));
      const VectorXd nxy = nabla_vector(y, e.connection) * values(x);
      const VectorXd nyx = nabla_vector(x, e.connection) * values(y);
      return residual(e.g, {nxy, -nyx, -values(lie_bracket(x, y))});
    }));
  }

  // Curvature symmetries, component-wise.
  {
    double scale = 0.0;
    for (double v : r.r) scale = std::max(scale, std::abs(v));
    std::vector<double> low(r.r.size(), 0.0);  // low(w,k,i,j) = g(R_{i,j} k, w)
    auto li = [d](int w, int k, int i, int j) {
      return ((static_cast<std::size_t>(w) * d + k) * d + i) * d + j;
    };
    double low_scale = 0.0;
    for (int w = 0; w < d; ++w) {
      for (int k = 0; k < d; ++k) {
        for (int i = 0; i < d; ++i) {
          for (int j = 0; j < d; ++j) {
            double v = 0.0;
            for (int l = 0; l < d; ++l) v += e.g(w, l) * r(l, k, i, j);
            low[li(w, k, i, j)] = v;
            low_scale = std::max(low_scale, std::abs(v));
          }
        }
      }
    }
    double anti = 0.0, pair = 0.0, bianchi = 0.0;
    for (int l = 0; l < d; ++l) {
      for (int k = 0; k < d; ++k) {
        for (int i = 0; i < d; ++i) {
          for (int j = 0; j < d; ++j) {
            anti = std::max(anti, std::abs(r(l, k, i, j) + r(l, k, j, i)));
            bianchi = std::max(bianchi, std::abs(r(l, k, i, j) + r(l, i, j, k) + r(l, j, k, i)));
            pair = std::max(pair, std::abs(low[li(l, k, i, j)] - low[li(j, i, k, l)]));
          }
        }
      }
    }
    ungated(component_residual(anti, scale));
    ungated(component_residual(pair, low_scale));
    ungated(component_residual(bianchi, scale));
  }
  {
    double worst = 0.0;
    for (double v : e.ddeta.a) worst = std::max(worst, std::abs(v));
    ungated(component_residual(worst, e.deta.cwiseAbs().maxCoeff()));
  }
  ungated(pairs(c.dirs, [&](const VectorXd& x, const VectorXd& y) {
    return residual({ricci(e.g, r, x, y, c.frame), -ricci_coordinates(r, x, y)});
  }));

  // Identities conditional on the quasi-Sasakian axiom.
  const MatrixXd nxi_h = along(e.nabla_h, e.xi);
  const MatrixXd h2 = e.h * e.h;
  out.push_back({{quasi}, each(c.dirs, [&](const VectorXd& x) {
                   const VectorXd fx = e.f * x;
                   return residual(e.g, {nxi_h * x, -(e.Q_inv * fx), e.Q_inv * (h2 * fx),
                                         e.f * R(x, e.xi, e.xi)});
                 }), {}});
  out.push_back({{quasi}, each(c.dirs, [&](const VectorXd& x) {
                   const VectorXd fx = e.f * x;
                   return residual(e.g, {e.Q * R(e.xi, x, e.xi), -(e.f * R(e.xi, fx, e.xi)),
                                         -2.0 * (h2 * x), -((e.Q + e.Q_inv) * (e.f * fx))});
                 }), {}});
  out.push_back({{quasi}, single(residual({cd.k2_lhs, -cd.k2_rhs})),
                 {{"lhs", cd.k2_lhs}, {"rhs", cd.k2_rhs}}});
  out.push_back({{contact}, single(residual({cd.ric_xi, -2.0 * e.n, cd.tr_h2})),
                 {{"Ric(xi,xi)", cd.ric_xi}}});
  out.push_back({{quasi, ksum},
                 single(one_sided(cd.lambda_max * cd.ric_xi, lambda_bound(c, cd))),
                 {{"max-lambda*Ric", cd.lambda_max * cd.ric_xi}, {"bound", lambda_bound(c, cd)}}});
  return out;
}

// ---------------------------------------------------------------------------
// Theorem suite
// ---------------------------------------------------------------------------

std::vector<Spec> theorem_specs(const Tolerances& t) {
  return {
      {"theorem.k-contact-from-nabla-xi", "T-05", 10.0 * t.deriv},
      {"theorem.ricci-lambda-inequality", "T-04", 10.0 * t.curv},
      {"theorem.ricci-lambda-equality", "T-04", 10.0 * t.curv},
      {"theorem.sasakian-from-nabla-f", "T-07", 10.0 * t.deriv},
      {"theorem.k-contact-from-xi-curvature", "T-06", 10.0 * t.curv},
      {"theorem.sasakian-from-curvature", "T-08", 10.0 * t.curv},
      {"prop.killing-h-skew", "P-06", 10.0 * t.deriv},
      {"prop.integrable-h-self-adjoint", "P-06", 10.0 * t.deriv},
      {"prop.contact-form", "P-05", 10.0 * t.deriv},
  };
}

std::vector<Outcome> theorem_point(const Context& c, const Tolerances& t) {
  const PointEval& e = c.e;
  const Riemann& r = e.curvature;
  const HParts hp = h_tensor(e);
  const CurvatureData cd = curvature_data(c);
  auto R = [&](const VectorXd& x, const VectorXd& y, const VectorXd& z) {
    return curvature(r, x, y, z);
  };
  const std::pair<std::string, double> canonical{"canonical quasi residual", c.quasi_e1};

  const Hypothesis quasi{"quasi", c.quasi, t.deriv};
  const Hypothesis nabla_xi{"nabla xi = -f",
                            each(c.dirs, [&](const VectorXd& x) { return nabla_xi_residual(e, x); }),
                            t.deriv};
  const Hypothesis killing{"killing-xi", c.killing, t.deriv};
  const Hypothesis sasakian{"E-S1", pairs(c.dirs, [&](const VectorXd& x, const VectorXd& y) {
                              return sasakian_residual(e, x, y);
                            }),
                            t.deriv};
  const Hypothesis ksum{"K(xi,X)+K(xi,fX)>=0", cd.ksum, t.curv};
  // l X = R_{xi,X} xi = -X + eta(X) xi; the sign is the one the Sasakian oracle fixes.
  const Hypothesis xi_curv{"R_{xi,X}xi = -X + eta(X)xi", each(c.dirs, [&](const VectorXd& x) {
                             return residual(e.g, {R(e.xi, x, e.xi), x, -e.eta_of(x) * e.xi});
                           }),
                           t.curv};
  const MaxResidual literal = each(c.dirs, [&](const VectorXd& x) {
    return residual(e.g, {R(x, e.xi, e.xi), x, e.eta_of(x) * e.xi});
  });
  const Hypothesis s2{"E-S2", pairs(c.dirs, [&](const VectorXd& x, const VectorXd& y) {
                        return residual(e.g, {R(x, y, e.xi), -e.eta_of(y) * x, e.eta_of(x) * y});
                      }),
                      t.curv};
  const Hypothesis trh2{"tr h^2 <= 0", single(one_sided(-cd.tr_h2, 0.0)), t.curv};
  const Hypothesis integrable{"ker eta integrable",
                              pairs(c.ker, [&](const VectorXd& x, const VectorXd& y) {
                                return residual({e.deta_of(x, y)});
                              }),
                              t.deriv};
  const Hypothesis nabla_q{"E-nS-10", pairs(c.ker, [&](const VectorXd& x, const VectorXd& y) {
                             return residual(e.g, {along(e.nabla_Q, x) * y});
                           }),
                           t.deriv};
  const Hypothesis self_adjoint{"h self-adjoint", each(c.dirs, [&](const VectorXd& x) {
                                  return residual(e.g, {hp.h * x, -(hp.h_adjoint * x)});
                                }),
                                t.deriv};

  const MaxResidual qt_zero = each(c.dirs, [&](const VectorXd& x) {
    return residual(e.g, {e.Qt * x});
  });
  const MaxResidual n1 = pairs(c.dirs, [&](const VectorXd& x, const VectorXd& y) {
    return normal_residual(e, x, y);
  });
  const MaxResidual h2_qt2 = each(c.dirs, [&](const VectorXd& x) {
    return residual(e.g, {2.0 * (e.h * (e.h * x)), -(e.Qt * (e.Qt * x))});
  });
  auto combine = [](std::initializer_list<MaxResidual> parts) {
    MaxResidual m;
    for (const MaxResidual& p : parts) m.merge(p);
    return m;
  };

  std::vector<Outcome> out;
  out.push_back({{quasi, nabla_xi}, combine({qt_zero, c.contact, c.killing}), {canonical}});

  const double bound = lambda_bound(c, cd);
  const double lhs = cd.lambda_max * cd.ric_xi;
  out.push_back({{quasi, ksum}, single(one_sided(lhs, bound)), {canonical}});
  {
    MaxResidual lambda_one;
    for (double l : c.basis.lambda) lambda_one.add(residual({l, -1.0}));
    MaxResidual concl = combine({qt_zero, lambda_one, single(residual({cd.ric_xi, -2.0 * e.n,
                                                                       cd.tr_h2}))});
    if (c.killing.normalized <= t.deriv) concl.merge(c.contact);
    const Hypothesis trace{"tr Qt = 0", single(residual({e.Qt.trace()})), t.deriv};
    const Hypothesis equality{"equality in E-lambda-1", single(residual({lhs, -bound})), t.curv};
    out.push_back({{quasi, ksum, trace, equality}, concl, {canonical}});
  }
  out.push_back({{quasi, sasakian}, combine({qt_zero, c.contact, n1}), {canonical}});
  out.push_back({{quasi, xi_curv, killing}, combine({h2_qt2, qt_zero, c.contact}),
                 {canonical, {"literal E-S3 reading residual", literal.raw}}});
  out.push_back({{quasi, s2, trh2}, combine({h2_qt2, qt_zero, c.contact, n1}), {canonical}});
  out.push_back({{quasi, killing}, each(c.dirs, [&](const VectorXd& x) {
                   return residual(e.g, {hp.h * x, hp.h_adjoint * x});
                 }), {canonical}});
  out.push_back({{quasi, integrable}, each(c.dirs, [&](const VectorXd& x) {
                   return residual(e.g, {hp.h * x, -(hp.h_adjoint * x)});
                 }), {canonical}});
  {
    double dphi = 0.0;
    for (double v : e.dphi.a) dphi = std::max(dphi, std::abs(v));
    const double vol = contact_volume(e, c.basis);
    const MaxResidual identity = pairs(c.dirs, [&](const VectorXd& x, const VectorXd& y) {
      return residual({e.deta_of(x + 0.5 * (e.Qt * x), y), -e.phi_of(x, y)});
    });
    out.push_back({{quasi, nabla_q, self_adjoint},
                   combine({component_residual(dphi, e.phi.cwiseAbs().maxCoeff()), identity,
                            single(one_sided(std::abs(vol), 1e-6))}),
                   {canonical, {"|contact volume| min", std::abs(vol)}}});
  }
  return out;
}

}  // namespace

CheckReport run_identity_suite(const WeakACM& s, const SuiteOptions& opts) {
  return run_checks("identity", s, opts, identity_specs(opts.tol),
                    [&](const Context& c) { return identity_point(c, opts.tol); });
}

CheckReport run_curvature_suite(const WeakACM& s, const SuiteOptions& opts) {
  return run_checks("curvature", s, opts, curvature_specs(opts.tol),
                    [&](const Context& c) { return curvature_point(c, opts.tol); });
}

CheckReport run_theorem_suite(const WeakACM& s, const SuiteOptions& opts) {
  return run_checks("theorems", s, opts, theorem_specs(opts.tol),
                    [&](const Context& c) { return theorem_point(c, opts.tol); });
}

CheckReport run_all_suites(const WeakACM& s, const SuiteOptions& opts) {
  CheckReport all = run_identity_suite(s, opts);
  all.suite = "all";
  for (const CheckReport& part : {run_curvature_suite(s, opts), run_theorem_suite(s, opts)}) {
    all.checks.insert(all.checks.end(), part.checks.begin(), part.checks.end());
  }
  return all;
}

CheckReport run_suite(const std::string& name, const WeakACM& s, const SuiteOptions& opts) {
  if (name == "identity") return run_identity_suite(s, opts);
  if (name == "curvature") return run_curvature_suite(s, opts);
  if (name == "theorems") return run_theorem_suite(s, opts);
  if (name == "all") return run_all_suites(s, opts);
  throw SchemaError("unknown suite '" + name + "'");
}

}  // namespace wqcm
