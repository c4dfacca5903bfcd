#include "wqcm/report.hpp"

#include <cstdio>
#include <sstream>

#include "json.hpp"

namespace wqcm {

using ojson = nlohmann::ordered_json;

namespace {

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

std::string pad(const std::string& s, std::size_t width) {
  if (s.size() >= width) return s + " ";
  return s + std::string(width - s.size(), ' ');
}

ojson vec_json(const VectorXd& v) {
  ojson a = ojson::array();
  for (int i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

ojson mat_json(const MatrixXd& m) {
  ojson a = ojson::array();
  for (int i = 0; i < m.rows(); ++i) {
    ojson row = ojson::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    a.push_back(row);
  }
  return a;
}

ojson tol_json(const Tolerances& t) {
  return ojson{{"algebraic", t.algebraic}, {"deriv", t.deriv}, {"curv", t.curv}};
}

std::string vec_text(const VectorXd& v) {
  std::ostringstream os;
  os << "(";
  for (int i = 0; i < v.size(); ++i) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", v[i]);
    os << (i ? ", " : "") << buf;
  }
  os << ")";
  return os.str();
}

}  // namespace

Format parse_format(const std::string& name) {
  if (name == "text") return Format::text;
  if (name == "json") return Format::json;
  throw SchemaError("unknown format '" + name + "'");
}

std::string emit_report(const CheckReport& r, Format format) {
  if (format == Format::json) {
    ojson j;
    j["suite"] = r.suite;
    j["structure"] = r.structure;
    j["seed"] = r.seed;
    j["tol"] = tol_json(r.tol);
    j["checks"] = ojson::array();
    for (const CheckRecord& c : r.checks) {
      j["checks"].push_back(ojson{{"id", c.id},
                                  {"paper", c.paper},
                                  {"max_residual", c.max_residual},
                                  {"tol", c.tol},
                                  {"verdict", verdict_name(c.verdict)},
                                  {"points", c.points},
                                  {"detail", c.detail}});
    }
    if (r.timestamp) j["timestamp"] = *r.timestamp;
    return j.dump(2) + "\n";
  }

  std::ostringstream os;
  os << "suite: " << r.suite << "  structure: " << r.structure << "  seed: " << r.seed << "\n";
  os << "tolerances: algebraic " << sci(r.tol.algebraic) << "  deriv " << sci(r.tol.deriv)
     << "  curv " << sci(r.tol.curv) << "\n";
  if (r.timestamp) os << "timestamp: " << *r.timestamp << "\n";
  os << pad("check", 38) << pad("paper", 12) << pad("max_residual", 13) << pad("tol", 11)
     << pad("verdict", 9) << "points\n";
  os << std::string(89, '-') << "\n";
  int pass = 0, fail = 0, skipped = 0;
  for (const CheckRecord& c : r.checks) {
    os << pad(c.id, 38) << pad(c.paper, 12) << pad(sci(c.max_residual), 13) << pad(sci(c.tol), 11)
       << pad(verdict_name(c.verdict), 9) << c.points << "\n";
    if (c.verdict != Verdict::pass && !c.detail.empty()) os << "    " << c.detail << "\n";
    (c.verdict == Verdict::pass ? pass : c.verdict == Verdict::fail ? fail : skipped)++;
  }
  os << "summary: " << pass << " pass, " << fail << " fail, " << skipped << " skipped\n";
  return os.str();
}

std::string emit_axioms(const AxiomReport& r, Format format) {
  if (format == Format::json) {
    ojson j;
    j["command"] = "validate";
    j["structure"] = r.structure;
    j["points"] = r.points;
    j["residuals"] = ojson::array();
    for (const NamedResidual& n : r.residuals) {
      j["residuals"].push_back(ojson{{"name", n.name},
                                     {"max_residual", n.max_residual},
                                     {"max_raw", n.max_raw},
                                     {"tol", n.tol},
                                     {"verdict", n.pass ? "pass" : "fail"},
                                     {"detail", n.detail}});
    }
    j["verdict"] = r.pass() ? "pass" : "fail";
    return j.dump(2) + "\n";
  }
  std::ostringstream os;
  os << "validate: " << r.structure << " at " << r.points << " points\n";
  os << pad("residual", 24) << pad("max_residual", 13) << pad("max_raw", 13) << pad("tol", 11)
     << "verdict\n";
  os << std::string(68, '-') << "\n";
  for (const NamedResidual& n : r.residuals) {
    os << pad(n.name, 24) << pad(sci(n.max_residual), 13) << pad(sci(n.max_raw), 13)
       << pad(sci(n.tol), 11) << (n.pass ? "pass" : "fail") << "\n";
    if (!n.detail.empty()) os << "    " << n.detail << "\n";
  }
  os << "verdict: " << (r.pass() ? "pass" : "fail") << "\n";
  return os.str();
}

std::string emit_classes(const ClassReport& r, double contact_volume, const FBasis& basis,
                         Format format) {
  if (format == Format::json) {
    ojson j;
    j["command"] = "classify";
    j["structure"] = r.structure;
    j["points"] = r.points;
    j["classes"] = ojson::array();
    for (const ClassVerdict& c : r.classes) {
      j["classes"].push_back(ojson{{"name", c.name},
                                   {"max_residual", c.max_residual},
                                   {"max_raw", c.max_raw},
                                   {"canonical_residual", c.canonical_residual},
                                   {"tol", c.tol},
                                   {"verdict", c.pass ? "pass" : "fail"}});
    }
    ojson lambda = ojson::array();
    for (double l : basis.lambda) lambda.push_back(l);
    j["lambda"] = lambda;
    j["contact_volume"] = contact_volume;
    return j.dump(2) + "\n";
  }
  std::ostringstream os;
  os << "classify: " << r.structure << " at " << r.points << " points\n";
  os << pad("class", 18) << pad("max_residual", 13) << pad("max_raw", 13) << pad("canonical", 13)
     << pad("tol", 11) << "verdict\n";
  os << std::string(75, '-') << "\n";
  for (const ClassVerdict& c : r.classes) {
    os << pad(c.name, 18) << pad(sci(c.max_residual), 13) << pad(sci(c.max_raw), 13)
       << pad(sci(c.canonical_residual), 13) << pad(sci(c.tol), 11) << (c.pass ? "yes" : "no")
       << "\n";
  }
  os << "lambda at first point:";
  for (double l : basis.lambda) os << " " << sci(l);
  os << "\ncontact volume at first point: " << sci(contact_volume) << "\n";
  return os.str();
}

std::string emit_fbasis(const FBasis& b, const FBasisCheck& c, Format format) {
  if (format == Format::json) {
    ojson j;
    j["command"] = "fbasis";
    j["point"] = b.point.coords;
    j["xi"] = vec_json(b.xi);
    j["e"] = ojson::array();
    j["fe"] = ojson::array();
    for (std::size_t i = 0; i < b.e.size(); ++i) {
      j["e"].push_back(vec_json(b.e[i]));
      j["fe"].push_back(vec_json(b.fe[i]));
    }
    j["lambda"] = b.lambda;
    j["invariants"] = ojson{{"orthogonality", c.orthogonality},
                            {"unit", c.unit},
                            {"eigen", c.eigen},
                            {"fe_norm", c.fe_norm},
                            {"trace", c.trace}};
    return j.dump(2) + "\n";
  }
  std::ostringstream os;
  os << "f-basis at " << vec_text(Eigen::Map<const VectorXd>(b.point.coords.data(),
                                                             b.point.dim()))
     << "\n";
  os << "  xi   = " << vec_text(b.xi) << "\n";
  for (std::size_t i = 0; i < b.e.size(); ++i) {
    os << "  e" << i + 1 << "   = " << vec_text(b.e[i]) << "  lambda = " << b.lambda[i] << "\n";
    os << "  fe" << i + 1 << "  = " << vec_text(b.fe[i]) << "\n";
  }
  os << "invariants: orthogonality " << sci(c.orthogonality) << ", unit " << sci(c.unit)
     << ", eigen " << sci(c.eigen) << ", fe_norm " << sci(c.fe_norm) << ", trace "
     << sci(c.trace) << "\n";
  return os.str();
}

std::string emit_cone(const ConeEval& c, const Point& p, double t, Format format) {
  const int last = static_cast<int>(c.gbar.rows()) - 1;
  if (format == Format::json) {
    ojson j;
    j["command"] = "cone";
    j["point"] = p.coords;
    j["t"] = t;
    j["J"] = mat_json(c.J);
    j["P"] = mat_json(c.P);
    j["gbar"] = mat_json(c.gbar);
    j["j2_plus_p"] = c.j2_plus_p;
    j["compatibility"] = c.compatibility;
    j["gbar_tt"] = c.gbar(last, last);
    return j.dump(2) + "\n";
  }
  std::ostringstream os;
  Eigen::IOFormat fmt(10, 0, " ", "\n", "  [", "]");
  os << "cone at " << vec_text(Eigen::Map<const VectorXd>(p.coords.data(), p.dim()))
     << ", t = " << t << "\n";
  os << "J =\n" << c.J.format(fmt) << "\nP =\n" << c.P.format(fmt) << "\ngbar =\n"
     << c.gbar.format(fmt) << "\n";
  os << "|J^2 + P| = " << sci(c.j2_plus_p) << "\n";
  os << "|gbar(J., J.) - gbar(., P.)| = " << sci(c.compatibility) << "\n";
  os << "gbar(dt, dt) = " << c.gbar(last, last) << "\n";
  return os.str();
}

}  // namespace wqcm
