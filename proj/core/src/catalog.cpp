#include "wqcm/catalog.hpp"

#include <cmath>
#include <cstdio>

#include "json.hpp"
#include "wqcm/sampling.hpp"
#include "wqcm/structure.hpp"

namespace wqcm {

namespace {

constexpr int kMaxN = 3;

std::string number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// c * name, printed without redundant unit factors.
std::string scaled_term(double c, const std::string& name) {
  if (c == 1.0) return name;
  if (c == -1.0) return "-" + name;
  return number(c) + "*" + name;
}

std::vector<std::string> contact_coords(int n) {
  if (n == 1) return {"x", "y", "z"};
  std::vector<std::string> c;
  for (int i = 1; i <= n; ++i) c.push_back("x" + std::to_string(i));
  for (int i = 1; i <= n; ++i) c.push_back("y" + std::to_string(i));
  c.push_back("z");
  return c;
}

// f on plane i is scale[i] times the standard contact f, with overall sign `sign`.
StructureDef contact_structure(const std::string& name, int n, const std::vector<double>& scale,
                               double sign) {
  const int d = 2 * n + 1;
  const std::vector<std::string> coords = contact_coords(n);
  auto x = [&](int i) { return i; };
  auto y = [&](int i) { return n + i; };
  const int z = 2 * n;

  std::vector<std::vector<std::string>> g(d, std::vector<std::string>(d, "0"));
  std::vector<std::vector<std::string>> f(d, std::vector<std::string>(d, "0"));
  for (int i = 0; i < n; ++i) {
    const std::string& yi = coords[y(i)];
    for (int j = i; j < n; ++j) {
      const std::string& yj = coords[y(j)];
      g[x(i)][x(j)] = g[x(j)][x(i)] = yi + "*" + yj + "/4" + (i == j ? " + 1/4" : "");
    }
    g[x(i)][z] = g[z][x(i)] = "-" + yi + "/4";
    g[y(i)][y(i)] = "1/4";

    const double c = sign * scale[i];
    f[y(i)][x(i)] = number(-c);
    f[x(i)][y(i)] = number(c);
    f[z][y(i)] = scaled_term(c, yi);
  }
  g[z][z] = "1/4";

  nlohmann::json doc;
  doc["name"] = name;
  doc["n"] = n;
  doc["coords"] = coords;
  doc["domain"] = std::vector<std::vector<double>>(d, {-1.0, 1.0});
  doc["metric"] = g;
  doc["f"] = f;
  std::vector<std::string> xi(d, "0");
  xi[z] = "2";
  doc["xi"] = xi;
  return load_structure_def(doc.dump());
}

double contact_mismatch(const StructureDef& def) {
  const WeakACM s(def);
  double worst = 0.0;
  SamplePlan plan;
  plan.count = 4;
  for (const Point& p : sample_points(plan, def.domain)) {
    const PointEval e = s.evaluate(p);
    worst = std::max(worst, (e.deta - e.phi).cwiseAbs().maxCoeff());
  }
  return worst;
}

// The sign of f for which d eta = Phi holds on the standard chart.
double contact_sign(int n) {
  for (double sign : {1.0, -1.0}) {
    const StructureDef probe = contact_structure("probe", n, std::vector<double>(n, 1.0), sign);
    if (contact_mismatch(probe) < 1e-10) return sign;
  }
  throw Error("no sign of f satisfies d eta = Phi on the Sasakian chart");
}

StructureDef flat_const() {
  nlohmann::json doc;
  doc["name"] = "flat-const";
  doc["n"] = 1;
  doc["coords"] = {"x", "y", "z"};
  doc["domain"] = {{-1.0, 1.0}, {-1.0, 1.0}, {-1.0, 1.0}};
  doc["metric"] = {{"1", "0", "0"}, {"0", "1", "0"}, {"0", "0", "1"}};
  doc["f"] = {{"0", "1", "0"}, {"-1", "0", "0"}, {"0", "0", "0"}};
  doc["xi"] = {"0", "0", "1"};
  return load_structure_def(doc.dump());
}

int checked_n(const CatalogParams& p, int fallback) {
  const int n = p.n.value_or(fallback);
  if (n < 1 || n > kMaxN) {
    throw SchemaError("parameter n must lie in [1, " + std::to_string(kMaxN) + "], got " +
                      std::to_string(n));
  }
  return n;
}

double checked_s(const CatalogParams& p, double fallback) {
  const double s = p.s.value_or(fallback);
  if (!(s > 0.0) || !std::isfinite(s)) throw SchemaError("parameter s must be positive");
  return s;
}

void reject_s(const CatalogParams& p, const std::string& key) {
  if (p.s) throw SchemaError("catalog entry '" + key + "' takes no parameter s");
}

std::string dim_name(int n) { return "r" + std::to_string(2 * n + 1); }

}  // namespace

StructureDef catalog(const std::string& key, const CatalogParams& params) {
  if (key == "sasakian" || key.rfind("sasakian-r", 0) == 0) {
    reject_s(params, key);
    int n = checked_n(params, 1);
    if (key != "sasakian") {
      const std::string tail = key.substr(10);
      if (tail != "3" && tail != "5" && tail != "7") throw SchemaError("unknown catalog key '" + key + "'");
      const int fixed = (std::stoi(tail) - 1) / 2;
      if (params.n && *params.n != fixed) throw SchemaError("parameter n conflicts with key '" + key + "'");
      n = fixed;
    }
    return contact_structure("sasakian-" + dim_name(n), n, std::vector<double>(n, 1.0),
                             contact_sign(n));
  }
  if (key == "scaled") {
    const int n = checked_n(params, 1);
    const double s = checked_s(params, 2.0);
    return contact_structure("scaled-" + dim_name(n) + "(s=" + number(s) + ")", n,
                             std::vector<double>(n, s), contact_sign(n));
  }
  if (key == "product") {
    const int n = checked_n(params, 2);
    const double s = checked_s(params, 2.0);
    std::vector<double> scale(n, s);
    scale[0] = 1.0;
    return contact_structure("product-" + dim_name(n) + "(s=" + number(s) + ")", n, scale,
                             contact_sign(n));
  }
  if (key == "flat-const") {
    reject_s(params, key);
    if (params.n && *params.n != 1) throw SchemaError("flat-const has n = 1");
    return flat_const();
  }
  throw SchemaError("unknown catalog key '" + key + "'");
}

bool is_builtin(const std::string& source) { return source.rfind("builtin:", 0) == 0; }

StructureDef parse_builtin(const std::string& source) {
  std::string rest = is_builtin(source) ? source.substr(8) : source;
  const std::size_t q = rest.find('?');
  const std::string key = rest.substr(0, q);
  CatalogParams params;
  if (q != std::string::npos) {
    std::string query = rest.substr(q + 1);
    std::size_t start = 0;
    while (start <= query.size()) {
      std::size_t end = query.find_first_of(",&", start);
      if (end == std::string::npos) end = query.size();
      const std::string item = query.substr(start, end - start);
      start = end + 1;
      if (item.empty()) continue;
      const std::size_t eq = item.find('=');
      if (eq == std::string::npos) throw SchemaError("malformed catalog parameter '" + item + "'");
      const std::string name = item.substr(0, eq);
      const std::string value = item.substr(eq + 1);
      std::size_t used = 0;
      try {
        if (name == "n") {
          params.n = std::stoi(value, &used);
        } else if (name == "s") {
          params.s = std::stod(value, &used);
        } else {
          throw SchemaError("unknown catalog parameter '" + name + "'");
        }
      } catch (const std::logic_error&) {
        throw SchemaError("invalid value for catalog parameter '" + name + "'");
      }
      if (used != value.size()) throw SchemaError("invalid value for catalog parameter '" + name + "'");
    }
  }
  return catalog(key, params);
}

std::vector<CatalogEntry> catalog_entries() {
  return {
      {"sasakian-r3", "", "standard Sasakian structure on R^3"},
      {"sasakian-r5", "", "standard Sasakian structure on R^5"},
      {"sasakian-r7", "", "standard Sasakian structure on R^7"},
      {"sasakian", "n=1..3", "standard Sasakian structure on R^(2n+1)"},
      {"scaled", "n=1..3, s>0 (default n=1, s=2)",
       "Sasakian chart with f scaled by s; weak a.c.m. with Q != id for s != 1"},
      {"product", "n=1..3, s>0 (default n=2, s=2)",
       "Sasakian chart with planes 2..n scaled by s; Q eigenvalues 1 and s^2 on ker eta"},
      {"flat-const", "", "Euclidean R^3 with constant f; eta closed, not contact"},
  };
}

}  // namespace wqcm
