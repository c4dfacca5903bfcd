#include "wqcm/structure_def.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace wqcm {

namespace {

using json = nlohmann::json;

std::string strip_ws(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (!std::isspace(static_cast<unsigned char>(c))) out += c;
  }
  return out;
}

const json& require(const json& doc, const char* key) {
  if (!doc.contains(key)) throw SchemaError(std::string("missing field \"") + key + "\"");
  return doc.at(key);
}

std::string expr_string(const json& v, const std::string& where) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number()) return v.dump();
  throw SchemaError(where + ": expected an expression string");
}

Expr parse_at(const std::string& text, const std::vector<std::string>& coords,
              const std::string& where) {
  try {
    return parse(text, coords);
  } catch (const ParseError& e) {
    throw ParseError(where + ": " + e.what(), e.line(), e.column());
  }
}

std::vector<std::vector<std::string>> string_matrix(const json& v, int d, const char* key) {
  if (!v.is_array() || static_cast<int>(v.size()) != d) {
    throw DimensionError(std::string("\"") + key + "\" must be a " + std::to_string(d) + "x" +
                         std::to_string(d) + " matrix");
  }
  std::vector<std::vector<std::string>> out;
  for (int i = 0; i < d; ++i) {
    const json& row = v[i];
    if (!row.is_array() || static_cast<int>(row.size()) != d) {
      throw DimensionError(std::string("\"") + key + "\" must be a " + std::to_string(d) + "x" +
                           std::to_string(d) + " matrix");
    }
    std::vector<std::string> r;
    for (int j = 0; j < d; ++j) {
      r.push_back(expr_string(row[j], std::string(key) + "[" + std::to_string(i) + "][" +
                                          std::to_string(j) + "]"));
    }
    out.push_back(std::move(r));
  }
  return out;
}

ExprMatrix parse_matrix(const std::vector<std::vector<std::string>>& text,
                        const std::vector<std::string>& coords, const char* key) {
  const int d = static_cast<int>(text.size());
  ExprMatrix m(d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      m(i, j) = parse_at(text[i][j], coords,
                         std::string(key) + "[" + std::to_string(i) + "][" + std::to_string(j) + "]");
    }
  }
  return m;
}

bool valid_identifier(const std::string& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  for (char c : s) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
  }
  static const std::set<std::string> reserved = {"sin", "cos", "exp", "sqrt"};
  return !reserved.contains(s);
}

}  // namespace

StructureDef load_structure_def(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw SchemaError("structure document must be a JSON object");

  StructureDef def;
  try {
    def.name = require(doc, "name").get<std::string>();
    def.n = require(doc, "n").get<int>();
  } catch (const json::type_error& e) {
    throw SchemaError(std::string("bad field type: ") + e.what());
  }
  if (def.n < 1) throw SchemaError("\"n\" must be a positive integer");
  const int d = def.dim();

  const json& coords = require(doc, "coords");
  if (!coords.is_array() || static_cast<int>(coords.size()) != d) {
    throw DimensionError("\"coords\" must list " + std::to_string(d) + " names");
  }
  for (const json& c : coords) {
    if (!c.is_string() || !valid_identifier(c.get<std::string>())) {
      throw SchemaError("invalid coordinate name " + c.dump());
    }
    def.coords.push_back(c.get<std::string>());
  }
  if (std::set<std::string>(def.coords.begin(), def.coords.end()).size() != def.coords.size()) {
    throw SchemaError("duplicate coordinate names");
  }

  const json& domain = require(doc, "domain");
  if (!domain.is_array() || static_cast<int>(domain.size()) != d) {
    throw DimensionError("\"domain\" must list " + std::to_string(d) + " intervals");
  }
  for (const json& iv : domain) {
    if (!iv.is_array() || iv.size() != 2 || !iv[0].is_number() || !iv[1].is_number()) {
      throw SchemaError("domain intervals must be [lo, hi] number pairs");
    }
    Interval interval{iv[0].get<double>(), iv[1].get<double>()};
    if (!(interval.lo < interval.hi)) throw SchemaError("empty domain interval");
    def.domain.push_back(interval);
  }

  // Only the upper triangle of the metric is read; the lower must mirror it or be "".
  auto metric_text = string_matrix(require(doc, "metric"), d, "metric");
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < i; ++j) {
      const std::string lower = strip_ws(metric_text[i][j]);
      if (!lower.empty() && lower != strip_ws(metric_text[j][i])) {
        throw SchemaError("asymmetric metric declaration at [" + std::to_string(i) + "][" +
                          std::to_string(j) + "]");
      }
      metric_text[i][j] = metric_text[j][i];
    }
  }
  def.metric = parse_matrix(metric_text, def.coords, "metric");
  def.f = parse_matrix(string_matrix(require(doc, "f"), d, "f"), def.coords, "f");

  const json& xi = require(doc, "xi");
  if (!xi.is_array() || static_cast<int>(xi.size()) != d) {
    throw DimensionError("\"xi\" must have " + std::to_string(d) + " components");
  }
  for (int i = 0; i < d; ++i) {
    const std::string where = "xi[" + std::to_string(i) + "]";
    def.xi.push_back(parse_at(expr_string(xi[i], where), def.coords, where));
  }

  if (doc.contains("Q") && !doc.at("Q").is_null()) {
    def.Q = parse_matrix(string_matrix(doc.at("Q"), d, "Q"), def.coords, "Q");
  }
  return def;
}

StructureDef load_structure_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SchemaError("cannot open structure file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_structure_def(buf.str());
}

std::string save_structure_def(const StructureDef& def) {
  json doc = json::object();
  doc["name"] = def.name;
  doc["n"] = def.n;
  doc["coords"] = def.coords;
  json domain = json::array();
  for (const Interval& iv : def.domain) domain.push_back({iv.lo, iv.hi});
  doc["domain"] = domain;
  auto matrix = [&](const ExprMatrix& m) {
    json rows = json::array();
    for (int i = 0; i < m.size; ++i) {
      json row = json::array();
      for (int j = 0; j < m.size; ++j) row.push_back(m(i, j).print(def.coords));
      rows.push_back(row);
    }
    return rows;
  };
  doc["metric"] = matrix(def.metric);
  doc["f"] = matrix(def.f);
  json xi = json::array();
  for (const Expr& e : def.xi) xi.push_back(e.print(def.coords));
  doc["xi"] = xi;
  if (def.Q) doc["Q"] = matrix(*def.Q);
  return doc.dump(2);
}

}  // namespace wqcm
