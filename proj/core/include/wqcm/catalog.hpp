#pragma once

// Built-in structures.
//
//   sasakian-r(2n+1)  standard Sasakian structure on R^(2n+1), eta = (dz - sum y_i dx_i) / 2
//   scaled            the same chart with f replaced by s f; Q = s^2 id + (1 - s^2) eta (x) xi
//   product           plane 1 keeps f, planes 2..n carry s f; Q has eigenvalues 1 and s^2 on ker eta
//   flat-const        Euclidean R^3 with a constant f and xi = d/dz

#include <optional>
#include <string>
#include <vector>

#include "wqcm/structure_def.hpp"

namespace wqcm {

struct CatalogParams {
  std::optional<int> n;
  std::optional<double> s;
};

struct CatalogEntry {
  std::string key;
  std::string params;
  std::string description;
};

// Throws SchemaError on an unknown key or invalid parameters (n outside [1, 3], s <= 0).
StructureDef catalog(const std::string& key, const CatalogParams& params = {});

// Accepts "key", "key?n=2,s=3" or "key?n=2&s=3", with or without a "builtin:" prefix.
StructureDef parse_builtin(const std::string& source);

bool is_builtin(const std::string& source);

std::vector<CatalogEntry> catalog_entries();

}  // namespace wqcm
