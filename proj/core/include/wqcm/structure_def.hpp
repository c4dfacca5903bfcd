#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wqcm/expr.hpp"
#include "wqcm/point.hpp"

namespace wqcm {

// Square matrix of expressions, row-major.
struct ExprMatrix {
  int size = 0;
  std::vector<Expr> entries;

  ExprMatrix() = default;
  explicit ExprMatrix(int n) : size(n), entries(static_cast<std::size_t>(n) * n) {}

  Expr& operator()(int r, int c) { return entries[static_cast<std::size_t>(r) * size + c]; }
  const Expr& operator()(int r, int c) const {
    return entries[static_cast<std::size_t>(r) * size + c];
  }

  friend bool operator==(const ExprMatrix&, const ExprMatrix&) = default;
};

// A chart manifold with expression-valued metric g, (1,1)-tensor f and Reeb field xi.
// eta and Q are derived downstream; an explicit Q is kept only as a cross-check.
struct StructureDef {
  std::string name;
  int n = 1;
  std::vector<std::string> coords;
  DomainBox domain;
  ExprMatrix metric;  // g_ij, symmetric
  ExprMatrix f;       // f^i_j: row i, column j
  std::vector<Expr> xi;
  std::optional<ExprMatrix> Q;

  int dim() const { return 2 * n + 1; }

  friend bool operator==(const StructureDef&, const StructureDef&) = default;
};

// Parses the JSON structure document. Throws SchemaError, DimensionError or ParseError.
StructureDef load_structure_def(std::string_view json_text);
StructureDef load_structure_file(const std::string& path);

// Serializes with printed expressions; the full metric matrix is written.
std::string save_structure_def(const StructureDef& def);

}  // namespace wqcm
