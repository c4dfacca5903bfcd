#pragma once

#include <string>

#include "wqcm/suites.hpp"

namespace wqcm {

enum class Format { text, json };

Format parse_format(const std::string& name);

// Stable field order; identical reports give byte-identical output.
std::string emit_report(const CheckReport& r, Format format);
std::string emit_axioms(const AxiomReport& r, Format format);
std::string emit_classes(const ClassReport& r, double contact_volume, const FBasis& basis,
                         Format format);
std::string emit_fbasis(const FBasis& b, const FBasisCheck& c, Format format);
std::string emit_cone(const ConeEval& c, const Point& p, double t, Format format);

}  // namespace wqcm
