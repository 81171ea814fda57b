#pragma once

#include <string>
#include <vector>

#include "hogroup/group.hpp"

namespace hogroup {

// Group files are JSON: {"name", "dim", "weights": [...],
// "brackets": [{"i","j","k","c"}]} with 1-based indices.
GradedAlgebra parse_algebra(const std::string& json_text);
GradedAlgebra load_algebra(const std::string& path);
std::string algebra_to_json(const GradedAlgebra& g);

// Names of the bundled groups: R, R2, R2_aniso, H1, engel.
std::vector<std::string> bundled_group_names();
// A bundled name, or a path to a group file.
GradedAlgebra resolve_algebra(const std::string& name_or_path);

}  // namespace hogroup
