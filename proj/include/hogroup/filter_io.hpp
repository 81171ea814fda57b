#pragma once

#include <array>
#include <string>

#include "hogroup/operator.hpp"

namespace hogroup {

struct FilterSpec {
  // sqrt_laplacian, laplacian, P, rockland (symbol path); sublaplacian,
  // P_matrix (matrix path).
  std::string op = "sqrt_laplacian";
  std::string kind = "discrete";  // or continuous
  std::array<double, 4> bump{0.5, 0.6, 1.9, 2.0};
};

// Throws Error("spectral", "unknown_operator" | "unknown_kind").
OperatorPtr make_operator(const std::string& name, GridPtr grid);
Multiplier make_multiplier(const FilterSpec& spec);
CalderonFilter build_filter(const FilterSpec& spec, GridPtr grid);

// A bundle is a directory holding filter.json (spec and multiplier samples
// on a log grid) and kernel.bin with its sidecar.
void write_filter_bundle(const FilterSpec& spec, const CalderonFilter& filter,
                         const std::string& dir);
struct FilterBundle {
  FilterSpec spec;
  CalderonFilter filter;
};
// The operator is rebuilt on the kernel's grid; the stored kernel is kept.
FilterBundle read_filter_bundle(const std::string& dir);

}  // namespace hogroup
