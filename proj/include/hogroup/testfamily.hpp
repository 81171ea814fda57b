#pragma once

#include <string>
#include <vector>

#include "hogroup/grid.hpp"

namespace hogroup {

struct TestFunction {
  std::string name;
  bool rough = false;
  SampledFunction f;
};

// Twenty functions of |x| and x_0: hats and Gaussians at several widths,
// modulated and translated copies, and rough exemplars (indicator, clamped
// log, square-root cusp, tent, jump). Every member is passed through
// zero_mean.
std::vector<TestFunction> test_family(const GridPtr& grid);

// f - (int f / int g) g with g a Gaussian of quasi-norm width `width`: the
// representative of f modulo constants used for the homogeneous spaces.
SampledFunction zero_mean(const SampledFunction& f, double width = 4.0);

}  // namespace hogroup
