#pragma once

#include <cmath>
#include <random>

namespace hogroup {

template <class Rng>
GroupPoint random_point(const GradedAlgebra& g, Rng& rng, double scale) {
  std::normal_distribution<double> nd(0.0, 1.0);
  GroupPoint x(g.dim());
  for (int i = 0; i < g.dim(); ++i) x[i] = nd(rng) * std::pow(scale, g.weight(i));
  return x;
}

}  // namespace hogroup
