#pragma once

#include <algorithm>

#include "hogroup/lpnorms.hpp"

namespace hogroup::detail {

template <class Dec>
// Peetre envelopes of the pieces of a discrete or continuous decomposition;
// for ** the sup also runs over the `window` neighbouring scales on each side.
void envelope_pieces(Dec& out, const std::vector<double>& ts, double a, int window,
                     bool star_star) {
  QuasiNorm qn = QuasiNorm::canonical(out.op->grid()->algebra());
  std::vector<SampledFunction> env(out.pieces.size());
  for (std::size_t i = 0; i < env.size(); ++i)
    env[i] = peetre_maximal(out.pieces[i], qn, ts[i], a);
  if (star_star) {
    std::vector<SampledFunction> ss(env.size());
    for (std::size_t i = 0; i < env.size(); ++i) {
      ss[i] = env[i];
      auto lo = std::max<long>(0, long(i) - window);
      auto hi = std::min<long>(long(env.size()) - 1, long(i) + window);
      for (long k = lo; k <= hi; ++k)
        for (std::size_t p = 0; p < ss[i].size(); ++p)
          ss[i][p] = std::max(ss[i][p], env[k][p]);
    }
    env = std::move(ss);
  }
  out.pieces = std::move(env);
  out.flavor = star_star ? Flavor::PeetreStar : Flavor::Peetre;
  out.a = a;
}

}  // namespace hogroup::detail
