#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "hogroup/grid.hpp"

namespace hogroup {

// Greedy packing over `candidates` in the given order: a point is accepted iff
// its quasi-distance to every accepted center is >= 2 gamma radius, which
// keeps the balls B_radius disjoint. Every candidate ends within 2 gamma
// radius of some center.
std::vector<GroupPoint> greedy_packing(const GradedAlgebra& g, const QuasiNorm& qn,
                                       const std::vector<GroupPoint>& candidates, double radius);
// Candidates are the lattice points of the grid in row-major order.
std::vector<GroupPoint> greedy_packing(const Grid& grid, const QuasiNorm& qn, double radius);

struct DyadicReport {
  bool covers = false;
  int m = 0;         // max overlap at one scale
  int m_prime = 0;   // max partners at one coarser-or-equal scale
  double m_second = 0.0;  // max partners at a finer scale / 2^{(k-k')Q}
  std::vector<int> m_per_scale;
  std::vector<int> m_prime_per_scale;
  std::vector<double> m_second_per_gap;  // indexed by k - k' - 1
  bool uniform = false;  // per-scale constants equal to +-1 count
  std::size_t interior_points = 0;
  std::size_t balls_checked = 0;
};

// Balls B^k_l = B_{2^k}(delta_{2^k} x_l) for k in [k_min, k_max], with base
// centers x_l from a greedy (2 gamma)^{-1} packing. The candidates are the
// points delta_{2^{-k}}(x) for grid points x and every k, sorted
// lexicographically, so each grid point is covered at every scale.
class DyadicBallSystem {
 public:
  DyadicBallSystem(GridPtr grid, QuasiNorm qn, int k_min, int k_max);

  const Grid& grid() const { return *grid_; }
  const GridPtr& grid_ptr() const { return grid_; }
  const QuasiNorm& quasi_norm() const { return qn_; }
  double gamma() const { return qn_.gamma(); }
  int k_min() const { return k_min_; }
  int k_max() const { return k_max_; }
  const std::vector<GroupPoint>& base_centers() const { return base_; }
  GroupPoint center(int k, std::size_t l) const;

  // Balls at scale k holding at least one grid point, and their members.
  const std::vector<std::size_t>& balls(int k) const { return scale(k).ids; }
  const std::vector<std::size_t>& members(int k, std::size_t i) const {
    return scale(k).members[i];
  }
  // Number of balls at scale k containing grid point p.
  int overlap(int k, std::size_t p) const { return scale(k).count[p]; }

  DyadicReport verify() const;
  std::string to_json(const DyadicReport* report = nullptr) const;

 private:
  struct Scale {
    std::vector<std::size_t> ids;                   // l of balls with members
    std::vector<std::vector<std::size_t>> members;  // parallel to ids
    std::vector<int> count;                         // per grid point
  };
  const Scale& scale(int k) const { return scales_[k - k_min_]; }
  // l' with |c_l'^{-1} x| < r at unit scale (base coordinates).
  std::vector<std::size_t> base_within(const GroupPoint& x, double r) const;
  // Grid point farther than 2^{k+1} from the box faces (coordinate margins).
  bool interior(int k, const GroupPoint& x) const;

  GridPtr grid_;
  QuasiNorm qn_;
  int k_min_, k_max_;
  std::vector<GroupPoint> base_;
  std::shared_ptr<const void> hash_;
  std::vector<Scale> scales_;
};

}  // namespace hogroup
