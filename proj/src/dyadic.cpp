#include "hogroup/dyadic.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include <json.hpp>

#include "hogroup/error.hpp"
#include "hogroup/parallel.hpp"

namespace hogroup {

namespace {

// Buckets of points over the minimal-weight coordinates, which add under the
// group law, so |c^{-1} x| < r forces |x_i - c_i| < r^{v_min} on those axes.
class AdditiveHash {
 public:
  AdditiveHash(const GradedAlgebra& g, double cell) : cell_(cell) {
    vmin_ = g.weight(0);
    for (int i = 0; i < g.dim(); ++i) vmin_ = std::min(vmin_, g.weight(i));
    for (int i = 0; i < g.dim(); ++i)
      if (g.weight(i) == vmin_) axes_.push_back(i);
  }

  void insert(const GroupPoint& x, std::size_t id) { map_[key(cells(x))].push_back(id); }

  template <class F>
  void visit(const GroupPoint& x, double r, F&& f) const {
    const double reach = std::pow(r, vmin_);
    std::vector<long> lo(axes_.size()), hi(axes_.size()), c(axes_.size());
    for (std::size_t a = 0; a < axes_.size(); ++a) {
      lo[a] = static_cast<long>(std::floor((x[axes_[a]] - reach) / cell_));
      hi[a] = static_cast<long>(std::floor((x[axes_[a]] + reach) / cell_));
    }
    c = lo;
    while (true) {
      auto it = map_.find(key(c));
      if (it != map_.end())
        for (std::size_t id : it->second) f(id);
      std::size_t a = 0;
      while (a < c.size() && c[a] == hi[a]) c[a] = lo[a], ++a;
      if (a == c.size()) break;
      ++c[a];
    }
  }

 private:
  std::vector<long> cells(const GroupPoint& x) const {
    std::vector<long> c(axes_.size());
    for (std::size_t a = 0; a < axes_.size(); ++a)
      c[a] = static_cast<long>(std::floor(x[axes_[a]] / cell_));
    return c;
  }
  static std::uint64_t key(const std::vector<long>& c) {
    std::uint64_t k = 1469598103934665603ull;
    for (long v : c) k = (k ^ static_cast<std::uint64_t>(v + (1l << 40))) * 1099511628211ull;
    return k;
  }

  double cell_;
  int vmin_ = 1;
  std::vector<int> axes_;
  std::unordered_map<std::uint64_t, std::vector<std::size_t>> map_;
};

bool lex_less(const GroupPoint& a, const GroupPoint& b) {
  for (int i = 0; i < a.dim(); ++i)
    if (a[i] != b[i]) return a[i] < b[i];
  return false;
}

std::vector<GroupPoint> pack(const GradedAlgebra& g, const QuasiNorm& qn,
                             const std::vector<GroupPoint>& cand, double radius) {
  const double sep = 2.0 * qn.gamma() * radius;
  AdditiveHash hash(g, std::max(sep, 1e-12));
  std::vector<GroupPoint> centers;
  for (const auto& x : cand) {
    bool ok = true;
    hash.visit(x, sep, [&](std::size_t id) {
      if (ok && qn.distance(g, x, centers[id]) < sep) ok = false;
    });
    if (ok) {
      hash.insert(x, centers.size());
      centers.push_back(x);
    }
  }
  return centers;
}

}  // namespace

std::vector<GroupPoint> greedy_packing(const GradedAlgebra& g, const QuasiNorm& qn,
                                       const std::vector<GroupPoint>& candidates, double radius) {
  if (!(radius > 0)) throw Error("dyadic", "radius", "radius must be positive");
  return pack(g, qn, candidates, radius);
}

std::vector<GroupPoint> greedy_packing(const Grid& grid, const QuasiNorm& qn, double radius) {
  if (grid.size() > 0 && !(radius > grid.max_spacing()))
    throw Error("dyadic", "radius", "radius must exceed the grid spacing");
  std::vector<GroupPoint> cand(grid.size());
  for (std::size_t p = 0; p < grid.size(); ++p) cand[p] = grid.point(p);
  return pack(grid.algebra(), qn, cand, radius);
}

DyadicBallSystem::DyadicBallSystem(GridPtr grid, QuasiNorm qn, int k_min, int k_max)
    : grid_(std::move(grid)), qn_(std::move(qn)), k_min_(k_min), k_max_(k_max) {
  if (k_max < k_min) throw Error("dyadic", "k_range", "k_max < k_min");
  const Grid& G = *grid_;
  const auto& g = G.algebra();
  const double radius = 1.0 / (2.0 * qn_.gamma());

  std::vector<GroupPoint> cand;
  cand.reserve(G.size() * (k_max - k_min + 1));
  for (int k = k_min; k <= k_max; ++k)
    for (std::size_t p = 0; p < G.size(); ++p) cand.push_back(g.dilate(G.point(p), std::ldexp(1.0, -k)));
  std::sort(cand.begin(), cand.end(), lex_less);
  cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
  base_ = pack(g, qn_, cand, radius);

  auto hash = std::make_shared<AdditiveHash>(g, 1.0);
  for (std::size_t l = 0; l < base_.size(); ++l) hash->insert(base_[l], l);
  hash_ = hash;

  scales_.resize(k_max - k_min + 1);
  for (int k = k_min; k <= k_max; ++k) {
    Scale& S = scales_[k - k_min];
    S.count.assign(G.size(), 0);
    std::unordered_map<std::size_t, std::size_t> slot;
    const double s = std::ldexp(1.0, -k);
    for (std::size_t p = 0; p < G.size(); ++p) {
      GroupPoint u = g.dilate(G.point(p), s);
      for (std::size_t l : base_within(u, 1.0)) {
        auto [it, fresh] = slot.emplace(l, S.ids.size());
        if (fresh) {
          S.ids.push_back(l);
          S.members.emplace_back();
        }
        S.members[it->second].push_back(p);
        ++S.count[p];
      }
    }
  }
}

std::vector<std::size_t> DyadicBallSystem::base_within(const GroupPoint& x, double r) const {
  std::vector<std::size_t> out;
  const auto& g = grid_->algebra();
  static_cast<const AdditiveHash*>(hash_.get())->visit(x, r, [&](std::size_t l) {
    if (qn_.distance(g, x, base_[l]) < r) out.push_back(l);
  });
  std::sort(out.begin(), out.end());
  return out;
}

GroupPoint DyadicBallSystem::center(int k, std::size_t l) const {
  return grid_->algebra().dilate(base_[l], std::ldexp(1.0, k));
}

bool DyadicBallSystem::interior(int k, const GroupPoint& x) const {
  const Grid& G = *grid_;
  const double R = std::ldexp(1.0, k + 1);
  for (int i = 0; i < G.dim(); ++i) {
    double m = std::pow(R, G.algebra().weight(i));
    if (x[i] < G.lo(i) + m || x[i] > G.hi(i) - m) return false;
  }
  return true;
}

DyadicReport DyadicBallSystem::verify() const {
  const Grid& G = *grid_;
  const auto& g = G.algebra();
  const int Q = g.homogeneous_dimension();
  const int nk = k_max_ - k_min_ + 1;
  DyadicReport rep;
  rep.covers = true;
  rep.m_per_scale.assign(nk, 0);
  rep.m_prime_per_scale.assign(nk, 0);
  rep.m_second_per_gap.assign(std::max(nk - 1, 0), 0.0);
  for (int k = k_min_; k <= k_max_; ++k) {
    const Scale& S = scale(k);
    for (std::size_t p = 0; p < G.size(); ++p) {
      if (!interior(k, G.point(p))) continue;
      ++rep.interior_points;
      if (S.count[p] == 0) rep.covers = false;
      rep.m_per_scale[k - k_min_] = std::max(rep.m_per_scale[k - k_min_], S.count[p]);
    }
  }
  // Intersections: |a^{-1} b| < gamma (r_a + r_b) is necessary, so the counts
  // are upper bounds for the true numbers of intersecting balls.
  for (int k = k_min_; k <= k_max_; ++k) {
    const Scale& S = scale(k);
    std::vector<std::size_t> list;
    for (std::size_t l : S.ids)
      if (interior(k, center(k, l))) list.push_back(l);
    std::vector<int> best_prime(list.size(), 0);
    std::vector<std::vector<double>> best_gap(list.size(), std::vector<double>(nk, 0.0));
    parallel_for(list.size(), [&](std::size_t b, std::size_t e) {
      for (std::size_t i = b; i < e; ++i) {
        GroupPoint a = center(k, list[i]);
        for (int k2 = k_min_; k2 <= k_max_; ++k2) {
          double reach = qn_.gamma() * (std::ldexp(1.0, k) + std::ldexp(1.0, k2));
          double s = std::ldexp(1.0, -k2);
          auto hits = base_within(g.dilate(a, s), reach * s);
          int c = static_cast<int>(hits.size());
          if (k2 >= k) best_prime[i] = std::max(best_prime[i], c);
          else best_gap[i][k - k2 - 1] = c / std::ldexp(1.0, (k - k2) * Q);
        }
      }
    });
    for (std::size_t i = 0; i < list.size(); ++i) {
      rep.m_prime_per_scale[k - k_min_] = std::max(rep.m_prime_per_scale[k - k_min_], best_prime[i]);
      for (int d = 0; d + 1 < nk; ++d)
        rep.m_second_per_gap[d] = std::max(rep.m_second_per_gap[d], best_gap[i][d]);
    }
    rep.balls_checked += list.size();
  }
  rep.m = *std::max_element(rep.m_per_scale.begin(), rep.m_per_scale.end());
  rep.m_prime = *std::max_element(rep.m_prime_per_scale.begin(), rep.m_prime_per_scale.end());
  rep.m_second = rep.m_second_per_gap.empty()
                     ? 0.0
                     : *std::max_element(rep.m_second_per_gap.begin(), rep.m_second_per_gap.end());
  auto spread = [](const std::vector<int>& v) {
    std::vector<int> w;
    for (int x : v)
      if (x > 0) w.push_back(x);
    if (w.empty()) return 0;
    auto [a, b] = std::minmax_element(w.begin(), w.end());
    return *b - *a;
  };
  rep.uniform = spread(rep.m_per_scale) <= 1 && spread(rep.m_prime_per_scale) <= 1;
  return rep;
}

std::string DyadicBallSystem::to_json(const DyadicReport* report) const {
  nlohmann::ordered_json j;
  j["group"] = grid_->algebra().name();
  j["gamma"] = qn_.gamma();
  j["k_range"] = {k_min_, k_max_};
  auto& cs = j["centers"] = nlohmann::ordered_json::array();
  for (const auto& c : base_) cs.push_back(std::vector<double>(c.coords().begin(), c.coords().end()));
  if (report) {
    nlohmann::ordered_json r;
    r["covers"] = report->covers;
    r["m"] = report->m;
    r["m_prime"] = report->m_prime;
    r["m_second"] = report->m_second;
    r["m_per_scale"] = report->m_per_scale;
    r["m_prime_per_scale"] = report->m_prime_per_scale;
    r["m_second_per_gap"] = report->m_second_per_gap;
    r["uniform"] = report->uniform;
    j["measured"] = r;
  }
  return j.dump(2);
}

}  // namespace hogroup
