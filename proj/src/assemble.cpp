#include <cmath>
#include <vector>

#include "hogroup/error.hpp"
#include "hogroup/operator.hpp"
#include "hogroup/parallel.hpp"
#include "hogroup/taylor.hpp"

namespace hogroup {

namespace {

using Triplet = Eigen::Triplet<double>;

double periodic_weight_1d(double z, double L, double eps) {
  // sum_n 1/(z + nL)^2 = (pi/L)^2 / sin^2(pi z / L), minus the images inside eps.
  double s = std::sin(M_PI * z / L);
  double w = (M_PI / L) * (M_PI / L) / (s * s);
  double zr = z - L * std::round(z / L);
  if (std::fabs(zr) < eps) w -= 1.0 / (zr * zr);
  return w;
}

}  // namespace

std::shared_ptr<MatrixOperator> assemble_P(GridPtr grid, const QuasiNorm& qn, double eps_cut,
                                           PBoundary boundary) {
  const Grid& G = *grid;
  if (!(eps_cut >= 2.0 * G.max_spacing() * (1.0 - 1e-12)))
    throw Error("spectral", "eps_cut", "cutoff below twice the grid spacing");
  if (G.size() > MatrixOperator::kDenseLimit)
    throw Error("spectral", "too_large", "P is assembled densely (at most 4096 points)");
  const auto& g = G.algebra();
  if (boundary == PBoundary::Periodic && !g.is_abelian())
    throw Error("spectral", "not_abelian", "periodic P needs an abelian group");
  const std::size_t N = G.size();
  const int d = G.dim();
  const double expo = g.homogeneous_dimension() + 1.0;
  const double vol = G.cell_volume();
  std::vector<GroupPoint> pts(N);
  for (std::size_t i = 0; i < N; ++i) pts[i] = G.point(i);
  std::vector<double> L(d);
  for (int i = 0; i < d; ++i) L[i] = G.hi(i) - G.lo(i);

  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(N, N);
  parallel_for(N, [&](std::size_t b, std::size_t e) {
    for (std::size_t x = b; x < e; ++x) {
      for (std::size_t y = 0; y < N; ++y) {
        if (x == y) continue;
        double w = 0.0;
        if (boundary == PBoundary::Regional) {
          double r = qn(g.left_quotient(pts[y], pts[x]));
          if (r >= eps_cut) w = std::pow(r, -expo);
        } else if (d == 1) {
          w = periodic_weight_1d(pts[x][0] - pts[y][0], L[0], eps_cut);
        } else {
          GroupPoint z = pts[x] - pts[y];
          constexpr int K = 3;
          std::vector<int> n(d, -K);
          while (true) {
            GroupPoint s = z;
            for (int i = 0; i < d; ++i) s[i] += n[i] * L[i];
            double r = qn(s);
            if (r >= eps_cut) w += std::pow(r, -expo);
            int i = d - 1;
            while (i >= 0 && n[i] == K) n[i--] = -K;
            if (i < 0) break;
            ++n[i];
          }
        }
        A(x, y) = -w * vol;
      }
      A(x, x) = -A.row(x).sum();
    }
  });
  return std::make_shared<MatrixOperator>(std::move(grid), std::move(A), 1.0, "P");
}

std::shared_ptr<MatrixOperator> assemble_sublaplacian(GridPtr grid, MatrixOperator::Engine engine) {
  const Grid& G = *grid;
  const auto& g = G.algebra();
  if (!g.is_stratified())
    throw Error("spectral", "not_stratified", "sub-Laplacian needs a stratified algebra");
  const int d = G.dim();
  const std::size_t N = G.size();
  auto fields = left_invariant_fields(g);
  using SpMat = Eigen::SparseMatrix<double, Eigen::RowMajor>;
  SpMat A(N, N);
  std::vector<int> idx(d);
  for (int j = 0; j < d; ++j) {
    if (g.weight(j) != 1) continue;
    // Rows are the edges of the lattice including those to ghost points just
    // outside the box, where the zero extension holds.
    std::vector<Triplet> fw, bw;
    std::size_t fr = N, br = N;
    for (std::size_t p = 0; p < N; ++p) {
      GroupPoint x = G.point(p);
      G.unflatten(p, idx.data());
      for (int k = 0; k < d; ++k) {
        const double h = G.spacing(k);
        double c = fields[j].coeffs[k].evaluate(x.coords()) / h;
        if (c != 0.0) {
          fw.emplace_back(p, p, -c);
          if (idx[k] + 1 < G.n(k)) fw.emplace_back(p, p + G.stride(k), c);
          bw.emplace_back(p, p, c);
          if (idx[k] > 0) bw.emplace_back(p, p - G.stride(k), -c);
        }
        if (idx[k] == 0) {
          GroupPoint gx = x;
          gx[k] -= h;
          double cg = fields[j].coeffs[k].evaluate(gx.coords()) / h;
          if (cg != 0.0) fw.emplace_back(fr++, p, cg);
        }
        if (idx[k] + 1 == G.n(k)) {
          GroupPoint gx = x;
          gx[k] += h;
          double cg = fields[j].coeffs[k].evaluate(gx.coords()) / h;
          if (cg != 0.0) bw.emplace_back(br++, p, -cg);
        }
      }
    }
    SpMat F(fr, N), B(br, N);
    F.setFromTriplets(fw.begin(), fw.end());
    B.setFromTriplets(bw.begin(), bw.end());
    SpMat Ft = F.transpose(), Bt = B.transpose();
    A += SpMat(Ft * F) * 0.5;
    A += SpMat(Bt * B) * 0.5;
  }
  A.prune(0.0);
  A.makeCompressed();
  return std::make_shared<MatrixOperator>(std::move(grid), std::move(A), 2.0, "sublaplacian",
                                          engine);
}

}  // namespace hogroup
