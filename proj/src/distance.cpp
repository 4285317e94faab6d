#include "lsr/distance.hpp"

#include "lsr/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace lsr {

namespace {

void check_cloud(const PointCloud& cloud, const Grid& grid) {
  if (cloud.empty()) throw std::invalid_argument("point cloud is empty");
  if (cloud.dim() != grid.axes())
    throw std::invalid_argument("point cloud dimension does not match grid");
  for (Eigen::Index p = 0; p < cloud.size(); ++p)
    for (int a = 0; a < grid.axes(); ++a) {
      const double x = cloud.point(p)[a];
      if (!(x >= 0.0 && x <= grid.dim(a) - 1))
        throw std::invalid_argument("point cloud extends outside the grid");
    }
}

}  // namespace

ScalarField rasterize_sources(const PointCloud& cloud, const Grid& grid) {
  check_cloud(cloud, grid);
  ScalarField seed(grid, grid.diameter());
  const int m = grid.axes();
  for (Eigen::Index p = 0; p < cloud.size(); ++p) {
    const auto x = cloud.point(p);
    std::array<int, 3> base{0, 0, 0};
    for (int a = 0; a < m; ++a) base[a] = static_cast<int>(std::floor(x[a]));
    for (int corner = 0; corner < (1 << m); ++corner) {
      std::array<int, 3> node{0, 0, 0};
      double dist2 = 0.0;
      for (int a = 0; a < m; ++a) {
        node[a] = std::min(base[a] + ((corner >> a) & 1), grid.dim(a) - 1);
        const double dx = node[a] - x[a];
        dist2 += dx * dx;
      }
      double& v = seed(node[0], node[1], node[2]);
      v = std::min(v, std::sqrt(dist2));
    }
  }
  return seed;
}

ScalarField fast_sweep(const ScalarField& seed, const SweepOptions& opts) {
  const Grid& g = seed.grid();
  const int m = g.axes();
  const double sentinel = g.diameter();
  if (!(seed.values() < sentinel).any())
    throw std::invalid_argument("fast_sweep: seed has no source nodes");

  ScalarField d = seed;
  std::vector<char> frozen(static_cast<std::size_t>(g.size()));
  for (Eigen::Index i = 0; i < g.size(); ++i) frozen[i] = seed[i] < sentinel;

  const std::array<int, 3> n = g.dims();
  std::array<Eigen::Index, 3> stride{g.stride(0), g.stride(1), m == 3 ? g.stride(2) : 0};
  const double inv_m = 1.0 / m;

  auto update = [&](int i, int j, int k) -> double {
    const Eigen::Index idx = g.index(i, j, k);
    if (frozen[idx]) return 0.0;
    const std::array<int, 3> c{i, j, k};
    double grad2 = 0.0, avg = 0.0;
    for (int a = 0; a < m; ++a) {
      // Physical boundary: clamp neighbor reads to the node itself.
      const double up = c[a] + 1 < n[a] ? d[idx + stride[a]] : d[idx];
      const double down = c[a] > 0 ? d[idx - stride[a]] : d[idx];
      const double slope = 0.5 * (up - down);
      grad2 += slope * slope;
      avg += 0.5 * (up + down);
    }
    const double cand = inv_m * (1.0 - std::sqrt(grad2) + avg);
    if (cand < d[idx]) {
      const double change = d[idx] - cand;
      d[idx] = cand;
      return change;
    }
    return 0.0;
  };

  double residual = 0.0;
  for (int cycle = 0; cycle < opts.max_cycles; ++cycle) {
    residual = 0.0;
    for (int order = 0; order < (1 << m); ++order) {
      const bool fi = order & 1, fj = order & 2, fk = order & 4;
      for (int kk = 0; kk < n[2]; ++kk) {
        const int k = fk ? n[2] - 1 - kk : kk;
        for (int jj = 0; jj < n[1]; ++jj) {
          const int j = fj ? n[1] - 1 - jj : jj;
          for (int ii = 0; ii < n[0]; ++ii) {
            const int i = fi ? n[0] - 1 - ii : ii;
            residual = std::max(residual, update(i, j, k));
          }
        }
      }
    }
    if (residual < opts.tolerance) return d;
  }
  throw NumericalError("fast_sweep did not converge within " +
                           std::to_string(opts.max_cycles) + " cycles",
                       residual);
}

ScalarField brute_force_distance(const PointCloud& cloud, const Grid& grid) {
  check_cloud(cloud, grid);
  ScalarField d(grid, std::numeric_limits<double>::infinity());
  const int m = grid.axes();
  for (Eigen::Index idx = 0; idx < grid.size(); ++idx) {
    const auto c = grid.coords(idx);
    Eigen::VectorXd x(m);
    for (int a = 0; a < m; ++a) x[a] = c[a];
    const double best = (cloud.matrix().colwise() - x).colwise().squaredNorm().minCoeff();
    d[idx] = std::sqrt(best);
  }
  return d;
}

ScalarField distance_field(const PointCloud& cloud, const Grid& grid,
                           const SweepOptions& opts) {
  return fast_sweep(rasterize_sources(cloud, grid), opts);
}

}  // namespace lsr
