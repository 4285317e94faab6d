#pragma once

// Shared helpers for the test binaries: seeded random fields and clouds, and
// reference implementations written independently of the library.

#include "lsr/grid.hpp"
#include "lsr/point_cloud.hpp"

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <random>
#include <vector>

namespace support {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : eng_(seed) {}

  double uniform(double lo = 0.0, double hi = 1.0) {
    return lo + (hi - lo) * (double(eng_() >> 11) * 0x1.0p-53);
  }
  int integer(int lo, int hi) {  // inclusive
    return lo + static_cast<int>(eng_() % std::uint64_t(hi - lo + 1));
  }

  lsr::Grid grid2(int lo = 4, int hi = 12) { return lsr::Grid(integer(lo, hi), integer(lo, hi)); }
  lsr::Grid grid3(int lo = 4, int hi = 8) {
    return lsr::Grid(integer(lo, hi), integer(lo, hi), integer(lo, hi));
  }
  lsr::Grid grid(int lo = 4, int hi = 10) {
    return integer(0, 1) ? grid2(lo, hi) : grid3(lo, std::min(hi, 8));
  }

  lsr::ScalarField field(const lsr::Grid& g, double lo = -1.0, double hi = 1.0) {
    lsr::ScalarField f(g);
    for (Eigen::Index i = 0; i < f.size(); ++i) f[i] = uniform(lo, hi);
    return f;
  }
  lsr::VectorField vfield(const lsr::Grid& g, double lo = -1.0, double hi = 1.0) {
    lsr::VectorField v(g);
    for (int a = 0; a < g.axes(); ++a) v[a] = field(g, lo, hi);
    return v;
  }

  lsr::PointCloud cloud(const lsr::Grid& g, int n) {
    Eigen::MatrixXd m(g.axes(), n);
    for (int j = 0; j < n; ++j)
      for (int a = 0; a < g.axes(); ++a) m(a, j) = uniform(0.0, g.dim(a) - 1.0);
    return lsr::PointCloud(m);
  }

 private:
  std::mt19937_64 eng_;
};

inline double max_abs(const lsr::ScalarField& f) { return f.values().abs().maxCoeff(); }

inline double max_abs_diff(const lsr::ScalarField& a, const lsr::ScalarField& b) {
  return (a.values() - b.values()).abs().maxCoeff();
}

// Field value with periodic index wrap.
inline double at(const lsr::ScalarField& f, int i, int j, int k = 0) {
  const auto& g = f.grid();
  auto wrap = [](int x, int n) { return ((x % n) + n) % n; };
  return f[g.index(wrap(i, g.dim(0)), wrap(j, g.dim(1)), g.axes() == 3 ? wrap(k, g.dim(2)) : 0)];
}

// Node coordinates of index idx as a vector of the grid's dimensionality.
inline Eigen::VectorXd node(const lsr::Grid& g, Eigen::Index idx) {
  const auto c = g.coords(idx);
  Eigen::VectorXd x(g.axes());
  for (int a = 0; a < g.axes(); ++a) x[a] = c[a];
  return x;
}

// Exact nearest-point distance computed by direct looping.
inline double nearest(const lsr::PointCloud& cloud, const Eigen::VectorXd& x) {
  double best = std::numeric_limits<double>::infinity();
  for (Eigen::Index j = 0; j < cloud.size(); ++j) {
    double s = 0;
    for (int a = 0; a < cloud.dim(); ++a) s += (cloud.matrix()(a, j) - x[a]) * (cloud.matrix()(a, j) - x[a]);
    best = std::min(best, s);
  }
  return std::sqrt(best);
}

// Minimizer of w|p| + (r/2)|p - q|^2 over 2D p by coarse-to-fine pattern
// search: a dense grid over the +-2|q| box, then repeated refinement around
// the best sample until the step is below 1e-4.
inline Eigen::Vector2d prox_search(const Eigen::Vector2d& q, double w, double r) {
  auto obj = [&](const Eigen::Vector2d& p) { return w * p.norm() + 0.5 * r * (p - q).squaredNorm(); };
  const double half = std::max(2.0 * q.norm(), 1e-6);
  Eigen::Vector2d best = Eigen::Vector2d::Zero();
  double fbest = obj(best);
  const int n = 200;
  double step = 2.0 * half / n;
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j) {
      const Eigen::Vector2d p(-half + i * step, -half + j * step);
      const double f = obj(p);
      if (f < fbest) fbest = f, best = p;
    }
  while (step > 1e-4) {
    const Eigen::Vector2d c = best;
    for (int i = -10; i <= 10; ++i)
      for (int j = -10; j <= 10; ++j) {
        const Eigen::Vector2d p = c + Eigen::Vector2d(i, j) * (step / 10.0);
        const double f = obj(p);
        if (f < fbest) fbest = f, best = p;
      }
    step /= 5.0;
  }
  return best;
}

// Energy sum written out node by node with explicit centered differences.
inline double energy_loop(const lsr::ScalarField& phi, const lsr::ScalarField& d, double eps, int p) {
  const auto& g = phi.grid();
  double s = 0;
  for (Eigen::Index idx = 0; idx < g.size(); ++idx) {
    const auto c = g.coords(idx);
    double gsq = 0;
    for (int a = 0; a < g.axes(); ++a) {
      auto up = c, dn = c;
      up[a] += 1;
      dn[a] -= 1;
      const double dv = (at(phi, up[0], up[1], up[2]) - at(phi, dn[0], dn[1], dn[2])) / 2.0;
      gsq += dv * dv;
    }
    const double delta = eps / (std::numbers::pi * (eps * eps + phi[idx] * phi[idx]));
    s += std::pow(d[idx], p) * delta * std::sqrt(gsq);
  }
  return std::pow(s, 1.0 / p);
}

}  // namespace support
