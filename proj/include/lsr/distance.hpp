#pragma once

// Unsigned distance from grid nodes to a point cloud. The production path
// solves |grad d| = 1 with a Lax-Friedrichs fast sweeping iteration; the
// brute-force path is exact and serves as a reference.

#include "lsr/grid.hpp"
#include "lsr/point_cloud.hpp"

namespace lsr {

struct SweepOptions {
  double tolerance = 1e-6;  // max nodewise change per full sweep cycle
  int max_cycles = 500;     // one cycle visits all 2^m sweep orderings
};

// Sentinel-initialized field with exact distances written at the corner
// nodes of every cell containing a cloud point.
ScalarField rasterize_sources(const PointCloud& cloud, const Grid& grid);

// Iterates the Lax-Friedrichs update to its fixed point. Nodes whose seed
// value is below the sentinel (the grid diameter) are held fixed.
// Throws NumericalError carrying the last residual if the cap is reached.
ScalarField fast_sweep(const ScalarField& seed, const SweepOptions& opts = {});

// Exact min_y |x - y| at every node, O(nodes * points).
ScalarField brute_force_distance(const PointCloud& cloud, const Grid& grid);

// rasterize_sources followed by fast_sweep.
ScalarField distance_field(const PointCloud& cloud, const Grid& grid,
                           const SweepOptions& opts = {});

}  // namespace lsr
