#pragma once

// Parametric point-cloud generators for the reconstruction fixtures.
//
// All randomness comes from std::mt19937_64 (fully specified by the C++
// standard) mapped to doubles as (x >> 11) * 2^-53, with Gaussian samples by
// Box-Muller. No std::*_distribution is used, so a seed yields the same
// cloud on every conforming platform.

#include "lsr/grid.hpp"
#include "lsr/point_cloud.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <random>
#include <string>

namespace lsr {

enum class ShapeKind {
  circle,
  ellipse,
  triangle,
  square_missing_corners,
  kfold_circle,
  torus,
  sphere,
  jar,
  bunny_face_density,
};

ShapeKind parse_shape_kind(const std::string& name);
std::string to_string(ShapeKind kind);

struct ShapeSpec {
  ShapeKind kind = ShapeKind::circle;
  Eigen::Vector3d center{50.0, 50.0, 0.0};
  double radius = 25.0;        // circle, sphere, base radius of kfold_circle
  double radius2 = 15.0;       // ellipse minor semi-axis, torus tube radius
  double amplitude = -1.0;     // kfold_circle; negative means 0.3 * radius
  int folds = 5;               // kfold_circle
  double corner_gap = 4.0;     // square_missing_corners: excluded arc length per corner side
  int count = 200;
  int n1 = 50, n2 = 10, n3 = 40;  // bunny_face_density region counts
  std::uint64_t seed = 1;

  int dim() const;
  void validate() const;

  // The fixtures used throughout the tests and reproduction recipes.
  static ShapeSpec circle_fixture();          // r = 25, 200 pts, 100x100
  static ShapeSpec ellipse_fixture();         // 100 pts
  static ShapeSpec triangle_fixture();        // 150 pts
  static ShapeSpec square_fixture();          // 80 pts
  static ShapeSpec five_fold_fixture();       // 200 pts
  static ShapeSpec three_fold_fixture();      // 200 pts
  static ShapeSpec torus_fixture();           // R = 12, r = 5, 2000 pts in [0,50]^3
  static ShapeSpec jar_fixture();             // 2100 pts in [0,50]^3
};

// Portable uniform/Gaussian sampler over mt19937_64.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : eng_(seed) {}
  double uniform() { return double(eng_() >> 11) * 0x1.0p-53; }
  double gaussian();

 private:
  std::mt19937_64 eng_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

PointCloud sample_shape(const ShapeSpec& spec);

// Independent N(0, sigma^2) perturbation of every coordinate, clamped into
// the grid's bounding box.
PointCloud add_noise(const PointCloud& cloud, double sigma, std::uint64_t seed,
                     const Grid& grid);

// Face arc with n1 points, head arc with n2, and two ear lobes with n3 each,
// centered in a 100x100 domain.
PointCloud bunny_face_cloud(int n1, int n2, int n3, std::uint64_t seed);

// Implicit-equation residual of a point against the ideal noiseless shape
// (distance to the shape for curves with no closed-form equation).
double shape_residual(const ShapeSpec& spec, const Eigen::VectorXd& x);

// Radius of the kfold_circle boundary at polar angle theta.
double kfold_radius(const ShapeSpec& spec, double theta);

}  // namespace lsr
