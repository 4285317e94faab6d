#pragma once

// Zero level set extraction (marching squares in 2D, marching cubes in 3D)
// and mesh metrics used to score reconstructions.

#include "lsr/grid.hpp"
#include "lsr/point_cloud.hpp"

#include <Eigen/Core>

#include <array>
#include <vector>

namespace lsr {

// Indexed segment soup (2D) or triangle soup (3D). Vertices sit on grid
// edges; a vertex is shared by every element that crosses the same edge.
struct ZeroSet {
  int dim = 2;
  std::vector<Eigen::Vector3d> vertices;
  std::vector<std::array<int, 2>> segments;   // 2D
  std::vector<std::array<int, 3>> triangles;  // 3D

  bool empty() const { return segments.empty() && triangles.empty(); }
  PointCloud vertex_cloud() const;
};

// Nodes with phi < 0 are inside.
ZeroSet extract_zero_set(const ScalarField& phi);

// Connected components of the element graph.
int connected_components(const ZeroSet& z);

// V - E + F of a triangle mesh.
long euler_characteristic(const ZeroSet& z);

// Every mesh edge (3D) or vertex (2D) is used by exactly two elements.
bool is_watertight(const ZeroSet& z);

// Symmetric Hausdorff distance between the extracted vertices and a cloud.
// Throws NumericalError when the zero set is empty.
double hausdorff_to_cloud(const ZeroSet& z, const PointCloud& cloud);

// Symmetric Hausdorff distance between two point sets.
double hausdorff(const PointCloud& a, const PointCloud& b);

// Cells with phi < 0 counted with unit area (2D) / volume (3D).
double enclosed_measure(const ScalarField& phi);

}  // namespace lsr
