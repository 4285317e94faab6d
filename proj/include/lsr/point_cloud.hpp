#pragma once

#include <Eigen/Core>

#include <stdexcept>
#include <vector>

namespace lsr {

// Unorganized points in grid coordinates, one column per point.
class PointCloud {
 public:
  PointCloud() = default;
  explicit PointCloud(Eigen::MatrixXd pts) : pts_(std::move(pts)) {
    if (pts_.rows() != 2 && pts_.rows() != 3)
      throw std::invalid_argument("point cloud must be 2D or 3D");
  }

  static PointCloud from_points(const std::vector<Eigen::Vector2d>& pts) {
    Eigen::MatrixXd m(2, static_cast<Eigen::Index>(pts.size()));
    for (std::size_t i = 0; i < pts.size(); ++i) m.col(i) = pts[i];
    return PointCloud(std::move(m));
  }
  static PointCloud from_points(const std::vector<Eigen::Vector3d>& pts) {
    Eigen::MatrixXd m(3, static_cast<Eigen::Index>(pts.size()));
    for (std::size_t i = 0; i < pts.size(); ++i) m.col(i) = pts[i];
    return PointCloud(std::move(m));
  }

  int dim() const { return static_cast<int>(pts_.rows()); }
  Eigen::Index size() const { return pts_.cols(); }
  bool empty() const { return pts_.cols() == 0; }

  auto point(Eigen::Index i) const { return pts_.col(i); }
  const Eigen::MatrixXd& matrix() const { return pts_; }
  Eigen::MatrixXd& matrix() { return pts_; }

  // Concatenation; both clouds must share dimensionality.
  PointCloud merged(const PointCloud& o) const {
    if (empty()) return o;
    if (o.empty()) return *this;
    if (o.dim() != dim()) throw std::invalid_argument("dimension mismatch");
    Eigen::MatrixXd m(dim(), size() + o.size());
    m << pts_, o.pts_;
    return PointCloud(std::move(m));
  }

  friend bool operator==(const PointCloud& a, const PointCloud& b) {
    return a.pts_.rows() == b.pts_.rows() && a.pts_.cols() == b.pts_.cols() &&
           a.pts_ == b.pts_;
  }

 private:
  Eigen::MatrixXd pts_{2, 0};
};

}  // namespace lsr
