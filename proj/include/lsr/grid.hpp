#pragma once

// Uniform periodic Cartesian grid, grid-shaped fields, and the finite
// difference operators used by every solver. Spacing is fixed at one cell.
//
// Storage is axis-major with axis 0 varying fastest:
//   index(i0, i1, i2) = i0 + n0 * (i1 + n1 * i2)

#include <Eigen/Core>

#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace lsr {

class Grid {
 public:
  Grid() = default;

  Grid(int n0, int n1) : dims_{n0, n1, 1}, axes_(2) { validate(); }
  Grid(int n0, int n1, int n2) : dims_{n0, n1, n2}, axes_(3) { validate(); }

  int axes() const { return axes_; }
  int dim(int axis) const { return dims_.at(static_cast<std::size_t>(axis)); }
  const std::array<int, 3>& dims() const { return dims_; }

  Eigen::Index size() const {
    return Eigen::Index(dims_[0]) * dims_[1] * dims_[2];
  }

  // Distance between one node and the next along `axis` in linear storage.
  Eigen::Index stride(int axis) const {
    Eigen::Index s = 1;
    for (int a = 0; a < axis; ++a) s *= dims_[a];
    return s;
  }

  Eigen::Index index(int i0, int i1, int i2 = 0) const {
    return i0 + Eigen::Index(dims_[0]) * (i1 + Eigen::Index(dims_[1]) * i2);
  }

  std::array<int, 3> coords(Eigen::Index idx) const {
    std::array<int, 3> c{0, 0, 0};
    c[0] = static_cast<int>(idx % dims_[0]);
    idx /= dims_[0];
    c[1] = static_cast<int>(idx % dims_[1]);
    c[2] = static_cast<int>(idx / dims_[1]);
    return c;
  }

  // Length of the bounding-box diagonal, in cells.
  double diameter() const {
    double s = 0.0;
    for (int a = 0; a < axes_; ++a) s += double(dims_[a] - 1) * (dims_[a] - 1);
    return std::sqrt(s);
  }

  void check_axis(int axis) const {
    if (axis < 0 || axis >= axes_)
      throw std::invalid_argument("axis " + std::to_string(axis) +
                                  " out of range for " +
                                  std::to_string(axes_) + "-axis grid");
  }

  friend bool operator==(const Grid& a, const Grid& b) {
    return a.axes_ == b.axes_ && a.dims_ == b.dims_;
  }

 private:
  void validate() const {
    for (int a = 0; a < axes_; ++a)
      if (dims_[a] < 4)
        throw std::invalid_argument("grid extent must be >= 4 on every axis");
  }

  std::array<int, 3> dims_{4, 4, 1};
  int axes_ = 2;
};

template <typename Scalar>
class Field {
 public:
  using Values = Eigen::Array<Scalar, Eigen::Dynamic, 1>;

  Field() = default;
  explicit Field(const Grid& g, Scalar fill = Scalar(0))
      : grid_(g), values_(Values::Constant(g.size(), fill)) {}
  Field(const Grid& g, Values v) : grid_(g), values_(std::move(v)) {
    if (values_.size() != g.size())
      throw std::invalid_argument("value count does not match grid size");
  }

  const Grid& grid() const { return grid_; }
  Eigen::Index size() const { return values_.size(); }

  Values& values() { return values_; }
  const Values& values() const { return values_; }

  Scalar& operator[](Eigen::Index i) { return values_[i]; }
  Scalar operator[](Eigen::Index i) const { return values_[i]; }

  Scalar& operator()(int i0, int i1, int i2 = 0) {
    return values_[grid_.index(i0, i1, i2)];
  }
  Scalar operator()(int i0, int i1, int i2 = 0) const {
    return values_[grid_.index(i0, i1, i2)];
  }

  bool all_finite() const { return values_.isFinite().all(); }

  Field& operator+=(const Field& o) { values_ += o.values_; return *this; }
  Field& operator-=(const Field& o) { values_ -= o.values_; return *this; }
  Field& operator*=(Scalar s) { values_ *= s; return *this; }

  friend Field operator+(Field a, const Field& b) { return a += b; }
  friend Field operator-(Field a, const Field& b) { return a -= b; }
  friend Field operator*(Scalar s, Field a) { return a *= s; }

 private:
  Grid grid_;
  Values values_;
};

template <typename Scalar>
class VectorFieldT {
 public:
  VectorFieldT() = default;
  explicit VectorFieldT(const Grid& g, Scalar fill = Scalar(0)) : grid_(g) {
    for (int a = 0; a < g.axes(); ++a) comps_[a] = Field<Scalar>(g, fill);
  }

  const Grid& grid() const { return grid_; }
  int axes() const { return grid_.axes(); }

  Field<Scalar>& operator[](int axis) { return comps_[axis]; }
  const Field<Scalar>& operator[](int axis) const { return comps_[axis]; }

  // Pointwise Euclidean norm.
  Field<Scalar> norm() const {
    typename Field<Scalar>::Values sq =
        Field<Scalar>::Values::Zero(grid_.size());
    for (int a = 0; a < axes(); ++a) sq += comps_[a].values().square();
    return Field<Scalar>(grid_, sq.sqrt());
  }

  bool all_finite() const {
    for (int a = 0; a < axes(); ++a)
      if (!comps_[a].all_finite()) return false;
    return true;
  }

  VectorFieldT& operator+=(const VectorFieldT& o) {
    for (int a = 0; a < axes(); ++a) comps_[a] += o.comps_[a];
    return *this;
  }
  VectorFieldT& operator-=(const VectorFieldT& o) {
    for (int a = 0; a < axes(); ++a) comps_[a] -= o.comps_[a];
    return *this;
  }
  VectorFieldT& operator*=(Scalar s) {
    for (int a = 0; a < axes(); ++a) comps_[a] *= s;
    return *this;
  }
  friend VectorFieldT operator+(VectorFieldT a, const VectorFieldT& b) { return a += b; }
  friend VectorFieldT operator-(VectorFieldT a, const VectorFieldT& b) { return a -= b; }
  friend VectorFieldT operator*(Scalar s, VectorFieldT a) { return a *= s; }

 private:
  Grid grid_;
  std::array<Field<Scalar>, 3> comps_;
};

using ScalarField = Field<double>;
using VectorField = VectorFieldT<double>;

inline void require_same_grid(const Grid& a, const Grid& b) {
  if (!(a == b)) throw std::invalid_argument("fields live on different grids");
}

// ---------------------------------------------------------------------------
// Periodic one-sided differences.

template <typename Scalar>
Field<Scalar> backward_diff(const Field<Scalar>& u, int axis) {
  const Grid& g = u.grid();
  g.check_axis(axis);
  const Eigen::Index s = g.stride(axis);
  const Eigen::Index n = g.dim(axis);
  const Eigen::Index wrap = (n - 1) * s;
  Field<Scalar> out(g);
  for (Eigen::Index idx = 0; idx < g.size(); ++idx) {
    const Eigen::Index c = (idx / s) % n;
    out[idx] = u[idx] - (c > 0 ? u[idx - s] : u[idx + wrap]);
  }
  return out;
}

template <typename Scalar>
Field<Scalar> forward_diff(const Field<Scalar>& u, int axis) {
  const Grid& g = u.grid();
  g.check_axis(axis);
  const Eigen::Index s = g.stride(axis);
  const Eigen::Index n = g.dim(axis);
  const Eigen::Index wrap = (n - 1) * s;
  Field<Scalar> out(g);
  for (Eigen::Index idx = 0; idx < g.size(); ++idx) {
    const Eigen::Index c = (idx / s) % n;
    out[idx] = (c + 1 < n ? u[idx + s] : u[idx - wrap]) - u[idx];
  }
  return out;
}

// Centered derivative (average of backward and forward differences).
template <typename Scalar>
Field<Scalar> centered_diff(const Field<Scalar>& u, int axis) {
  const Grid& g = u.grid();
  g.check_axis(axis);
  const Eigen::Index s = g.stride(axis);
  const Eigen::Index n = g.dim(axis);
  const Eigen::Index wrap = (n - 1) * s;
  Field<Scalar> out(g);
  for (Eigen::Index idx = 0; idx < g.size(); ++idx) {
    const Eigen::Index c = (idx / s) % n;
    const Scalar up = c + 1 < n ? u[idx + s] : u[idx - wrap];
    const Scalar down = c > 0 ? u[idx - s] : u[idx + wrap];
    out[idx] = (up - down) / Scalar(2);
  }
  return out;
}

template <typename Scalar>
VectorFieldT<Scalar> gradient(const Field<Scalar>& u) {
  VectorFieldT<Scalar> g(u.grid());
  for (int a = 0; a < u.grid().axes(); ++a) g[a] = centered_diff(u, a);
  return g;
}

template <typename Scalar>
Field<Scalar> divergence(const VectorFieldT<Scalar>& v) {
  Field<Scalar> out(v.grid());
  for (int a = 0; a < v.axes(); ++a) out += centered_diff(v[a], a);
  return out;
}

// 5-point (2D) / 7-point (3D) periodic Laplacian.
template <typename Scalar>
Field<Scalar> laplacian(const Field<Scalar>& u) {
  const Grid& g = u.grid();
  Field<Scalar> out(g);
  for (int a = 0; a < g.axes(); ++a) {
    const Eigen::Index s = g.stride(a);
    const Eigen::Index n = g.dim(a);
    const Eigen::Index wrap = (n - 1) * s;
    for (Eigen::Index idx = 0; idx < g.size(); ++idx) {
      const Eigen::Index c = (idx / s) % n;
      const Scalar up = c + 1 < n ? u[idx + s] : u[idx - wrap];
      const Scalar down = c > 0 ? u[idx - s] : u[idx + wrap];
      out[idx] += up + down - Scalar(2) * u[idx];
    }
  }
  return out;
}

// Nodewise |grad u| with the centered stencil.
template <typename Scalar>
Field<Scalar> gradient_norm(const Field<Scalar>& u) {
  return gradient(u).norm();
}

template <typename Scalar>
Scalar dot(const Field<Scalar>& a, const Field<Scalar>& b) {
  require_same_grid(a.grid(), b.grid());
  return (a.values() * b.values()).sum();
}

}  // namespace lsr
