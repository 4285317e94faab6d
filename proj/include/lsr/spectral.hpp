#pragma once

// Solves a*phi - b*Lap(phi) = g on the periodic grid by diagonalizing the
// discrete Laplacian with the DFT. Both the semi-implicit update and the
// phi sub-problem of the augmented Lagrangian iteration reduce to this.

#include "lsr/grid.hpp"

#include <unsupported/Eigen/FFT>

#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace lsr {

// Eigenvalues of the periodic Laplacian stencil, indexed by frequency with
// the same layout as a field: sigma = sum_axes (2 cos(2 pi k / n) - 2).
template <typename Scalar = double>
Field<Scalar> laplacian_symbol(const Grid& g) {
  Field<Scalar> sym(g);
  std::array<std::vector<Scalar>, 3> per_axis;
  for (int a = 0; a < g.axes(); ++a) {
    per_axis[a].resize(g.dim(a));
    for (int k = 0; k < g.dim(a); ++k)
      per_axis[a][k] = Scalar(2) * std::cos(Scalar(2) * std::numbers::pi_v<Scalar> *
                                            Scalar(k) / Scalar(g.dim(a))) -
                       Scalar(2);
  }
  for (Eigen::Index idx = 0; idx < g.size(); ++idx) {
    const auto c = g.coords(idx);
    Scalar s = 0;
    for (int a = 0; a < g.axes(); ++a) s += per_axis[a][c[a]];
    sym[idx] = s;
  }
  return sym;
}

template <typename Scalar = double>
struct HelmholtzProblem {
  Scalar a = 1;  // mass coefficient, must be > 0
  Scalar b = 0;  // diffusion coefficient, >= 0
  Field<Scalar> rhs;
};

// Multi-dimensional DFT built from 1D transforms along each axis.
template <typename Scalar>
class GridFFT {
 public:
  using Complex = std::complex<Scalar>;
  using Buffer = std::vector<Complex>;

  explicit GridFFT(const Grid& g) : grid_(g) {}

  Buffer forward(const Field<Scalar>& f) {
    Buffer data(static_cast<std::size_t>(grid_.size()));
    for (Eigen::Index i = 0; i < grid_.size(); ++i) data[i] = Complex(f[i], 0);
    for (int a = 0; a < grid_.axes(); ++a) transform_axis(data, a, true);
    return data;
  }

  Field<Scalar> inverse_real(Buffer data) {
    for (int a = 0; a < grid_.axes(); ++a) transform_axis(data, a, false);
    Field<Scalar> out(grid_);
    for (Eigen::Index i = 0; i < grid_.size(); ++i) out[i] = data[i].real();
    return out;
  }

 private:
  void transform_axis(Buffer& data, int axis, bool fwd) {
    const Eigen::Index s = grid_.stride(axis);
    const int n = grid_.dim(axis);
    Buffer line_in(n), line_out(n);
    // Every line along `axis` starts at a node whose coordinate on that axis is 0.
    for (Eigen::Index start = 0; start < grid_.size(); ++start) {
      if ((start / s) % n != 0) continue;
      for (int k = 0; k < n; ++k) line_in[k] = data[start + k * s];
      if (fwd)
        fft_.fwd(line_out, line_in);
      else
        fft_.inv(line_out, line_in);
      for (int k = 0; k < n; ++k) data[start + k * s] = line_out[k];
    }
  }

  Grid grid_;
  Eigen::FFT<Scalar> fft_;
};

template <typename Scalar>
Field<Scalar> solve_helmholtz(const HelmholtzProblem<Scalar>& p) {
  if (!(p.a > Scalar(0)))
    throw std::invalid_argument("helmholtz: mass coefficient a must be > 0");
  if (p.b < Scalar(0))
    throw std::invalid_argument("helmholtz: diffusion coefficient b must be >= 0");
  const Grid& g = p.rhs.grid();
  if (p.b == Scalar(0)) return Field<Scalar>(g, p.rhs.values() / p.a);

  const Field<Scalar> sym = laplacian_symbol<Scalar>(g);
  GridFFT<Scalar> fft(g);
  auto spec = fft.forward(p.rhs);
  for (Eigen::Index i = 0; i < g.size(); ++i) spec[i] /= (p.a - p.b * sym[i]);
  return fft.inverse_real(std::move(spec));
}

template <typename Scalar>
Field<Scalar> solve_helmholtz(Scalar a, Scalar b, const Field<Scalar>& rhs) {
  return solve_helmholtz(HelmholtzProblem<Scalar>{a, b, rhs});
}

}  // namespace lsr
