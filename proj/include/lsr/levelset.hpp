#pragma once

// Level-set support: smoothed Heaviside and delta, signed-distance
// initialization, reinitialization, the weighted surface energy, and the
// running-mean stopping rule.

#include "lsr/grid.hpp"

#include <Eigen/Core>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace lsr {

// Width of the smoothed Heaviside, in cells.
struct SmoothingParam {
  double epsilon = 1.0;

  SmoothingParam() = default;
  SmoothingParam(double eps) : epsilon(eps) {  // NOLINT: implicit by intent
    if (!(eps > 0.0)) throw std::invalid_argument("epsilon must be > 0");
  }

  // Values outside [0.5, 2] are accepted but untested.
  bool in_operating_range() const { return epsilon >= 0.5 && epsilon <= 2.0; }
};

template <typename Scalar>
Scalar heaviside_eps(Scalar x, Scalar eps) {
  return Scalar(0.5) + std::atan(x / eps) / std::numbers::pi_v<Scalar>;
}

template <typename Scalar>
Scalar delta_eps(Scalar x, Scalar eps) {
  return eps / (std::numbers::pi_v<Scalar> * (eps * eps + x * x));
}

template <typename Scalar>
Field<Scalar> smoothed_heaviside(const Field<Scalar>& phi, SmoothingParam eps) {
  const Scalar e = Scalar(eps.epsilon);
  return Field<Scalar>(phi.grid(), phi.values().unaryExpr([e](Scalar x) {
    return heaviside_eps(x, e);
  }));
}

template <typename Scalar>
Field<Scalar> smoothed_delta(const Field<Scalar>& phi, SmoothingParam eps) {
  const Scalar e = Scalar(eps.epsilon);
  return Field<Scalar>(phi.grid(), phi.values().unaryExpr([e](Scalar x) {
    return delta_eps(x, e);
  }));
}

// Signed distance to a circle/sphere, negative inside.
ScalarField init_sphere(const Grid& grid, const Eigen::VectorXd& center, double radius);

// Pseudo-time iterations of psi_t = -S(psi0) (|grad psi| - 1): Godunov
// upwinding of minmod-limited second-order one-sided differences, two-stage
// TVD Runge-Kutta, smoothed sign S(x) = x / sqrt(x^2 + 1) and step dt. Signs
// can flip only at nodes next to a sign change of phi.
ScalarField reinitialize(const ScalarField& phi, int steps, double dt = 0.5);

// sum_nodes d^p * delta_eps(phi) * |grad phi| (unit cell volume).
double weighted_surface_integral(const ScalarField& phi, const ScalarField& d,
                                 SmoothingParam eps, int p);

// E_p = (weighted_surface_integral)^(1/p), p in {1, 2}.
double energy(const ScalarField& phi, const ScalarField& d, SmoothingParam eps, int p);

class EnergyHistory {
 public:
  explicit EnergyHistory(int window = 10) : window_(window) {
    if (window < 1) throw std::invalid_argument("energy window must be >= 1");
  }

  void append(double e) {
    if (!std::isfinite(e) || e < 0.0)
      throw std::invalid_argument("energy values must be finite and nonnegative");
    values_.push_back(e);
  }

  int window() const { return window_; }
  std::size_t size() const { return values_.size(); }
  const std::vector<double>& values() const { return values_; }

  // Mean of entries n-k .. n (k+1 terms).
  double window_mean(std::size_t n) const;

  // |mean_{n-1} - mean_n| / mean_n for the latest n; requires k+2 entries.
  double relative_change() const;

 private:
  int window_;
  std::vector<double> values_;
};

// True once the windowed mean energy changes by less than tol relative.
bool check_convergence(const EnergyHistory& h, double tol = 1e-4);

}  // namespace lsr
