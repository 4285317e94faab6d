#include "lsr/levelset.hpp"

#include <algorithm>

namespace lsr {

ScalarField init_sphere(const Grid& grid, const Eigen::VectorXd& center, double radius) {
  if (!(radius > 0.0)) throw std::invalid_argument("init radius must be > 0");
  if (center.size() != grid.axes())
    throw std::invalid_argument("init center dimension does not match grid");
  ScalarField phi(grid);
  for (Eigen::Index idx = 0; idx < grid.size(); ++idx) {
    const auto c = grid.coords(idx);
    double r2 = 0.0;
    for (int a = 0; a < grid.axes(); ++a) r2 += (c[a] - center[a]) * (c[a] - center[a]);
    phi[idx] = std::sqrt(r2) - radius;
  }
  return phi;
}

namespace {

double minmod(double a, double b) {
  if (a * b <= 0.0) return 0.0;
  return std::abs(a) < std::abs(b) ? a : b;
}

// One forward-Euler step of psi_t = -S (|grad psi| - 1). One-sided
// differences carry a minmod-limited second-order correction; the Godunov
// Hamiltonian picks the upwind side per axis.
ScalarField reinit_step(const ScalarField& psi, const ScalarField::Values& sign, double dt) {
  const Grid& g = psi.grid();
  ScalarField::Values grad2 = ScalarField::Values::Zero(g.size());
  for (int a = 0; a < g.axes(); ++a) {
    const ScalarField back = backward_diff(psi, a);
    const ScalarField fwd = forward_diff(psi, a);
    const ScalarField curv = forward_diff(back, a);       // u[i+1] - 2u[i] + u[i-1]
    const ScalarField curv_back = backward_diff(back, a);  // u[i] - 2u[i-1] + u[i-2]
    const ScalarField curv_fwd = forward_diff(fwd, a);     // u[i+2] - 2u[i+1] + u[i]
    for (Eigen::Index i = 0; i < g.size(); ++i) {
      const double bm = back[i] + 0.5 * minmod(curv[i], curv_back[i]);
      const double fp = fwd[i] - 0.5 * minmod(curv[i], curv_fwd[i]);
      double l, r;
      if (sign[i] > 0.0) {
        l = std::max(bm, 0.0);
        r = std::min(fp, 0.0);
      } else {
        l = std::min(bm, 0.0);
        r = std::max(fp, 0.0);
      }
      grad2[i] += std::max(l * l, r * r);
    }
  }
  ScalarField out = psi;
  out.values() -= dt * sign * (grad2.sqrt() - 1.0);
  return out;
}

}  // namespace

ScalarField reinitialize(const ScalarField& phi, int steps, double dt) {
  if (steps < 0) throw std::invalid_argument("reinitialization steps must be >= 0");
  if (steps == 0) return phi;
  const ScalarField::Values sign = phi.values() / (phi.values().square() + 1.0).sqrt();

  // Two-stage TVD Runge-Kutta in pseudo-time.
  ScalarField psi = phi;
  for (int step = 0; step < steps; ++step) {
    const ScalarField stage = reinit_step(reinit_step(psi, sign, dt), sign, dt);
    psi.values() = 0.5 * (psi.values() + stage.values());
  }
  return psi;
}

double weighted_surface_integral(const ScalarField& phi, const ScalarField& d,
                                 SmoothingParam eps, int p) {
  if (p != 1 && p != 2) throw std::invalid_argument("energy exponent p must be 1 or 2");
  require_same_grid(phi.grid(), d.grid());
  const ScalarField delta = smoothed_delta(phi, eps);
  const ScalarField grad = gradient_norm(phi);
  const ScalarField::Values weight =
      p == 1 ? ScalarField::Values(d.values().abs()) : ScalarField::Values(d.values().square());
  return (weight * delta.values() * grad.values()).sum();
}

double energy(const ScalarField& phi, const ScalarField& d, SmoothingParam eps, int p) {
  const double s = weighted_surface_integral(phi, d, eps, p);
  return p == 1 ? s : std::sqrt(s);
}

double EnergyHistory::window_mean(std::size_t n) const {
  const std::size_t k = static_cast<std::size_t>(window_);
  if (n >= values_.size() || n < k) throw std::out_of_range("energy window out of range");
  double sum = 0.0;
  for (std::size_t i = n - k; i <= n; ++i) sum += values_[i];
  return sum / static_cast<double>(k + 1);
}

double EnergyHistory::relative_change() const {
  if (values_.size() < static_cast<std::size_t>(window_) + 2)
    throw std::logic_error("energy history shorter than window + 2");
  const std::size_t n = values_.size() - 1;
  const double cur = window_mean(n);
  const double prev = window_mean(n - 1);
  if (cur == 0.0) return 0.0;
  return std::abs(prev - cur) / cur;
}

bool check_convergence(const EnergyHistory& h, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("convergence tolerance must be > 0");
  if (h.size() < static_cast<std::size_t>(h.window()) + 2) return false;
  return h.relative_change() < tol;
}

}  // namespace lsr
