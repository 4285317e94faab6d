#include "lsr/sim.hpp"

#include "lsr/distance.hpp"
#include "lsr/errors.hpp"
#include "lsr/spectral.hpp"

#include <chrono>

namespace lsr {

void SimParams::validate() const {
  if (!(dt > 0.0)) throw std::invalid_argument("SIM: dt must be > 0");
  if (!(beta > 0.0)) throw std::invalid_argument("SIM: beta must be > 0");
  if (!(grad_floor > 0.0)) throw std::invalid_argument("SIM: grad_floor must be > 0");
  if (loop.max_iters < 1) throw std::invalid_argument("SIM: max_iters must be >= 1");
}

ScalarField curvature_transport(const ScalarField& d, const ScalarField& phi,
                                double grad_floor) {
  require_same_grid(d.grid(), phi.grid());
  VectorField flux = gradient(phi);
  ScalarField::Values reg = ScalarField::Values::Constant(phi.size(), grad_floor * grad_floor);
  for (int a = 0; a < flux.axes(); ++a) reg += flux[a].values().square();
  const ScalarField::Values scale = d.values().square() / reg.sqrt();
  for (int a = 0; a < flux.axes(); ++a) flux[a].values() *= scale;
  return divergence(flux);
}

ScalarField f_coefficient(const ScalarField& d, const ScalarField& phi, SmoothingParam eps) {
  const double s = weighted_surface_integral(phi, d, eps, 2);
  if (!(s > 0.0))
    throw NumericalError("weighted surface integral vanished", s);
  ScalarField f = smoothed_delta(phi, eps);
  f.values() *= 0.5 / std::sqrt(s);
  return f;
}

ScalarField gradient_flow_forcing(const ScalarField& d, const ScalarField& phi,
                                  SmoothingParam eps, double grad_floor) {
  // A vanished integral means d^2 |grad phi| = 0 at every node, so the
  // transport is zero as well.
  if (!(weighted_surface_integral(phi, d, eps, 2) > 0.0)) return ScalarField(phi.grid());
  ScalarField out = curvature_transport(d, phi, grad_floor);
  out.values() *= f_coefficient(d, phi, eps).values();
  return out;
}

ScalarField sim_step(const ScalarField& phi, const ScalarField& d, const SimParams& params) {
  const double a = 1.0 / params.dt;
  ScalarField g1 = gradient_flow_forcing(d, phi, params.eps, params.grad_floor);
  if ((g1.values() == 0.0).all()) return phi;
  g1.values() += a * phi.values() - params.beta * laplacian(phi).values();
  return solve_helmholtz(a, params.beta, g1);
}

RunReport run_sim(const ScalarField& d, const ScalarField& init, const SimParams& params,
                  const LevelSetHook& hook) {
  params.validate();
  require_same_grid(d.grid(), init.grid());
  if (!init.all_finite()) throw std::invalid_argument("SIM: initial level set not finite");

  const auto t0 = std::chrono::steady_clock::now();
  RunReport rep;
  rep.method = "sim";
  EnergyHistory history(params.loop.window);
  ScalarField phi = init;
  for (int it = 1; it <= params.loop.max_iters; ++it) {
    ScalarField next = sim_step(phi, d, params);
    if (!next.all_finite()) {
      rep.failure = "non-finite level set at iteration " + std::to_string(it);
      break;
    }
    const double e = energy(next, d, params.eps, 2);
    history.append(e);
    phi = reinitialize(next, params.loop.reinit_steps);
    rep.iterations = it;
    if (hook) hook(it, phi);
    // A vanished energy leaves nothing to minimize.
    if (e == 0.0 || check_convergence(history, params.loop.tolerance)) {
      rep.converged = true;
      break;
    }
  }
  rep.energy_history = history.values();
  rep.phi = std::move(phi);
  rep.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

RunReport run_sim(const PointCloud& cloud, const Grid& grid, const ScalarField& init,
                  const SimParams& params) {
  const auto t0 = std::chrono::steady_clock::now();
  const ScalarField d = distance_field(cloud, grid);
  RunReport rep = run_sim(d, init, params);
  rep.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

}  // namespace lsr
