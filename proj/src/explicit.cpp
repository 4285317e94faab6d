#include "lsr/explicit.hpp"

#include "lsr/distance.hpp"
#include "lsr/errors.hpp"

#include <chrono>

namespace lsr {

void ExplicitParams::validate() const {
  if (!(dt > 0.0)) throw std::invalid_argument("explicit: dt must be > 0");
  if (!(grad_floor > 0.0)) throw std::invalid_argument("explicit: grad_floor must be > 0");
  if (loop.max_iters < 1) throw std::invalid_argument("explicit: max_iters must be >= 1");
}

double blow_up_bound(const Grid& grid) { return 2.0 * grid.diameter(); }

ScalarField explicit_step(const ScalarField& phi, const ScalarField& d,
                          const ExplicitParams& params, long iteration) {
  ScalarField next = gradient_flow_forcing(d, phi, params.eps, params.grad_floor);
  next.values() = phi.values() + params.dt * next.values();
  if (!next.all_finite())
    throw NumericalError("explicit step produced non-finite values", 0.0, iteration);
  const double sup = next.values().abs().maxCoeff();
  if (sup > blow_up_bound(phi.grid()))
    throw NumericalError("explicit step blew up (|phi| = " + std::to_string(sup) + ")", sup,
                         iteration);
  return next;
}

RunReport run_explicit(const ScalarField& d, const ScalarField& init,
                       const ExplicitParams& params, const LevelSetHook& hook) {
  params.validate();
  require_same_grid(d.grid(), init.grid());
  if (!init.all_finite()) throw std::invalid_argument("explicit: initial level set not finite");

  const auto t0 = std::chrono::steady_clock::now();
  RunReport rep;
  rep.method = "explicit";
  EnergyHistory history(params.loop.window);
  ScalarField phi = init;
  for (int it = 1; it <= params.loop.max_iters; ++it) {
    ScalarField next;
    try {
      next = explicit_step(phi, d, params, it);
    } catch (const NumericalError& e) {
      rep.failure = "instability at iteration " + std::to_string(it) + ": " + e.what();
      break;
    }
    const double e = energy(next, d, params.eps, 2);
    history.append(e);
    phi = reinitialize(next, params.loop.reinit_steps);
    rep.iterations = it;
    if (hook) hook(it, phi);
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

RunReport run_explicit(const PointCloud& cloud, const Grid& grid, const ScalarField& init,
                       const ExplicitParams& params) {
  const auto t0 = std::chrono::steady_clock::now();
  const ScalarField d = distance_field(cloud, grid);
  RunReport rep = run_explicit(d, init, params);
  rep.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

}  // namespace lsr
