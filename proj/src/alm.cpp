#include "lsr/alm.hpp"

#include "lsr/distance.hpp"
#include "lsr/spectral.hpp"

#include <chrono>
#include <numbers>

namespace lsr {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kZeroDirection = 1e-12;
}  // namespace

void AlmParams::validate() const {
  if (!(r > 0.0)) throw std::invalid_argument("ALM: r must be > 0");
  if (!(eta > 0.0)) throw std::invalid_argument("ALM: eta must be > 0");
  if (loop.max_iters < 1) throw std::invalid_argument("ALM: max_iters must be >= 1");
}

AlmState AlmState::initial(const ScalarField& phi0) {
  AlmState s;
  s.phi = phi0;
  s.p = gradient(phi0);
  s.lambda = VectorField(phi0.grid());
  return s;
}

ScalarField phi_subproblem_rhs(const AlmState& state, const ScalarField& d,
                               const AlmParams& params) {
  require_same_grid(state.phi.grid(), d.grid());
  const double eps = params.eps.epsilon;
  const auto& phi = state.phi.values();
  const ScalarField::Values denom = eps * eps + phi.square();
  const ScalarField::Values source =
      2.0 * d.values() * eps * state.p.norm().values() * phi / (kPi * denom.square());

  VectorField flux = params.r * state.p;
  flux += state.lambda;
  ScalarField g(state.phi.grid(), params.eta * phi + source);
  g -= divergence(flux);
  return g;
}

ScalarField phi_subproblem(const AlmState& state, const ScalarField& d, const AlmParams& params) {
  return solve_helmholtz(params.eta, params.r, phi_subproblem_rhs(state, d, params));
}

VectorField p_subproblem(const ScalarField& phi_next, const VectorField& lambda_n,
                         const ScalarField& d, const AlmParams& params) {
  require_same_grid(phi_next.grid(), d.grid());
  const double eps = params.eps.epsilon;
  const double r = params.r;
  VectorField q = gradient(phi_next);
  for (int a = 0; a < q.axes(); ++a) q[a].values() -= lambda_n[a].values() / r;
  const ScalarField qn = q.norm();

  ScalarField::Values scale(phi_next.size());
  for (Eigen::Index i = 0; i < phi_next.size(); ++i) {
    const double w = d[i] * eps / (kPi * (eps * eps + phi_next[i] * phi_next[i]));
    const double rq = r * qn[i];
    scale[i] = (qn[i] < kZeroDirection || rq <= w) ? 0.0 : 1.0 - w / rq;
  }
  for (int a = 0; a < q.axes(); ++a) q[a].values() *= scale;
  return q;
}

VectorField multiplier_update(const AlmState& state, const ScalarField& phi_next,
                              const VectorField& p_next, double r) {
  const VectorField g = gradient(phi_next);
  VectorField lambda = state.lambda;
  for (int a = 0; a < lambda.axes(); ++a)
    lambda[a].values() += r * (p_next[a].values() - g[a].values());
  return lambda;
}

RunReport run_alm(const ScalarField& d, const ScalarField& init, const AlmParams& params,
                  const AlmHook& hook, AlmTrace* trace) {
  params.validate();
  require_same_grid(d.grid(), init.grid());
  if (!init.all_finite()) throw std::invalid_argument("ALM: initial level set not finite");

  const auto t0 = std::chrono::steady_clock::now();
  RunReport rep;
  rep.method = "alm";
  EnergyHistory history(params.loop.window);
  AlmState state = AlmState::initial(init);
  for (int it = 1; it <= params.loop.max_iters; ++it) {
    ScalarField phi_next = phi_subproblem(state, d, params);
    if (!phi_next.all_finite()) {
      rep.failure = "non-finite level set at iteration " + std::to_string(it);
      break;
    }
    VectorField p_next = p_subproblem(phi_next, state.lambda, d, params);
    VectorField lambda_next = multiplier_update(state, phi_next, p_next, params.r);

    const double e = energy(phi_next, d, params.eps, 1);
    history.append(e);
    if (hook || trace) {
      const VectorField g = gradient(phi_next);
      if (trace) {
        double s = 0.0;
        for (int a = 0; a < g.axes(); ++a)
          s += (p_next[a].values() - g[a].values()).square().sum();
        trace->constraint_residual.push_back(std::sqrt(s));
      }
      if (hook)
        hook(AlmSnapshot{it, phi_next, g, state.lambda, p_next, lambda_next, d, params});
    }
    state.phi = reinitialize(phi_next, params.loop.reinit_steps);
    state.p = std::move(p_next);
    state.lambda = std::move(lambda_next);
    state.iteration = it;
    rep.iterations = it;
    if (check_convergence(history, params.loop.tolerance)) {
      rep.converged = true;
      break;
    }
  }
  rep.energy_history = history.values();
  rep.phi = std::move(state.phi);
  rep.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

RunReport run_alm(const PointCloud& cloud, const Grid& grid, const ScalarField& init,
                  const AlmParams& params) {
  const auto t0 = std::chrono::steady_clock::now();
  const ScalarField d = distance_field(cloud, grid);
  RunReport rep = run_alm(d, init, params);
  rep.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

}  // namespace lsr
