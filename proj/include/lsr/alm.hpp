#pragma once

// ADMM-type augmented Lagrangian iteration for the d-weighted energy E_1,
// with the splitting p = grad phi:
//
//   phi:    eta phi - r Lap phi = eta phi^n + 2 d eps |p^n| phi^n / (pi (eps^2 + phi^n^2)^2)
//                                 - div(r p^n + lambda^n)
//   p:      shrinkage of q = grad phi^{n+1} - lambda^n / r with threshold
//           w = d eps / (pi (eps^2 + phi^{n+1}^2)), scaled by 1/r
//   lambda: lambda^n + r (p^{n+1} - grad phi^{n+1})

#include "lsr/grid.hpp"
#include "lsr/levelset.hpp"
#include "lsr/point_cloud.hpp"
#include "lsr/report.hpp"

#include <functional>

namespace lsr {

struct AlmParams {
  double r = 1.5;    // penalty
  double eta = 0.5;  // frozen coefficient
  SmoothingParam eps{1.0};
  LoopOptions loop{};

  void validate() const;
};

struct AlmState {
  ScalarField phi;
  VectorField p;
  VectorField lambda;
  int iteration = 0;

  // p = grad phi, lambda = 0.
  static AlmState initial(const ScalarField& phi0);
};

ScalarField phi_subproblem(const AlmState& state, const ScalarField& d, const AlmParams& params);

// Right-hand side g of the phi sub-problem, exposed for residual checks.
ScalarField phi_subproblem_rhs(const AlmState& state, const ScalarField& d,
                               const AlmParams& params);

VectorField p_subproblem(const ScalarField& phi_next, const VectorField& lambda_n,
                         const ScalarField& d, const AlmParams& params);

VectorField multiplier_update(const AlmState& state, const ScalarField& phi_next,
                              const VectorField& p_next, double r);

// What an iteration hook sees: phi^{n+1} before reinitialization, the
// multiplier it was paired with (lambda^n), and the updated p and lambda.
struct AlmSnapshot {
  int iteration;
  const ScalarField& phi;
  const VectorField& grad_phi;
  const VectorField& lambda_prev;
  const VectorField& p;
  const VectorField& lambda;
  const ScalarField& d;
  const AlmParams& params;
};

using AlmHook = std::function<void(const AlmSnapshot&)>;

// Grid 2-norm of p - grad phi, recorded once per iteration.
struct AlmTrace {
  std::vector<double> constraint_residual;
};

RunReport run_alm(const ScalarField& d, const ScalarField& init, const AlmParams& params,
                  const AlmHook& hook = {}, AlmTrace* trace = nullptr);
RunReport run_alm(const PointCloud& cloud, const Grid& grid, const ScalarField& init,
                  const AlmParams& params);

}  // namespace lsr
