#pragma once

// Semi-implicit gradient flow for the d^2-weighted surface energy E_2.
//
// Each step solves
//   phi^{n+1}/dt - beta Lap phi^{n+1} = phi^n/dt - beta Lap phi^n + f * T
// where T = div(d^2 grad phi / |grad phi|) and
//   f = 0.5 delta_eps(phi) / sqrt(sum d^2 delta_eps(phi) |grad phi|).
// The implicit stabilizer -beta Lap lets dt be two orders of magnitude
// larger than the explicit scheme tolerates.

#include "lsr/grid.hpp"
#include "lsr/levelset.hpp"
#include "lsr/point_cloud.hpp"
#include "lsr/report.hpp"

#include <functional>

namespace lsr {

struct SimParams {
  double dt = 500.0;
  double beta = 0.1;  // 0.01 is the 3D default
  SmoothingParam eps{1.0};
  double grad_floor = 1e-8;
  LoopOptions loop{};

  static SimParams defaults_for(int axes) {
    SimParams p;
    p.beta = axes == 3 ? 0.01 : 0.1;
    return p;
  }
  void validate() const;
};

// div(d^2 grad phi / sqrt(|grad phi|^2 + floor^2)).
ScalarField curvature_transport(const ScalarField& d, const ScalarField& phi,
                                double grad_floor);

// Throws NumericalError when the weighted integral is not positive.
ScalarField f_coefficient(const ScalarField& d, const ScalarField& phi, SmoothingParam eps);

// f * curvature_transport: the explicit part of the gradient flow. Zero when
// the weighted integral vanishes (then d^2 |grad phi| is zero everywhere).
ScalarField gradient_flow_forcing(const ScalarField& d, const ScalarField& phi,
                                  SmoothingParam eps, double grad_floor);

ScalarField sim_step(const ScalarField& phi, const ScalarField& d, const SimParams& params);

// Called after each iteration with the iteration index (1-based) and the
// reinitialized level set.
using LevelSetHook = std::function<void(int, const ScalarField&)>;

RunReport run_sim(const ScalarField& d, const ScalarField& init, const SimParams& params,
                  const LevelSetHook& hook = {});
RunReport run_sim(const PointCloud& cloud, const Grid& grid, const ScalarField& init,
                  const SimParams& params);

}  // namespace lsr
