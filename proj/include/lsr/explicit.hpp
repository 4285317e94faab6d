#pragma once

// Forward-Euler gradient descent on E_2, the reference scheme the fast
// solvers are compared against. Shares its forcing with the semi-implicit
// step, so the two differ only in how time is integrated.

#include "lsr/grid.hpp"
#include "lsr/levelset.hpp"
#include "lsr/point_cloud.hpp"
#include "lsr/report.hpp"
#include "lsr/sim.hpp"

namespace lsr {

struct ExplicitParams {
  double dt = 20.0;
  SmoothingParam eps{1.0};
  double grad_floor = 1e-8;
  LoopOptions loop{20000, 10, 10, 1e-4};

  void validate() const;
};

// A level set whose sup-norm passes this bound has blown up.
double blow_up_bound(const Grid& grid);

// phi + dt * f * T. Throws NumericalError (carrying `iteration`) when the
// result is non-finite or exceeds blow_up_bound.
ScalarField explicit_step(const ScalarField& phi, const ScalarField& d,
                          const ExplicitParams& params, long iteration = -1);

RunReport run_explicit(const ScalarField& d, const ScalarField& init,
                       const ExplicitParams& params, const LevelSetHook& hook = {});
RunReport run_explicit(const PointCloud& cloud, const Grid& grid, const ScalarField& init,
                       const ExplicitParams& params);

}  // namespace lsr
