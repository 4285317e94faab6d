#pragma once

#include "lsr/grid.hpp"

#include <string>
#include <vector>

namespace lsr {

// Outcome of one solver run. energy_history holds exactly the values the
// stopping rule saw, one per iteration.
struct RunReport {
  std::string method;
  bool converged = false;
  int iterations = 0;
  double wall_seconds = 0.0;
  std::vector<double> energy_history;
  std::string failure;  // empty unless the run stopped on an error
  ScalarField phi;
  double hausdorff_to_cloud = -1.0;  // filled in by the pipeline, in cells
};

// Options shared by every iterative solver.
struct LoopOptions {
  int max_iters = 2000;
  int reinit_steps = 10;
  int window = 10;         // k in the running-mean stopping rule
  double tolerance = 1e-4;
};

}  // namespace lsr
