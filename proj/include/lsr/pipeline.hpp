#pragma once

// End-to-end runs: load or generate a cloud, compute the distance field,
// evolve a level set with one of the solvers, score and export the result.

#include "lsr/alm.hpp"
#include "lsr/explicit.hpp"
#include "lsr/io.hpp"
#include "lsr/report.hpp"
#include "lsr/sim.hpp"
#include "lsr/synth.hpp"

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace lsr {

enum class Method { sim, alm, explicit_euler };

Method parse_method(const std::string& name);
std::string to_string(Method m);

// Flat key -> value settings, as read from a config file or the command line.
using Settings = std::map<std::string, std::string>;

// "key = value" or "key value" per line; '#' starts a comment.
Settings parse_settings(std::istream& in);
Settings read_settings(const std::string& path);

struct RunConfig {
  std::optional<std::string> input;      // point cloud file
  std::optional<CloudFormat> format;     // defaults to the file extension
  std::optional<ShapeSpec> shape;        // generated cloud
  double noise = 0.0;                    // Gaussian sigma added to the cloud
  std::uint64_t noise_seed = 7;

  Method method = Method::sim;
  std::vector<int> grid{100, 100};
  std::optional<Eigen::VectorXd> init_center;  // defaults to floor(n/2) per axis
  std::optional<double> init_radius;           // 0.3 (2D) / 0.45 (3D) of the smallest extent

  SimParams sim{};
  AlmParams alm{};
  ExplicitParams explicit_euler{};

  int snapshot_every = 0;  // 0 disables snapshots
  std::string output_dir;  // empty: nothing written

  Grid make_grid() const;
  Eigen::VectorXd center() const;
  double radius() const;
  void validate() const;
};

// Keys: input, format, shape, count, seed, radius, radius2, folds, amplitude,
// corner_gap, n1, n2, n3, noise, noise_seed, method, grid, init_center,
// init_radius, dt, beta, eps, r, eta, reinit, max_iters, window, tolerance,
// snapshot_every, out. Method parameters apply to whichever solver uses them.
RunConfig make_config(const Settings& settings);

struct RunResult {
  RunReport report;
  PointCloud cloud;
  ScalarField distance;
  ZeroSet zero_set;
};

// Exports (when output_dir is set): distance.vtk, phi.vtk, zero_set.obj,
// energy.csv, report.json and phi_NNNN.vtk every snapshot_every iterations.
RunResult run(const RunConfig& config);

PointCloud load_cloud(const RunConfig& config);

// Value of RECON_THREADS (0 = auto). The solvers are single-threaded, so
// this only validates the variable.
int thread_budget();

// Reproduction recipes. Each writes its artifacts under out_dir, prints a
// summary table to `log` and returns true when every run converged.
bool reproduce(const std::string& name, const std::string& out_dir, std::ostream& log);
std::vector<std::string> reproduce_targets();

// The five-fold / bunny / three-fold setups used by the recipes and tests.
RunConfig fixture_config(const ShapeSpec& shape, Method method);

}  // namespace lsr
