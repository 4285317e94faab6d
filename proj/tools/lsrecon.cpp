// lsrecon: command-line front end for the level-set reconstruction library.

#include "lsr/contour.hpp"
#include "lsr/diagnostics.hpp"
#include "lsr/distance.hpp"
#include "lsr/errors.hpp"
#include "lsr/io.hpp"
#include "lsr/pipeline.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <map>
#include <set>

namespace {

using lsr::Settings;

// Every run setting is exposed as a string flag; only flags actually given
// end up in the Settings map, so a config file can fill in the rest.
struct SettingFlags {
  std::map<std::string, std::string> scalars;
  std::map<std::string, std::vector<std::string>> lists;

  void add_scalar(CLI::App* app, const std::string& key, const std::string& help) {
    std::string flag = "--" + key;
    std::replace(flag.begin(), flag.end(), '_', '-');
    app->add_option(flag, scalars[key], help);
  }
  void add_list(CLI::App* app, const std::string& key, const std::string& help, int lo, int hi) {
    std::string flag = "--" + key;
    std::replace(flag.begin(), flag.end(), '_', '-');
    app->add_option(flag, lists[key], help)->expected(lo, hi);
  }

  Settings collect(const std::string& config_path) const {
    Settings s;
    for (const auto& [k, v] : scalars)
      if (!v.empty()) s[k] = v;
    for (const auto& [k, v] : lists) {
      if (v.empty()) continue;
      std::string joined;
      for (const auto& x : v) joined += (joined.empty() ? "" : " ") + x;
      s[k] = joined;
    }
    if (!config_path.empty())
      for (const auto& [k, v] : lsr::read_settings(config_path)) s[k] = v;
    return s;
  }
};

void add_input_flags(CLI::App* app, SettingFlags& f) {
  f.add_scalar(app, "input", "point cloud file (xyz, csv, ply)");
  f.add_scalar(app, "format", "xyz | csv | ply (default: by extension)");
  f.add_scalar(app, "shape",
               "generated cloud: circle, ellipse, triangle, square, kfold, torus, sphere, jar, bunny");
  f.add_scalar(app, "count", "points to generate");
  f.add_scalar(app, "seed", "generator seed");
  f.add_scalar(app, "radius", "shape radius");
  f.add_scalar(app, "radius2", "second shape radius");
  f.add_scalar(app, "folds", "kfold lobes");
  f.add_scalar(app, "amplitude", "kfold amplitude");
  f.add_scalar(app, "corner_gap", "square corner gap");
  f.add_scalar(app, "n1", "bunny face points");
  f.add_scalar(app, "n2", "bunny head points");
  f.add_scalar(app, "n3", "bunny points per ear");
  f.add_list(app, "center", "shape center", 2, 3);
  f.add_scalar(app, "noise", "Gaussian noise sigma");
  f.add_scalar(app, "noise_seed", "noise seed");
  f.add_list(app, "grid", "grid extents (2 or 3)", 2, 3);
}

void add_solver_flags(CLI::App* app, SettingFlags& f) {
  f.add_scalar(app, "method", "sim | alm | explicit");
  f.add_list(app, "init_center", "initial sphere center", 2, 3);
  f.add_scalar(app, "init_radius", "initial sphere radius");
  f.add_scalar(app, "dt", "time step (sim, explicit)");
  f.add_scalar(app, "beta", "stabilizer weight (sim)");
  f.add_scalar(app, "eps", "delta smoothing width");
  f.add_scalar(app, "r", "penalty (alm)");
  f.add_scalar(app, "eta", "frozen coefficient (alm)");
  f.add_scalar(app, "reinit", "reinitialization steps per iteration");
  f.add_scalar(app, "max_iters", "iteration cap");
  f.add_scalar(app, "window", "stopping-rule window");
  f.add_scalar(app, "tolerance", "stopping-rule tolerance");
  f.add_scalar(app, "snapshot_every", "write phi every N iterations");
  f.add_scalar(app, "out", "output directory");
}

// Only input-related settings; fills the mandatory-one-of rule with a dummy
// method so make_config can validate.
lsr::RunConfig input_config(Settings s) {
  for (const char* k : {"method", "dt", "beta", "eps", "r", "eta", "reinit", "max_iters",
                        "window", "tolerance", "snapshot_every", "init_center", "init_radius"})
    s.erase(k);
  return lsr::make_config(s);
}

int cmd_recon(const Settings& s) {
  const lsr::RunConfig cfg = lsr::make_config(s);
  const lsr::RunResult r = lsr::run(cfg);
  const auto& rep = r.report;
  std::cout << "method " << rep.method << "\n"
            << "converged " << (rep.converged ? "yes" : "no") << "\n"
            << "iterations " << rep.iterations << "\n"
            << "wall_seconds " << rep.wall_seconds << "\n";
  if (!rep.energy_history.empty()) std::cout << "final_energy " << rep.energy_history.back() << "\n";
  if (rep.hausdorff_to_cloud >= 0.0) std::cout << "hausdorff " << rep.hausdorff_to_cloud << "\n";
  if (!rep.failure.empty()) std::cout << "failure " << rep.failure << "\n";
  if (!cfg.output_dir.empty()) std::cout << "output " << cfg.output_dir << "\n";
  return rep.converged ? 0 : 2;
}

int cmd_distance(const Settings& s, const std::string& out) {
  const lsr::RunConfig cfg = input_config(s);
  const lsr::PointCloud cloud = lsr::load_cloud(cfg);
  const lsr::ScalarField d = lsr::distance_field(cloud, cfg.make_grid());
  lsr::write_field(out, d, "distance");
  std::cout << "points " << cloud.size() << "\nmax_distance " << d.values().maxCoeff() << "\n"
            << "output " << out << "\n";
  return 0;
}

int cmd_generate(const Settings& s, const std::string& out, const std::string& format) {
  const lsr::RunConfig cfg = input_config(s);
  if (!cfg.shape) throw std::invalid_argument("generate needs --shape");
  const lsr::PointCloud cloud = lsr::load_cloud(cfg);
  lsr::write_point_cloud(out, cloud,
                         format.empty() ? lsr::cloud_format_for(out) : lsr::parse_cloud_format(format));
  std::cout << "points " << cloud.size() << "\noutput " << out << "\n";
  return 0;
}

int cmd_diagnose(Settings s, const std::vector<int>& iterations) {
  s["method"] = "alm";
  const lsr::RunConfig cfg = lsr::make_config(s);
  if (cfg.output_dir.empty()) throw std::invalid_argument("diagnose needs --out");
  std::filesystem::create_directories(cfg.output_dir);
  const lsr::Grid g = cfg.make_grid();
  const lsr::PointCloud cloud = lsr::load_cloud(cfg);
  const lsr::ScalarField d = lsr::distance_field(cloud, g);
  const std::set<int> wanted(iterations.begin(), iterations.end());
  const auto dir = std::filesystem::path(cfg.output_dir);

  auto dump = [&](const std::string& tag, const lsr::DiagnosticBundle& b) {
    lsr::write_field((dir / ("q_" + tag + ".vtk")).string(), b.q, "q");
    lsr::write_field((dir / ("disc_" + tag + ".vtk")).string(), b.disc, "disc");
    lsr::write_field((dir / ("alpha_" + tag + ".vtk")).string(), b.alpha, "alpha");
    lsr::write_field((dir / ("r_lower_" + tag + ".vtk")).string(), b.r_lower, "r_lower");
    lsr::write_field((dir / ("r_upper_" + tag + ".vtk")).string(), b.r_upper, "r_upper");
    lsr::write_field((dir / ("bounds_valid_" + tag + ".vtk")).string(), b.bounds_valid, "valid");
    lsr::write_field((dir / ("active_" + tag + ".vtk")).string(), b.active_mask, "active");
    lsr::write_field((dir / ("band_" + tag + ".vtk")).string(), b.band_mask, "band");
    std::cout << tag << " active_fraction " << lsr::fraction(b.active_mask) << "\n";
  };

  std::optional<lsr::DiagnosticBundle> last;
  const lsr::RunReport rep =
      lsr::run_alm(d, lsr::init_sphere(g, cfg.center(), cfg.radius()), cfg.alm,
                   [&](const lsr::AlmSnapshot& snap) {
                     lsr::DiagnosticBundle b = lsr::diagnose(snap);
                     if (wanted.count(snap.iteration)) {
                       char tag[16];
                       std::snprintf(tag, sizeof tag, "%04d", snap.iteration);
                       dump(tag, b);
                     }
                     last = std::move(b);
                   });
  if (last) dump("final", *last);
  std::cout << "converged " << (rep.converged ? "yes" : "no") << "\niterations " << rep.iterations
            << "\n";
  return rep.converged ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Level-set surface reconstruction from point clouds"};
  app.require_subcommand(1);
  std::string config;

  SettingFlags recon_flags, dist_flags, gen_flags, diag_flags;

  auto* recon = app.add_subcommand("recon", "reconstruct a curve or surface");
  add_input_flags(recon, recon_flags);
  add_solver_flags(recon, recon_flags);
  recon->add_option("--config", config, "key-value settings file (overrides flags)");

  std::string dist_out = "distance.vtk";
  auto* dist = app.add_subcommand("distance", "compute the distance field of a cloud");
  add_input_flags(dist, dist_flags);
  dist->add_option("--config", config, "key-value settings file (overrides flags)");
  dist->add_option("-o,--output", dist_out, "VTK output file");

  std::string gen_out = "cloud.xyz", gen_format;
  auto* gen = app.add_subcommand("generate", "write a synthetic point cloud");
  add_input_flags(gen, gen_flags);
  gen->add_option("--config", config, "key-value settings file (overrides flags)");
  gen->add_option("-o,--output", gen_out, "output file");
  gen->add_option("--as", gen_format, "xyz | csv | ply (default: by extension)");

  std::vector<int> diag_iters{2, 3, 4, 7, 8, 10, 11, 13};
  auto* diag = app.add_subcommand("diagnose", "export ALM diagnostic fields");
  add_input_flags(diag, diag_flags);
  add_solver_flags(diag, diag_flags);
  diag->add_option("--config", config, "key-value settings file (overrides flags)");
  diag->add_option("--iterations", diag_iters, "iterations to export");

  std::string target, repro_out = "reproduce";
  auto* repro = app.add_subcommand("reproduce", "run a reproduction recipe");
  repro->add_option("target", target, "fig3 | fig4 | fig5 | fig6 | fig7 | table1")
      ->required()
      ->check(CLI::IsMember(lsr::reproduce_targets()));
  repro->add_option("--out", repro_out, "output directory");

  CLI11_PARSE(app, argc, argv);

  try {
    lsr::thread_budget();
    if (recon->parsed()) return cmd_recon(recon_flags.collect(config));
    if (dist->parsed()) return cmd_distance(dist_flags.collect(config), dist_out);
    if (gen->parsed()) return cmd_generate(gen_flags.collect(config), gen_out, gen_format);
    if (diag->parsed()) return cmd_diagnose(diag_flags.collect(config), diag_iters);
    if (repro->parsed()) return lsr::reproduce(target, repro_out, std::cout) ? 0 : 2;
  } catch (const lsr::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
