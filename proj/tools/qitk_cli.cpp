#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qitk/experiments.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFlags = 2;
constexpr int kExitOptimization = 3;

struct Common {
  std::uint64_t seed = 0;
  std::string out;
  double tol = 1e-6;
  int threads = 1;
};

struct OptFlags {
  int starts = 0;
  int sweeps = 0;
  int cycles = 0;
  int climb_iters = 0;

  void apply(qitk::OptimizerConfig& c, double tol, std::uint64_t seed) const {
    if (starts > 0) c.n_starts = starts;
    if (sweeps > 0) c.anneal_sweeps = sweeps;
    if (cycles > 0) c.max_cycles = cycles;
    if (climb_iters > 0) c.climb_max_iters = climb_iters;
    c.consistency_tol = tol;
    c.seed = seed;
  }
};

void add_common(CLI::App* app, Common& common) {
  app->add_option("--seed", common.seed, "RNG seed");
  app->add_option("--out", common.out, "CSV output path (default: stdout)");
  app->add_option("--tol", common.tol, "optimizer consistency tolerance")
      ->check(CLI::PositiveNumber);
  app->add_option("--threads", common.threads, "worker threads")->check(CLI::Range(1, 1024));
}

void add_opt(CLI::App* app, OptFlags& f, const std::string& prefix = "") {
  app->add_option("--" + prefix + "starts", f.starts, "optimizer starts")->check(CLI::PositiveNumber);
  app->add_option("--" + prefix + "sweeps", f.sweeps, "annealing sweeps per cycle")
      ->check(CLI::PositiveNumber);
  app->add_option("--" + prefix + "cycles", f.cycles, "maximum macro-cycles")
      ->check(CLI::PositiveNumber);
  app->add_option("--" + prefix + "climb-iters", f.climb_iters, "pattern-search sweeps per cycle")
      ->check(CLI::PositiveNumber);
}

// Writes to --out or stdout.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw qitk::ValidationError("cannot open output file '" + path + "'");
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

qitk::OptimizerConfig mems_default_config() {
  qitk::OptimizerConfig c;
  c.n_starts = 3;
  c.anneal_sweeps = 30;
  c.climb_max_iters = 60;
  c.max_cycles = 4;
  return c;
}

qitk::OptimizerConfig er_default_config() {
  qitk::OptimizerConfig c;
  c.n_starts = 1;
  c.anneal_sweeps = 20;
  c.climb_max_iters = 40;
  c.max_cycles = 3;
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qitk: quantum information toolkit experiments"};
  app.require_subcommand(1);

  Common common;

  // superpos
  auto* superpos = app.add_subcommand("superpos", "entanglement of superposed two-qubit pure states");
  add_common(superpos, common);
  qitk::SuperposConfig sp;
  bool phase = false;
  int phase_steps = 8;
  std::vector<std::string> bound_names;
  superpos->add_option("--pairs", sp.n_pairs, "random state pairs")->check(CLI::NonNegativeNumber);
  superpos->add_option("--alpha-points", sp.n_alpha, "points in |alpha|^2 over [0,1]")
      ->check(CLI::Range(2, 1000000));
  superpos->add_flag("--phase", phase, "also sweep the relative phase; adds a phase column");
  superpos->add_option("--phase-steps", phase_steps, "relative phases with --phase")
      ->check(CLI::PositiveNumber);
  superpos->add_option("--bound", bound_names, "bound plug-in to evaluate (lps, gour)");

  // mems
  auto* mems = app.add_subcommand("mems", "maximal concurrence of diagonal product states");
  add_common(mems, common);
  qitk::MemsConfig mc;
  mc.opt = mems_default_config();
  bool paper_scale = false;
  OptFlags mems_opt;
  auto* res_opt = mems->add_option("--resolution", mc.resolution, "grid step in (0, 0.25]");
  mems->add_flag("--paper-scale", paper_scale, "use the 0.005 grid (hours of compute)")
      ->excludes(res_opt);
  add_opt(mems, mems_opt);

  // bloch
  auto* bloch = app.add_subcommand("bloch", "generalized Bloch coordinates of sampled states");
  add_common(bloch, common);
  qitk::BlochConfig bc;
  std::vector<std::string> class_names;
  bloch->add_option("--n", bc.n, "Hilbert-space dimension")->check(CLI::Range(2, 64));
  bloch->add_option("--samples", bc.samples_per_class, "samples per class")
      ->check(CLI::NonNegativeNumber);
  bloch->add_option("--ci", bc.ci, "first coefficient index (0-based)")
      ->check(CLI::NonNegativeNumber);
  bloch->add_option("--cj", bc.cj, "second coefficient index (0-based)")
      ->check(CLI::NonNegativeNumber);
  bloch->add_option("--class", class_names, "class to sample (density, separable, pure)");

  // additivity
  auto* additivity = app.add_subcommand("additivity", "additivity of relative entanglement");
  add_common(additivity, common);
  qitk::AdditivityConfig ac;
  ac.opt = er_default_config();
  ac.joint_opt = qitk::default_joint_config();
  ac.outer_opt.n_starts = 1;
  ac.outer_opt.anneal_sweeps = 2;
  ac.outer_opt.climb_max_iters = 2;
  ac.outer_opt.max_cycles = 1;
  std::string mode = "sample";
  OptFlags er_opt, joint_opt, outer_opt;
  additivity->add_option("--trials", ac.trials, "trials")->check(CLI::NonNegativeNumber);
  additivity->add_option("--mode", mode, "sample or extremize")
      ->check(CLI::IsMember({"sample", "extremize"}));
  additivity->add_flag("--separable", ac.force_separable, "draw both parties from separable states");
  additivity->add_option("--delta-tol", ac.delta_tol, "summary threshold on delta")
      ->check(CLI::NonNegativeNumber);
  add_opt(additivity, er_opt);
  add_opt(additivity, joint_opt, "joint-");
  add_opt(additivity, outer_opt, "outer-");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitFlags;
  }

  try {
    Output output(common.out);
    std::ostream& out = output.stream();

    if (*superpos) {
      sp.seed = common.seed;
      sp.threads = common.threads;
      sp.phase_steps = phase ? phase_steps : 1;
      sp.inner_opt.consistency_tol = common.tol;
      sp.inner_opt.seed = common.seed;
      for (const auto& name : bound_names) sp.bounds.push_back(qitk::bound_by_name(name));
      qitk::write_superpos_csv(out, qitk::run_superpos(sp), phase);
    } else if (*mems) {
      if (paper_scale) {
        mc.resolution = 0.005;
        std::cerr << "warning: --paper-scale runs 10201 optimizations; expect hours of compute\n";
      }
      mc.threads = common.threads;
      mems_opt.apply(mc.opt, common.tol, common.seed);
      qitk::write_mems_csv(out, qitk::run_mems(mc));
    } else if (*bloch) {
      bc.seed = common.seed;
      for (const auto& name : class_names) bc.classes.push_back(qitk::parse_bloch_class(name));
      qitk::write_bloch_csv(out, qitk::run_bloch(bc));
    } else if (*additivity) {
      ac.seed = common.seed;
      ac.threads = common.threads;
      ac.mode = mode == "extremize" ? qitk::AdditivityMode::extremize : qitk::AdditivityMode::sample;
      er_opt.apply(ac.opt, common.tol, common.seed);
      joint_opt.apply(ac.joint_opt, std::max(common.tol, ac.joint_opt.consistency_tol), common.seed);
      outer_opt.apply(ac.outer_opt, common.tol, common.seed);
      const auto report = qitk::run_additivity(ac);
      qitk::write_additivity_csv(out, report.rows);
      qitk::write_additivity_summary(std::cerr, report.summary);
      out.flush();
      if (report.summary.failed > 0) return kExitOptimization;
    }
    out.flush();
  } catch (const qitk::OptimizationFailed& e) {
    std::cerr << "optimization failed: " << e.what() << '\n';
    return kExitOptimization;
  } catch (const qitk::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFlags;
  }
  return kExitOk;
}
