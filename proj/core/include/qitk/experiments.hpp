#pragma once

// Reproducible numerical sweeps driven by the qitk CLI. Every runner is a
// pure function of its config: rows come back in sweep order regardless of
// the thread count, and per-item RNG streams derive from the config seed.

#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "qitk/entanglement.hpp"
#include "qitk/optimizer.hpp"

namespace qitk {

// ---------------------------------------------------------------------------
// Entanglement of superpositions: Gamma = (alpha Psi + beta e^{i phase} Phi) / norm.

struct SuperpositionPoint {
  const PureState& psi;
  const PureState& phi;
  double alpha;
  double beta;
  double phase;
};

// A bound on E(Gamma) evaluated at each sweep point. With inner_range set the
// harness maximizes evaluate(point, t) over t in that interval using the
// optimizer; otherwise t is passed as 0.
struct SuperpositionBound {
  std::string name;
  std::function<double(const SuperpositionPoint&, double)> evaluate;
  std::optional<Interval> inner_range;
};

// Placeholders: their formulas are not provided here; evaluating them throws
// NotImplementedError.
SuperpositionBound lps_bound();
SuperpositionBound gour_bound();
SuperpositionBound bound_by_name(const std::string& name);

struct SuperposConfig {
  int n_pairs = 10;
  int n_alpha = 11;
  std::uint64_t seed = 0;
  int phase_steps = 1;  // relative phases 2 pi k / phase_steps, k < phase_steps
  std::vector<SuperpositionBound> bounds;
  OptimizerConfig inner_opt{};
  int threads = 1;
};

struct SuperposRow {
  int pair_id = 0;
  double alpha_sq = 0.0;
  double phase = 0.0;
  std::optional<double> entanglement;
  std::string bound_name;
  std::optional<double> bound_value;
  bool skip = false;
};

struct SuperposPair {
  PureState psi;
  PureState phi;
};

// The random two-qubit pair used for pair_id under seed.
SuperposPair superpos_pair(std::uint64_t seed, int pair_id);

std::vector<SuperposRow> run_superpos(const SuperposConfig& config);
void write_superpos_csv(std::ostream& out, const std::vector<SuperposRow>& rows, bool with_phase);

// ---------------------------------------------------------------------------
// Maximal concurrence of diag(p,1-p) (x) diag(q,1-q) under global unitaries.

struct MemsConfig {
  double resolution = 0.05;  // grid step over [0, 0.5]^2, in (0, 0.25]
  OptimizerConfig opt{};
  int threads = 1;
};

struct MemsRow {
  double p = 0.0;
  double q = 0.0;
  double max_concurrence = 0.0;
  double trace_dist = 0.0;
};

DensityMatrix mems_initial_state(double p, double q);
// maximize_U concurrence(U rho U^dagger) over the unitary(4) parametrization.
OptimizationResult mems_max_concurrence(double p, double q, const OptimizerConfig& opt);
std::vector<double> mems_grid(double resolution);
std::vector<MemsRow> run_mems(const MemsConfig& config);
void write_mems_csv(std::ostream& out, const std::vector<MemsRow>& rows);

// ---------------------------------------------------------------------------
// Generalized Bloch coordinates of sampled states.

enum class BlochClass { density, separable, pure };
std::string_view to_string(BlochClass c);
BlochClass parse_bloch_class(std::string_view name);

struct BlochConfig {
  int n = 4;
  int samples_per_class = 500;
  int ci = 0;  // 0-based coefficient indices, < n^2 - 1
  int cj = 1;
  std::uint64_t seed = 0;
  // Empty: density, separable (composite n only) and pure.
  std::vector<BlochClass> classes;
};

struct BlochRow {
  BlochClass cls;
  int ci = 0;
  int cj = 0;
  double vi = 0.0;
  double vj = 0.0;
};

// Samples of one class as full coefficient vectors. separable splits n into
// its smallest prime factor times the rest and throws DomainError for prime n.
std::vector<BlochVector> sample_bloch(int n, BlochClass cls, int count, std::uint64_t seed);
std::vector<BlochRow> run_bloch(const BlochConfig& config);
void write_bloch_csv(std::ostream& out, const std::vector<BlochRow>& rows);

// ---------------------------------------------------------------------------
// Additivity of relative entanglement: delta = E_R(r1 (x) r2) - E_R(r1) - E_R(r2)
// with the joint state cut A1 A2 | B1 B2.

enum class AdditivityMode { sample, extremize };

struct AdditivityConfig {
  int trials = 50;
  DimSpec party_dims{2, 2};  // each party is bipartite A|B
  AdditivityMode mode = AdditivityMode::sample;
  bool force_separable = false;  // draw r1, r2 from the separable parametrization
  OptimizerConfig opt{};         // single-party E_R runs
  OptimizerConfig joint_opt{};   // joint E_R runs
  OptimizerConfig outer_opt{};   // extremize mode: search over (r1, r2)
  double delta_tol = 5e-3;
  std::uint64_t seed = 0;
  int threads = 1;
};

// Lighter budget for the joint separable space, whose parameter count grows
// as d^4.
OptimizerConfig default_joint_config();

struct AdditivityRow {
  int trial = 0;
  double er_1 = 0.0;
  double er_2 = 0.0;
  double er_joint = 0.0;
  double delta = 0.0;
  bool failed = false;
  double entropy_gap = 0.0;  // S(r1 (x) r2) - S(r1) - S(r2)
  std::string error;
};

struct AdditivitySummary {
  int trials = 0;
  int failed = 0;
  double min_delta = 0.0;
  double mean_delta = 0.0;
  double max_delta = 0.0;
  double fraction_above_tol = 0.0;  // fraction of successful trials with delta >= -delta_tol
  double max_entropy_gap = 0.0;     // max |S(r1 (x) r2) - S(r1) - S(r2)|
};

struct AdditivityReport {
  std::vector<AdditivityRow> rows;
  AdditivitySummary summary;
};

// Joint state reordered to (A1, A2, B1, B2) and regrouped as [dA1 dA2, dB1 dB2].
DensityMatrix joint_bipartite_state(const DensityMatrix& r1, const DensityMatrix& r2);

// One sample-mode evaluation. Seeds for the three E_R runs derive from seed.
AdditivityRow additivity_trial(const DensityMatrix& r1, const DensityMatrix& r2,
                               const AdditivityConfig& config, std::uint64_t seed);

AdditivityReport run_additivity(const AdditivityConfig& config);
void write_additivity_csv(std::ostream& out, const std::vector<AdditivityRow>& rows);
void write_additivity_summary(std::ostream& out, const AdditivitySummary& summary);

// Runs fn(i) for i in [0, count) on up to `threads` workers.
void parallel_for(int count, int threads, const std::function<void(int)>& fn);

}  // namespace qitk
