#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <span>
#include <vector>

#include "qitk/params.hpp"

namespace qitk {

// Box-bounded derivative-free global minimizer.
//
// Each start runs macro-cycles of (simulated annealing -> coordinate pattern
// search). A start stops once two consecutive cycles end with best values
// that agree within consistency_tol, or after max_cycles. The annealing stage
// restarts from the best point at anneal_initial_temp every cycle, so a cycle
// that fails to improve on the previous one ends the start.
struct OptimizerConfig {
  int n_starts = 4;
  // Objective units. Proposal width at temperature T is
  // anneal_step * (T / anneal_initial_temp) * (bound width).
  double anneal_initial_temp = 1.0;
  double anneal_cooling = 0.95;  // per sweep
  int anneal_sweeps = 100;       // one sweep proposes a move on every coordinate
  double anneal_step = 0.2;
  int climb_max_iters = 400;        // full coordinate sweeps
  double climb_initial_step = 0.1;  // fraction of each bound width
  double climb_shrink = 0.5;
  double climb_min_step = 1e-10;
  double consistency_tol = 1e-6;
  int max_cycles = 20;
  std::uint64_t seed = 0;
  // Starts run on up to this many threads; the result does not depend on it.
  int threads = 1;
  // Start i begins at initial_points[i] (clamped) instead of a random point.
  // The number of starts is max(n_starts, initial_points.size()).
  std::vector<RealVector> initial_points;

  // Throws DomainError for out-of-range fields.
  void validate() const;
};

struct OptimizationResult {
  RealVector best_params;
  double best_value = kInfinity;
  // Best value after each macro-cycle of the start that produced best_value.
  std::vector<double> cycle_values;
  bool converged = false;
  long long evaluations = 0;
  int best_start = -1;
  std::vector<double> start_values;  // best value reached by each start

  static constexpr double kInfinity = std::numeric_limits<double>::infinity();
};

// Raised when no probe of any start produced a finite value. Carries the
// best-so-far record.
class OptimizationFailed : public Error {
 public:
  OptimizationFailed(const std::string& what, OptimizationResult best)
      : Error(what), best_so_far(std::move(best)) {}
  OptimizationResult best_so_far;
};

// May return +infinity (e.g. kInfiniteDivergence) for infeasible points; NaN
// is treated the same way. Must be safe to call concurrently when threads > 1.
using Objective = std::function<double(const RealVector&)>;
using ProgressCallback = std::function<void(int cycle, double best)>;

OptimizationResult minimize(const Objective& objective, std::span<const Interval> bounds,
                            const OptimizerConfig& config,
                            const ProgressCallback& progress = {});
OptimizationResult minimize(const Objective& objective, const ParamSpace& space,
                            const OptimizerConfig& config,
                            const ProgressCallback& progress = {});

// minimize(-objective) with values reported in the caller's sign.
OptimizationResult maximize(const Objective& objective, std::span<const Interval> bounds,
                            const OptimizerConfig& config,
                            const ProgressCallback& progress = {});
OptimizationResult maximize(const Objective& objective, const ParamSpace& space,
                            const OptimizerConfig& config,
                            const ProgressCallback& progress = {});

}  // namespace qitk
