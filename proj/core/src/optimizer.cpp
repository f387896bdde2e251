#include "qitk/optimizer.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <random>
#include <string>
#include <thread>

namespace qitk {
namespace {

constexpr int kFeasibilityProbes = 64;

struct StartResult {
  RealVector best_params;
  double best_value = OptimizationResult::kInfinity;
  std::vector<double> cycle_values;
  bool converged = false;
  long long evaluations = 0;
};

class StartRunner {
 public:
  StartRunner(const Objective& objective, std::span<const Interval> bounds,
              const OptimizerConfig& config, int start, std::mutex& progress_mutex,
              const ProgressCallback& progress)
      : objective_(objective),
        bounds_(bounds),
        config_(config),
        start_(start),
        rng_(derive_seed(config.seed, static_cast<std::uint64_t>(start))),
        progress_mutex_(progress_mutex),
        progress_(progress) {}

  StartResult run() {
    RealVector x = initial_point();
    double fx = evaluate(x);
    for (int probe = 0; !std::isfinite(fx) && probe < kFeasibilityProbes; ++probe) {
      RealVector y = random_point();
      const double fy = evaluate(y);
      if (fy < fx || std::isfinite(fy)) {
        x = std::move(y);
        fx = fy;
      }
    }
    result_.best_params = x;
    result_.best_value = fx;

    for (int cycle = 0; cycle < config_.max_cycles; ++cycle) {
      anneal();
      climb();
      result_.cycle_values.push_back(result_.best_value);
      if (progress_) {
        std::lock_guard lock(progress_mutex_);
        progress_(cycle, result_.best_value);
      }
      const auto n = result_.cycle_values.size();
      if (n >= 2 && std::isfinite(result_.best_value) &&
          std::abs(result_.cycle_values[n - 1] - result_.cycle_values[n - 2]) <
              config_.consistency_tol) {
        result_.converged = true;
        break;
      }
    }
    return std::move(result_);
  }

 private:
  double evaluate(const RealVector& x) {
    ++result_.evaluations;
    const double v = objective_(x);
    return std::isnan(v) ? OptimizationResult::kInfinity : v;
  }

  void record(const RealVector& x, double fx) {
    if (fx < result_.best_value) {
      result_.best_value = fx;
      result_.best_params = x;
    }
  }

  RealVector random_point() {
    RealVector x(static_cast<Eigen::Index>(bounds_.size()));
    for (std::size_t i = 0; i < bounds_.size(); ++i) {
      x(static_cast<Eigen::Index>(i)) =
          std::uniform_real_distribution<double>(bounds_[i].lo, bounds_[i].hi)(rng_);
    }
    return x;
  }

  RealVector initial_point() {
    const auto s = static_cast<std::size_t>(start_);
    if (s < config_.initial_points.size()) {
      const RealVector& p = config_.initial_points[s];
      if (static_cast<std::size_t>(p.size()) != bounds_.size()) {
        throw DimensionError("minimize: initial point has the wrong length");
      }
      return clamp_to_bounds(bounds_, p);
    }
    return random_point();
  }

  // Metropolis walk on one coordinate at a time with geometric cooling.
  void anneal() {
    RealVector x = result_.best_params;
    double fx = result_.best_value;
    double temp = config_.anneal_initial_temp;
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int sweep = 0; sweep < config_.anneal_sweeps; ++sweep) {
      const double scale = config_.anneal_step * temp / config_.anneal_initial_temp;
      for (std::size_t j = 0; j < bounds_.size(); ++j) {
        const auto jj = static_cast<Eigen::Index>(j);
        const double old = x(jj);
        x(jj) = std::clamp(old + gauss(rng_) * scale * bounds_[j].width(), bounds_[j].lo,
                           bounds_[j].hi);
        const double fy = evaluate(x);
        bool accept;
        if (!std::isfinite(fx)) {
          accept = true;
        } else if (!std::isfinite(fy)) {
          accept = false;
        } else {
          accept = fy <= fx || unit(rng_) < std::exp(-(fy - fx) / temp);
        }
        if (accept) {
          fx = fy;
          record(x, fx);
        } else {
          x(jj) = old;
        }
      }
      temp *= config_.anneal_cooling;
    }
  }

  // Coordinate pattern search from the best point.
  void climb() {
    RealVector x = result_.best_params;
    double fx = result_.best_value;
    double step = config_.climb_initial_step;
    for (int iter = 0; iter < config_.climb_max_iters && step >= config_.climb_min_step; ++iter) {
      bool improved = false;
      for (std::size_t j = 0; j < bounds_.size(); ++j) {
        const auto jj = static_cast<Eigen::Index>(j);
        const double old = x(jj);
        const double delta = step * bounds_[j].width();
        for (double sign : {1.0, -1.0}) {
          const double cand = std::clamp(old + sign * delta, bounds_[j].lo, bounds_[j].hi);
          if (cand == old) continue;
          x(jj) = cand;
          const double fy = evaluate(x);
          if (fy < fx) {
            fx = fy;
            improved = true;
            break;
          }
          x(jj) = old;
        }
      }
      record(x, fx);
      if (!improved) step *= config_.climb_shrink;
    }
  }

  const Objective& objective_;
  std::span<const Interval> bounds_;
  const OptimizerConfig& config_;
  int start_;
  std::mt19937_64 rng_;
  std::mutex& progress_mutex_;
  const ProgressCallback& progress_;
  StartResult result_;
};

}  // namespace

void OptimizerConfig::validate() const {
  auto fail = [](const char* what) { throw DomainError(std::string("OptimizerConfig: ") + what); };
  if (n_starts < 1) fail("n_starts must be >= 1");
  if (!(anneal_initial_temp > 0.0)) fail("anneal_initial_temp must be > 0");
  if (!(anneal_cooling > 0.0 && anneal_cooling < 1.0)) fail("anneal_cooling must be in (0, 1)");
  if (anneal_sweeps < 0) fail("anneal_sweeps must be >= 0");
  if (!(anneal_step > 0.0)) fail("anneal_step must be > 0");
  if (climb_max_iters < 0) fail("climb_max_iters must be >= 0");
  if (!(climb_initial_step > 0.0)) fail("climb_initial_step must be > 0");
  if (!(climb_shrink > 0.0 && climb_shrink < 1.0)) fail("climb_shrink must be in (0, 1)");
  if (!(climb_min_step > 0.0)) fail("climb_min_step must be > 0");
  if (!(consistency_tol > 0.0)) fail("consistency_tol must be > 0");
  if (max_cycles < 1) fail("max_cycles must be >= 1");
  if (threads < 1) fail("threads must be >= 1");
}

OptimizationResult minimize(const Objective& objective, std::span<const Interval> bounds,
                            const OptimizerConfig& config, const ProgressCallback& progress) {
  config.validate();
  if (bounds.empty()) throw DimensionError("minimize: empty parameter box");
  for (const auto& iv : bounds) {
    if (!std::isfinite(iv.lo) || !std::isfinite(iv.hi) || iv.hi < iv.lo) {
      throw DomainError("minimize: bounds must be finite, non-empty intervals");
    }
  }

  const int starts = std::max(config.n_starts, static_cast<int>(config.initial_points.size()));
  std::vector<StartResult> results(static_cast<std::size_t>(starts));
  std::mutex progress_mutex;
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;

  auto worker = [&] {
    for (int s = next++; s < starts; s = next++) {
      try {
        results[static_cast<std::size_t>(s)] =
            StartRunner(objective, bounds, config, s, progress_mutex, progress).run();
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };
  const int nthreads = std::min(config.threads, starts);
  if (nthreads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
  }
  if (error) std::rethrow_exception(error);

  OptimizationResult out;
  for (int s = 0; s < starts; ++s) {
    auto& r = results[static_cast<std::size_t>(s)];
    out.evaluations += r.evaluations;
    out.start_values.push_back(r.best_value);
    // Strict comparison keeps the lowest start index on ties.
    if (out.best_start < 0 || r.best_value < out.best_value) {
      out.best_start = s;
      out.best_value = r.best_value;
    }
  }
  auto& best = results[static_cast<std::size_t>(out.best_start)];
  out.best_params = std::move(best.best_params);
  out.cycle_values = std::move(best.cycle_values);
  out.converged = best.converged;
  if (!std::isfinite(out.best_value)) {
    throw OptimizationFailed("minimize: objective was infinite at every probe", std::move(out));
  }
  return out;
}

OptimizationResult minimize(const Objective& objective, const ParamSpace& space,
                            const OptimizerConfig& config, const ProgressCallback& progress) {
  return minimize(objective, space.bounds, config, progress);
}

OptimizationResult maximize(const Objective& objective, std::span<const Interval> bounds,
                            const OptimizerConfig& config, const ProgressCallback& progress) {
  // The infeasibility signal stays +infinity on the negated side.
  const Objective negated = [&objective](const RealVector& x) {
    const double v = objective(x);
    return std::isinf(v) && v > 0.0 ? v : -v;
  };
  ProgressCallback flipped;
  if (progress) flipped = [&progress](int cycle, double best) { progress(cycle, -best); };
  OptimizationResult r;
  try {
    r = minimize(negated, bounds, config, flipped);
  } catch (OptimizationFailed& failed) {
    failed.best_so_far.best_value = -failed.best_so_far.best_value;
    throw;
  }
  r.best_value = -r.best_value;
  for (double& v : r.cycle_values) v = -v;
  for (double& v : r.start_values) v = -v;
  return r;
}

OptimizationResult maximize(const Objective& objective, const ParamSpace& space,
                            const OptimizerConfig& config, const ProgressCallback& progress) {
  return maximize(objective, space.bounds, config, progress);
}

}  // namespace qitk
