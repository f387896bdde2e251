#include <atomic>
#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "qitk/entanglement.hpp"
#include "qitk/errors.hpp"
#include "qitk/optimizer.hpp"
#include "test_support.hpp"

namespace qitk {
namespace {

std::vector<Interval> box(int n, double lo, double hi) {
  return std::vector<Interval>(static_cast<std::size_t>(n), Interval{lo, hi});
}

double sphere(const RealVector& x) { return x.squaredNorm(); }

double rastrigin(const RealVector& x) {
  double s = 10.0 * static_cast<double>(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    s += x(i) * x(i) - 10.0 * std::cos(2.0 * std::numbers::pi * x(i));
  }
  return s;
}

void expect_non_increasing(const OptimizationResult& r) {
  ASSERT_FALSE(r.cycle_values.empty());
  for (std::size_t i = 1; i < r.cycle_values.size(); ++i) {
    EXPECT_LE(r.cycle_values[i], r.cycle_values[i - 1]);
  }
  EXPECT_EQ(r.best_value, r.cycle_values.back());
}

TEST(Minimize, Sphere) {
  OptimizerConfig c;
  c.seed = 1;
  const auto r = minimize(sphere, box(8, -1.0, 1.0), c);
  EXPECT_LT(r.best_value, 1e-8);
  EXPECT_TRUE(r.converged);
  EXPECT_GT(r.evaluations, 0);
  EXPECT_EQ(static_cast<int>(r.start_values.size()), c.n_starts);
  expect_non_increasing(r);
}

TEST(Minimize, RastriginGlobalBasinFromGridOracle) {
  // Brute-force grid over the box locates the global basin.
  const double lo = -5.12, hi = 5.12, step = 0.32;
  const int pts = static_cast<int>(std::round((hi - lo) / step)) + 1;
  double grid_best = std::numeric_limits<double>::infinity();
  RealVector grid_arg(4), x(4);
  for (int a = 0; a < pts; ++a)
    for (int b = 0; b < pts; ++b)
      for (int c = 0; c < pts; ++c)
        for (int d = 0; d < pts; ++d) {
          x << lo + a * step, lo + b * step, lo + c * step, lo + d * step;
          const double v = rastrigin(x);
          if (v < grid_best) {
            grid_best = v;
            grid_arg = x;
          }
        }
  ASSERT_LT(grid_arg.cwiseAbs().maxCoeff(), 0.5);

  int found = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    OptimizerConfig c;
    c.seed = seed;
    const auto r = minimize(rastrigin, box(4, lo, hi), c);
    expect_non_increasing(r);
    if ((r.best_params - grid_arg).cwiseAbs().maxCoeff() < 0.5 && r.best_value < 1e-6) ++found;
  }
  EXPECT_GE(found, 9);
}

TEST(Maximize, NegatedSphere) {
  OptimizerConfig c;
  c.seed = 2;
  const auto r = maximize([](const RealVector& x) { return -x.squaredNorm(); }, box(5, -1.0, 1.0), c);
  EXPECT_NEAR(r.best_value, 0.0, 1e-8);
}

TEST(Maximize, SignMatchesMinimizeOfNegation) {
  OptimizerConfig c;
  c.seed = 3;
  c.n_starts = 2;
  const auto f = [](const RealVector& x) { return std::sin(3 * x(0)) * std::cos(2 * x(1)) + x(0); };
  const auto up = maximize(f, box(2, -2.0, 2.0), c);
  const auto down = minimize([&](const RealVector& x) { return -f(x); }, box(2, -2.0, 2.0), c);
  EXPECT_EQ(up.best_value, -down.best_value);
  EXPECT_EQ(up.best_params, down.best_params);
  for (std::size_t i = 0; i < up.cycle_values.size(); ++i) {
    EXPECT_EQ(up.cycle_values[i], -down.cycle_values[i]);
  }
}

TEST(Maximize, ConcurrenceOverPureStates) {
  const auto space = make_space(ParamKind::pure, DimSpec{2, 2});
  int hits = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    OptimizerConfig c;
    c.seed = seed;
    c.n_starts = 2;
    c.max_cycles = 6;
    const auto r = maximize([&](const RealVector& x) { return concurrence(decode_state(space, x)); },
                            space, c);
    if (std::abs(r.best_value - 1.0) <= 1e-4) ++hits;
  }
  EXPECT_GE(hits, 9);
}

TEST(Maximize, BellOverlapOverDensitySpace) {
  const auto space = make_space(ParamKind::density, DimSpec{2, 2});
  const ComplexVector phi = std::get<PureState>(famous_state("bell_phi_plus")).amplitudes();
  OptimizerConfig c;
  c.seed = 4;
  c.n_starts = 2;
  c.max_cycles = 6;
  const auto r = maximize(
      [&](const RealVector& x) { return phi.dot(decode_state(space, x).matrix() * phi).real(); },
      space, c);
  EXPECT_NEAR(r.best_value, 1.0, 1e-4);
}

TEST(Minimize, DeterministicAndThreadIndependent) {
  OptimizerConfig c;
  c.seed = 11;
  c.n_starts = 4;
  const auto a = minimize(rastrigin, box(3, -5.12, 5.12), c);
  const auto b = minimize(rastrigin, box(3, -5.12, 5.12), c);
  c.threads = 3;
  const auto t = minimize(rastrigin, box(3, -5.12, 5.12), c);
  for (const auto* r : {&b, &t}) {
    EXPECT_EQ(a.best_value, r->best_value);
    EXPECT_EQ(a.best_params, r->best_params);
    EXPECT_EQ(a.cycle_values, r->cycle_values);
    EXPECT_EQ(a.start_values, r->start_values);
    EXPECT_EQ(a.evaluations, r->evaluations);
    EXPECT_EQ(a.best_start, r->best_start);
  }
  c.threads = 1;
  c.seed = 12;
  EXPECT_NE(minimize(rastrigin, box(3, -5.12, 5.12), c).best_params, a.best_params);
}

TEST(Minimize, ProbesStayInBounds) {
  std::atomic<bool> outside{false};
  const auto bounds = box(3, 0.25, 0.75);
  OptimizerConfig c;
  c.seed = 5;
  c.anneal_step = 5.0;
  minimize(
      [&](const RealVector& x) {
        for (Eigen::Index i = 0; i < x.size(); ++i) {
          if (x(i) < 0.25 || x(i) > 0.75) outside = true;
        }
        return (x.array() - 2.0).square().sum();
      },
      bounds, c);
  EXPECT_FALSE(outside);
}

TEST(Minimize, NeverWorseThanInitialPoint) {
  OptimizerConfig c;
  c.seed = 6;
  c.n_starts = 1;
  c.max_cycles = 1;
  c.anneal_sweeps = 1;
  c.climb_max_iters = 1;
  RealVector start = RealVector::Constant(4, 0.01);
  c.initial_points = {start};
  const auto r = minimize(rastrigin, box(4, -5.12, 5.12), c);
  EXPECT_LE(r.best_value, rastrigin(start));
}

TEST(Minimize, InfeasibleRegionsAreSkipped) {
  OptimizerConfig c;
  c.seed = 7;
  const auto r = minimize(
      [](const RealVector& x) {
        if (x(0) < 0.0) return OptimizationResult::kInfinity;
        if (x(1) > 0.5) return std::numeric_limits<double>::quiet_NaN();
        return (x(0) - 0.3) * (x(0) - 0.3) + (x(1) - 0.2) * (x(1) - 0.2);
      },
      box(2, -1.0, 1.0), c);
  EXPECT_LT(r.best_value, 1e-8);
}

TEST(Minimize, AllInfeasibleThrows) {
  OptimizerConfig c;
  c.n_starts = 2;
  try {
    minimize([](const RealVector&) { return OptimizationResult::kInfinity; }, box(2, 0.0, 1.0), c);
    FAIL() << "expected OptimizationFailed";
  } catch (const OptimizationFailed& e) {
    EXPECT_FALSE(std::isfinite(e.best_so_far.best_value));
    EXPECT_GT(e.best_so_far.evaluations, 0);
  }
}

TEST(Minimize, ProgressCallbackSeesCycles) {
  OptimizerConfig c;
  c.n_starts = 1;
  c.seed = 8;
  std::vector<double> seen;
  const auto r = minimize(sphere, box(2, -1.0, 1.0), c,
                          [&](int, double best) { seen.push_back(best); });
  EXPECT_EQ(seen.size(), r.cycle_values.size());
}

TEST(OptimizerConfig, Validation) {
  OptimizerConfig c;
  EXPECT_NO_THROW(c.validate());
  c.n_starts = 0;
  EXPECT_THROW(c.validate(), DomainError);
  c = {};
  c.anneal_cooling = 1.0;
  EXPECT_THROW(c.validate(), DomainError);
  c = {};
  c.climb_shrink = 0.0;
  EXPECT_THROW(c.validate(), DomainError);
  c = {};
  c.anneal_initial_temp = -1.0;
  EXPECT_THROW(minimize(sphere, box(1, 0.0, 1.0), c), DomainError);
  EXPECT_THROW(minimize(sphere, std::vector<Interval>{}, OptimizerConfig{}), DimensionError);
}

}  // namespace
}  // namespace qitk
