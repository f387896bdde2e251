#include "qitk/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <numbers>
#include <thread>

#include "qitk/csv.hpp"

namespace qitk {

void parallel_for(int count, int threads, const std::function<void(int)>& fn) {
  const int workers = std::clamp(threads, 1, std::max(count, 1));
  if (workers == 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  {
    std::vector<std::jthread> pool;
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (int i = next++; i < count; i = next++) {
          try {
            fn(i);
          } catch (...) {
            std::lock_guard lock(error_mutex);
            if (!error) error = std::current_exception();
          }
        }
      });
    }
  }
  if (error) std::rethrow_exception(error);
}

// ---------------------------------------------------------------------------
// superpos

namespace {

SuperpositionBound stub_bound(std::string name) {
  SuperpositionBound b;
  b.name = name;
  b.evaluate = [name](const SuperpositionPoint&, double) -> double {
    throw NotImplementedError("superposition bound '" + name +
                              "' is a placeholder; its formula is not provided");
  };
  return b;
}

const Bipartition kFirstQubit{{0}};

}  // namespace

SuperpositionBound lps_bound() { return stub_bound("lps"); }
SuperpositionBound gour_bound() { return stub_bound("gour"); }

SuperpositionBound bound_by_name(const std::string& name) {
  if (name == "lps") return lps_bound();
  if (name == "gour") return gour_bound();
  throw LookupError("unknown superposition bound '" + name + "'");
}

SuperposPair superpos_pair(std::uint64_t seed, int pair_id) {
  const auto id = static_cast<std::uint64_t>(pair_id);
  return SuperposPair{
      std::get<PureState>(random_object(ParamKind::pure, DimSpec{2, 2}, derive_seed(seed, 2 * id))),
      std::get<PureState>(random_object(ParamKind::pure, DimSpec{2, 2}, derive_seed(seed, 2 * id + 1)))};
}

std::vector<SuperposRow> run_superpos(const SuperposConfig& config) {
  if (config.n_alpha < 2) throw DomainError("run_superpos: n_alpha must be >= 2");
  if (config.n_pairs < 0) throw DomainError("run_superpos: n_pairs must be >= 0");
  if (config.phase_steps < 1) throw DomainError("run_superpos: phase_steps must be >= 1");
  std::vector<std::vector<SuperposRow>> per_pair(static_cast<std::size_t>(config.n_pairs));

  parallel_for(config.n_pairs, config.threads, [&](int pair_id) {
    const SuperposPair pair = superpos_pair(config.seed, pair_id);
    auto& rows = per_pair[static_cast<std::size_t>(pair_id)];
    int point = 0;
    for (int ph = 0; ph < config.phase_steps; ++ph) {
      const double phase = 2.0 * std::numbers::pi * ph / config.phase_steps;
      for (int k = 0; k < config.n_alpha; ++k, ++point) {
        const double alpha_sq = static_cast<double>(k) / (config.n_alpha - 1);
        const double alpha = std::sqrt(alpha_sq);
        const double beta = std::sqrt(1.0 - alpha_sq);
        const ComplexVector gamma =
            alpha * pair.psi.amplitudes() + beta * std::polar(1.0, phase) * pair.phi.amplitudes();
        SuperposRow base{pair_id, alpha_sq, phase, std::nullopt, "", std::nullopt, false};
        if (gamma.norm() < 1e-8) {
          base.skip = true;
        } else {
          base.entanglement = pure_entanglement(make_pure(gamma, DimSpec{2, 2}), kFirstQubit);
        }
        if (config.bounds.empty()) {
          rows.push_back(base);
          continue;
        }
        const SuperpositionPoint at{pair.psi, pair.phi, alpha, beta, phase};
        for (std::size_t b = 0; b < config.bounds.size(); ++b) {
          const auto& bound = config.bounds[b];
          SuperposRow row = base;
          row.bound_name = bound.name;
          if (!row.skip) {
            if (bound.inner_range) {
              OptimizerConfig inner = config.inner_opt;
              inner.seed = derive_seed(config.inner_opt.seed,
                                       (static_cast<std::uint64_t>(pair_id) << 32) ^
                                           (static_cast<std::uint64_t>(point) << 8) ^ b);
              inner.threads = 1;
              const Interval box[1] = {*bound.inner_range};
              row.bound_value =
                  maximize([&](const RealVector& t) { return bound.evaluate(at, t(0)); }, box, inner)
                      .best_value;
            } else {
              row.bound_value = bound.evaluate(at, 0.0);
            }
          }
          rows.push_back(std::move(row));
        }
      }
    }
  });

  std::vector<SuperposRow> out;
  for (auto& rows : per_pair) out.insert(out.end(), rows.begin(), rows.end());
  return out;
}

void write_superpos_csv(std::ostream& out, const std::vector<SuperposRow>& rows, bool with_phase) {
  std::vector<std::string> header{"pair_id", "alpha_sq", "entanglement", "bound_name", "bound_value",
                                  "skip"};
  if (with_phase) header.push_back("phase");
  CsvWriter csv(out, header);
  for (const auto& r : rows) {
    std::vector<std::string> f{std::to_string(r.pair_id), format_real(r.alpha_sq),
                               format_real(r.entanglement), r.bound_name,
                               format_real(r.bound_value), r.skip ? "1" : "0"};
    if (with_phase) f.push_back(format_real(r.phase));
    csv.row(f);
  }
}

// ---------------------------------------------------------------------------
// mems

DensityMatrix mems_initial_state(double p, double q) {
  if (!(p >= 0.0 && p <= 1.0 && q >= 0.0 && q <= 1.0)) {
    throw DomainError("mems_initial_state: p and q must lie in [0, 1]");
  }
  ComplexMatrix a = ComplexMatrix::Zero(2, 2);
  a(0, 0) = p;
  a(1, 1) = 1.0 - p;
  ComplexMatrix b = ComplexMatrix::Zero(2, 2);
  b(0, 0) = q;
  b(1, 1) = 1.0 - q;
  return DensityMatrix::assume_valid(kron(a, b), DimSpec{2, 2});
}

OptimizationResult mems_max_concurrence(double p, double q, const OptimizerConfig& opt) {
  const DensityMatrix rho = mems_initial_state(p, q);
  const ParamSpace space = make_space(ParamKind::unitary, DimSpec{2, 2});
  const ComplexMatrix& r = rho.matrix();
  return maximize(
      [&](const RealVector& x) {
        const ComplexMatrix u = decode_unitary(space, x).matrix();
        ComplexMatrix rotated = u * r * u.adjoint();
        rotated = 0.5 * (rotated + rotated.adjoint()).eval();
        return concurrence(DensityMatrix::assume_valid(std::move(rotated), DimSpec{2, 2}));
      },
      space, opt);
}

std::vector<double> mems_grid(double resolution) {
  if (!(resolution > 0.0 && resolution <= 0.25)) {
    throw DomainError("mems: resolution must lie in (0, 0.25]");
  }
  const int steps = static_cast<int>(std::floor(0.5 / resolution + 1e-9));
  std::vector<double> grid;
  for (int k = 0; k <= steps; ++k) grid.push_back(std::min(k * resolution, 0.5));
  return grid;
}

std::vector<MemsRow> run_mems(const MemsConfig& config) {
  const std::vector<double> grid = mems_grid(config.resolution);
  const int n = static_cast<int>(grid.size());
  std::vector<MemsRow> rows(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
  parallel_for(n * n, config.threads, [&](int index) {
    const double p = grid[static_cast<std::size_t>(index / n)];
    const double q = grid[static_cast<std::size_t>(index % n)];
    OptimizerConfig opt = config.opt;
    opt.seed = derive_seed(config.opt.seed, static_cast<std::uint64_t>(index));
    opt.threads = 1;
    const double c = mems_max_concurrence(p, q, opt).best_value;
    rows[static_cast<std::size_t>(index)] = MemsRow{p, q, std::clamp(c, 0.0, 1.0), std::abs(0.5 - p)};
  });
  return rows;
}

void write_mems_csv(std::ostream& out, const std::vector<MemsRow>& rows) {
  CsvWriter csv(out, {"p", "q", "max_concurrence", "trace_dist"});
  for (const auto& r : rows) {
    csv.row({format_real(r.p), format_real(r.q), format_real(r.max_concurrence),
             format_real(r.trace_dist)});
  }
}

// ---------------------------------------------------------------------------
// bloch

std::string_view to_string(BlochClass c) {
  switch (c) {
    case BlochClass::density: return "density";
    case BlochClass::separable: return "separable";
    case BlochClass::pure: return "pure";
  }
  return "unknown";
}

BlochClass parse_bloch_class(std::string_view name) {
  for (auto c : {BlochClass::density, BlochClass::separable, BlochClass::pure}) {
    if (to_string(c) == name) return c;
  }
  throw LookupError("unknown bloch class '" + std::string(name) + "'");
}

namespace {

std::optional<DimSpec> composite_split(int n) {
  for (int f = 2; f * f <= n; ++f) {
    if (n % f == 0) return DimSpec{f, n / f};
  }
  return std::nullopt;
}

}  // namespace

std::vector<BlochVector> sample_bloch(int n, BlochClass cls, int count, std::uint64_t seed) {
  if (n < 2) throw DomainError("sample_bloch: n must be >= 2");
  DimSpec dims{n};
  ParamKind kind = ParamKind::density;
  switch (cls) {
    case BlochClass::density: kind = ParamKind::density; break;
    case BlochClass::pure: kind = ParamKind::pure; break;
    case BlochClass::separable: {
      auto split = composite_split(n);
      if (!split) {
        throw DomainError("sample_bloch: separable class needs a composite dimension; " +
                          std::to_string(n) + " is prime");
      }
      dims = *split;
      kind = ParamKind::separable;
      break;
    }
  }
  const ParamSpace space = make_space(kind, dims);
  std::vector<BlochVector> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) {
    std::mt19937_64 rng(derive_seed(seed, static_cast<std::uint64_t>(k)));
    out.push_back(density_to_bloch(decode_state(space, random_params(space, rng))));
  }
  return out;
}

std::vector<BlochRow> run_bloch(const BlochConfig& config) {
  const int coeffs = config.n * config.n - 1;
  if (config.ci < 0 || config.cj < 0 || config.ci >= coeffs || config.cj >= coeffs) {
    throw DomainError("run_bloch: projection indices must be < n^2 - 1");
  }
  std::vector<BlochClass> classes = config.classes;
  if (classes.empty()) {
    classes.push_back(BlochClass::density);
    if (composite_split(config.n)) classes.push_back(BlochClass::separable);
    classes.push_back(BlochClass::pure);
  }
  std::vector<BlochRow> rows;
  for (BlochClass cls : classes) {
    const auto samples = sample_bloch(config.n, cls, config.samples_per_class,
                                      derive_seed(config.seed, static_cast<std::uint64_t>(cls)));
    for (const auto& b : samples) {
      rows.push_back(BlochRow{cls, config.ci, config.cj, b.components(config.ci),
                              b.components(config.cj)});
    }
  }
  return rows;
}

void write_bloch_csv(std::ostream& out, const std::vector<BlochRow>& rows) {
  CsvWriter csv(out, {"class", "ci_index", "cj_index", "ci", "cj"});
  for (const auto& r : rows) {
    csv.row({std::string(to_string(r.cls)), std::to_string(r.ci), std::to_string(r.cj),
             format_real(r.vi), format_real(r.vj)});
  }
}

// ---------------------------------------------------------------------------
// additivity

OptimizerConfig default_joint_config() {
  OptimizerConfig c;
  c.n_starts = 1;
  c.anneal_sweeps = 2;
  c.climb_max_iters = 6;
  c.max_cycles = 2;
  c.consistency_tol = 1e-4;
  return c;
}

DensityMatrix joint_bipartite_state(const DensityMatrix& r1, const DensityMatrix& r2) {
  if (r1.dims().particles() != 2 || r2.dims().particles() != 2) {
    throw DimensionError("joint_bipartite_state: each party must be bipartite (two particles)");
  }
  const std::vector<int> perm{0, 2, 1, 3};
  const DensityMatrix joint = reorder_particles(tensor(r1, r2), perm);
  return regroup(joint, DimSpec{r1.dims()[0] * r2.dims()[0], r1.dims()[1] * r2.dims()[1]});
}

namespace {

// sigma_1 (x) sigma_2 in the joint separable parametrization.
RealVector product_warm_start(const ParamSpace& joint, const ParamSpace& s1, const RealVector& x1,
                              const ParamSpace& s2, const RealVector& x2) {
  const auto t1 = decompose_separable(s1, x1);
  const auto t2 = decompose_separable(s2, x2);
  std::vector<ProductTerm> terms;
  terms.reserve(t1.size() * t2.size());
  for (const auto& a : t1) {
    for (const auto& b : t2) {
      terms.push_back(ProductTerm{a.weight * b.weight,
                                  {kron(a.factors[0], b.factors[0]), kron(a.factors[1], b.factors[1])}});
    }
  }
  return encode_separable(joint, terms);
}

}  // namespace

AdditivityRow additivity_trial(const DensityMatrix& r1, const DensityMatrix& r2,
                               const AdditivityConfig& config, std::uint64_t seed) {
  AdditivityRow row;
  row.entropy_gap = von_neumann_entropy(tensor(r1, r2)) - von_neumann_entropy(r1) -
                    von_neumann_entropy(r2);
  try {
    OptimizerConfig single = config.opt;
    single.threads = 1;
    single.seed = derive_seed(seed, 1);
    const auto e1 = relative_entanglement(r1, single);
    single.seed = derive_seed(seed, 2);
    const auto e2 = relative_entanglement(r2, single);

    const DensityMatrix joint = joint_bipartite_state(r1, r2);
    RelativeEntanglementOptions options;
    options.separable_dims = joint.dims();
    options.default_warm_starts = false;
    options.random_starts = 0;
    const ParamSpace joint_space = make_space(ParamKind::separable, joint.dims());
    options.warm_starts.push_back(
        product_warm_start(joint_space, make_space(ParamKind::separable, r1.dims()),
                           e1.separable_params, make_space(ParamKind::separable, r2.dims()),
                           e2.separable_params));
    OptimizerConfig joint_cfg = config.joint_opt;
    joint_cfg.threads = 1;
    joint_cfg.seed = derive_seed(seed, 3);
    const auto ej = relative_entanglement(joint, joint_cfg, options);

    row.er_1 = e1.value;
    row.er_2 = e2.value;
    row.er_joint = ej.value;
    row.delta = ej.value - e1.value - e2.value;
  } catch (const OptimizationFailed& e) {
    row.failed = true;
    row.error = e.what();
  }
  return row;
}

namespace {

AdditivitySummary summarize(const std::vector<AdditivityRow>& rows, double delta_tol) {
  AdditivitySummary s;
  s.trials = static_cast<int>(rows.size());
  int ok = 0, above = 0;
  double sum = 0.0;
  for (const auto& r : rows) {
    s.max_entropy_gap = std::max(s.max_entropy_gap, std::abs(r.entropy_gap));
    if (r.failed) {
      ++s.failed;
      continue;
    }
    if (ok == 0) {
      s.min_delta = s.max_delta = r.delta;
    } else {
      s.min_delta = std::min(s.min_delta, r.delta);
      s.max_delta = std::max(s.max_delta, r.delta);
    }
    ++ok;
    sum += r.delta;
    if (r.delta >= -delta_tol) ++above;
  }
  if (ok > 0) {
    s.mean_delta = sum / ok;
    s.fraction_above_tol = static_cast<double>(above) / ok;
  }
  return s;
}

}  // namespace

AdditivityReport run_additivity(const AdditivityConfig& config) {
  if (config.trials < 0) throw DomainError("run_additivity: trials must be >= 0");
  if (config.party_dims.particles() != 2) {
    throw DimensionError("run_additivity: party dims must describe two particles");
  }
  const ParamKind kind = config.force_separable ? ParamKind::separable : ParamKind::density;
  const ParamSpace party = make_space(kind, config.party_dims);
  std::vector<AdditivityRow> rows(static_cast<std::size_t>(config.trials));

  parallel_for(config.trials, config.threads, [&](int trial) {
    const std::uint64_t trial_seed = derive_seed(config.seed, static_cast<std::uint64_t>(trial));
    AdditivityRow row;
    if (config.mode == AdditivityMode::sample) {
      std::mt19937_64 rng(trial_seed);
      const DensityMatrix r1 = decode_state(party, random_params(party, rng));
      const DensityMatrix r2 = decode_state(party, random_params(party, rng));
      row = additivity_trial(r1, r2, config, trial_seed);
    } else {
      // Search (r1, r2) for the smallest delta.
      std::vector<Interval> box = party.bounds;
      box.insert(box.end(), party.bounds.begin(), party.bounds.end());
      const Eigen::Index n = party.param_count;
      auto split = [&](const RealVector& x) {
        return std::pair{decode_state(party, x.head(n)), decode_state(party, x.tail(n))};
      };
      OptimizerConfig outer = config.outer_opt;
      outer.seed = trial_seed;
      outer.threads = 1;
      try {
        const auto best = minimize(
            [&](const RealVector& x) {
              const auto [r1, r2] = split(x);
              const AdditivityRow r = additivity_trial(r1, r2, config, trial_seed);
              return r.failed ? OptimizationResult::kInfinity : r.delta;
            },
            box, outer);
        const auto [r1, r2] = split(best.best_params);
        row = additivity_trial(r1, r2, config, trial_seed);
      } catch (const OptimizationFailed& e) {
        row.failed = true;
        row.error = e.what();
      }
    }
    row.trial = trial;
    rows[static_cast<std::size_t>(trial)] = std::move(row);
  });

  AdditivityReport report{std::move(rows), {}};
  report.summary = summarize(report.rows, config.delta_tol);
  return report;
}

void write_additivity_csv(std::ostream& out, const std::vector<AdditivityRow>& rows) {
  CsvWriter csv(out, {"trial", "er_1", "er_2", "er_joint", "delta", "failed"});
  for (const auto& r : rows) {
    if (r.failed) {
      csv.row({std::to_string(r.trial), "", "", "", "", "1"});
    } else {
      csv.row({std::to_string(r.trial), format_real(r.er_1), format_real(r.er_2),
               format_real(r.er_joint), format_real(r.delta), "0"});
    }
  }
}

void write_additivity_summary(std::ostream& out, const AdditivitySummary& s) {
  out << "trials=" << s.trials << " failed=" << s.failed << " min_delta=" << format_real(s.min_delta)
      << " mean_delta=" << format_real(s.mean_delta) << " max_delta=" << format_real(s.max_delta)
      << " fraction_delta_above_tol=" << format_real(s.fraction_above_tol)
      << " max_entropy_additivity_error=" << format_real(s.max_entropy_gap) << '\n';
}

}  // namespace qitk
