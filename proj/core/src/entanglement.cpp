#include "qitk/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <mutex>
#include <random>

namespace qitk {
namespace {

void require_two_qubits(const DensityMatrix& rho, const char* what) {
  if (!(rho.dims() == DimSpec{2, 2})) {
    throw DimensionError(std::string(what) + ": defined for two qubits (dims [2,2])");
  }
}

ComplexMatrix partial_transpose_b(const DensityMatrix& rho, const Bipartition& cut) {
  cut.validate(rho.dims());
  return partial_transpose(rho.matrix(), rho.dims(), cut.part_b(rho.dims()));
}

// Reuses incremental decoders across objective calls, one per concurrent caller.
class DecoderPool {
 public:
  explicit DecoderPool(ParamSpace space) : space_(std::move(space)) {}

  std::unique_ptr<SeparableDecoder> acquire() {
    {
      std::lock_guard lock(mutex_);
      if (!free_.empty()) {
        auto d = std::move(free_.back());
        free_.pop_back();
        return d;
      }
    }
    return std::make_unique<SeparableDecoder>(space_);
  }

  void release(std::unique_ptr<SeparableDecoder> d) {
    std::lock_guard lock(mutex_);
    free_.push_back(std::move(d));
  }

 private:
  ParamSpace space_;
  std::mutex mutex_;
  std::vector<std::unique_ptr<SeparableDecoder>> free_;
};

RealVector separable_warm_start(const ParamSpace& space, const RealVector& diagonal) {
  const DimSpec& dims = space.dims;
  const int d = dims.total();
  std::vector<ProductTerm> terms(static_cast<std::size_t>(d) * static_cast<std::size_t>(d));
  std::vector<int> digits(static_cast<std::size_t>(dims.particles()));
  for (int t = 0; t < d * d; ++t) {
    const int basis = t % d;
    int rest = basis;
    for (int k = dims.particles() - 1; k >= 0; --k) {
      digits[static_cast<std::size_t>(k)] = rest % dims[k];
      rest /= dims[k];
    }
    auto& term = terms[static_cast<std::size_t>(t)];
    term.weight = diagonal(basis) / d;
    for (int k = 0; k < dims.particles(); ++k) {
      ComplexVector e = ComplexVector::Zero(dims[k]);
      e(digits[static_cast<std::size_t>(k)]) = 1.0;
      term.factors.push_back(std::move(e));
    }
  }
  return encode_separable(space, terms);
}

}  // namespace

SchmidtDecomposition schmidt_decomposition(const PureState& psi, const Bipartition& cut,
                                           const Tolerance& tol) {
  const DimSpec& dims = psi.dims();
  cut.validate(dims);
  std::vector<int> perm = cut.part_a;
  const std::vector<int> b = cut.part_b(dims);
  perm.insert(perm.end(), b.begin(), b.end());
  const ComplexVector v = reorder_particles(psi.amplitudes(), dims, perm);
  int da = 1;
  for (int p : cut.part_a) da *= dims[p];
  const int db = dims.total() / da;
  ComplexMatrix m(da, db);
  for (int i = 0; i < da; ++i) {
    for (int j = 0; j < db; ++j) m(i, j) = v(i * db + j);
  }
  Eigen::JacobiSVD<ComplexMatrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const RealVector& s = svd.singularValues();
  Eigen::Index rank = 0;
  while (rank < s.size() && s(rank) > tol.abs_eps) ++rank;
  SchmidtDecomposition out;
  out.lambdas = s.head(rank).cwiseAbs2();
  out.basis_a = svd.matrixU().leftCols(rank);
  out.basis_b = svd.matrixV().leftCols(rank).conjugate();
  return out;
}

double pure_entanglement(const PureState& psi, const Bipartition& cut) {
  const auto sd = schmidt_decomposition(psi, cut);
  RealVector p = sd.lambdas / sd.lambdas.sum();
  return shannon_entropy(cpd_assume_valid(std::move(p)));
}

double concurrence(const DensityMatrix& rho) {
  require_two_qubits(rho, "concurrence");
  const ComplexMatrix yy = kron(pauli_y(), pauli_y());
  const ComplexMatrix flipped = yy * rho.matrix().conjugate() * yy;
  const ComplexMatrix root = psd_sqrt(rho.matrix());
  const ComplexMatrix r = root * flipped * root;
  RealVector ev = hermitian_eigenvalues(0.5 * (r + r.adjoint()));
  for (Eigen::Index i = 0; i < ev.size(); ++i) ev(i) = std::sqrt(std::max(ev(i), 0.0));
  std::sort(ev.data(), ev.data() + ev.size(), std::greater<>());
  return std::clamp(ev(0) - ev(1) - ev(2) - ev(3), 0.0, 1.0);
}

double tangle(const DensityMatrix& rho) {
  const double c = concurrence(rho);
  return c * c;
}

double eof_from_concurrence(double c) {
  c = std::clamp(c, 0.0, 1.0);
  return binary_entropy(0.5 * (1.0 + std::sqrt(1.0 - c * c)));
}

double eof_2qubit(const DensityMatrix& rho) { return eof_from_concurrence(concurrence(rho)); }

DensityMatrix werner_state(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("werner_state: p must lie in [0, 1]");
  const auto singlet = pure_to_density(std::get<PureState>(famous_state("singlet")));
  ComplexMatrix m = p * singlet.matrix() + (1.0 - p) * ComplexMatrix::Identity(4, 4) / 4.0;
  return DensityMatrix::assume_valid(std::move(m), DimSpec{2, 2});
}

double min_partial_transpose_eigenvalue(const DensityMatrix& rho, const Bipartition& cut) {
  return hermitian_eigenvalues(partial_transpose_b(rho, cut)).minCoeff();
}

double negativity(const DensityMatrix& rho, const Bipartition& cut) {
  return std::max(0.0, 0.5 * (trace_norm_hermitian(partial_transpose_b(rho, cut)) - 1.0));
}

double log_negativity(const DensityMatrix& rho, const Bipartition& cut) {
  return std::max(0.0, std::log2(trace_norm_hermitian(partial_transpose_b(rho, cut))));
}

bool ppt_test(const DensityMatrix& rho, const Bipartition& cut, const Tolerance& tol) {
  return min_partial_transpose_eigenvalue(rho, cut) >= -tol.abs_eps;
}

RelativeEntanglement relative_entanglement(const DensityMatrix& rho, const OptimizerConfig& config,
                                           const RelativeEntanglementOptions& options) {
  const DimSpec sep_dims = options.separable_dims.value_or(rho.dims());
  if (sep_dims.total() != rho.dim()) {
    throw DimensionError("relative_entanglement: separable dims do not match the state");
  }
  if (sep_dims.particles() < 2) {
    throw DomainError("relative_entanglement: needs at least two particles");
  }
  const ParamSpace space = make_space(ParamKind::separable, sep_dims);
  const Tolerance tol = options.tol;
  const double entropy = von_neumann_entropy(rho);
  const ComplexMatrix& r = rho.matrix();
  DecoderPool pool(space);
  const Objective objective = [&pool, &r, entropy, tol](const RealVector& x) {
    auto decoder = pool.acquire();
    const double cross = cross_entropy(r, decoder->decode(x), tol);
    pool.release(std::move(decoder));
    return is_infinite_divergence(cross) ? cross : cross - entropy;
  };

  OptimizerConfig cfg = config;
  cfg.initial_points = options.warm_starts;
  if (options.default_warm_starts) {
    cfg.initial_points.push_back(separable_warm_start(space, RealVector::Ones(rho.dim())));
    cfg.initial_points.push_back(separable_warm_start(space, r.diagonal().real().cwiseMax(0.0)));
  }
  const int random_starts = options.random_starts.value_or(config.n_starts);
  if (random_starts < 0) throw DomainError("relative_entanglement: random_starts must be >= 0");
  cfg.n_starts = random_starts + static_cast<int>(cfg.initial_points.size());
  if (cfg.n_starts < 1) throw DomainError("relative_entanglement: no starting points");

  if (options.scale_temperature) {
    std::mt19937_64 rng(derive_seed(config.seed, 0xE5u));
    for (int probe = 0; probe < 64; ++probe) {
      const double v = objective(random_params(space, rng));
      if (std::isfinite(v)) {
        if (v > 0.0) cfg.anneal_initial_temp = v;
        break;
      }
    }
  }

  OptimizationResult run = minimize(objective, space, cfg);
  DensityMatrix sigma = decode_state(space, run.best_params);
  const double value = std::max(run.best_value, 0.0);
  RealVector params = clamp_to_bounds(space.bounds, run.best_params);
  return RelativeEntanglement{value, regroup(sigma, rho.dims()), std::move(params), std::move(run)};
}

double singlet_fraction(const DensityMatrix& rho, const OptimizerConfig& config) {
  require_two_qubits(rho, "singlet_fraction");
  const ParamSpace space = make_space(ParamKind::unitary, DimSpec{2});
  const ComplexVector phi = std::get<PureState>(famous_state("bell_phi_plus")).amplitudes();
  const ComplexMatrix& r = rho.matrix();
  const Objective overlap = [&space, &phi, &r](const RealVector& x) {
    const ComplexMatrix u = decode_unitary(space, x).matrix();
    const ComplexVector v = kron(u, ComplexMatrix::Identity(2, 2)) * phi;
    return v.dot(r * v).real();
  };
  const auto result = maximize(overlap, space, config);
  return std::clamp(result.best_value, 0.0, 1.0);
}

}  // namespace qitk
