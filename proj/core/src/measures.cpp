#include "qitk/measures.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

namespace qitk {

double shannon_entropy(const CPD& p) {
  double h = 0.0;
  for (int i = 0; i < p.size(); ++i) h -= xlog2x(p[i]);
  return std::max(h, 0.0);
}

double binary_entropy(double p) { return -xlog2x(p) - xlog2x(1.0 - p); }

CPD spectrum(const DensityMatrix& rho) {
  RealVector v = hermitian_eigenvalues(rho.matrix()).cwiseMax(0.0);
  v /= v.sum();
  return cpd_assume_valid(std::move(v));
}

double von_neumann_entropy(const DensityMatrix& rho) { return shannon_entropy(spectrum(rho)); }

double purity(const DensityMatrix& rho) {
  // tr(rho^2) = sum |rho_ij|^2 for Hermitian rho.
  return rho.matrix().squaredNorm();
}

double linear_entropy(const DensityMatrix& rho) {
  const double d = rho.dim();
  return d / (d - 1.0) * (1.0 - purity(rho));
}

double participation_ratio(const DensityMatrix& rho) { return 1.0 / purity(rho); }

double cross_entropy(const ComplexMatrix& rho, const ComplexMatrix& sigma,
                     const Tolerance& tol) {
  require_same_shape(rho, sigma, "cross_entropy");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(sigma);
  const RealVector& mu = es.eigenvalues();
  const ComplexMatrix& w = es.eigenvectors();
  // <w_j|rho|w_j> is the weight rho puts on each eigenvector of sigma.
  const RealVector weight = (w.adjoint() * rho * w).diagonal().real();
  double value = 0.0;
  for (Eigen::Index j = 0; j < mu.size(); ++j) {
    if (mu(j) > tol.abs_eps) {
      value -= weight(j) * std::log2(mu(j));
    } else if (weight(j) > tol.abs_eps) {
      return kInfiniteDivergence;
    }
  }
  return value;
}

double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma,
                        const Tolerance& tol) {
  if (!(rho.dims() == sigma.dims())) throw DimensionError("relative_entropy: dims mismatch");
  const double cross = cross_entropy(rho.matrix(), sigma.matrix(), tol);
  if (is_infinite_divergence(cross)) return kInfiniteDivergence;
  return std::max(cross - von_neumann_entropy(rho), 0.0);
}

double kl_divergence(const CPD& p, const CPD& q, const Tolerance& tol) {
  if (p.size() != q.size()) throw DimensionError("kl_divergence: length mismatch");
  double value = 0.0;
  for (int i = 0; i < p.size(); ++i) {
    if (p[i] <= 0.0) continue;
    if (q[i] <= tol.abs_eps) {
      if (p[i] > tol.abs_eps) return kInfiniteDivergence;
      continue;
    }
    value += p[i] * std::log2(p[i] / q[i]);
  }
  return std::max(value, 0.0);
}

std::string_view to_string(DistanceKind kind) {
  switch (kind) {
    case DistanceKind::hilbert_schmidt: return "hilbert_schmidt";
    case DistanceKind::trace: return "trace";
    case DistanceKind::fidelity: return "fidelity";
    case DistanceKind::bures_distance: return "bures_distance";
    case DistanceKind::bures_angle: return "bures_angle";
    case DistanceKind::fubini_study: return "fubini_study";
  }
  return "unknown";
}

DistanceKind parse_distance_kind(std::string_view name) {
  for (auto k : {DistanceKind::hilbert_schmidt, DistanceKind::trace, DistanceKind::fidelity,
                 DistanceKind::bures_distance, DistanceKind::bures_angle,
                 DistanceKind::fubini_study}) {
    if (to_string(k) == name) return k;
  }
  throw LookupError("unknown distance kind '" + std::string(name) + "'");
}

double fidelity(const DensityMatrix& a, const DensityMatrix& b) {
  require_same_shape(a.matrix(), b.matrix(), "fidelity");
  const ComplexMatrix sa = psd_sqrt(a.matrix());
  const ComplexMatrix inner = sa * b.matrix() * sa;
  const RealVector ev = hermitian_eigenvalues(0.5 * (inner + inner.adjoint()));
  double root = 0.0;
  for (Eigen::Index i = 0; i < ev.size(); ++i) root += std::sqrt(std::max(ev(i), 0.0));
  return std::clamp(root * root, 0.0, 1.0);
}

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
  require_same_shape(a.matrix(), b.matrix(), "trace_distance");
  return 0.5 * trace_norm_hermitian(a.matrix() - b.matrix());
}

namespace {

// Unit vector spanning a rank-one density matrix.
ComplexVector pure_vector(const DensityMatrix& rho, const Tolerance& tol) {
  if (std::abs(purity(rho) - 1.0) > std::sqrt(tol.abs_eps)) {
    throw DomainError("fubini_study: arguments must be pure states");
  }
  const auto eig = hermitian_eigen(rho.matrix());
  return eig.vectors.col(eig.vectors.cols() - 1);
}

double from_fidelity(DistanceKind kind, double f) {
  const double root = std::sqrt(std::clamp(f, 0.0, 1.0));
  switch (kind) {
    case DistanceKind::fidelity: return f;
    case DistanceKind::bures_distance: return std::sqrt(std::max(0.0, 2.0 * (1.0 - root)));
    case DistanceKind::bures_angle: return std::acos(std::min(root, 1.0));
    default: break;
  }
  throw DomainError("from_fidelity: not a fidelity-based distance");
}

}  // namespace

double distance(DistanceKind kind, const DensityMatrix& a, const DensityMatrix& b,
                const Tolerance& tol) {
  if (!(a.dims() == b.dims())) throw DimensionError("distance: dims mismatch");
  switch (kind) {
    case DistanceKind::hilbert_schmidt: return (a.matrix() - b.matrix()).norm();
    case DistanceKind::trace: return trace_distance(a, b);
    case DistanceKind::fidelity:
    case DistanceKind::bures_distance:
    case DistanceKind::bures_angle: return from_fidelity(kind, fidelity(a, b));
    case DistanceKind::fubini_study: {
      const double overlap = std::abs(pure_vector(a, tol).dot(pure_vector(b, tol)));
      return std::acos(std::min(overlap, 1.0));
    }
  }
  throw DomainError("distance: unknown kind");
}

double distance(DistanceKind kind, const PureState& a, const PureState& b) {
  if (!(a.dims() == b.dims())) throw DimensionError("distance: dims mismatch");
  if (kind == DistanceKind::fubini_study) {
    return std::acos(std::min(std::abs(a.amplitudes().dot(b.amplitudes())), 1.0));
  }
  return distance(kind, pure_to_density(a), pure_to_density(b));
}

double mutual_information(const DensityMatrix& rho, const Bipartition& cut) {
  cut.validate(rho.dims());
  const std::vector<int> b = cut.part_b(rho.dims());
  const double sa = von_neumann_entropy(partial_trace(rho, b));
  const double sb = von_neumann_entropy(partial_trace(rho, cut.part_a));
  return std::max(0.0, sa + sb - von_neumann_entropy(rho));
}

bool majorizes(const CPD& p, const CPD& q, const Tolerance& tol) {
  const int n = std::max(p.size(), q.size());
  std::vector<double> a(static_cast<std::size_t>(n), 0.0), b(static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < p.size(); ++i) a[static_cast<std::size_t>(i)] = p[i];
  for (int i = 0; i < q.size(); ++i) b[static_cast<std::size_t>(i)] = q[i];
  std::sort(a.begin(), a.end(), std::greater<>());
  std::sort(b.begin(), b.end(), std::greater<>());
  double sa = 0.0, sb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sa += a[i];
    sb += b[i];
    if (sa < sb - tol.abs_eps) return false;
  }
  return std::abs(sa - sb) <= tol.bound(1.0);
}

}  // namespace qitk
