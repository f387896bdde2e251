#include "qitk/measurement.hpp"

#include <cmath>
#include <string>

namespace qitk {
namespace {

void require_dims(const DensityMatrix& rho, std::span<const HermitianMatrix> ops, const char* what) {
  if (ops.empty()) throw ValidationError(std::string(what) + ": no measurement operators");
  for (const auto& op : ops) {
    if (op.dim() != rho.dim()) {
      throw DimensionError(std::string(what) + ": operator dimension differs from the state");
    }
  }
}

void require_complete(std::span<const HermitianMatrix> ops, const Tolerance& tol, const char* what) {
  const int d = ops.front().dim();
  ComplexMatrix sum = ComplexMatrix::Zero(d, d);
  for (const auto& op : ops) sum += op.matrix();
  if (!approx_equal(sum, ComplexMatrix::Identity(d, d), tol)) {
    throw ValidationError(std::string(what) + ": operators do not sum to the identity");
  }
}

MeasurementOutcome from_kraus(const DensityMatrix& rho, const std::vector<ComplexMatrix>& kraus,
                              const Tolerance& tol) {
  const int d = rho.dim();
  RealVector p(static_cast<Eigen::Index>(kraus.size()));
  std::vector<DensityMatrix> post;
  std::vector<bool> degenerate;
  ComplexMatrix mixture = ComplexMatrix::Zero(d, d);
  for (std::size_t i = 0; i < kraus.size(); ++i) {
    const ComplexMatrix branch = kraus[i] * rho.matrix() * kraus[i].adjoint();
    const double pi = std::max(branch.trace().real(), 0.0);
    p(static_cast<Eigen::Index>(i)) = pi;
    mixture += branch;
    if (pi < tol.abs_eps) {
      post.push_back(maximally_mixed(rho.dims()));
      degenerate.push_back(true);
    } else {
      ComplexMatrix s = branch / pi;
      post.push_back(DensityMatrix::assume_valid(0.5 * (s + s.adjoint()), rho.dims()));
      degenerate.push_back(false);
    }
  }
  p /= p.sum();
  mixture = 0.5 * (mixture + mixture.adjoint()).eval();
  mixture /= mixture.trace().real();
  return MeasurementOutcome{cpd_assume_valid(std::move(p)), std::move(post), std::move(degenerate),
                            DensityMatrix::assume_valid(std::move(mixture), rho.dims())};
}

}  // namespace

MeasurementOutcome orthogonal_measure(const DensityMatrix& rho,
                                      std::span<const HermitianMatrix> projectors,
                                      const Tolerance& tol) {
  require_dims(rho, projectors, "orthogonal_measure");
  for (std::size_t i = 0; i < projectors.size(); ++i) {
    for (std::size_t j = 0; j < projectors.size(); ++j) {
      const ComplexMatrix prod = projectors[i].matrix() * projectors[j].matrix();
      const ComplexMatrix expected =
          i == j ? projectors[i].matrix() : ComplexMatrix::Zero(rho.dim(), rho.dim()).eval();
      if (!approx_equal(prod, expected, tol)) {
        throw ValidationError("orthogonal_measure: projectors are not orthogonal idempotents");
      }
    }
  }
  require_complete(projectors, tol, "orthogonal_measure");
  std::vector<ComplexMatrix> kraus;
  for (const auto& p : projectors) kraus.push_back(p.matrix());
  return from_kraus(rho, kraus, tol);
}

MeasurementOutcome povm_measure(const DensityMatrix& rho, std::span<const HermitianMatrix> elements,
                                const Tolerance& tol) {
  require_dims(rho, elements, "povm_measure");
  for (const auto& e : elements) {
    if (hermitian_eigenvalues(e.matrix()).minCoeff() < -tol.abs_eps) {
      throw ValidationError("povm_measure: element is not positive semidefinite");
    }
  }
  require_complete(elements, tol, "povm_measure");
  std::vector<ComplexMatrix> kraus;
  for (const auto& e : elements) kraus.push_back(psd_sqrt(e.matrix()));
  return from_kraus(rho, kraus, tol);
}

MeasurementOutcome weak_measure(const DensityMatrix& rho, const HermitianMatrix& observable,
                                double strength, const Tolerance& tol) {
  if (!(strength >= 0.0 && strength <= 1.0)) {
    throw DomainError("weak_measure: strength must lie in [0, 1]");
  }
  if (observable.dim() != rho.dim()) {
    throw DimensionError("weak_measure: observable dimension differs from the state");
  }
  const RealVector spec = hermitian_eigenvalues(observable.matrix());
  if (spec.minCoeff() < -1.0 - tol.abs_eps || spec.maxCoeff() > 1.0 + tol.abs_eps) {
    throw DomainError("weak_measure: observable spectrum must lie in [-1, 1]");
  }
  const int d = rho.dim();
  const ComplexMatrix id = ComplexMatrix::Identity(d, d);
  const ComplexMatrix& a = observable.matrix();
  std::vector<ComplexMatrix> kraus{psd_sqrt(0.5 * (id + strength * a)),
                                   psd_sqrt(0.5 * (id - strength * a))};
  return from_kraus(rho, kraus, tol);
}

std::vector<HermitianMatrix> computational_projectors(const DimSpec& dims, int particle) {
  if (particle < 0 || particle >= dims.particles()) {
    throw DimensionError("computational_projectors: particle index out of range");
  }
  int before = 1, after = 1;
  for (int p = 0; p < particle; ++p) before *= dims[p];
  for (int p = particle + 1; p < dims.particles(); ++p) after *= dims[p];
  std::vector<HermitianMatrix> out;
  for (int k = 0; k < dims[particle]; ++k) {
    ComplexMatrix e = ComplexMatrix::Zero(dims[particle], dims[particle]);
    e(k, k) = 1.0;
    ComplexMatrix full = kron(kron(ComplexMatrix::Identity(before, before), e),
                              ComplexMatrix::Identity(after, after));
    out.emplace_back(std::move(full), dims);
  }
  return out;
}

}  // namespace qitk
