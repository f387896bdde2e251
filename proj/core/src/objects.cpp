#include "qitk/objects.hpp"

#include <cmath>
#include <string>

#include "qitk/generators.hpp"

namespace qitk {
namespace {

DimSpec single(int n) { return DimSpec(std::vector<int>{n}); }

void require_square(const ComplexMatrix& m, const char* what) {
  if (m.rows() != m.cols()) throw DimensionError(std::string(what) + ": matrix not square");
}

void require_size(Eigen::Index size, const DimSpec& dims, const char* what) {
  if (size != dims.total()) {
    throw DimensionError(std::string(what) + ": size " + std::to_string(size) +
                         " does not match total dimension " + std::to_string(dims.total()));
  }
}

}  // namespace

DimSpec::DimSpec(std::vector<int> dims) : dims_(std::move(dims)) {
  if (dims_.empty()) throw DimensionError("DimSpec: at least one particle required");
  for (int d : dims_) {
    if (d < 2) throw DimensionError("DimSpec: every particle dimension must be >= 2");
    total_ *= d;
  }
}

DimSpec DimSpec::qubits(int count) {
  if (count < 1) throw DimensionError("DimSpec::qubits: count must be >= 1");
  return DimSpec(std::vector<int>(static_cast<std::size_t>(count), 2));
}

DimSpec operator+(const DimSpec& a, const DimSpec& b) {
  std::vector<int> dims = a.dims();
  dims.insert(dims.end(), b.dims().begin(), b.dims().end());
  return DimSpec(std::move(dims));
}

PureState::PureState(ComplexVector amplitudes, DimSpec dims, const Tolerance& tol)
    : amplitudes_(std::move(amplitudes)), dims_(std::move(dims)) {
  require_size(amplitudes_.size(), dims_, "PureState");
  const double norm = amplitudes_.norm();
  if (std::abs(norm - 1.0) > tol.bound(1.0)) {
    throw ValidationError("PureState: norm " + std::to_string(norm) + " is not 1");
  }
}

DensityMatrix DensityMatrix::assume_valid(ComplexMatrix matrix, DimSpec dims) {
  require_square(matrix, "DensityMatrix");
  require_size(matrix.rows(), dims, "DensityMatrix");
  return DensityMatrix(std::move(matrix), std::move(dims));
}

CPD::CPD(RealVector probabilities, const Tolerance& tol) : p_(std::move(probabilities)) {
  if (p_.size() == 0) throw DimensionError("CPD: empty distribution");
  for (Eigen::Index i = 0; i < p_.size(); ++i) {
    if (!(p_(i) >= -tol.abs_eps)) {
      throw ValidationError("CPD: negative probability " + std::to_string(p_(i)));
    }
    if (p_(i) < 0.0) p_(i) = 0.0;
  }
  if (std::abs(p_.sum() - 1.0) > tol.bound(1.0)) {
    throw ValidationError("CPD: probabilities sum to " + std::to_string(p_.sum()));
  }
}

CPD cpd_assume_valid(RealVector p) {
  CPD out;
  out.p_ = std::move(p);
  return out;
}

UnitaryMatrix::UnitaryMatrix(ComplexMatrix matrix, const Tolerance& tol)
    : UnitaryMatrix(matrix, single(static_cast<int>(matrix.rows())), tol) {}

UnitaryMatrix::UnitaryMatrix(ComplexMatrix matrix, DimSpec dims, const Tolerance& tol)
    : matrix_(std::move(matrix)), dims_(std::move(dims)) {
  require_square(matrix_, "UnitaryMatrix");
  require_size(matrix_.rows(), dims_, "UnitaryMatrix");
  if (!is_unitary(matrix_, tol)) throw ValidationError("UnitaryMatrix: U^dagger U != I");
}

HermitianMatrix::HermitianMatrix(ComplexMatrix matrix, const Tolerance& tol)
    : HermitianMatrix(matrix, single(static_cast<int>(matrix.rows())), tol) {}

HermitianMatrix::HermitianMatrix(ComplexMatrix matrix, DimSpec dims, const Tolerance& tol)
    : matrix_(std::move(matrix)), dims_(std::move(dims)) {
  require_square(matrix_, "HermitianMatrix");
  require_size(matrix_.rows(), dims_, "HermitianMatrix");
  if (!is_hermitian(matrix_, tol)) throw ValidationError("HermitianMatrix: M != M^dagger");
}

PureState make_pure(ComplexVector amplitudes, DimSpec dims) {
  require_size(amplitudes.size(), dims, "make_pure");
  const double norm = amplitudes.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw DegenerateInputError("make_pure: amplitude vector has zero norm");
  }
  amplitudes /= norm;
  return PureState(std::move(amplitudes), std::move(dims));
}

DensityMatrix make_density(ComplexMatrix m, DimSpec dims, const Tolerance& tol,
                           Repair repair) {
  require_square(m, "make_density");
  require_size(m.rows(), dims, "make_density");
  if (!is_hermitian(m, tol)) throw ValidationError("make_density: not Hermitian");
  const Complex tr = m.trace();
  if (std::abs(tr.real() - 1.0) > tol.bound(1.0) || std::abs(tr.imag()) > tol.abs_eps) {
    throw ValidationError("make_density: trace " + std::to_string(tr.real()) + " is not 1");
  }
  const ComplexMatrix herm = 0.5 * (m + m.adjoint());
  const auto eig = hermitian_eigen(herm);
  if (eig.values.minCoeff() < -tol.abs_eps) {
    throw ValidationError("make_density: not positive semidefinite (eigenvalue " +
                          std::to_string(eig.values.minCoeff()) + ")");
  }
  if (repair == Repair::clip) {
    RealVector v = eig.values.cwiseMax(0.0);
    v /= v.sum();
    m = eig.vectors * v.cast<Complex>().asDiagonal() * eig.vectors.adjoint();
  }
  return DensityMatrix::assume_valid(std::move(m), std::move(dims));
}

DensityMatrix pure_to_density(const PureState& psi) {
  const auto& a = psi.amplitudes();
  return DensityMatrix::assume_valid(a * a.adjoint(), psi.dims());
}

DensityMatrix maximally_mixed(const DimSpec& dims) {
  const int d = dims.total();
  return DensityMatrix::assume_valid(ComplexMatrix::Identity(d, d) / static_cast<double>(d), dims);
}

PureState tensor(const PureState& a, const PureState& b) {
  return PureState(kron(a.amplitudes(), b.amplitudes()), a.dims() + b.dims());
}

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
  return DensityMatrix::assume_valid(kron(a.matrix(), b.matrix()), a.dims() + b.dims());
}

PureState basis_state(const DimSpec& dims, int index) {
  if (index < 0 || index >= dims.total()) throw DimensionError("basis_state: index out of range");
  ComplexVector v = ComplexVector::Zero(dims.total());
  v(index) = 1.0;
  return PureState(std::move(v), dims);
}

namespace {

PureState two_qubit(Complex a00, Complex a01, Complex a10, Complex a11) {
  ComplexVector v(4);
  v << a00, a01, a10, a11;
  return PureState(std::move(v), DimSpec{2, 2});
}

void require_two_qubits(const std::optional<DimSpec>& dims, std::string_view name) {
  if (dims && !(*dims == DimSpec{2, 2})) {
    throw DimensionError("famous_state: " + std::string(name) + " is a two-qubit state");
  }
}

}  // namespace

State famous_state(std::string_view name, const std::optional<DimSpec>& dims) {
  const double r = 1.0 / std::sqrt(2.0);
  if (name == "bell_phi_plus") {
    require_two_qubits(dims, name);
    return two_qubit(r, 0, 0, r);
  }
  if (name == "bell_phi_minus") {
    require_two_qubits(dims, name);
    return two_qubit(r, 0, 0, -r);
  }
  if (name == "bell_psi_plus") {
    require_two_qubits(dims, name);
    return two_qubit(0, r, r, 0);
  }
  if (name == "singlet") {
    require_two_qubits(dims, name);
    return two_qubit(0, r, -r, 0);
  }
  if (name == "ghz") {
    const DimSpec ds = dims.value_or(DimSpec::qubits(3));
    const int d = ds[0];
    for (int k : ds.dims()) {
      if (k != d) throw DimensionError("famous_state: ghz needs equal particle dimensions");
    }
    ComplexVector v = ComplexVector::Zero(ds.total());
    // |jj...j> has flat index j * (1 + d + d^2 + ...).
    Eigen::Index stride = 0;
    for (int k = 0, w = 1; k < ds.particles(); ++k, w *= d) stride += w;
    for (int j = 0; j < d; ++j) v(j * stride) = 1.0 / std::sqrt(static_cast<double>(d));
    return PureState(std::move(v), ds);
  }
  if (name == "w") {
    const DimSpec ds = dims.value_or(DimSpec::qubits(3));
    if (!(ds == DimSpec::qubits(ds.particles()))) {
      throw DimensionError("famous_state: w is defined for qubits only");
    }
    const int k = ds.particles();
    ComplexVector v = ComplexVector::Zero(ds.total());
    for (int j = 0; j < k; ++j) v(1 << (k - 1 - j)) = 1.0 / std::sqrt(static_cast<double>(k));
    return PureState(std::move(v), ds);
  }
  if (name == "max_mixed") {
    return maximally_mixed(dims.value_or(DimSpec{2}));
  }
  throw LookupError("famous_state: unknown state '" + std::string(name) + "'");
}

ComplexMatrix pauli_x() {
  ComplexMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

ComplexMatrix pauli_y() {
  const Complex i(0.0, 1.0);
  ComplexMatrix m(2, 2);
  m << 0, -i, i, 0;
  return m;
}

ComplexMatrix pauli_z() {
  ComplexMatrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

UnitaryMatrix famous_gate(std::string_view name) {
  const Complex i(0.0, 1.0);
  if (name == "x") return UnitaryMatrix(pauli_x(), DimSpec{2});
  if (name == "y") return UnitaryMatrix(pauli_y(), DimSpec{2});
  if (name == "z") return UnitaryMatrix(pauli_z(), DimSpec{2});
  if (name == "h") {
    ComplexMatrix m(2, 2);
    m << 1, 1, 1, -1;
    return UnitaryMatrix(m / std::sqrt(2.0), DimSpec{2});
  }
  if (name == "s") {
    ComplexMatrix m(2, 2);
    m << 1, 0, 0, i;
    return UnitaryMatrix(m, DimSpec{2});
  }
  if (name == "t") {
    ComplexMatrix m(2, 2);
    m << 1, 0, 0, std::polar(1.0, M_PI / 4);
    return UnitaryMatrix(m, DimSpec{2});
  }
  if (name == "cnot") {
    ComplexMatrix m = ComplexMatrix::Zero(4, 4);
    m(0, 0) = m(1, 1) = m(2, 3) = m(3, 2) = 1.0;
    return UnitaryMatrix(m, DimSpec{2, 2});
  }
  if (name == "swap") {
    ComplexMatrix m = ComplexMatrix::Zero(4, 4);
    m(0, 0) = m(1, 2) = m(2, 1) = m(3, 3) = 1.0;
    return UnitaryMatrix(m, DimSpec{2, 2});
  }
  if (name == "cz") {
    ComplexMatrix m = ComplexMatrix::Identity(4, 4);
    m(3, 3) = -1.0;
    return UnitaryMatrix(m, DimSpec{2, 2});
  }
  if (name == "toffoli") {
    ComplexMatrix m = ComplexMatrix::Identity(8, 8);
    m(6, 6) = m(7, 7) = 0.0;
    m(6, 7) = m(7, 6) = 1.0;
    return UnitaryMatrix(m, DimSpec::qubits(3));
  }
  throw LookupError("famous_gate: unknown gate '" + std::string(name) + "'");
}

DensityMatrix bloch_to_density(const BlochVector& n, const Tolerance& tol) {
  if (n.components.size() != 3) {
    throw DimensionError("bloch_to_density: single-qubit Bloch vector needs 3 components");
  }
  const double norm = n.components.norm();
  if (norm > 1.0 + tol.abs_eps) {
    throw DomainError("bloch_to_density: |n| = " + std::to_string(norm) + " > 1 is not a state");
  }
  const auto& c = n.components;
  ComplexMatrix m = 0.5 * (ComplexMatrix::Identity(2, 2) + c(0) * pauli_x() +
                           c(1) * pauli_y() + c(2) * pauli_z());
  return DensityMatrix::assume_valid(std::move(m), DimSpec{2});
}

BlochVector density_to_bloch(const DensityMatrix& rho) {
  return BlochVector{generator_coefficients(rho.matrix()).real()};
}

BlochVector qubit_bloch_vector(const DensityMatrix& rho) {
  if (rho.dim() != 2) throw DimensionError("qubit_bloch_vector: expects a single qubit");
  return BlochVector{2.0 * generator_coefficients(rho.matrix()).real()};
}

}  // namespace qitk
