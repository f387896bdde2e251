#pragma once

#include <initializer_list>
#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "qitk/numerics.hpp"

namespace qitk {

// Particle dimension structure. Particle 0 is the most significant index of
// the computational basis: |i_0 i_1 ... i_{k-1}> has flat index
// sum_k i_k * prod_{j>k} d_j.
class DimSpec {
 public:
  DimSpec(std::vector<int> dims);  // NOLINT(google-explicit-constructor)
  DimSpec(std::initializer_list<int> dims) : DimSpec(std::vector<int>(dims)) {}

  static DimSpec qubits(int count);

  int total() const { return total_; }
  int particles() const { return static_cast<int>(dims_.size()); }
  int operator[](int particle) const { return dims_.at(static_cast<std::size_t>(particle)); }
  const std::vector<int>& dims() const { return dims_; }

  friend bool operator==(const DimSpec& a, const DimSpec& b) { return a.dims_ == b.dims_; }

 private:
  std::vector<int> dims_;
  int total_ = 1;
};

// Concatenation: dims of a tensor product.
DimSpec operator+(const DimSpec& a, const DimSpec& b);

class PureState {
 public:
  // Validates length against dims and unit norm within tol.
  PureState(ComplexVector amplitudes, DimSpec dims, const Tolerance& tol = {});

  const ComplexVector& amplitudes() const { return amplitudes_; }
  const DimSpec& dims() const { return dims_; }
  int dim() const { return dims_.total(); }

 private:
  ComplexVector amplitudes_;
  DimSpec dims_;
};

class DensityMatrix {
 public:
  // Skips validation. For constructions that are valid by design (decoders,
  // outer products, convex mixtures); everything else goes through make_density.
  static DensityMatrix assume_valid(ComplexMatrix matrix, DimSpec dims);

  const ComplexMatrix& matrix() const { return matrix_; }
  const DimSpec& dims() const { return dims_; }
  int dim() const { return dims_.total(); }

 private:
  DensityMatrix(ComplexMatrix matrix, DimSpec dims)
      : matrix_(std::move(matrix)), dims_(std::move(dims)) {}

  ComplexMatrix matrix_;
  DimSpec dims_;
};

class CPD {
 public:
  // Entries >= -abs_eps are accepted (and stored clipped to 0); sum must be 1.
  explicit CPD(RealVector probabilities, const Tolerance& tol = {});

  const RealVector& probabilities() const { return p_; }
  int size() const { return static_cast<int>(p_.size()); }
  double operator[](int i) const { return p_(i); }

 private:
  CPD() = default;
  friend CPD cpd_assume_valid(RealVector p);
  RealVector p_;
};

// For constructions with exact unit sum by design (squared hyperspherical
// coordinates).
CPD cpd_assume_valid(RealVector p);

class UnitaryMatrix {
 public:
  explicit UnitaryMatrix(ComplexMatrix matrix, const Tolerance& tol = {});
  UnitaryMatrix(ComplexMatrix matrix, DimSpec dims, const Tolerance& tol = {});

  const ComplexMatrix& matrix() const { return matrix_; }
  const DimSpec& dims() const { return dims_; }
  int dim() const { return dims_.total(); }

 private:
  ComplexMatrix matrix_;
  DimSpec dims_;
};

class HermitianMatrix {
 public:
  explicit HermitianMatrix(ComplexMatrix matrix, const Tolerance& tol = {});
  HermitianMatrix(ComplexMatrix matrix, DimSpec dims, const Tolerance& tol = {});

  const ComplexMatrix& matrix() const { return matrix_; }
  const DimSpec& dims() const { return dims_; }
  int dim() const { return dims_.total(); }

 private:
  ComplexMatrix matrix_;
  DimSpec dims_;
};

struct BlochVector {
  RealVector components;
};

PureState make_pure(ComplexVector amplitudes, DimSpec dims);

enum class Repair {
  none,
  clip,  // symmetrize, clip eigenvalues in [-abs_eps, 0) to 0 and renormalize
};

// Validates Hermiticity, unit trace and positivity (eigenvalues >= -abs_eps).
// ValidationError names the first violated invariant.
DensityMatrix make_density(ComplexMatrix m, DimSpec dims, const Tolerance& tol = {},
                           Repair repair = Repair::none);

DensityMatrix pure_to_density(const PureState& psi);

DensityMatrix maximally_mixed(const DimSpec& dims);

// Tensor products; dims are concatenated.
PureState tensor(const PureState& a, const PureState& b);
DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);

// Computational basis vector |index> for the given dims.
PureState basis_state(const DimSpec& dims, int index);

using State = std::variant<PureState, DensityMatrix>;

// bell_phi_plus, bell_phi_minus, bell_psi_plus, singlet: two qubits (dims
// ignored if given, must be [2,2]). ghz: equal-dimension particles, default
// three qubits. w: qubits only, default three. max_mixed: I/d, default [2].
State famous_state(std::string_view name, const std::optional<DimSpec>& dims = std::nullopt);

// x, y, z, h, s, t, cnot, swap, cz, toffoli in the computational basis.
UnitaryMatrix famous_gate(std::string_view name);

// 1/2 (I + n . sigma); throws DomainError for |n| > 1 + abs_eps.
DensityMatrix bloch_to_density(const BlochVector& n, const Tolerance& tol = {});

// c_i = tr(rho g_i) / 2 against the generalized Gell-Mann generators, so that
// rho = I/n + sum_i c_i g_i and tr rho^2 = 1/n + 2 sum_i c_i^2.
BlochVector density_to_bloch(const DensityMatrix& rho);

// Single-qubit Bloch vector n_i = tr(rho sigma_i) = 2 c_i; the exact inverse of
// bloch_to_density.
BlochVector qubit_bloch_vector(const DensityMatrix& rho);

// Pauli matrices.
ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();

}  // namespace qitk
