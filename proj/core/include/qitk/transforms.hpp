#pragma once

#include <span>
#include <vector>

#include "qitk/objects.hpp"

namespace qitk {

// Particle indices are 0-based here; the CLI speaks 1-based.

// One side of a cut. Side B is the complement of part_a within the particles.
struct Bipartition {
  std::vector<int> part_a;

  // Throws DomainError for an empty or full side, DimensionError for an index
  // out of range or a duplicate.
  void validate(const DimSpec& dims) const;
  std::vector<int> part_b(const DimSpec& dims) const;
};

// Dense tensor with row-major layout; index 0 is the most significant.
// Vectors get one index per particle, matrices two: all row (ket) indices
// followed by all column (bra) indices, so the tensor is a pure reshape.
struct Tensor {
  std::vector<int> shape;
  std::vector<Complex> data;

  int rank() const { return static_cast<int>(shape.size()); }
  Complex& at(std::span<const int> index);
  const Complex& at(std::span<const int> index) const;
};

Tensor to_tensor(const ComplexVector& v, const DimSpec& dims);
Tensor to_tensor(const ComplexMatrix& m, const DimSpec& dims);
Tensor to_tensor(const PureState& psi);
Tensor to_tensor(const DensityMatrix& rho);

ComplexVector vector_from_tensor(const Tensor& t, const DimSpec& dims);
ComplexMatrix matrix_from_tensor(const Tensor& t, const DimSpec& dims);
PureState pure_from_tensor(const Tensor& t, const DimSpec& dims);
DensityMatrix density_from_tensor(const Tensor& t, const DimSpec& dims);

// Contracts the listed particles; remaining particles keep their order.
ComplexMatrix partial_trace(const ComplexMatrix& m, const DimSpec& dims,
                            std::span<const int> traced);
DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> traced);
DensityMatrix partial_trace(const DensityMatrix& rho, std::initializer_list<int> traced);

// Transposes the ket/bra indices of the listed particles.
ComplexMatrix partial_transpose(const ComplexMatrix& m, const DimSpec& dims,
                                std::span<const int> subset);
HermitianMatrix partial_transpose(const DensityMatrix& rho, std::span<const int> subset);
HermitianMatrix partial_transpose(const DensityMatrix& rho, std::initializer_list<int> subset);

// New particle k is old particle perm[k].
ComplexVector reorder_particles(const ComplexVector& v, const DimSpec& dims,
                                std::span<const int> perm);
ComplexMatrix reorder_particles(const ComplexMatrix& m, const DimSpec& dims,
                                std::span<const int> perm);
PureState reorder_particles(const PureState& psi, std::span<const int> perm);
DensityMatrix reorder_particles(const DensityMatrix& rho, std::span<const int> perm);
UnitaryMatrix reorder_particles(const UnitaryMatrix& u, std::span<const int> perm);
DimSpec permute_dims(const DimSpec& dims, std::span<const int> perm);

// Reinterprets the particle structure; totals must agree (e.g. [2,2,2,2] as [4,4]).
DensityMatrix regroup(const DensityMatrix& rho, DimSpec dims);

// Coefficients (c_0, c_1, ..., c_{n^2-1}) with m = c_0 I + sum_i c_i g_i over
// the SU(n) generators: c_0 = tr(m)/n, c_i = tr(m g_i)/2.
RealVector to_generator_basis(const HermitianMatrix& m);
RealVector to_generator_basis(const ComplexMatrix& m, const Tolerance& tol = {});
HermitianMatrix from_generator_basis(const RealVector& coeffs, int n);

}  // namespace qitk
