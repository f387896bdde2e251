#include "qitk/transforms.hpp"

#include <algorithm>
#include <string>

#include "qitk/generators.hpp"

namespace qitk {
namespace {

// Digits of flat index `index` in mixed radix `dims`, most significant first.
void digits_of(int index, const std::vector<int>& dims, int* out) {
  for (int k = static_cast<int>(dims.size()) - 1; k >= 0; --k) {
    out[k] = index % dims[static_cast<std::size_t>(k)];
    index /= dims[static_cast<std::size_t>(k)];
  }
}

int flat_of(const int* digits, const std::vector<int>& dims) {
  int index = 0;
  for (std::size_t k = 0; k < dims.size(); ++k) index = index * dims[k] + digits[k];
  return index;
}

std::vector<bool> particle_mask(const DimSpec& dims, std::span<const int> subset,
                                const char* what) {
  std::vector<bool> mask(static_cast<std::size_t>(dims.particles()), false);
  for (int p : subset) {
    if (p < 0 || p >= dims.particles()) {
      throw DimensionError(std::string(what) + ": particle index " + std::to_string(p) +
                           " out of range");
    }
    if (mask[static_cast<std::size_t>(p)]) {
      throw DimensionError(std::string(what) + ": duplicate particle index " + std::to_string(p));
    }
    mask[static_cast<std::size_t>(p)] = true;
  }
  return mask;
}

void require_dim(Eigen::Index size, const DimSpec& dims, const char* what) {
  if (size != dims.total()) throw DimensionError(std::string(what) + ": size does not match dims");
}

// Flat index map old -> new for a particle permutation.
std::vector<int> permutation_map(const DimSpec& dims, std::span<const int> perm) {
  const int k = dims.particles();
  if (static_cast<int>(perm.size()) != k) {
    throw DomainError("reorder_particles: permutation length differs from particle count");
  }
  std::vector<bool> seen(static_cast<std::size_t>(k), false);
  for (int p : perm) {
    if (p < 0 || p >= k || seen[static_cast<std::size_t>(p)]) {
      throw DomainError("reorder_particles: not a permutation of the particle indices");
    }
    seen[static_cast<std::size_t>(p)] = true;
  }
  const std::vector<int> new_dims = permute_dims(dims, perm).dims();
  std::vector<int> map(static_cast<std::size_t>(dims.total()));
  std::vector<int> old_d(static_cast<std::size_t>(k)), new_d(static_cast<std::size_t>(k));
  for (int i = 0; i < dims.total(); ++i) {
    digits_of(i, dims.dims(), old_d.data());
    for (int j = 0; j < k; ++j) new_d[static_cast<std::size_t>(j)] = old_d[static_cast<std::size_t>(perm[static_cast<std::size_t>(j)])];
    map[static_cast<std::size_t>(i)] = flat_of(new_d.data(), new_dims);
  }
  return map;
}

std::size_t tensor_offset(const std::vector<int>& shape, std::span<const int> index) {
  if (index.size() != shape.size()) throw DimensionError("Tensor: wrong number of indices");
  std::size_t off = 0;
  for (std::size_t k = 0; k < shape.size(); ++k) {
    if (index[k] < 0 || index[k] >= shape[k]) throw DimensionError("Tensor: index out of range");
    off = off * static_cast<std::size_t>(shape[k]) + static_cast<std::size_t>(index[k]);
  }
  return off;
}

}  // namespace

void Bipartition::validate(const DimSpec& dims) const {
  particle_mask(dims, part_a, "Bipartition");
  if (part_a.empty() || static_cast<int>(part_a.size()) >= dims.particles()) {
    throw DomainError("Bipartition: both sides of the cut must be non-empty");
  }
}

std::vector<int> Bipartition::part_b(const DimSpec& dims) const {
  const auto mask = particle_mask(dims, part_a, "Bipartition");
  std::vector<int> b;
  for (int p = 0; p < dims.particles(); ++p) {
    if (!mask[static_cast<std::size_t>(p)]) b.push_back(p);
  }
  return b;
}

Complex& Tensor::at(std::span<const int> index) { return data[tensor_offset(shape, index)]; }

const Complex& Tensor::at(std::span<const int> index) const {
  return data[tensor_offset(shape, index)];
}

Tensor to_tensor(const ComplexVector& v, const DimSpec& dims) {
  require_dim(v.size(), dims, "to_tensor");
  return Tensor{dims.dims(), std::vector<Complex>(v.data(), v.data() + v.size())};
}

Tensor to_tensor(const ComplexMatrix& m, const DimSpec& dims) {
  require_dim(m.rows(), dims, "to_tensor");
  require_dim(m.cols(), dims, "to_tensor");
  std::vector<int> shape = dims.dims();
  shape.insert(shape.end(), dims.dims().begin(), dims.dims().end());
  Tensor t{std::move(shape), std::vector<Complex>(static_cast<std::size_t>(m.size()))};
  // Row-major copy: the row index supplies the leading (ket) digits.
  std::size_t off = 0;
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) t.data[off++] = m(r, c);
  }
  return t;
}

Tensor to_tensor(const PureState& psi) { return to_tensor(psi.amplitudes(), psi.dims()); }
Tensor to_tensor(const DensityMatrix& rho) { return to_tensor(rho.matrix(), rho.dims()); }

ComplexVector vector_from_tensor(const Tensor& t, const DimSpec& dims) {
  if (t.shape != dims.dims()) throw DimensionError("vector_from_tensor: shape mismatch");
  return Eigen::Map<const ComplexVector>(t.data.data(), dims.total());
}

ComplexMatrix matrix_from_tensor(const Tensor& t, const DimSpec& dims) {
  std::vector<int> shape = dims.dims();
  shape.insert(shape.end(), dims.dims().begin(), dims.dims().end());
  if (t.shape != shape) throw DimensionError("matrix_from_tensor: shape mismatch");
  const int d = dims.total();
  ComplexMatrix m(d, d);
  std::size_t off = 0;
  for (int r = 0; r < d; ++r) {
    for (int c = 0; c < d; ++c) m(r, c) = t.data[off++];
  }
  return m;
}

PureState pure_from_tensor(const Tensor& t, const DimSpec& dims) {
  return PureState(vector_from_tensor(t, dims), dims);
}

DensityMatrix density_from_tensor(const Tensor& t, const DimSpec& dims) {
  return make_density(matrix_from_tensor(t, dims), dims);
}

ComplexMatrix partial_trace(const ComplexMatrix& m, const DimSpec& dims,
                            std::span<const int> traced) {
  require_dim(m.rows(), dims, "partial_trace");
  const auto mask = particle_mask(dims, traced, "partial_trace");
  if (traced.empty()) throw DomainError("partial_trace: no particle to trace");
  if (static_cast<int>(traced.size()) == dims.particles()) {
    throw DomainError("partial_trace: tracing every particle; use the full trace");
  }
  std::vector<int> kept_dims, traced_dims;
  for (int p = 0; p < dims.particles(); ++p) {
    (mask[static_cast<std::size_t>(p)] ? traced_dims : kept_dims).push_back(dims[p]);
  }
  int kept_total = 1, traced_total = 1;
  for (int d : kept_dims) kept_total *= d;
  for (int d : traced_dims) traced_total *= d;

  // Bucket full indices by their traced digits; only equal buckets contribute.
  std::vector<std::vector<std::pair<int, int>>> buckets(static_cast<std::size_t>(traced_total));
  std::vector<int> digits(static_cast<std::size_t>(dims.particles()));
  std::vector<int> kd, td;
  for (int i = 0; i < dims.total(); ++i) {
    digits_of(i, dims.dims(), digits.data());
    kd.clear();
    td.clear();
    for (int p = 0; p < dims.particles(); ++p) {
      (mask[static_cast<std::size_t>(p)] ? td : kd).push_back(digits[static_cast<std::size_t>(p)]);
    }
    buckets[static_cast<std::size_t>(flat_of(td.data(), traced_dims))].emplace_back(
        i, flat_of(kd.data(), kept_dims));
  }
  ComplexMatrix out = ComplexMatrix::Zero(kept_total, kept_total);
  for (const auto& bucket : buckets) {
    for (const auto& [i, ri] : bucket) {
      for (const auto& [j, rj] : bucket) out(ri, rj) += m(i, j);
    }
  }
  return out;
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> traced) {
  ComplexMatrix m = partial_trace(rho.matrix(), rho.dims(), traced);
  const auto mask = particle_mask(rho.dims(), traced, "partial_trace");
  std::vector<int> kept;
  for (int p = 0; p < rho.dims().particles(); ++p) {
    if (!mask[static_cast<std::size_t>(p)]) kept.push_back(rho.dims()[p]);
  }
  return DensityMatrix::assume_valid(std::move(m), DimSpec(std::move(kept)));
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::initializer_list<int> traced) {
  return partial_trace(rho, std::span<const int>(traced.begin(), traced.size()));
}

ComplexMatrix partial_transpose(const ComplexMatrix& m, const DimSpec& dims,
                                std::span<const int> subset) {
  require_dim(m.rows(), dims, "partial_transpose");
  require_dim(m.cols(), dims, "partial_transpose");
  if (subset.empty()) throw DomainError("partial_transpose: empty particle subset");
  const auto mask = particle_mask(dims, subset, "partial_transpose");
  const int d = dims.total();
  const auto k = static_cast<std::size_t>(dims.particles());
  std::vector<std::vector<int>> digits(static_cast<std::size_t>(d), std::vector<int>(k));
  for (int i = 0; i < d; ++i) digits_of(i, dims.dims(), digits[static_cast<std::size_t>(i)].data());
  ComplexMatrix out(d, d);
  std::vector<int> ri(k), cj(k);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      const auto& di = digits[static_cast<std::size_t>(i)];
      const auto& dj = digits[static_cast<std::size_t>(j)];
      for (std::size_t p = 0; p < k; ++p) {
        ri[p] = mask[p] ? dj[p] : di[p];
        cj[p] = mask[p] ? di[p] : dj[p];
      }
      out(flat_of(ri.data(), dims.dims()), flat_of(cj.data(), dims.dims())) = m(i, j);
    }
  }
  return out;
}

HermitianMatrix partial_transpose(const DensityMatrix& rho, std::span<const int> subset) {
  return HermitianMatrix(partial_transpose(rho.matrix(), rho.dims(), subset), rho.dims());
}

HermitianMatrix partial_transpose(const DensityMatrix& rho, std::initializer_list<int> subset) {
  return partial_transpose(rho, std::span<const int>(subset.begin(), subset.size()));
}

DimSpec permute_dims(const DimSpec& dims, std::span<const int> perm) {
  std::vector<int> out;
  out.reserve(perm.size());
  for (int p : perm) {
    if (p < 0 || p >= dims.particles()) throw DomainError("permute_dims: index out of range");
    out.push_back(dims[p]);
  }
  return DimSpec(std::move(out));
}

ComplexVector reorder_particles(const ComplexVector& v, const DimSpec& dims,
                                std::span<const int> perm) {
  require_dim(v.size(), dims, "reorder_particles");
  const auto map = permutation_map(dims, perm);
  ComplexVector out(v.size());
  for (int i = 0; i < dims.total(); ++i) out(map[static_cast<std::size_t>(i)]) = v(i);
  return out;
}

ComplexMatrix reorder_particles(const ComplexMatrix& m, const DimSpec& dims,
                                std::span<const int> perm) {
  require_dim(m.rows(), dims, "reorder_particles");
  require_dim(m.cols(), dims, "reorder_particles");
  const auto map = permutation_map(dims, perm);
  ComplexMatrix out(m.rows(), m.cols());
  for (int i = 0; i < dims.total(); ++i) {
    for (int j = 0; j < dims.total(); ++j) {
      out(map[static_cast<std::size_t>(i)], map[static_cast<std::size_t>(j)]) = m(i, j);
    }
  }
  return out;
}

PureState reorder_particles(const PureState& psi, std::span<const int> perm) {
  return PureState(reorder_particles(psi.amplitudes(), psi.dims(), perm),
                   permute_dims(psi.dims(), perm));
}

DensityMatrix reorder_particles(const DensityMatrix& rho, std::span<const int> perm) {
  return DensityMatrix::assume_valid(reorder_particles(rho.matrix(), rho.dims(), perm),
                                     permute_dims(rho.dims(), perm));
}

UnitaryMatrix reorder_particles(const UnitaryMatrix& u, std::span<const int> perm) {
  return UnitaryMatrix(reorder_particles(u.matrix(), u.dims(), perm),
                       permute_dims(u.dims(), perm));
}

DensityMatrix regroup(const DensityMatrix& rho, DimSpec dims) {
  if (dims.total() != rho.dim()) throw DimensionError("regroup: total dimension differs");
  return DensityMatrix::assume_valid(rho.matrix(), std::move(dims));
}

RealVector to_generator_basis(const HermitianMatrix& m) {
  const int n = m.dim();
  const Eigen::VectorXcd c = generator_coefficients(m.matrix());
  RealVector out(static_cast<Eigen::Index>(n) * n);
  out(0) = m.matrix().trace().real() / n;
  out.tail(c.size()) = c.real();
  return out;
}

RealVector to_generator_basis(const ComplexMatrix& m, const Tolerance& tol) {
  return to_generator_basis(HermitianMatrix(m, tol));
}

HermitianMatrix from_generator_basis(const RealVector& coeffs, int n) {
  if (n < 2 || coeffs.size() != static_cast<Eigen::Index>(n) * n) {
    throw DimensionError("from_generator_basis: expected n^2 coefficients");
  }
  ComplexMatrix m = generator_combination(coeffs.tail(coeffs.size() - 1), n);
  m.diagonal().array() += coeffs(0);
  return HermitianMatrix(std::move(m));
}

}  // namespace qitk
