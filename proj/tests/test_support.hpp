#pragma once

#include <cstdint>
#include <random>

#include <gtest/gtest.h>

#include "qitk/numerics.hpp"
#include "qitk/objects.hpp"
#include "qitk/params.hpp"

namespace qitk::testing {

inline DensityMatrix random_density(const DimSpec& dims, std::uint64_t seed) {
  return std::get<DensityMatrix>(random_object(ParamKind::density, dims, seed));
}

inline PureState random_pure(const DimSpec& dims, std::uint64_t seed) {
  return std::get<PureState>(random_object(ParamKind::pure, dims, seed));
}

// Gaussian entries, not normalized.
inline ComplexMatrix random_matrix(int rows, int cols, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  ComplexMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) m(i, j) = Complex(g(rng), g(rng));
  }
  return m;
}

inline ComplexMatrix random_hermitian(int n, std::uint64_t seed) {
  const ComplexMatrix a = random_matrix(n, n, seed);
  return 0.5 * (a + a.adjoint());
}

inline ComplexVector random_vector(int n, std::uint64_t seed) {
  return random_matrix(n, 1, seed).col(0);
}

inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace qitk::testing
