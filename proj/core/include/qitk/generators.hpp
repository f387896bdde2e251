#pragma once

#include <vector>

#include "qitk/numerics.hpp"

namespace qitk {

// Generalized Gell-Mann matrices normalized to tr(g_i g_j) = 2 delta_ij.
// Order: n(n-1)/2 symmetric (E_jk + E_kj), n(n-1)/2 antisymmetric
// (-i E_jk + i E_kj), both over pairs j < k in lexicographic order, then n-1
// diagonal ones. For n = 2 this is (sigma_x, sigma_y, sigma_z).
//
// When includes_identity is set the list has n^2 entries and the last one is
// sqrt(2/n) * I, extending the set to U(n) with the same normalization.
struct GeneratorSet {
  int n = 0;
  std::vector<ComplexMatrix> generators;
  bool includes_identity = false;
};

GeneratorSet su_generators(int n);
GeneratorSet u_generators(int n);

// sum_i coeffs_i g_i over the SU(n) list (size n^2 - 1) or, when
// coeffs.size() == n^2, over the U(n) list. Assembled entrywise in O(n^2).
ComplexMatrix generator_combination(const RealVector& coeffs, int n);

// tr(m g_i) / 2 for every SU(n) generator, computed entrywise.
Eigen::VectorXcd generator_coefficients(const ComplexMatrix& m);

}  // namespace qitk
