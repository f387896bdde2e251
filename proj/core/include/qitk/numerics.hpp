#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "qitk/errors.hpp"

namespace qitk {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;

// Absolute/relative tolerance pair used for every approximate comparison.
struct Tolerance {
  double abs_eps = 1e-9;
  double rel_eps = 1e-9;

  Tolerance() = default;
  Tolerance(double abs, double rel);
  explicit Tolerance(double abs) : Tolerance(abs, abs) {}

  // abs_eps + rel_eps * scale
  double bound(double scale) const { return abs_eps + rel_eps * scale; }
};

// True iff max |a_ij - b_ij| <= abs_eps + rel_eps * max(|a_ij|, |b_ij|).
bool approx_equal(const ComplexMatrix& a, const ComplexMatrix& b,
                  const Tolerance& tol = {});

// Zeroes tiny imaginary parts and snaps components lying within abs_eps of an
// integer onto it. Idempotent.
ComplexMatrix chop(const ComplexMatrix& a, const Tolerance& tol = {});
double chop(double x, const Tolerance& tol = {});

// Modified Gram-Schmidt with one re-orthogonalization pass. Vectors whose
// residual norm drops below abs_eps are discarded, so the output length equals
// the numerical rank of the input.
std::vector<ComplexVector> gram_schmidt(std::span<const ComplexVector> vectors,
                                        const Tolerance& tol = {});

// Least-squares coefficients c with m = sum_i c_i basis_i. Throws
// NotSpannableError when the residual exceeds the tolerance.
std::vector<Complex> span_coefficients(const ComplexMatrix& m,
                                       std::span<const ComplexMatrix> basis,
                                       const Tolerance& tol = {});

// Eigen-decomposition of a Hermitian matrix. Eigenvalues ascending; each
// eigenvector's largest-magnitude component (first one on ties) is made real
// and positive so results are reproducible.
struct HermitianEigen {
  RealVector values;
  ComplexMatrix vectors;  // columns
};
HermitianEigen hermitian_eigen(const ComplexMatrix& m);
RealVector hermitian_eigenvalues(const ComplexMatrix& m);

// f applied to the spectrum: V diag(f(lambda)) V^dagger.
ComplexMatrix hermitian_function(const ComplexMatrix& m,
                                 const std::function<double(double)>& f);

// Square root of a positive semidefinite matrix; negative eigenvalues are
// clipped to zero.
ComplexMatrix psd_sqrt(const ComplexMatrix& m);

// Base-2 logarithm of a positive semidefinite matrix restricted to its support:
// eigenvalues <= abs_eps map to 0 (so that 0 log 0 = 0 in traces with states
// supported inside the support of m).
ComplexMatrix psd_log2(const ComplexMatrix& m, const Tolerance& tol = {});

// exp(i H) for Hermitian H.
ComplexMatrix expi_hermitian(const ComplexMatrix& h);

// Sum of absolute eigenvalues of a Hermitian matrix.
double trace_norm_hermitian(const ComplexMatrix& m);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexVector kron(const ComplexVector& a, const ComplexVector& b);

bool is_hermitian(const ComplexMatrix& m, const Tolerance& tol = {});
bool is_unitary(const ComplexMatrix& m, const Tolerance& tol = {});

// Throws DimensionError with `what` in the message unless a and b share a shape.
void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b,
                        const char* what);

// x * log2(x) with the 0 log 0 = 0 convention.
double xlog2x(double x);

}  // namespace qitk
