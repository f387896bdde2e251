#pragma once

#include <limits>
#include <string_view>

#include "qitk/objects.hpp"
#include "qitk/transforms.hpp"

namespace qitk {

// All logarithms are base 2: entropies and divergences are in bits.

// Returned by the divergences when the support of the first argument is not
// contained in the support of the second. Optimizers rank it as +infinity.
inline constexpr double kInfiniteDivergence = std::numeric_limits<double>::infinity();
inline bool is_infinite_divergence(double x) { return x == kInfiniteDivergence; }

double shannon_entropy(const CPD& p);
double binary_entropy(double p);

// Shannon entropy of the spectrum (tiny negative eigenvalues clipped).
double von_neumann_entropy(const DensityMatrix& rho);

double purity(const DensityMatrix& rho);
// d/(d-1) (1 - tr rho^2), in [0, 1].
double linear_entropy(const DensityMatrix& rho);
double participation_ratio(const DensityMatrix& rho);

// tr rho (log rho - log sigma).
double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma,
                        const Tolerance& tol = {});

// -tr rho log sigma, or kInfiniteDivergence when rho has weight > abs_eps
// outside the support of sigma (eigenvalues <= abs_eps).
double cross_entropy(const ComplexMatrix& rho, const ComplexMatrix& sigma,
                     const Tolerance& tol = {});

// sum_i p_i log(p_i / q_i).
double kl_divergence(const CPD& p, const CPD& q, const Tolerance& tol = {});

enum class DistanceKind { hilbert_schmidt, trace, fidelity, bures_distance, bures_angle, fubini_study };

std::string_view to_string(DistanceKind kind);
DistanceKind parse_distance_kind(std::string_view name);

// Fidelity uses the squared convention F = (tr sqrt(sqrt(a) b sqrt(a)))^2, so
// F(rho, |psi><psi|) = <psi|rho|psi>. Fubini-Study requires both arguments to
// be pure (purity 1 within tol) and throws DomainError otherwise.
double distance(DistanceKind kind, const DensityMatrix& a, const DensityMatrix& b,
                const Tolerance& tol = {});
double distance(DistanceKind kind, const PureState& a, const PureState& b);

double fidelity(const DensityMatrix& a, const DensityMatrix& b);
double trace_distance(const DensityMatrix& a, const DensityMatrix& b);

// S(A) + S(B) - S(AB).
double mutual_information(const DensityMatrix& rho, const Bipartition& cut);

// Descending partial sums of p dominate those of q; the shorter vector is
// padded with zeros.
bool majorizes(const CPD& p, const CPD& q, const Tolerance& tol = {});

// Spectrum of rho as a distribution (negatives clipped, renormalized).
CPD spectrum(const DensityMatrix& rho);

}  // namespace qitk
