#pragma once

#include <span>
#include <vector>

#include "qitk/objects.hpp"

namespace qitk {

struct MeasurementOutcome {
  CPD probabilities;
  // One per outcome. Outcomes with probability below abs_eps carry the
  // maximally mixed state as a placeholder and are flagged in `degenerate`.
  std::vector<DensityMatrix> post_states;
  std::vector<bool> degenerate;
  DensityMatrix mixture;  // sum_i p_i post_i
};

// Projective measurement. Projectors must satisfy P_i P_j = delta_ij P_i and
// sum_i P_i = I within tol (ValidationError otherwise).
MeasurementOutcome orthogonal_measure(const DensityMatrix& rho,
                                      std::span<const HermitianMatrix> projectors,
                                      const Tolerance& tol = {});

// POVM with Kraus operators sqrt(E_i). Elements must be positive semidefinite
// and sum to I.
MeasurementOutcome povm_measure(const DensityMatrix& rho, std::span<const HermitianMatrix> elements,
                                const Tolerance& tol = {});

// Two-outcome weak measurement of an observable A with spectrum in [-1, 1]:
// K_(+/-) = sqrt((I +/- strength A) / 2). Outcome order is (+, -). strength 0
// leaves the state untouched; strength 1 with a +/-1 spectrum is the
// projective measurement of A.
MeasurementOutcome weak_measure(const DensityMatrix& rho, const HermitianMatrix& observable,
                                double strength, const Tolerance& tol = {});

// |k><k| on one particle, identity elsewhere, for k = 0..d_particle-1.
std::vector<HermitianMatrix> computational_projectors(const DimSpec& dims, int particle);

}  // namespace qitk
