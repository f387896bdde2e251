#pragma once

#include <optional>
#include <vector>

#include "qitk/measures.hpp"
#include "qitk/optimizer.hpp"
#include "qitk/transforms.hpp"

namespace qitk {

// psi = sum_i sqrt(lambdas_i) |a_i>|b_i>, lambdas descending and summing to 1.
// Terms with Schmidt coefficient sqrt(lambda) <= abs_eps are dropped.
struct SchmidtDecomposition {
  RealVector lambdas;
  ComplexMatrix basis_a;  // columns, in the dims of cut.part_a (given order)
  ComplexMatrix basis_b;  // columns, in the dims of the complement (ascending)
};

SchmidtDecomposition schmidt_decomposition(const PureState& psi, const Bipartition& cut,
                                           const Tolerance& tol = {});

// Entropy of entanglement in ebits.
double pure_entanglement(const PureState& psi, const Bipartition& cut);

// Two-qubit quantities (dims must be [2,2]).
double concurrence(const DensityMatrix& rho);
double tangle(const DensityMatrix& rho);
double eof_2qubit(const DensityMatrix& rho);
double eof_from_concurrence(double c);

// p |psi-><psi-| + (1-p) I/4.
DensityMatrix werner_state(double p);

double min_partial_transpose_eigenvalue(const DensityMatrix& rho, const Bipartition& cut);
// (||rho^{T_B}||_1 - 1) / 2.
double negativity(const DensityMatrix& rho, const Bipartition& cut);
// log2 ||rho^{T_B}||_1.
double log_negativity(const DensityMatrix& rho, const Bipartition& cut);
// Peres-Horodecki: minimum partial-transpose eigenvalue >= -abs_eps.
bool ppt_test(const DensityMatrix& rho, const Bipartition& cut, const Tolerance& tol = {});

struct RelativeEntanglementOptions {
  // Particle structure of the separable set; defaults to rho.dims(). Must have
  // the same total dimension, e.g. [4,4] for a four-qubit state cut A1A2|B1B2
  // after reordering.
  std::optional<DimSpec> separable_dims;
  // Extra separable-space starting points.
  std::vector<RealVector> warm_starts;
  // Also start from the maximally mixed state and the computational-basis
  // dephasing of rho; both are feasible.
  bool default_warm_starts = true;
  // Random starts on top of the warm starts; defaults to config.n_starts.
  std::optional<int> random_starts;
  // Set the initial annealing temperature to the objective at the first
  // feasible random sample.
  bool scale_temperature = true;
  Tolerance tol{};
};

struct RelativeEntanglement {
  double value = 0.0;  // upper bound on inf_{sigma in SEP} S(rho || sigma), bits
  DensityMatrix closest_separable;
  RealVector separable_params;
  OptimizationResult run;
};

// Minimizes S(rho || sigma) over the separable parametrization.
RelativeEntanglement relative_entanglement(const DensityMatrix& rho, const OptimizerConfig& config,
                                           const RelativeEntanglementOptions& options = {});

// max over U of <Phi+|(U^dagger (x) I) rho (U (x) I)|Phi+>, two qubits.
double singlet_fraction(const DensityMatrix& rho, const OptimizerConfig& config);

}  // namespace qitk
