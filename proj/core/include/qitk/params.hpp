#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qitk/objects.hpp"

namespace qitk {

enum class ParamKind { pure, cpd, unitary, hermitian, density, separable };

std::string_view to_string(ParamKind kind);
ParamKind parse_param_kind(std::string_view name);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double width() const { return hi - lo; }
};

// Bounds of the hermitian decoder: n real diagonal entries and the real and
// imaginary parts of the n(n-1)/2 upper off-diagonal entries.
struct HermitianBounds {
  Interval diagonal{-1.0, 1.0};
  Interval off_diagonal{-1.0, 1.0};
};

// A box in R^param_count together with the decoder that maps it onto one
// object family. Sampling uniformly in the box is NOT uniform in any natural
// measure (Haar, Hilbert-Schmidt); it is uniform in parameters only.
//
// Parameter layouts, with d the total dimension:
//   pure       d-1 hyperspherical angles in [0, pi/2] (moduli), then d-1
//              relative phases in [0, 2pi]; the first nonzero amplitude is
//              real and nonnegative.
//   cpd        d-1 hyperspherical angles in [0, pi/2]; p_i is the squared
//              i-th coordinate.
//   unitary    d^2 angles in [-pi, pi]; U = exp(i sum_k theta_k g_k) over the
//              U(d) generators (SU(d) list, then sqrt(2/d) I).
//   hermitian  d diagonal entries, then (re, im) per upper off-diagonal pair.
//   density    cpd(d) spectrum followed by unitary(d) eigenbasis:
//              rho = U diag(p) U^dagger.
//   separable  cpd(d^2) mixing weights followed by d^2 product pure states,
//              each the tensor product of per-particle pure decoders:
//              rho = sum_i p_i |phi_i><phi_i|.
struct ParamSpace {
  ParamKind kind;
  DimSpec dims;
  int param_count = 0;
  std::vector<Interval> bounds;
};

int param_count(ParamKind kind, const DimSpec& dims);

ParamSpace make_space(ParamKind kind, DimSpec dims, const HermitianBounds& hb = {});

// Out-of-range entries are clamped onto the box.
RealVector clamp_to_bounds(std::span<const Interval> bounds, const RealVector& params);

using Object = std::variant<PureState, CPD, UnitaryMatrix, HermitianMatrix, DensityMatrix>;

// Clamps, then decodes. Throws DimensionError on a length mismatch.
Object decode(const ParamSpace& space, const RealVector& params);

PureState decode_pure(const ParamSpace& space, const RealVector& params);
CPD decode_cpd(const ParamSpace& space, const RealVector& params);
UnitaryMatrix decode_unitary(const ParamSpace& space, const RealVector& params);
HermitianMatrix decode_hermitian(const ParamSpace& space, const RealVector& params);
// pure, density and separable spaces, returned as a density matrix.
DensityMatrix decode_state(const ParamSpace& space, const RealVector& params);

// Decodes a separable space repeatedly, rebuilding only the product terms
// whose parameters changed since the previous call via rank-one updates. The
// result matches decode_state(space, params).matrix() up to rounding; a full
// rebuild runs periodically and whenever the mixing weights change. Not
// thread-safe.
class SeparableDecoder {
 public:
  explicit SeparableDecoder(ParamSpace space);
  const ComplexMatrix& decode(const RealVector& params);
  const ParamSpace& space() const { return space_; }

 private:
  void rebuild_term(int t);

  ParamSpace space_;
  int terms_ = 0;
  int per_term_ = 0;
  static constexpr int kRefreshInterval = 256;

  bool primed_ = false;
  int updates_ = 0;
  RealVector x_;
  RealVector weights_;
  ComplexMatrix products_;  // unweighted product vectors, one per column
  ComplexMatrix rho_;
};

// Inverses used to seed optimizations from known objects.
RealVector encode_pure(const PureState& psi);
RealVector encode_cpd(const CPD& p);

// One mixing term of a separable decomposition: weight and one unit vector per
// particle.
struct ProductTerm {
  double weight = 0.0;
  std::vector<ComplexVector> factors;
};

// Splits separable-space parameters into their d^2 product terms.
std::vector<ProductTerm> decompose_separable(const ParamSpace& space, const RealVector& params);

// Inverse of decompose_separable; needs exactly d^2 terms whose factor
// dimensions match space.dims. Weights are renormalized.
RealVector encode_separable(const ParamSpace& space, std::span<const ProductTerm> terms);

// One draw per coordinate, uniform within bounds.
RealVector random_params(const ParamSpace& space, std::mt19937_64& rng);

Object random_object(ParamKind kind, const DimSpec& dims, std::uint64_t seed);

// Independent, platform-stable seed for the index-th stream derived from seed.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

}  // namespace qitk
