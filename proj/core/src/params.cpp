#include "qitk/params.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "qitk/generators.hpp"

namespace qitk {
namespace {

constexpr double kPi = std::numbers::pi;

int pure_count(int d) { return 2 * d - 2; }

// Coordinates of a point on the positive orthant of the unit (d-1)-sphere.
void hypersphere(const double* angles, int d, double* out) {
  double s = 1.0;
  for (int k = 0; k < d - 1; ++k) {
    out[k] = s * std::cos(angles[k]);
    s *= std::sin(angles[k]);
  }
  out[d - 1] = s;
}

ComplexVector pure_amplitudes(const double* p, int d) {
  std::vector<double> r(static_cast<std::size_t>(d));
  hypersphere(p, d, r.data());
  ComplexVector v(d);
  v(0) = r[0];
  for (int k = 1; k < d; ++k) v(k) = std::polar(r[static_cast<std::size_t>(k)], p[d - 1 + k - 1]);
  for (int k = 0; k < d; ++k) {
    const double mag = std::abs(v(k));
    if (mag > 0.0) {
      if (k > 0) v *= std::conj(v(k)) / mag;
      v(k) = mag;
      break;
    }
  }
  return v;
}

RealVector cpd_probabilities(const double* p, int d) {
  RealVector x(d);
  hypersphere(p, d, x.data());
  return x.cwiseAbs2();
}

ComplexMatrix unitary_from(const double* p, int n) {
  const RealVector theta = Eigen::Map<const RealVector>(p, static_cast<Eigen::Index>(n) * n);
  return expi_hermitian(generator_combination(theta, n));
}

void require_length(const ParamSpace& space, const RealVector& params) {
  if (params.size() != space.param_count) {
    throw DimensionError("decode: expected " + std::to_string(space.param_count) +
                         " parameters, got " + std::to_string(params.size()));
  }
}

void require_kind(const ParamSpace& space, ParamKind kind, const char* what) {
  if (space.kind != kind) {
    throw DomainError(std::string(what) + ": space is of kind " + std::string(to_string(space.kind)));
  }
}

void append(std::vector<Interval>& b, int count, Interval iv) {
  b.insert(b.end(), static_cast<std::size_t>(count), iv);
}

void append_pure_bounds(std::vector<Interval>& b, int d) {
  append(b, d - 1, {0.0, kPi / 2});
  append(b, d - 1, {0.0, 2 * kPi});
}

void product_vector(const double* cursor, const DimSpec& dims, Eigen::Ref<ComplexVector> col) {
  col(0) = 1.0;
  int filled = 1;
  for (int dk : dims.dims()) {
    const ComplexVector f = pure_amplitudes(cursor, dk);
    cursor += pure_count(dk);
    for (int i = filled - 1; i >= 0; --i) {
      const Complex c = col(i);
      for (int j = 0; j < dk; ++j) col(i * dk + j) = c * f(j);
    }
    filled *= dk;
  }
}

int per_term_count(const DimSpec& dims) {
  int n = 0;
  for (int dk : dims.dims()) n += pure_count(dk);
  return n;
}

ComplexMatrix weighted_gram(const ComplexMatrix& products, const RealVector& sqrt_w) {
  const ComplexMatrix v = products * sqrt_w.cast<Complex>().asDiagonal();
  ComplexMatrix rho = v * v.adjoint();
  return 0.5 * (rho + rho.adjoint());
}

DensityMatrix separable_from(const ParamSpace& space, const RealVector& x) {
  const int d = space.dims.total();
  const int terms = d * d;
  const int per_term = per_term_count(space.dims);
  const RealVector sqrt_w = cpd_probabilities(x.data(), terms).cwiseSqrt();
  ComplexMatrix products(d, terms);
  for (int t = 0; t < terms; ++t) {
    product_vector(x.data() + (terms - 1) + t * per_term, space.dims, products.col(t));
  }
  return DensityMatrix::assume_valid(weighted_gram(products, sqrt_w), space.dims);
}

}  // namespace

std::string_view to_string(ParamKind kind) {
  switch (kind) {
    case ParamKind::pure: return "pure";
    case ParamKind::cpd: return "cpd";
    case ParamKind::unitary: return "unitary";
    case ParamKind::hermitian: return "hermitian";
    case ParamKind::density: return "density";
    case ParamKind::separable: return "separable";
  }
  return "unknown";
}

ParamKind parse_param_kind(std::string_view name) {
  for (auto k : {ParamKind::pure, ParamKind::cpd, ParamKind::unitary, ParamKind::hermitian,
                 ParamKind::density, ParamKind::separable}) {
    if (to_string(k) == name) return k;
  }
  throw LookupError("unknown parameter-space kind '" + std::string(name) + "'");
}

int param_count(ParamKind kind, const DimSpec& dims) {
  const int d = dims.total();
  switch (kind) {
    case ParamKind::pure: return pure_count(d);
    case ParamKind::cpd: return d - 1;
    case ParamKind::unitary: return d * d;
    case ParamKind::hermitian: return d * d;
    case ParamKind::density: return (d - 1) + d * d;
    case ParamKind::separable: {
      int per_term = 0;
      for (int dk : dims.dims()) per_term += pure_count(dk);
      return (d * d - 1) + d * d * per_term;
    }
  }
  return 0;
}

ParamSpace make_space(ParamKind kind, DimSpec dims, const HermitianBounds& hb) {
  const int d = dims.total();
  std::vector<Interval> b;
  switch (kind) {
    case ParamKind::pure:
      append_pure_bounds(b, d);
      break;
    case ParamKind::cpd:
      append(b, d - 1, {0.0, kPi / 2});
      break;
    case ParamKind::unitary:
      append(b, d * d, {-kPi, kPi});
      break;
    case ParamKind::hermitian:
      if (!(hb.diagonal.width() >= 0.0) || !(hb.off_diagonal.width() >= 0.0)) {
        throw DomainError("make_space: empty hermitian bound interval");
      }
      append(b, d, hb.diagonal);
      append(b, d * (d - 1), hb.off_diagonal);
      break;
    case ParamKind::density:
      append(b, d - 1, {0.0, kPi / 2});
      append(b, d * d, {-kPi, kPi});
      break;
    case ParamKind::separable:
      append(b, d * d - 1, {0.0, kPi / 2});
      for (int t = 0; t < d * d; ++t) {
        for (int dk : dims.dims()) append_pure_bounds(b, dk);
      }
      break;
  }
  const int count = param_count(kind, dims);
  return ParamSpace{kind, std::move(dims), count, std::move(b)};
}

RealVector clamp_to_bounds(std::span<const Interval> bounds, const RealVector& params) {
  if (static_cast<std::size_t>(params.size()) != bounds.size()) {
    throw DimensionError("clamp_to_bounds: length mismatch");
  }
  RealVector out(params.size());
  for (Eigen::Index i = 0; i < params.size(); ++i) {
    const auto& iv = bounds[static_cast<std::size_t>(i)];
    out(i) = std::clamp(params(i), iv.lo, iv.hi);
  }
  return out;
}

PureState decode_pure(const ParamSpace& space, const RealVector& params) {
  require_kind(space, ParamKind::pure, "decode_pure");
  require_length(space, params);
  const RealVector x = clamp_to_bounds(space.bounds, params);
  return PureState(pure_amplitudes(x.data(), space.dims.total()), space.dims);
}

CPD decode_cpd(const ParamSpace& space, const RealVector& params) {
  require_kind(space, ParamKind::cpd, "decode_cpd");
  require_length(space, params);
  const RealVector x = clamp_to_bounds(space.bounds, params);
  return cpd_assume_valid(cpd_probabilities(x.data(), space.dims.total()));
}

UnitaryMatrix decode_unitary(const ParamSpace& space, const RealVector& params) {
  require_kind(space, ParamKind::unitary, "decode_unitary");
  require_length(space, params);
  const RealVector x = clamp_to_bounds(space.bounds, params);
  return UnitaryMatrix(unitary_from(x.data(), space.dims.total()), space.dims);
}

HermitianMatrix decode_hermitian(const ParamSpace& space, const RealVector& params) {
  require_kind(space, ParamKind::hermitian, "decode_hermitian");
  require_length(space, params);
  const RealVector x = clamp_to_bounds(space.bounds, params);
  const int n = space.dims.total();
  ComplexMatrix m = ComplexMatrix::Zero(n, n);
  for (int j = 0; j < n; ++j) m(j, j) = x(j);
  Eigen::Index p = n;
  for (int j = 0; j < n; ++j) {
    for (int k = j + 1; k < n; ++k, p += 2) {
      m(j, k) = Complex(x(p), x(p + 1));
      m(k, j) = std::conj(m(j, k));
    }
  }
  return HermitianMatrix(std::move(m), space.dims);
}

DensityMatrix decode_state(const ParamSpace& space, const RealVector& params) {
  require_length(space, params);
  const int d = space.dims.total();
  switch (space.kind) {
    case ParamKind::pure:
      return pure_to_density(decode_pure(space, params));
    case ParamKind::density: {
      const RealVector x = clamp_to_bounds(space.bounds, params);
      const RealVector p = cpd_probabilities(x.data(), d);
      const ComplexMatrix u = unitary_from(x.data() + (d - 1), d);
      ComplexMatrix rho = u * p.cast<Complex>().asDiagonal() * u.adjoint();
      rho = 0.5 * (rho + rho.adjoint()).eval();
      return DensityMatrix::assume_valid(std::move(rho), space.dims);
    }
    case ParamKind::separable:
      return separable_from(space, clamp_to_bounds(space.bounds, params));
    default:
      throw DomainError("decode_state: space of kind " + std::string(to_string(space.kind)) +
                        " does not describe a state");
  }
}

Object decode(const ParamSpace& space, const RealVector& params) {
  switch (space.kind) {
    case ParamKind::pure: return decode_pure(space, params);
    case ParamKind::cpd: return decode_cpd(space, params);
    case ParamKind::unitary: return decode_unitary(space, params);
    case ParamKind::hermitian: return decode_hermitian(space, params);
    case ParamKind::density:
    case ParamKind::separable: return decode_state(space, params);
  }
  throw DomainError("decode: unknown kind");
}

namespace {

// Hyperspherical angles of a nonnegative unit vector x.
void angles_of(const RealVector& x, double* out) {
  const Eigen::Index d = x.size();
  for (Eigen::Index k = 0; k + 1 < d; ++k) {
    const double tail = x.tail(d - k - 1).norm();
    out[k] = std::atan2(tail, x(k));
  }
}

}  // namespace

RealVector encode_cpd(const CPD& p) {
  const RealVector x = p.probabilities().cwiseMax(0.0).cwiseSqrt();
  RealVector out(p.size() - 1);
  angles_of(x / x.norm(), out.data());
  return out;
}

RealVector encode_pure(const PureState& psi) {
  const int d = psi.dim();
  ComplexVector a = psi.amplitudes();
  for (int k = 0; k < d; ++k) {
    const double mag = std::abs(a(k));
    if (mag > 0.0) {
      a *= std::conj(a(k)) / mag;
      break;
    }
  }
  RealVector out(pure_count(d));
  angles_of(a.cwiseAbs(), out.data());
  for (int k = 1; k < d; ++k) {
    double phase = std::arg(a(k));
    if (phase < 0.0) phase += 2 * kPi;
    out(d - 1 + k - 1) = phase;
  }
  return out;
}

std::vector<ProductTerm> decompose_separable(const ParamSpace& space, const RealVector& params) {
  require_kind(space, ParamKind::separable, "decompose_separable");
  require_length(space, params);
  const RealVector x = clamp_to_bounds(space.bounds, params);
  const int d = space.dims.total();
  const int terms = d * d;
  const RealVector w = cpd_probabilities(x.data(), terms);
  std::vector<ProductTerm> out(static_cast<std::size_t>(terms));
  const double* cursor = x.data() + (terms - 1);
  for (int t = 0; t < terms; ++t) {
    auto& term = out[static_cast<std::size_t>(t)];
    term.weight = w(t);
    for (int dk : space.dims.dims()) {
      term.factors.push_back(pure_amplitudes(cursor, dk));
      cursor += pure_count(dk);
    }
  }
  return out;
}

RealVector encode_separable(const ParamSpace& space, std::span<const ProductTerm> terms) {
  require_kind(space, ParamKind::separable, "encode_separable");
  const int d = space.dims.total();
  if (static_cast<int>(terms.size()) != d * d) {
    throw DimensionError("encode_separable: expected d^2 product terms");
  }
  RealVector w(d * d);
  for (int t = 0; t < d * d; ++t) w(t) = std::max(terms[static_cast<std::size_t>(t)].weight, 0.0);
  if (!(w.sum() > 0.0)) throw DegenerateInputError("encode_separable: all weights are zero");
  w /= w.sum();
  RealVector out(space.param_count);
  out.head(d * d - 1) = encode_cpd(cpd_assume_valid(w));
  Eigen::Index cursor = d * d - 1;
  for (const auto& term : terms) {
    if (static_cast<int>(term.factors.size()) != space.dims.particles()) {
      throw DimensionError("encode_separable: wrong number of factors");
    }
    for (int k = 0; k < space.dims.particles(); ++k) {
      const int dk = space.dims[k];
      const auto& f = term.factors[static_cast<std::size_t>(k)];
      if (f.size() != dk) throw DimensionError("encode_separable: factor dimension mismatch");
      const RealVector enc = encode_pure(make_pure(f, DimSpec{dk}));
      out.segment(cursor, enc.size()) = enc;
      cursor += enc.size();
    }
  }
  return out;
}

RealVector random_params(const ParamSpace& space, std::mt19937_64& rng) {
  RealVector x(space.param_count);
  for (int i = 0; i < space.param_count; ++i) {
    const auto& iv = space.bounds[static_cast<std::size_t>(i)];
    x(i) = std::uniform_real_distribution<double>(iv.lo, iv.hi)(rng);
  }
  return x;
}

Object random_object(ParamKind kind, const DimSpec& dims, std::uint64_t seed) {
  const ParamSpace space = make_space(kind, dims);
  std::mt19937_64 rng(seed);
  return decode(space, random_params(space, rng));
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  // splitmix64 finalizer over a golden-ratio stride.
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}


SeparableDecoder::SeparableDecoder(ParamSpace space) : space_(std::move(space)) {
  require_kind(space_, ParamKind::separable, "SeparableDecoder");
  const int d = space_.dims.total();
  terms_ = d * d;
  per_term_ = per_term_count(space_.dims);
  products_.resize(d, terms_);
}

void SeparableDecoder::rebuild_term(int t) {
  product_vector(x_.data() + (terms_ - 1) + t * per_term_, space_.dims, products_.col(t));
}

const ComplexMatrix& SeparableDecoder::decode(const RealVector& params) {
  require_length(space_, params);
  const RealVector x = clamp_to_bounds(space_.bounds, params);
  bool full = !primed_ || updates_ >= kRefreshInterval;
  if (!primed_) {
    x_ = x;
    for (int t = 0; t < terms_; ++t) rebuild_term(t);
    primed_ = true;
  } else {
    std::vector<int> changed;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
      if (x(i) == x_(i)) continue;
      x_(i) = x(i);
      if (i < terms_ - 1) {
        full = true;
      } else {
        const int t = static_cast<int>((i - (terms_ - 1)) / per_term_);
        if (changed.empty() || changed.back() != t) changed.push_back(t);
      }
    }
    if (!full && static_cast<int>(changed.size()) * 8 > terms_) full = true;
    for (int t : changed) {
      if (full) {
        rebuild_term(t);
        continue;
      }
      const double w = weights_(t);
      rho_.noalias() -= w * products_.col(t) * products_.col(t).adjoint();
      rebuild_term(t);
      rho_.noalias() += w * products_.col(t) * products_.col(t).adjoint();
      ++updates_;
    }
  }
  if (full) {
    weights_ = cpd_probabilities(x_.data(), terms_);
    rho_ = weighted_gram(products_, weights_.cwiseSqrt());
    updates_ = 0;
  }
  return rho_;
}

}  // namespace qitk
