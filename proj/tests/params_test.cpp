#include <cmath>
#include <numbers>
#include <set>

#include <gtest/gtest.h>

#include "qitk/entanglement.hpp"
#include "qitk/errors.hpp"
#include "qitk/generators.hpp"
#include "qitk/params.hpp"
#include "qitk/transforms.hpp"
#include "test_support.hpp"

namespace qitk {
namespace {

constexpr int kFuzzDraws = 10000;

bool psd_unit_trace(const ComplexMatrix& m, double tol) {
  if (!is_hermitian(m, Tolerance(tol))) return false;
  if (std::abs(m.trace() - Complex(1.0)) > tol) return false;
  return hermitian_eigenvalues(m).minCoeff() >= -tol;
}

TEST(ParamCount, Formulas) {
  EXPECT_EQ(param_count(ParamKind::pure, DimSpec{2, 2}), 6);
  EXPECT_EQ(param_count(ParamKind::unitary, DimSpec{2, 2}), 16);
  // 15 mixing angles plus 16 product terms of two qubit states (2 params each).
  EXPECT_EQ(param_count(ParamKind::separable, DimSpec{2, 2}), 15 + 16 * (2 + 2));
  EXPECT_EQ(param_count(ParamKind::cpd, DimSpec{5}), 4);
  EXPECT_EQ(param_count(ParamKind::hermitian, DimSpec{3}), 9);
  EXPECT_EQ(param_count(ParamKind::density, DimSpec{3}), 2 + 9);
  EXPECT_EQ(param_count(ParamKind::separable, DimSpec{2, 3}), 35 + 36 * (2 + 4));
  for (auto kind : {ParamKind::pure, ParamKind::cpd, ParamKind::unitary, ParamKind::hermitian,
                    ParamKind::density, ParamKind::separable}) {
    const auto space = make_space(kind, DimSpec{2, 3});
    EXPECT_EQ(space.param_count, static_cast<int>(space.bounds.size()));
    EXPECT_EQ(space.param_count, param_count(kind, DimSpec{2, 3}));
    for (const auto& b : space.bounds) {
      EXPECT_TRUE(std::isfinite(b.lo) && std::isfinite(b.hi));
      EXPECT_LE(b.lo, b.hi);
    }
    EXPECT_EQ(parse_param_kind(to_string(kind)), kind);
  }
  EXPECT_THROW(parse_param_kind("bogus"), LookupError);
}

TEST(Decode, Examples) {
  const auto u = decode_unitary(make_space(ParamKind::unitary, DimSpec{2}), RealVector::Zero(4));
  EXPECT_TRUE(approx_equal(u.matrix(), ComplexMatrix::Identity(2, 2)));
  const auto p = decode_cpd(make_space(ParamKind::cpd, DimSpec{2}), RealVector::Zero(1));
  EXPECT_EQ(p[0], 1.0);
  EXPECT_EQ(p[1], 0.0);
  EXPECT_THROW(decode(make_space(ParamKind::pure, DimSpec{2}), RealVector::Zero(3)), DimensionError);
  EXPECT_THROW(decode_pure(make_space(ParamKind::cpd, DimSpec{2}), RealVector::Zero(1)), DomainError);
  EXPECT_THROW(decode_state(make_space(ParamKind::unitary, DimSpec{2}), RealVector::Zero(4)),
               DomainError);
}

TEST(Decode, ClampsOutOfBounds) {
  const auto space = make_space(ParamKind::pure, DimSpec{3});
  RealVector x(4);
  x << 10.0, -3.0, 100.0, -100.0;
  const auto a = decode_pure(space, x);
  const auto b = decode_pure(space, clamp_to_bounds(space.bounds, x));
  EXPECT_EQ(a.amplitudes(), b.amplitudes());
  EXPECT_NEAR(a.amplitudes().norm(), 1.0, 1e-14);
}

TEST(Decode, PureGlobalPhaseFixed) {
  const auto space = make_space(ParamKind::pure, DimSpec{4});
  std::mt19937_64 rng(9);
  for (int k = 0; k < 200; ++k) {
    const auto psi = decode_pure(space, random_params(space, rng));
    const ComplexVector& a = psi.amplitudes();
    Eigen::Index first = 0;
    while (first < a.size() && std::abs(a(first)) == 0.0) ++first;
    ASSERT_LT(first, a.size());
    EXPECT_EQ(a(first).imag(), 0.0);
    EXPECT_GE(a(first).real(), 0.0);
  }
}

TEST(Decode, CpdSumsExactlyToOne) {
  const auto space = make_space(ParamKind::cpd, DimSpec{7});
  std::mt19937_64 rng(2);
  for (int k = 0; k < 1000; ++k) {
    const auto p = decode_cpd(space, random_params(space, rng));
    EXPECT_NEAR(p.probabilities().sum(), 1.0, 8 * std::numeric_limits<double>::epsilon());
    EXPECT_GE(p.probabilities().minCoeff(), 0.0);
  }
}

TEST(Decode, UnitaryNearIdentityIsFirstOrder) {
  const auto space = make_space(ParamKind::unitary, DimSpec{3});
  std::mt19937_64 rng(4);
  std::normal_distribution<double> g;
  for (double scale : {1e-2, 1e-3, 1e-4}) {
    RealVector theta(9);
    for (int i = 0; i < 9; ++i) theta(i) = scale * g(rng);
    const ComplexMatrix u = decode_unitary(space, theta).matrix();
    const ComplexMatrix lin = ComplexMatrix::Identity(3, 3) +
                              Complex(0.0, 1.0) * generator_combination(theta, 3);
    EXPECT_LT((u - lin).norm(), 10.0 * theta.squaredNorm());
  }
}

TEST(Decode, DensityMatchesSpectrumAndBasis) {
  const auto space = make_space(ParamKind::density, DimSpec{3});
  std::mt19937_64 rng(6);
  const RealVector x = random_params(space, rng);
  const auto rho = decode_state(space, x);
  const auto p = decode_cpd(make_space(ParamKind::cpd, DimSpec{3}), x.head(2));
  const auto u = decode_unitary(make_space(ParamKind::unitary, DimSpec{3}), x.tail(9));
  const ComplexMatrix oracle =
      u.matrix() * p.probabilities().cast<Complex>().asDiagonal() * u.matrix().adjoint();
  EXPECT_LT(testing::max_abs_diff(rho.matrix(), oracle), 1e-12);
}

// Every decode output satisfies the invariants of its type.
class DecodeFuzz : public ::testing::TestWithParam<ParamKind> {};

TEST_P(DecodeFuzz, InvariantsHold) {
  const ParamKind kind = GetParam();
  const DimSpec dims{2, 2};
  const auto space = make_space(kind, dims);
  std::mt19937_64 rng(static_cast<std::uint64_t>(kind) + 100);
  std::uniform_real_distribution<double> overshoot(-0.5, 0.5);
  const Tolerance tol;
  for (int k = 0; k < kFuzzDraws; ++k) {
    RealVector x = random_params(space, rng);
    if (k % 10 == 0) {
      for (Eigen::Index i = 0; i < x.size(); ++i) x(i) += overshoot(rng) * 10.0;
    }
    const Object obj = decode(space, x);
    std::visit(
        [&](const auto& o) {
          using T = std::decay_t<decltype(o)>;
          if constexpr (std::is_same_v<T, PureState>) {
            ASSERT_NEAR(o.amplitudes().norm(), 1.0, 1e-12);
          } else if constexpr (std::is_same_v<T, CPD>) {
            ASSERT_NEAR(o.probabilities().sum(), 1.0, 1e-14);
            ASSERT_GE(o.probabilities().minCoeff(), 0.0);
          } else if constexpr (std::is_same_v<T, UnitaryMatrix>) {
            ASSERT_TRUE(is_unitary(o.matrix(), tol));
          } else if constexpr (std::is_same_v<T, HermitianMatrix>) {
            ASSERT_TRUE(is_hermitian(o.matrix(), tol));
          } else {
            ASSERT_TRUE(psd_unit_trace(o.matrix(), 1e-9));
          }
        },
        obj);
  }
}

INSTANTIATE_TEST_SUITE_P(AllKinds, DecodeFuzz,
                         ::testing::Values(ParamKind::pure, ParamKind::cpd, ParamKind::unitary,
                                           ParamKind::hermitian, ParamKind::density,
                                           ParamKind::separable),
                         [](const auto& info) { return std::string(to_string(info.param)); });

TEST(Decode, SeparableTwoQubitsArePpt) {
  const auto space = make_space(ParamKind::separable, DimSpec{2, 2});
  std::mt19937_64 rng(77);
  const std::vector<int> second{1};
  for (int k = 0; k < kFuzzDraws; ++k) {
    const auto rho = decode_state(space, random_params(space, rng));
    const ComplexMatrix pt = partial_transpose(rho.matrix(), rho.dims(), second);
    ASSERT_GE(hermitian_eigenvalues(pt).minCoeff(), -1e-9);
  }
}

TEST(RandomObject, DeterministicAndNormalized) {
  const auto a = std::get<DensityMatrix>(random_object(ParamKind::density, DimSpec{2}, 5));
  const auto b = std::get<DensityMatrix>(random_object(ParamKind::density, DimSpec{2}, 5));
  EXPECT_EQ(a.matrix(), b.matrix());
  const auto c = std::get<DensityMatrix>(random_object(ParamKind::density, DimSpec{2}, 6));
  EXPECT_NE(a.matrix(), c.matrix());
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto psi = std::get<PureState>(random_object(ParamKind::pure, DimSpec{2, 2}, seed));
    EXPECT_NEAR(psi.amplitudes().norm(), 1.0, 1e-12);
  }
  const auto sep = random_object(ParamKind::separable, DimSpec{2, 2}, 3);
  EXPECT_TRUE(std::holds_alternative<DensityMatrix>(sep));
}

TEST(DeriveSeed, DistinctAndStable) {
  std::set<std::uint64_t> seen;
  for (std::uint64_t i = 0; i < 1000; ++i) seen.insert(derive_seed(42, i));
  EXPECT_EQ(seen.size(), 1000u);
  EXPECT_EQ(derive_seed(42, 7), derive_seed(42, 7));
  EXPECT_NE(derive_seed(42, 7), derive_seed(43, 7));
}

TEST(Encode, PureRoundTrip) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const int d = 2 + static_cast<int>(seed % 4);
    const auto psi = testing::random_pure(DimSpec{d}, seed);
    const auto back = decode_pure(make_space(ParamKind::pure, DimSpec{d}), encode_pure(psi));
    EXPECT_LT((back.amplitudes() - psi.amplitudes()).norm(), 1e-10);
  }
}

TEST(Encode, PureRoundTripUpToGlobalPhase) {
  const auto psi = testing::random_pure(DimSpec{3}, 1);
  const PureState shifted(psi.amplitudes() * std::polar(1.0, 0.7), DimSpec{3});
  const auto back = decode_pure(make_space(ParamKind::pure, DimSpec{3}), encode_pure(shifted));
  EXPECT_NEAR(std::abs(back.amplitudes().dot(psi.amplitudes())), 1.0, 1e-12);
}

TEST(Encode, CpdRoundTrip) {
  RealVector p(4);
  p << 0.1, 0.0, 0.6, 0.3;
  const auto back = decode_cpd(make_space(ParamKind::cpd, DimSpec{4}), encode_cpd(CPD(p)));
  EXPECT_LT((back.probabilities() - p).norm(), 1e-12);
}

TEST(Encode, SeparableRoundTrip) {
  for (const DimSpec& dims : {DimSpec{2, 2}, DimSpec{2, 3}}) {
    const auto space = make_space(ParamKind::separable, dims);
    std::mt19937_64 rng(12);
    const RealVector x = random_params(space, rng);
    const auto terms = decompose_separable(space, x);
    ASSERT_EQ(static_cast<int>(terms.size()), dims.total() * dims.total());
    ComplexMatrix rebuilt = ComplexMatrix::Zero(dims.total(), dims.total());
    for (const auto& t : terms) {
      ComplexVector v = t.factors[0];
      for (std::size_t k = 1; k < t.factors.size(); ++k) v = kron(v, t.factors[k]);
      rebuilt += t.weight * v * v.adjoint();
    }
    const auto rho = decode_state(space, x);
    EXPECT_LT(testing::max_abs_diff(rebuilt, rho.matrix()), 1e-12);
    const auto again = decode_state(space, encode_separable(space, terms));
    EXPECT_LT(testing::max_abs_diff(again.matrix(), rho.matrix()), 1e-10);
  }
  const auto space = make_space(ParamKind::separable, DimSpec{2, 2});
  EXPECT_THROW(encode_separable(space, std::vector<ProductTerm>(3)), DimensionError);
}

TEST(SeparableDecoder, MatchesDirectDecodeUnderCoordinateMoves) {
  const auto space = make_space(ParamKind::separable, DimSpec{2, 2});
  SeparableDecoder decoder(space);
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> pick(0, space.param_count - 1);
  std::normal_distribution<double> g(0.0, 0.3);
  RealVector x = random_params(space, rng);
  for (int step = 0; step < 3000; ++step) {
    x(pick(rng)) += g(rng);
    if (step % 97 == 0) x = random_params(space, rng);
    const ComplexMatrix& fast = decoder.decode(x);
    EXPECT_LT(testing::max_abs_diff(fast, decode_state(space, x).matrix()), 1e-12) << step;
  }
  EXPECT_THROW(SeparableDecoder(make_space(ParamKind::density, DimSpec{2})), DomainError);
}

}  // namespace
}  // namespace qitk
