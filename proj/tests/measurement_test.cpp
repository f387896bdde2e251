#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "qitk/errors.hpp"
#include "qitk/measurement.hpp"
#include "test_support.hpp"

namespace qitk {
namespace {

using testing::max_abs_diff;
using testing::random_density;

std::vector<HermitianMatrix> z_basis() { return computational_projectors(DimSpec{2}, 0); }

DensityMatrix ket(int d, int i) { return pure_to_density(basis_state(DimSpec{d}, i)); }

void expect_valid(const MeasurementOutcome& m) {
  EXPECT_NEAR(m.probabilities.probabilities().sum(), 1.0, 1e-12);
  EXPECT_NEAR(m.mixture.matrix().trace().real(), 1.0, 1e-12);
  EXPECT_NO_THROW(make_density(m.mixture.matrix(), m.mixture.dims()));
  ComplexMatrix sum = ComplexMatrix::Zero(m.mixture.dim(), m.mixture.dim());
  for (std::size_t i = 0; i < m.post_states.size(); ++i) {
    sum += m.probabilities[static_cast<int>(i)] * m.post_states[i].matrix();
  }
  EXPECT_LT(max_abs_diff(sum, m.mixture.matrix()), 1e-12);
}

TEST(Orthogonal, Examples) {
  ComplexVector plus(2);
  plus << 1.0, 1.0;
  const auto p = orthogonal_measure(pure_to_density(make_pure(plus, DimSpec{2})), z_basis());
  EXPECT_NEAR(p.probabilities[0], 0.5, 1e-15);
  EXPECT_NEAR(p.probabilities[1], 0.5, 1e-15);
  expect_valid(p);
  const auto z = orthogonal_measure(ket(2, 0), z_basis());
  EXPECT_NEAR(z.probabilities[0], 1.0, 1e-15);
  EXPECT_NEAR(z.probabilities[1], 0.0, 1e-15);
  EXPECT_TRUE(z.degenerate[1]);
  EXPECT_FALSE(z.degenerate[0]);
  expect_valid(z);
}

TEST(Orthogonal, BellCollapse) {
  const auto bell = pure_to_density(std::get<PureState>(famous_state("bell_phi_plus")));
  const auto m = orthogonal_measure(bell, computational_projectors(DimSpec{2, 2}, 0));
  ComplexMatrix expected = ComplexMatrix::Zero(4, 4);
  expected(0, 0) = expected(3, 3) = 0.5;
  EXPECT_LT(max_abs_diff(m.mixture.matrix(), expected), 1e-15);
  expect_valid(m);
  EXPECT_LT(max_abs_diff(m.post_states[1].matrix(), ket(4, 3).matrix()), 1e-15);
}

TEST(Orthogonal, MixtureIdempotent) {
  const auto proj = computational_projectors(DimSpec{2, 3}, 1);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto once = orthogonal_measure(random_density(DimSpec{2, 3}, seed), proj);
    expect_valid(once);
    const auto twice = orthogonal_measure(once.mixture, proj);
    EXPECT_LT(max_abs_diff(twice.mixture.matrix(), once.mixture.matrix()), 1e-14);
  }
}

TEST(Orthogonal, Errors) {
  std::vector<HermitianMatrix> incomplete{z_basis()[0]};
  EXPECT_THROW(orthogonal_measure(ket(2, 0), incomplete), ValidationError);
  ComplexMatrix half = ComplexMatrix::Identity(2, 2) / 2.0;
  std::vector<HermitianMatrix> not_projective{HermitianMatrix(half), HermitianMatrix(half)};
  EXPECT_THROW(orthogonal_measure(ket(2, 0), not_projective), ValidationError);
}

TEST(Povm, Trine) {
  std::vector<HermitianMatrix> trine;
  for (int k = 0; k < 3; ++k) {
    const double a = 2.0 * std::numbers::pi * k / 3.0;
    ComplexVector v(2);
    v << std::cos(a / 2), std::sin(a / 2);
    trine.emplace_back(ComplexMatrix((2.0 / 3.0) * v * v.adjoint()));
  }
  const auto m = povm_measure(maximally_mixed(DimSpec{2}), trine);
  for (int k = 0; k < 3; ++k) EXPECT_NEAR(m.probabilities[k], 1.0 / 3.0, 1e-12);
  expect_valid(m);
  for (std::uint64_t seed = 0; seed < 20; ++seed) expect_valid(povm_measure(random_density(DimSpec{2}, seed), trine));
}

TEST(Povm, ProjectiveReducesToOrthogonal) {
  const auto proj = computational_projectors(DimSpec{3}, 0);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto rho = random_density(DimSpec{3}, seed);
    const auto a = povm_measure(rho, proj);
    const auto b = orthogonal_measure(rho, proj);
    EXPECT_LT((a.probabilities.probabilities() - b.probabilities.probabilities()).norm(), 1e-12);
    EXPECT_LT(max_abs_diff(a.mixture.matrix(), b.mixture.matrix()), 1e-12);
  }
}

TEST(Povm, Errors) {
  ComplexMatrix neg = ComplexMatrix::Zero(2, 2);
  neg(0, 0) = 1.5;
  neg(1, 1) = -0.5;
  ComplexMatrix comp = ComplexMatrix::Identity(2, 2) - neg;
  std::vector<HermitianMatrix> bad{HermitianMatrix(neg), HermitianMatrix(comp)};
  EXPECT_THROW(povm_measure(ket(2, 0), bad), ValidationError);
  std::vector<HermitianMatrix> incomplete{z_basis()[0]};
  EXPECT_THROW(povm_measure(ket(2, 0), incomplete), ValidationError);
}

TEST(Weak, Limits) {
  const HermitianMatrix z(pauli_z());
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto rho = random_density(DimSpec{2}, seed);
    const auto m = weak_measure(rho, z, 0.0);
    EXPECT_NEAR(m.probabilities[0], 0.5, 1e-12);
    EXPECT_LT(max_abs_diff(m.mixture.matrix(), rho.matrix()), 1e-12);
    const auto strong = weak_measure(rho, z, 1.0);
    const auto proj = orthogonal_measure(rho, z_basis());
    EXPECT_LT(max_abs_diff(strong.mixture.matrix(), proj.mixture.matrix()), 1e-12);
    expect_valid(weak_measure(rho, z, 0.3));
  }
  const auto m = weak_measure(ket(2, 0), z, 1.0);
  EXPECT_NEAR(m.probabilities[0], 1.0, 1e-12);
  EXPECT_NEAR(m.probabilities[1], 0.0, 1e-12);
  const auto half = weak_measure(maximally_mixed(DimSpec{2}), z, 0.5);
  EXPECT_NEAR(half.probabilities[0], 0.5, 1e-12);
  EXPECT_LT(max_abs_diff(half.mixture.matrix(), ComplexMatrix::Identity(2, 2) / 2.0), 1e-12);
  // p(+) = (1 + eps <A>) / 2.
  const auto rho = random_density(DimSpec{2}, 99);
  const double expect_z = (rho.matrix() * pauli_z()).trace().real();
  EXPECT_NEAR(weak_measure(rho, z, 0.4).probabilities[0], (1 + 0.4 * expect_z) / 2, 1e-12);
}

TEST(Weak, Errors) {
  EXPECT_THROW(weak_measure(ket(2, 0), HermitianMatrix(pauli_z()), 1.5), DomainError);
  EXPECT_THROW(weak_measure(ket(2, 0), HermitianMatrix(pauli_z()), -0.1), DomainError);
  EXPECT_THROW(weak_measure(ket(2, 0), HermitianMatrix(ComplexMatrix(2.0 * pauli_z())), 0.5),
               DomainError);
}

TEST(ComputationalProjectors, Shape) {
  const auto p = computational_projectors(DimSpec{2, 3}, 1);
  ASSERT_EQ(p.size(), 3u);
  ComplexMatrix sum = ComplexMatrix::Zero(6, 6);
  for (const auto& q : p) sum += q.matrix();
  EXPECT_LT(max_abs_diff(sum, ComplexMatrix::Identity(6, 6)), 1e-15);
  EXPECT_THROW(computational_projectors(DimSpec{2, 3}, 2), DimensionError);
}

}  // namespace
}  // namespace qitk
