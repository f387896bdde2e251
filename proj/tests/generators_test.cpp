#include <gtest/gtest.h>

#include "qitk/errors.hpp"
#include "qitk/generators.hpp"
#include "qitk/objects.hpp"
#include "test_support.hpp"

namespace qitk {
namespace {

TEST(SuGenerators, PauliForQubit) {
  const auto g = su_generators(2);
  ASSERT_EQ(g.generators.size(), 3u);
  EXPECT_EQ(g.generators[0], pauli_x());
  EXPECT_EQ(g.generators[1], pauli_y());
  EXPECT_EQ(g.generators[2], pauli_z());
  EXPECT_FALSE(g.includes_identity);
}

TEST(SuGenerators, OrthonormalTracelessHermitian) {
  for (int n = 2; n <= 6; ++n) {
    const auto g = su_generators(n);
    ASSERT_EQ(static_cast<int>(g.generators.size()), n * n - 1);
    for (std::size_t i = 0; i < g.generators.size(); ++i) {
      EXPECT_TRUE(is_hermitian(g.generators[i]));
      EXPECT_NEAR(std::abs(g.generators[i].trace()), 0.0, 1e-14);
      for (std::size_t j = 0; j < g.generators.size(); ++j) {
        const Complex t = (g.generators[i] * g.generators[j]).trace();
        EXPECT_NEAR(std::abs(t - Complex(i == j ? 2.0 : 0.0)), 0.0, 1e-13) << n << ' ' << i << ' ' << j;
      }
    }
  }
  EXPECT_THROW(su_generators(1), DomainError);
}

TEST(SuGenerators, OrderForQutrit) {
  const auto g = su_generators(3).generators;
  // symmetric (0,1), (0,2), (1,2), then antisymmetric, then diagonal.
  EXPECT_EQ(g[0](0, 1), Complex(1.0));
  EXPECT_EQ(g[1](0, 2), Complex(1.0));
  EXPECT_EQ(g[2](1, 2), Complex(1.0));
  EXPECT_EQ(g[3](0, 1), Complex(0.0, -1.0));
  EXPECT_EQ(g[3](1, 0), Complex(0.0, 1.0));
  EXPECT_NEAR(g[6](0, 0).real(), 1.0, 1e-15);
  EXPECT_NEAR(g[6](1, 1).real(), -1.0, 1e-15);
  EXPECT_NEAR(g[7](2, 2).real(), -2.0 / std::sqrt(3.0), 1e-15);
}

TEST(UGenerators, AppendsScaledIdentity) {
  const auto g = u_generators(3);
  ASSERT_EQ(g.generators.size(), 9u);
  EXPECT_TRUE(g.includes_identity);
  EXPECT_TRUE(approx_equal(g.generators.back(),
                           std::sqrt(2.0 / 3.0) * ComplexMatrix::Identity(3, 3)));
  EXPECT_NEAR((g.generators.back() * g.generators.back()).trace().real(), 2.0, 1e-14);
}

TEST(GeneratorCombination, MatchesExplicitSum) {
  for (int n = 2; n <= 5; ++n) {
    const auto g = u_generators(n);
    std::mt19937_64 rng(static_cast<std::uint64_t>(n));
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    RealVector c(n * n);
    for (int i = 0; i < n * n; ++i) c(i) = u(rng);
    ComplexMatrix sum = ComplexMatrix::Zero(n, n);
    for (int i = 0; i < n * n; ++i) sum += c(i) * g.generators[static_cast<std::size_t>(i)];
    EXPECT_LT(testing::max_abs_diff(generator_combination(c, n), sum), 1e-13);
    EXPECT_LT(testing::max_abs_diff(generator_combination(c.head(n * n - 1), n),
                                    sum - c(n * n - 1) * g.generators.back()),
              1e-13);
  }
  EXPECT_THROW(generator_combination(RealVector::Zero(5), 2), DimensionError);
}

TEST(GeneratorCoefficients, InvertsCombination) {
  for (int n = 2; n <= 5; ++n) {
    const ComplexMatrix h = testing::random_hermitian(n, static_cast<std::uint64_t>(n));
    const Eigen::VectorXcd c = generator_coefficients(h);
    const ComplexMatrix traceless = h - (h.trace() / double(n)) * ComplexMatrix::Identity(n, n);
    EXPECT_LT(testing::max_abs_diff(generator_combination(c.real(), n), traceless), 1e-12);
    EXPECT_LT(c.imag().cwiseAbs().maxCoeff(), 1e-13);
  }
}

}  // namespace
}  // namespace qitk
