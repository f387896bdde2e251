#include "qitk/generators.hpp"

#include <cmath>

namespace qitk {
namespace {

void require_order(int n) {
  if (n < 2) throw DomainError("generators: n must be >= 2");
}

double diagonal_scale(int l) { return std::sqrt(2.0 / (static_cast<double>(l) * (l + 1))); }

}  // namespace

GeneratorSet su_generators(int n) {
  require_order(n);
  GeneratorSet set{n, {}, false};
  set.generators.reserve(static_cast<std::size_t>(n * n - 1));
  for (int j = 0; j < n; ++j) {
    for (int k = j + 1; k < n; ++k) {
      ComplexMatrix g = ComplexMatrix::Zero(n, n);
      g(j, k) = 1.0;
      g(k, j) = 1.0;
      set.generators.push_back(std::move(g));
    }
  }
  const Complex i(0.0, 1.0);
  for (int j = 0; j < n; ++j) {
    for (int k = j + 1; k < n; ++k) {
      ComplexMatrix g = ComplexMatrix::Zero(n, n);
      g(j, k) = -i;
      g(k, j) = i;
      set.generators.push_back(std::move(g));
    }
  }
  for (int l = 1; l < n; ++l) {
    ComplexMatrix g = ComplexMatrix::Zero(n, n);
    const double s = diagonal_scale(l);
    for (int j = 0; j < l; ++j) g(j, j) = s;
    g(l, l) = -s * l;
    set.generators.push_back(std::move(g));
  }
  return set;
}

GeneratorSet u_generators(int n) {
  GeneratorSet set = su_generators(n);
  set.generators.push_back(ComplexMatrix::Identity(n, n) * std::sqrt(2.0 / n));
  set.includes_identity = true;
  return set;
}

ComplexMatrix generator_combination(const RealVector& coeffs, int n) {
  require_order(n);
  const Eigen::Index su_count = static_cast<Eigen::Index>(n) * n - 1;
  if (coeffs.size() != su_count && coeffs.size() != su_count + 1) {
    throw DimensionError("generator_combination: expected n^2-1 or n^2 coefficients");
  }
  ComplexMatrix h = ComplexMatrix::Zero(n, n);
  const Eigen::Index pairs = static_cast<Eigen::Index>(n) * (n - 1) / 2;
  Eigen::Index p = 0;
  for (int j = 0; j < n; ++j) {
    for (int k = j + 1; k < n; ++k, ++p) {
      const double a = coeffs(p);
      const double b = coeffs(pairs + p);
      h(j, k) += Complex(a, -b);
      h(k, j) += Complex(a, b);
    }
  }
  for (int l = 1; l < n; ++l) {
    const double c = coeffs(2 * pairs + l - 1) * diagonal_scale(l);
    for (int j = 0; j < l; ++j) h(j, j) += c;
    h(l, l) -= c * l;
  }
  if (coeffs.size() == su_count + 1) {
    const double c = coeffs(su_count) * std::sqrt(2.0 / n);
    for (int j = 0; j < n; ++j) h(j, j) += c;
  }
  return h;
}

Eigen::VectorXcd generator_coefficients(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) throw DimensionError("generator_coefficients: matrix not square");
  const int n = static_cast<int>(m.rows());
  require_order(n);
  const Eigen::Index pairs = static_cast<Eigen::Index>(n) * (n - 1) / 2;
  Eigen::VectorXcd c(static_cast<Eigen::Index>(n) * n - 1);
  const Complex i(0.0, 1.0);
  Eigen::Index p = 0;
  for (int j = 0; j < n; ++j) {
    for (int k = j + 1; k < n; ++k, ++p) {
      c(p) = 0.5 * (m(k, j) + m(j, k));
      c(pairs + p) = 0.5 * i * (m(j, k) - m(k, j));
    }
  }
  for (int l = 1; l < n; ++l) {
    Complex acc = 0.0;
    for (int j = 0; j < l; ++j) acc += m(j, j);
    acc -= static_cast<double>(l) * m(l, l);
    c(2 * pairs + l - 1) = 0.5 * diagonal_scale(l) * acc;
  }
  return c;
}

}  // namespace qitk
