#include "qitk/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <unsupported/Eigen/KroneckerProduct>

namespace qitk {

Tolerance::Tolerance(double abs, double rel) : abs_eps(abs), rel_eps(rel) {
  if (!(abs > 0.0) || !(rel > 0.0)) {
    throw DomainError("tolerance components must be strictly positive");
  }
}

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b,
                        const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError(std::string(what) + ": shape mismatch (" +
                         std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                         " vs " + std::to_string(b.rows()) + "x" +
                         std::to_string(b.cols()) + ")");
  }
}

bool approx_equal(const ComplexMatrix& a, const ComplexMatrix& b,
                  const Tolerance& tol) {
  require_same_shape(a, b, "approx_equal");
  if (a.size() == 0) return true;
  const double scale = std::max(a.cwiseAbs().maxCoeff(), b.cwiseAbs().maxCoeff());
  const double diff = (a - b).cwiseAbs().maxCoeff();
  return diff <= tol.bound(scale);
}

double chop(double x, const Tolerance& tol) {
  const double nearest = std::round(x);
  if (std::abs(x - nearest) <= tol.abs_eps) return nearest + 0.0;
  return x;
}

ComplexMatrix chop(const ComplexMatrix& a, const Tolerance& tol) {
  ComplexMatrix out(a.rows(), a.cols());
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    const Complex z = a.data()[i];
    double im = std::abs(z.imag()) <= tol.abs_eps ? 0.0 : chop(z.imag(), tol);
    out.data()[i] = Complex(chop(z.real(), tol), im);
  }
  return out;
}

std::vector<ComplexVector> gram_schmidt(std::span<const ComplexVector> vectors,
                                        const Tolerance& tol) {
  std::vector<ComplexVector> basis;
  if (vectors.empty()) return basis;
  const Eigen::Index n = vectors.front().size();
  for (const auto& v : vectors) {
    if (v.size() != n) throw DimensionError("gram_schmidt: vectors differ in length");
  }
  for (const auto& v : vectors) {
    ComplexVector r = v;
    // Two passes keep the result orthogonal to working precision.
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& q : basis) r -= q * q.dot(r);
    }
    const double norm = r.norm();
    if (norm < tol.abs_eps) continue;
    basis.push_back(r / norm);
  }
  return basis;
}

std::vector<Complex> span_coefficients(const ComplexMatrix& m,
                                       std::span<const ComplexMatrix> basis,
                                       const Tolerance& tol) {
  if (basis.empty()) throw DimensionError("span_coefficients: empty basis");
  const Eigen::Index len = m.size();
  ComplexMatrix a(len, static_cast<Eigen::Index>(basis.size()));
  for (std::size_t k = 0; k < basis.size(); ++k) {
    require_same_shape(m, basis[k], "span_coefficients");
    a.col(static_cast<Eigen::Index>(k)) =
        Eigen::Map<const ComplexVector>(basis[k].data(), len);
  }
  const Eigen::Map<const ComplexVector> target(m.data(), len);
  const ComplexVector c = a.completeOrthogonalDecomposition().solve(target);
  const double residual = (a * c - target).norm();
  if (residual > tol.bound(target.norm())) {
    throw NotSpannableError("span_coefficients: matrix lies outside the span (residual " +
                            std::to_string(residual) + ")");
  }
  return {c.data(), c.data() + c.size()};
}

HermitianEigen hermitian_eigen(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) throw DimensionError("hermitian_eigen: matrix not square");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m);
  if (solver.info() != Eigen::Success) {
    throw ValidationError("hermitian_eigen: eigen-solver did not converge");
  }
  HermitianEigen out{solver.eigenvalues(), solver.eigenvectors()};
  for (Eigen::Index j = 0; j < out.vectors.cols(); ++j) {
    auto col = out.vectors.col(j);
    Eigen::Index best = 0;
    double best_abs = -1.0;
    for (Eigen::Index i = 0; i < col.size(); ++i) {
      // Strictly greater plus a small margin: the first index wins near-ties.
      const double mag = std::abs(col(i));
      if (mag > best_abs * (1.0 + 1e-12) + 1e-15) {
        best_abs = mag;
        best = i;
      }
    }
    if (best_abs > 0.0) {
      col *= std::conj(col(best)) / best_abs;
      col(best) = std::abs(col(best));
    }
  }
  return out;
}

RealVector hermitian_eigenvalues(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) throw DimensionError("hermitian_eigenvalues: matrix not square");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw ValidationError("hermitian_eigenvalues: eigen-solver did not converge");
  }
  return solver.eigenvalues();
}

ComplexMatrix hermitian_function(const ComplexMatrix& m,
                                 const std::function<double(double)>& f) {
  const auto eig = hermitian_eigen(m);
  RealVector fv(eig.values.size());
  for (Eigen::Index i = 0; i < fv.size(); ++i) fv(i) = f(eig.values(i));
  return eig.vectors * fv.cast<Complex>().asDiagonal() * eig.vectors.adjoint();
}

ComplexMatrix psd_sqrt(const ComplexMatrix& m) {
  return hermitian_function(m, [](double x) { return x > 0.0 ? std::sqrt(x) : 0.0; });
}

ComplexMatrix psd_log2(const ComplexMatrix& m, const Tolerance& tol) {
  const double eps = tol.abs_eps;
  return hermitian_function(m, [eps](double x) { return x > eps ? std::log2(x) : 0.0; });
}

ComplexMatrix expi_hermitian(const ComplexMatrix& h) {
  const auto eig = hermitian_eigen(h);
  ComplexVector phases(eig.values.size());
  for (Eigen::Index i = 0; i < phases.size(); ++i) {
    phases(i) = std::polar(1.0, eig.values(i));
  }
  return eig.vectors * phases.asDiagonal() * eig.vectors.adjoint();
}

double trace_norm_hermitian(const ComplexMatrix& m) {
  return hermitian_eigenvalues(m).cwiseAbs().sum();
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  return Eigen::kroneckerProduct(a, b).eval();
}

ComplexVector kron(const ComplexVector& a, const ComplexVector& b) {
  ComplexVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    out.segment(i * b.size(), b.size()) = a(i) * b;
  }
  return out;
}

bool is_hermitian(const ComplexMatrix& m, const Tolerance& tol) {
  if (m.rows() != m.cols()) return false;
  return approx_equal(m, m.adjoint(), tol);
}

bool is_unitary(const ComplexMatrix& m, const Tolerance& tol) {
  if (m.rows() != m.cols()) return false;
  return approx_equal(m.adjoint() * m, ComplexMatrix::Identity(m.rows(), m.cols()), tol);
}

double xlog2x(double x) { return x > 0.0 ? x * std::log2(x) : 0.0; }

}  // namespace qitk
