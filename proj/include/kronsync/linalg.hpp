#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <complex>
#include <vector>

#include "kronsync/errors.hpp"

namespace kronsync {

using Eigen::Index;
using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

template <typename Scalar>
using DenseMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

/// Largest absolute entry; the norm used for residuals and tolerance scales.
template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

/// Moore-Penrose pseudoinverse by SVD. Singular values below
/// tol * sigma_max are treated as exact zeros.
template <typename Scalar>
DenseMatrix<Scalar> pseudo_inverse(const DenseMatrix<Scalar>& a,
                                   double tol = 1e-10) {
  if (a.size() == 0) return DenseMatrix<Scalar>(a.cols(), a.rows());
  Eigen::JacobiSVD<DenseMatrix<Scalar>> svd(
      a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  const double cutoff = tol * (sv.size() > 0 ? sv(0) : 0.0);
  Eigen::VectorXd inv_sv = Eigen::VectorXd::Zero(sv.size());
  for (Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > cutoff && sv(i) > 0.0) inv_sv(i) = 1.0 / sv(i);
  }
  return svd.matrixV() * inv_sv.asDiagonal() * svd.matrixU().adjoint();
}

/// Orthonormal basis of the nullspace of a symmetric real matrix
/// (eigenvalues within tol * max(1, |W|_max) of zero count as null).
Matrix symmetric_nullspace(const Matrix& w, double tol = 1e-10);

/// Orthonormal basis (columns) of the nullspace of a complex matrix via SVD.
ComplexMatrix complex_nullspace(const ComplexMatrix& a, double tol = 1e-10);

/// Kronecker product; kept local so the dense core only needs Eigen/Dense.
template <typename Scalar>
DenseMatrix<Scalar> kron(const DenseMatrix<Scalar>& a,
                         const DenseMatrix<Scalar>& b) {
  DenseMatrix<Scalar> out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

/// Ascending lexicographic order on (Re, Im).
inline bool complex_less(const Complex& a, const Complex& b) {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

inline void sort_complex(std::vector<Complex>& v) {
  std::sort(v.begin(), v.end(), complex_less);
}

/// Checks |X - X^T|_max <= tol * max(1, |X|_max) and returns the symmetrized
/// matrix (X + X^T) / 2; throws with `code` otherwise.
Matrix require_symmetric(const Matrix& x, double tol, ErrorCode code,
                         const std::string& what);

}  // namespace kronsync
