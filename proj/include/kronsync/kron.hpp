#pragma once

#include "kronsync/network.hpp"

namespace kronsync {

struct ReduceOptions {
  // Relative singular value cutoff for interior-block pseudoinverses.
  double pinv_tol = 1e-10;
  // Residual acceptance threshold, scaled by (1 + |D + jR|_max).
  double certify_tol = 1e-8;
};

/// Result of eliminating the interior nodes from a p x p coupling matrix:
/// `reduced` is the q x q boundary coupling, `lift` maps boundary values to
/// interior values so that X * [I; lift] = [reduced; 0] up to `residual`.
template <typename Scalar>
struct SchurReduction {
  DenseMatrix<Scalar> reduced;  // q x q
  DenseMatrix<Scalar> lift;     // (p-q) x q
  double residual = 0.0;        // max|X [I; lift] - [reduced; 0]|
};

/// Interior elimination of X split at q, with the interior block inverted by
/// SVD pseudoinverse: reduced = U - V W^+ V^T, lift = -W^+ V^T.
/// Plain (not conjugated) transposes throughout; the result stays symmetric
/// for symmetric X.
template <typename Scalar>
SchurReduction<Scalar> schur_reduce(const DenseMatrix<Scalar>& x, Index q,
                                    double pinv_tol = 1e-10) {
  const Index p = x.rows();
  if (x.cols() != p || q < 1 || q > p)
    fail(ErrorCode::DimensionMismatch,
         "interior elimination needs a square matrix and 1 <= q <= p");
  SchurReduction<Scalar> r;
  if (q == p) {
    r.reduced = x;
    r.lift = DenseMatrix<Scalar>(0, q);
    r.residual = 0.0;
    return r;
  }
  const DenseMatrix<Scalar> u = x.topLeftCorner(q, q);
  const DenseMatrix<Scalar> v = x.topRightCorner(q, p - q);
  const DenseMatrix<Scalar> w = x.bottomRightCorner(p - q, p - q);
  r.lift = -pseudo_inverse<Scalar>(w, pinv_tol) * v.transpose();
  r.reduced = u + v * r.lift;
  DenseMatrix<Scalar> stacked(p, q);
  stacked.topRows(q) = DenseMatrix<Scalar>::Identity(q, q);
  stacked.bottomRows(p - q) = r.lift;
  DenseMatrix<Scalar> target = DenseMatrix<Scalar>::Zero(p, q);
  target.topRows(q) = r.reduced;
  r.residual = max_abs(x * stacked - target);
  return r;
}

/// Complex elimination on D + jR. Throws CertificationFailed when the
/// defining-equation residual exceeds certify_tol * (1 + |D + jR|_max).
SchurReduction<Complex> schur_complement_complex(
    const BlockPartition& blocks, const ReduceOptions& opts = {});

/// Real elimination on R alone (the restorative part); same certification.
SchurReduction<double> schur_complement_real(const BlockPartition& blocks,
                                             const ReduceOptions& opts = {});

/// Both reductions of one network. Gamma decides synchronization; Lambda is
/// the steady-state input map. The two lifts generally differ.
struct ReducedCoupling {
  ComplexMatrix Gamma;      // q x q, complex symmetric (not Hermitian)
  Matrix Lambda;            // q x q, real symmetric positive semidefinite
  ComplexMatrix E_complex;  // (p-q) x q lift for Gamma
  ComplexMatrix E_real;     // (p-q) x q lift for Lambda (zero imaginary part)
  double residual_gamma = 0.0;
  double residual_lambda = 0.0;
};

ReducedCoupling reduce(const BlockPartition& blocks,
                       const ReduceOptions& opts = {});
ReducedCoupling reduce(const CouplingNetwork& net,
                       const ReduceOptions& opts = {});

/// Structural facts every reduced boundary coupling must satisfy:
/// symmetry, zero row sums, spectrum confined to Re >= 0 and Im >= 0.
struct CouplingCertificate {
  bool symmetric = false;
  bool zero_row_sums = false;
  bool spectrum_right_half = false;
  bool spectrum_upper_half = false;
  double max_asymmetry = 0.0;
  double max_row_sum = 0.0;
  double min_real = 0.0;
  double min_imag = 0.0;

  [[nodiscard]] bool pass() const {
    return symmetric && zero_row_sums && spectrum_right_half &&
           spectrum_upper_half;
  }
};

/// Report-only check with threshold tol * max(1, |Gamma|_max).
CouplingCertificate certify_reduced_coupling(const ComplexMatrix& gamma,
                                             double tol = 1e-8);

}  // namespace kronsync
