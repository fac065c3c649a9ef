#include "kronsync/kron.hpp"

#include "kronsync/spectral.hpp"

namespace kronsync {

namespace {

void certify_residual(double residual, double scale, double certify_tol) {
  const double bound = certify_tol * (1.0 + scale);
  if (!(residual <= bound))
    fail(ErrorCode::CertificationFailed,
         "interior elimination residual " + std::to_string(residual) +
             " exceeds " + std::to_string(bound));
}

}  // namespace

SchurReduction<Complex> schur_complement_complex(const BlockPartition& blocks,
                                                 const ReduceOptions& opts) {
  const ComplexMatrix x =
      blocks.D.cast<Complex>() + Complex(0.0, 1.0) * blocks.R.cast<Complex>();
  auto r = schur_reduce<Complex>(x, blocks.q, opts.pinv_tol);
  certify_residual(r.residual, max_abs(x), opts.certify_tol);
  return r;
}

SchurReduction<double> schur_complement_real(const BlockPartition& blocks,
                                             const ReduceOptions& opts) {
  auto r = schur_reduce<double>(blocks.R, blocks.q, opts.pinv_tol);
  certify_residual(r.residual, max_abs(blocks.R), opts.certify_tol);
  return r;
}

ReducedCoupling reduce(const BlockPartition& blocks,
                       const ReduceOptions& opts) {
  ReducedCoupling rc;
  auto complex_part = schur_complement_complex(blocks, opts);
  auto real_part = schur_complement_real(blocks, opts);
  rc.Gamma = std::move(complex_part.reduced);
  rc.E_complex = std::move(complex_part.lift);
  rc.residual_gamma = complex_part.residual;
  rc.Lambda = std::move(real_part.reduced);
  rc.E_real = real_part.lift.cast<Complex>();
  rc.residual_lambda = real_part.residual;
  return rc;
}

ReducedCoupling reduce(const CouplingNetwork& net, const ReduceOptions& opts) {
  return reduce(partition_network(net), opts);
}

CouplingCertificate certify_reduced_coupling(const ComplexMatrix& gamma,
                                             double tol) {
  CouplingCertificate cert;
  const double bound = tol * std::max(1.0, max_abs(gamma));
  cert.max_asymmetry = max_abs(gamma - gamma.transpose());
  cert.symmetric = cert.max_asymmetry <= bound;
  cert.max_row_sum =
      max_abs(gamma * ComplexVector::Ones(gamma.cols()));
  cert.zero_row_sums = cert.max_row_sum <= bound;
  const auto eigs = eigenvalues_sorted(gamma);
  cert.min_real = 0.0;
  cert.min_imag = 0.0;
  for (const auto& ev : eigs) {
    cert.min_real = std::min(cert.min_real, ev.real());
    cert.min_imag = std::min(cert.min_imag, ev.imag());
  }
  cert.spectrum_right_half = cert.min_real >= -bound;
  cert.spectrum_upper_half = cert.min_imag >= -bound;
  return cert;
}

}  // namespace kronsync
