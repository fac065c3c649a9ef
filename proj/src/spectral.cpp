#include "kronsync/spectral.hpp"

#include <limits>

namespace kronsync {

std::vector<Complex> eigenvalues_sorted(const ComplexMatrix& gamma) {
  if (gamma.rows() != gamma.cols())
    fail(ErrorCode::DimensionMismatch, "eigenvalue input must be square");
  if (gamma.rows() == 0) return {};
  Eigen::ComplexEigenSolver<ComplexMatrix> es(gamma, false);
  if (es.info() != Eigen::Success)
    fail(ErrorCode::EigenSolverFailure,
         "complex eigendecomposition did not converge");
  std::vector<Complex> eigs(es.eigenvalues().data(),
                            es.eigenvalues().data() + gamma.rows());
  sort_complex(eigs);
  return eigs;
}

SpectralVerdict sync_verdict(const ComplexMatrix& gamma, double zero_tol) {
  SpectralVerdict v;
  v.eigenvalues = eigenvalues_sorted(gamma);
  v.zero_tol =
      zero_tol >= 0.0 ? zero_tol : 1e-8 * std::max(1.0, max_abs(gamma));
  for (const auto& ev : v.eigenvalues)
    if (std::abs(ev) <= v.zero_tol) ++v.multiplicity_at_origin;
  if (v.eigenvalues.size() < 2) {
    // A one-node boundary has nothing to drift apart from.
    v.margin = std::numeric_limits<double>::infinity();
    v.synchronizes = true;
    return v;
  }
  v.margin = v.eigenvalues[1].real();
  v.synchronizes = v.margin > v.zero_tol;
  return v;
}

int imaginary_axis_count(const SpectralVerdict& verdict) {
  int count = 0;
  for (const auto& ev : verdict.eigenvalues)
    if (std::abs(ev.real()) <= verdict.zero_tol) ++count;
  return count;
}

}  // namespace kronsync
