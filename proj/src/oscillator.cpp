#include "kronsync/oscillator.hpp"

#include <cmath>

namespace kronsync {

namespace {

void require_positive_definite(const Matrix& m, const char* name) {
  Eigen::LLT<Matrix> llt(m);
  if (llt.info() != Eigen::Success)
    fail(ErrorCode::NotPositiveDefinite,
         std::string(name) + " is not positive definite");
}

}  // namespace

OscillatorModel validate_oscillator(const Matrix& M, const Matrix& K,
                                    const Vector& B, double sym_tol) {
  OscillatorModel osc;
  osc.M = require_symmetric(M, sym_tol, ErrorCode::NotPositiveDefinite,
                            "mass matrix");
  osc.K = require_symmetric(K, sym_tol, ErrorCode::NotPositiveDefinite,
                            "stiffness matrix");
  if (K.rows() != M.rows() || B.size() != M.rows())
    fail(ErrorCode::DimensionMismatch,
         "oscillator matrices M, K and vector B must share one dimension");
  require_positive_definite(osc.M, "mass matrix");
  require_positive_definite(osc.K, "stiffness matrix");
  if (B.size() == 0 || max_abs(B) == 0.0)
    fail(ErrorCode::BadInput, "input vector B must be nonzero");
  osc.B = B;
  osc.n = M.rows();
  return osc;
}

ObservabilityReport check_observability(const OscillatorModel& osc,
                                        double rank_tol) {
  require_positive_definite(osc.M, "mass matrix");
  require_positive_definite(osc.K, "stiffness matrix");

  Eigen::GeneralizedSelfAdjointEigenSolver<Matrix> ges(osc.K, osc.M);
  if (ges.info() != Eigen::Success)
    fail(ErrorCode::EigenSolverFailure,
         "generalized eigendecomposition of (K, M) did not converge");
  const Vector theta = ges.eigenvalues();  // ascending, all positive

  ObservabilityReport report;
  const double theta_scale = std::max(1.0, std::abs(theta(theta.size() - 1)));
  Index i = 0;
  while (i < theta.size()) {
    // Cluster numerically coincident eigenvalues: they share one frequency
    // whose mode space is the span of the clustered eigenvectors.
    Index j = i + 1;
    while (j < theta.size() &&
           std::abs(theta(j) - theta(i)) <= 1e-8 * theta_scale)
      ++j;
    const Index mult = j - i;
    const double omega = std::sqrt(std::max(theta(i), 0.0));
    report.natural_frequencies.push_back(omega);
    bool violated = mult > 1;
    if (!violated) {
      Vector v = ges.eigenvectors().col(i).normalized();
      violated = std::abs(osc.B.dot(v)) <= rank_tol * osc.B.norm();
    }
    if (violated) report.violations.push_back(omega);
    i = j;
  }
  report.observable = report.violations.empty();
  return report;
}

}  // namespace kronsync
