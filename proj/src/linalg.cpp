#include "kronsync/linalg.hpp"

namespace kronsync {

const char* error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::BadInput: return "BadInput";
    case ErrorCode::NegativeWeight: return "NegativeWeight";
    case ErrorCode::DuplicateEdge: return "DuplicateEdge";
    case ErrorCode::SelfLoop: return "SelfLoop";
    case ErrorCode::BadIndex: return "BadIndex";
    case ErrorCode::EmptyBoundary: return "EmptyBoundary";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorCode::CertificationFailed: return "CertificationFailed";
    case ErrorCode::EigenSolverFailure: return "EigenSolverFailure";
    case ErrorCode::SingularStepMatrix: return "SingularStepMatrix";
    case ErrorCode::StepDiverged: return "StepDiverged";
    case ErrorCode::InconsistentConstraint: return "InconsistentConstraint";
    case ErrorCode::VerdictIsSync: return "VerdictIsSync";
    case ErrorCode::NoResonance: return "NoResonance";
    case ErrorCode::EtaNotScalable: return "EtaNotScalable";
    case ErrorCode::InconclusiveHorizon: return "InconclusiveHorizon";
  }
  return "UnknownError";
}

bool is_input_error(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::BadInput:
    case ErrorCode::NegativeWeight:
    case ErrorCode::DuplicateEdge:
    case ErrorCode::SelfLoop:
    case ErrorCode::BadIndex:
    case ErrorCode::EmptyBoundary:
    case ErrorCode::DimensionMismatch:
    case ErrorCode::NotPositiveDefinite:
    case ErrorCode::VerdictIsSync:
      return true;
    default:
      return false;
  }
}

Matrix symmetric_nullspace(const Matrix& w, double tol) {
  if (w.rows() == 0) return Matrix(0, 0);
  Eigen::SelfAdjointEigenSolver<Matrix> es(w);
  if (es.info() != Eigen::Success)
    fail(ErrorCode::EigenSolverFailure,
         "symmetric eigendecomposition did not converge");
  const double cutoff = tol * std::max(1.0, max_abs(w));
  Index count = 0;
  for (Index i = 0; i < w.rows(); ++i)
    if (std::abs(es.eigenvalues()(i)) <= cutoff) ++count;
  Matrix basis(w.rows(), count);
  Index k = 0;
  for (Index i = 0; i < w.rows(); ++i)
    if (std::abs(es.eigenvalues()(i)) <= cutoff)
      basis.col(k++) = es.eigenvectors().col(i);
  return basis;
}

ComplexMatrix complex_nullspace(const ComplexMatrix& a, double tol) {
  if (a.size() == 0) return ComplexMatrix(a.cols(), a.cols());
  Eigen::JacobiSVD<ComplexMatrix> svd(a, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double cutoff = tol * std::max(1.0, sv.size() > 0 ? sv(0) : 0.0);
  Index count = 0;
  for (Index i = 0; i < sv.size(); ++i)
    if (sv(i) <= cutoff) ++count;
  count += a.cols() - sv.size();  // columns beyond the rank of a wide factor
  ComplexMatrix basis(a.cols(), count);
  Index k = 0;
  for (Index i = 0; i < a.cols(); ++i) {
    if (i >= sv.size() || sv(i) <= cutoff) basis.col(k++) = svd.matrixV().col(i);
  }
  return basis;
}

Matrix require_symmetric(const Matrix& x, double tol, ErrorCode code,
                         const std::string& what) {
  if (x.rows() != x.cols())
    fail(ErrorCode::DimensionMismatch, what + " must be square");
  const double asym = max_abs(x - x.transpose());
  if (asym > tol * std::max(1.0, max_abs(x)))
    fail(code, what + " is not symmetric within tolerance");
  return 0.5 * (x + x.transpose());
}

}  // namespace kronsync
