#include "kronsync/witness.hpp"

#include <cmath>

namespace kronsync {

namespace {

// Unit vector in span(basis columns) orthogonal to 1; empty on failure.
ComplexVector deflate_against_ones(const ComplexMatrix& basis) {
  const Index q = basis.rows();
  const ComplexVector ones = ComplexVector::Ones(q) / std::sqrt(double(q));
  ComplexVector best = ComplexVector::Zero(q);
  double best_norm = 0.0;
  for (Index c = 0; c < basis.cols(); ++c) {
    const ComplexVector col = basis.col(c);
    ComplexVector cand = col - ones * ones.dot(col);
    if (cand.norm() > best_norm) {
      best_norm = cand.norm();
      best = cand;
    }
  }
  if (best_norm < 1e-7) return ComplexVector();
  return best / best.norm();
}

// Eigenvector of gamma for the eigenvalue closest to target.
ComplexVector eigenvector_for(const ComplexMatrix& gamma, Complex target) {
  Eigen::ComplexEigenSolver<ComplexMatrix> es(gamma, true);
  if (es.info() != Eigen::Success)
    fail(ErrorCode::EigenSolverFailure,
         "complex eigendecomposition did not converge");
  Index best = 0;
  double best_dist = std::abs(es.eigenvalues()(0) - target);
  for (Index i = 1; i < es.eigenvalues().size(); ++i) {
    const double d = std::abs(es.eigenvalues()(i) - target);
    if (d < best_dist) {
      best_dist = d;
      best = i;
    }
  }
  return es.eigenvectors().col(best).normalized();
}

}  // namespace

WitnessSolution witness_nonsync(const BlockPartition& blocks,
                                const OscillatorModel& osc,
                                const ReducedCoupling& reduced,
                                const SpectralVerdict& verdict,
                                double rank_tol) {
  if (verdict.synchronizes)
    fail(ErrorCode::VerdictIsSync,
         "the array synchronizes; no persistent disagreement exists");
  const Index q = blocks.q;
  const Index n = osc.n;

  WitnessSolution ws;
  // Deciding eigenvalue: the slowest non-uniform mode on the imaginary
  // axis. With a repeated origin eigenvalue the eigenvector must avoid
  // span{1}, which the nullspace of Gamma always allows in that case.
  const Complex lambda2 = verdict.eigenvalues.at(1);
  double mu = lambda2.imag();
  if (std::abs(lambda2) <= verdict.zero_tol) mu = 0.0;
  if (mu == 0.0) {
    const ComplexMatrix null_basis =
        complex_nullspace(reduced.Gamma, rank_tol);
    ws.ybar = deflate_against_ones(null_basis);
    if (ws.ybar.size() == 0) {
      // Origin eigenvalue was numerically simple after all; fall back to
      // the smallest genuinely nonzero imaginary-axis eigenvalue.
      for (const auto& ev : verdict.eigenvalues) {
        if (ev.real() <= verdict.zero_tol && std::abs(ev) > verdict.zero_tol) {
          mu = ev.imag();
          break;
        }
      }
      if (mu == 0.0)
        fail(ErrorCode::EigenSolverFailure,
             "failed to isolate a non-uniform imaginary-axis mode");
      ws.ybar = eigenvector_for(reduced.Gamma, Complex(0.0, mu));
    }
  } else {
    ws.ybar = eigenvector_for(reduced.Gamma, Complex(0.0, mu));
  }
  ws.mu = mu;
  ws.gbar = reduced.E_complex * ws.ybar;
  ws.ubar = -mu * ws.ybar;

  // Resonant frequency: omega^2 ranges over the spectrum of
  // (K + mu B B^T, M); pick the smallest one whose mode is visible
  // through B, then scale that mode to B^T eta = 1.
  const Matrix k_eff = osc.K + mu * (osc.B * osc.B.transpose());
  Eigen::GeneralizedSelfAdjointEigenSolver<Matrix> ges(k_eff, osc.M);
  if (ges.info() != Eigen::Success)
    fail(ErrorCode::EigenSolverFailure,
         "generalized eigendecomposition of (K + mu BB^T, M) failed");
  bool found = false;
  for (Index i = 0; i < ges.eigenvalues().size() && !found; ++i) {
    const double theta = ges.eigenvalues()(i);
    if (theta <= 0.0) continue;  // guards indefinite input slip-through
    const Vector v = ges.eigenvectors().col(i);
    const double visibility = std::abs(osc.B.dot(v)) / (osc.B.norm() * v.norm());
    if (visibility > std::max(rank_tol, 1e-9)) {
      ws.omega = std::sqrt(theta);
      ws.eta = v / osc.B.dot(v);
      found = true;
    }
  }
  if (ges.eigenvalues().size() == 0 ||
      ges.eigenvalues()(ges.eigenvalues().size() - 1) <= 0.0)
    fail(ErrorCode::NoResonance,
         "no positive resonant frequency for (K + mu BB^T, M)");
  if (!found)
    fail(ErrorCode::EtaNotScalable,
         "every mode at the admissible frequencies is orthogonal to B");

  ws.xbar.resize(q * n);
  for (Index i = 0; i < q; ++i)
    ws.xbar.segment(i * n, n) = ws.ybar(i) * ws.eta.cast<Complex>();
  ws.x0 = ws.xbar.real();
  ws.v0 = -ws.omega * ws.xbar.imag();
  ws.g0 = ws.gbar.real();
  return ws;
}

}  // namespace kronsync
