#pragma once

#include <vector>

#include "kronsync/linalg.hpp"

namespace kronsync {

/// One node's oscillator: M xdd + K x = B u with scalar input u and scalar
/// output y = B^T x. M and K are symmetric positive definite, B nonzero.
struct OscillatorModel {
  Index n = 0;
  Matrix M;
  Matrix K;
  Vector B;
};

/// Symmetrizes M and K (tolerating asymmetry up to sym_tol relative) and
/// checks positive definiteness and B != 0.
/// Throws NotPositiveDefinite or BadInput.
OscillatorModel validate_oscillator(const Matrix& M, const Matrix& K,
                                    const Vector& B, double sym_tol = 1e-9);

struct ObservabilityReport {
  bool observable = true;
  // Distinct undamped natural frequencies, ascending.
  std::vector<double> natural_frequencies;
  // Frequencies at which some free-vibration mode is invisible through B.
  std::vector<double> violations;
};

/// A frequency omega violates observability when null(K - omega^2 M)
/// contains a vector orthogonal to B: either the nullspace has dimension
/// greater than one, or its single direction is orthogonal to B within tol.
/// Only the natural frequencies of (K, M) can violate; all other omega > 0
/// give a trivial nullspace because K, M are positive definite.
/// Throws NotPositiveDefinite when M or K fails the definiteness check.
ObservabilityReport check_observability(const OscillatorModel& osc,
                                        double rank_tol = 1e-10);

}  // namespace kronsync
