#pragma once

#include <vector>

#include "kronsync/linalg.hpp"

namespace kronsync {

/// Eigenvalues of a general complex matrix, sorted ascending by
/// (real part, then imaginary part). Throws EigenSolverFailure.
std::vector<Complex> eigenvalues_sorted(const ComplexMatrix& gamma);

/// Synchronization decision for a reduced boundary coupling.
/// The array synchronizes exactly when the second-smallest eigenvalue of
/// Gamma has positive real part; that real part is the margin.
struct SpectralVerdict {
  std::vector<Complex> eigenvalues;  // sorted by (Re, Im)
  double margin = 0.0;               // Re of eigenvalue #2; +inf when q == 1
  bool synchronizes = false;
  double zero_tol = 0.0;             // absolute tolerance actually used
  int multiplicity_at_origin = 0;    // #{ |lambda| <= zero_tol }
};

/// zero_tol < 0 selects the default 1e-8 * max(1, |Gamma|_max).
/// Margins in (0, zero_tol] are treated as not synchronizing; the CLI
/// reports them as inconclusive. A single-node boundary (q == 1)
/// synchronizes trivially with infinite margin.
SpectralVerdict sync_verdict(const ComplexMatrix& gamma,
                             double zero_tol = -1.0);

/// Number of eigenvalues on the imaginary axis, |Re lambda| <= zero_tol.
/// With no interior nodes the verdict is equivalent to this count being
/// exactly one (the structural origin eigenvalue).
int imaginary_axis_count(const SpectralVerdict& verdict);

}  // namespace kronsync
