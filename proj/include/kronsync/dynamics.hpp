#pragma once

#include "kronsync/kron.hpp"
#include "kronsync/oscillator.hpp"

namespace kronsync {

/// First-order descriptor form Emat * wdot = Amat * w of q identical
/// oscillators coupled through the network, with interior node values kept
/// as explicit states. State layout: w = [x (q*n); v = xdot (q*n); g (p-q)].
///
/// Row contract:
///   rows [0, qn)      xdot = v
///   rows [qn, 2qn)    (I(x)M) vdot + (I(x)B)V1 gdot
///                       = -(I(x)K + U2(x)BB^T) x - (U1(x)BB^T) v - (I(x)B)V2 g
///   rows [2qn, N)     W1 gdot = -V2^T(I(x)B^T) x - V1^T(I(x)B^T) v - W2 g
/// The last block is the interior balance; components along null(W1) are
/// purely algebraic constraints on (x, v, g).
struct DescriptorSystem {
  Index p = 0, q = 0, n = 0, N = 0;
  Matrix Emat;  // N x N, singular when W1 is
  Matrix Amat;  // N x N
  CouplingNetwork network;
  OscillatorModel osc;
  BlockPartition blocks;
  ObservabilityReport observability;  // advisory; assembly never fails on it

  // Precomputed pieces used per step.
  Matrix output_map;       // (I(x)B^T): q x qn, y = output_map * x
  Matrix energy_quadratic; // N x N symmetric PSD, W(w) = 0.5 w^T P w
  Matrix constraint_rows;  // k x N: null(W1)-projected interior balance

  [[nodiscard]] Index x_offset() const { return 0; }
  [[nodiscard]] Index v_offset() const { return q * n; }
  [[nodiscard]] Index g_offset() const { return 2 * q * n; }
  [[nodiscard]] double constraint_residual(const Vector& w) const;
};

DescriptorSystem assemble_descriptor(const CouplingNetwork& net,
                                     const OscillatorModel& osc,
                                     double rank_tol = 1e-10);

/// Distance of the position stack x (q blocks of size n) from its
/// synchronized projection: ||x - 1 (x) mean||_2.
double sync_distance(const Vector& x, Index q, Index n);

/// Total energy: elastic + kinetic + network storage,
/// 0.5 x^T(I(x)K)x + 0.5 v^T(I(x)M)v + 0.5 z^T R z with z = [y; g].
double energy(const DescriptorSystem& sys, const Vector& w);

struct InitialState {
  Vector x, v, g;
  double constraint_residual = 0.0;
  [[nodiscard]] Vector stacked() const;
};

/// Completes (x0, v0) with an interior vector g(0).
/// With nonsingular W1 the interior balance constrains only gdot, so any
/// hint (default zero) is consistent. Along null(W1) the balance is
/// algebraic; g(0) is chosen by least squares starting from the hint, and
/// InconsistentConstraint is thrown if the best residual exceeds dae_tol.
InitialState consistent_initial_state(const DescriptorSystem& sys,
                                      const Vector& x0, const Vector& v0,
                                      const Vector& g_hint = Vector(),
                                      double dae_tol = 1e-6,
                                      double rank_tol = 1e-10);

struct SimulateOptions {
  double horizon = 10.0;
  double dt = 1e-3;
  double dae_tol = 1e-6;     // per-step constraint residual monitor
  Index state_stride = 1;    // record (x,v,g) every this many steps
  double blowup_factor = 1e9;  // |w|_max beyond this times the initial scale
                               // aborts with StepDiverged
};

/// Fixed-step run. Scalar series cover every step; state snapshots are
/// recorded every `state_stride` steps (first and last step always).
struct Trajectory {
  double dt = 0.0;
  Vector times;                 // size S+1
  Vector energy;                // size S+1
  Vector sync_dist;             // size S+1
  Vector constraint_residual;   // size S+1
  Matrix x, v, g;               // one column per recorded snapshot
  std::vector<Index> state_steps;  // step index of each snapshot column
};

/// Implicit trapezoid rule (midpoint for this LTI pencil):
/// (Emat - dt/2 Amat) w+ = (Emat + dt/2 Amat) w. A-stable; solves the
/// index-1 algebraic constraints exactly once the start state is consistent.
/// Throws SingularStepMatrix (suggest halving dt) or StepDiverged.
Trajectory simulate(const DescriptorSystem& sys, const InitialState& init,
                    const SimulateOptions& opts = {});

/// Finite generalized eigenvalues of (Amat, Emat); decay rates of the
/// coupled modes. Used to judge whether a horizon can resolve a verdict.
std::vector<Complex> pencil_eigenvalues(const DescriptorSystem& sys,
                                        double beta_tol = 1e-10);

struct EmpiricalVerdict {
  bool synchronizes = false;
  bool conclusive = true;
  double early_max = 0.0;   // max sync_dist over the first tenth
  double late_max = 0.0;    // max sync_dist over the last tenth
  double ratio = 0.0;       // late_max / early_max
  double energy_drop = 0.0; // (W(0) - W(end)) / max(W(0), eps)
};

/// Decides from a trajectory: synchronizing when ratio < decay_ratio_tol,
/// not synchronizing when ratio >= 10 * decay_ratio_tol, inconclusive in
/// the gray band between (rerun with a longer horizon or a fresh start).
EmpiricalVerdict empirical_verdict(const Trajectory& traj,
                                   double decay_ratio_tol = 1e-2);

/// Throwing accessor: InconclusiveHorizon when the gray band was hit.
bool require_conclusive(const EmpiricalVerdict& verdict);

}  // namespace kronsync
