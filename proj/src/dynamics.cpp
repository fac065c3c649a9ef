#include "kronsync/dynamics.hpp"

#include <cmath>

namespace kronsync {

DescriptorSystem assemble_descriptor(const CouplingNetwork& net,
                                     const OscillatorModel& osc,
                                     double rank_tol) {
  DescriptorSystem sys;
  sys.network = net;
  sys.osc = osc;
  sys.blocks = partition_network(net);
  sys.observability = check_observability(osc, rank_tol);
  sys.p = net.p;
  sys.q = net.q;
  sys.n = osc.n;
  const Index qn = sys.q * sys.n;
  const Index m = sys.p - sys.q;  // interior count
  sys.N = 2 * qn + m;

  const BlockPartition& b = sys.blocks;
  const Matrix iq = Matrix::Identity(sys.q, sys.q);
  const Matrix bbt = osc.B * osc.B.transpose();
  const Matrix ik = kron<double>(iq, osc.K);
  const Matrix im = kron<double>(iq, osc.M);
  Matrix ib(qn, sys.q);  // I (x) B
  ib.setZero();
  for (Index i = 0; i < sys.q; ++i) ib.block(i * sys.n, i, sys.n, 1) = osc.B;
  sys.output_map = ib.transpose();

  sys.Emat = Matrix::Zero(sys.N, sys.N);
  sys.Amat = Matrix::Zero(sys.N, sys.N);
  sys.Emat.topLeftCorner(qn, qn).setIdentity();
  sys.Emat.block(qn, qn, qn, qn) = im;
  sys.Emat.block(qn, 2 * qn, qn, m) = ib * b.V1;
  sys.Emat.block(2 * qn, 2 * qn, m, m) = b.W1;

  sys.Amat.block(0, qn, qn, qn).setIdentity();
  sys.Amat.block(qn, 0, qn, qn) = -ik - kron<double>(b.U2, bbt);
  sys.Amat.block(qn, qn, qn, qn) = -kron<double>(b.U1, bbt);
  sys.Amat.block(qn, 2 * qn, qn, m) = -ib * b.V2;
  sys.Amat.block(2 * qn, 0, m, qn) = -b.V2.transpose() * sys.output_map;
  sys.Amat.block(2 * qn, qn, m, qn) = -b.V1.transpose() * sys.output_map;
  sys.Amat.block(2 * qn, 2 * qn, m, m) = -b.W2;

  // 0.5 w^T P w reproduces elastic + kinetic + network storage; the
  // network term z^T R z couples x and g through the output map.
  Matrix pmat = Matrix::Zero(sys.N, sys.N);
  pmat.topLeftCorner(qn, qn) = ik + kron<double>(b.U2, bbt);
  pmat.block(0, 2 * qn, qn, m) = ib * b.V2;
  pmat.block(2 * qn, 0, m, qn) = b.V2.transpose() * sys.output_map;
  pmat.block(qn, qn, qn, qn) = im;
  pmat.block(2 * qn, 2 * qn, m, m) = b.W2;
  sys.energy_quadratic = pmat;

  // Algebraic part of the interior balance: project its rows onto null(W1).
  // Those rows carry no gdot (and no V1 coupling: null(W1) lies inside
  // null(V1) because the damper Laplacian is positive semidefinite).
  const Matrix w1_null = symmetric_nullspace(b.W1, rank_tol);
  Matrix rows(w1_null.cols(), sys.N);
  if (w1_null.cols() > 0) {
    rows.leftCols(qn) = w1_null.transpose() * b.V2.transpose() * sys.output_map;
    rows.middleCols(qn, qn) =
        w1_null.transpose() * b.V1.transpose() * sys.output_map;
    rows.rightCols(m) = w1_null.transpose() * b.W2;
  }
  sys.constraint_rows = rows;
  return sys;
}

double DescriptorSystem::constraint_residual(const Vector& w) const {
  if (constraint_rows.rows() == 0) return 0.0;
  return max_abs(constraint_rows * w);
}

double sync_distance(const Vector& x, Index q, Index n) {
  if (x.size() != q * n)
    fail(ErrorCode::DimensionMismatch, "position stack has size != q*n");
  Vector mean = Vector::Zero(n);
  for (Index i = 0; i < q; ++i) mean += x.segment(i * n, n);
  mean /= static_cast<double>(q);
  double acc = 0.0;
  for (Index i = 0; i < q; ++i)
    acc += (x.segment(i * n, n) - mean).squaredNorm();
  return std::sqrt(acc);
}

double energy(const DescriptorSystem& sys, const Vector& w) {
  if (w.size() != sys.N)
    fail(ErrorCode::DimensionMismatch, "state has size != N");
  return 0.5 * w.dot(sys.energy_quadratic * w);
}

Vector InitialState::stacked() const {
  Vector w(x.size() + v.size() + g.size());
  w << x, v, g;
  return w;
}

InitialState consistent_initial_state(const DescriptorSystem& sys,
                                      const Vector& x0, const Vector& v0,
                                      const Vector& g_hint, double dae_tol,
                                      double rank_tol) {
  const Index qn = sys.q * sys.n;
  const Index m = sys.p - sys.q;
  if (x0.size() != qn || v0.size() != qn)
    fail(ErrorCode::DimensionMismatch, "x0 and v0 must have size q*n");
  if (g_hint.size() != 0 && g_hint.size() != m)
    fail(ErrorCode::DimensionMismatch, "g hint must have size p-q");

  InitialState init;
  init.x = x0;
  init.v = v0;
  init.g = g_hint.size() == m ? g_hint : Vector::Zero(m);
  if (m == 0) return init;

  const Matrix w1_null = symmetric_nullspace(sys.blocks.W1, rank_tol);
  if (w1_null.cols() > 0) {
    // Minimize |P_null (V2^T y0 + W2 (g_hint + delta))| over delta with the
    // smallest-norm minimizer; V1^T v0 drops out along null(W1).
    const Vector y0 = sys.output_map * x0;
    const Matrix lhs = w1_null.transpose() * sys.blocks.W2;
    const Vector rhs =
        -w1_null.transpose() * (sys.blocks.V2.transpose() * y0) - lhs * init.g;
    Eigen::CompleteOrthogonalDecomposition<Matrix> cod(lhs);
    cod.setThreshold(rank_tol);
    init.g += cod.solve(rhs);
    init.constraint_residual = sys.constraint_residual(init.stacked());
    if (init.constraint_residual > dae_tol)
      fail(ErrorCode::InconsistentConstraint,
           "no interior start value satisfies the algebraic balance; "
           "residual " +
               std::to_string(init.constraint_residual));
  }
  return init;
}

Trajectory simulate(const DescriptorSystem& sys, const InitialState& init,
                    const SimulateOptions& opts) {
  if (!(opts.dt > 0.0) || !(opts.horizon > 0.0))
    fail(ErrorCode::BadInput, "horizon and dt must be positive");
  const Index steps = static_cast<Index>(std::llround(opts.horizon / opts.dt));
  if (steps < 1) fail(ErrorCode::BadInput, "horizon shorter than one step");
  const Index stride = std::max<Index>(1, opts.state_stride);

  const Matrix step_minus = sys.Emat - 0.5 * opts.dt * sys.Amat;
  const Matrix step_plus = sys.Emat + 0.5 * opts.dt * sys.Amat;
  Eigen::FullPivLU<Matrix> lu(step_minus);
  if (!lu.isInvertible())
    fail(ErrorCode::SingularStepMatrix,
         "implicit step matrix is singular at dt = " + std::to_string(opts.dt) +
             "; try a smaller dt or remove isolated interior nodes");

  Trajectory traj;
  traj.dt = opts.dt;
  traj.times.resize(steps + 1);
  traj.energy.resize(steps + 1);
  traj.sync_dist.resize(steps + 1);
  traj.constraint_residual.resize(steps + 1);
  const Index snapshots = steps / stride + 1 + (steps % stride != 0 ? 1 : 0);
  const Index qn = sys.q * sys.n;
  traj.x.resize(qn, snapshots);
  traj.v.resize(qn, snapshots);
  traj.g.resize(sys.p - sys.q, snapshots);

  Vector w = init.stacked();
  if (w.size() != sys.N)
    fail(ErrorCode::DimensionMismatch, "initial state has size != N");
  const double scale = std::max(1.0, max_abs(w));

  Index col = 0;
  auto record = [&](Index step) {
    traj.times(step) = static_cast<double>(step) * opts.dt;
    traj.energy(step) = energy(sys, w);
    traj.sync_dist(step) = sync_distance(w.head(qn), sys.q, sys.n);
    traj.constraint_residual(step) = sys.constraint_residual(w);
    if (step % stride == 0 || step == steps) {
      traj.x.col(col) = w.head(qn);
      traj.v.col(col) = w.segment(qn, qn);
      traj.g.col(col) = w.tail(sys.p - sys.q);
      traj.state_steps.push_back(step);
      ++col;
    }
  };
  record(0);
  Vector rhs(sys.N);
  for (Index k = 1; k <= steps; ++k) {
    rhs.noalias() = step_plus * w;
    w = lu.solve(rhs);
    if (!w.allFinite() || max_abs(w) > opts.blowup_factor * scale)
      fail(ErrorCode::StepDiverged,
           "state diverged at t = " + std::to_string(k * opts.dt));
    record(k);
  }
  traj.x.conservativeResize(qn, col);
  traj.v.conservativeResize(qn, col);
  traj.g.conservativeResize(sys.p - sys.q, col);
  return traj;
}

std::vector<Complex> pencil_eigenvalues(const DescriptorSystem& sys,
                                        double beta_tol) {
  Eigen::GeneralizedEigenSolver<Matrix> ges;
  ges.compute(sys.Amat, sys.Emat, false);
  if (ges.info() != Eigen::Success)
    fail(ErrorCode::EigenSolverFailure, "pencil eigendecomposition failed");
  std::vector<Complex> finite;
  const double beta_scale = std::max(1.0, max_abs(sys.Emat));
  for (Index i = 0; i < ges.alphas().size(); ++i) {
    const double beta = ges.betas()(i);
    if (std::abs(beta) > beta_tol * beta_scale)
      finite.push_back(ges.alphas()(i) / beta);
  }
  sort_complex(finite);
  return finite;
}

EmpiricalVerdict empirical_verdict(const Trajectory& traj,
                                   double decay_ratio_tol) {
  EmpiricalVerdict v;
  const Index samples = traj.sync_dist.size();
  if (samples < 2) fail(ErrorCode::BadInput, "trajectory has too few samples");
  const Index window = std::max<Index>(1, samples / 10);
  v.early_max = traj.sync_dist.head(window).maxCoeff();
  v.late_max = traj.sync_dist.tail(window).maxCoeff();
  const double w0 = traj.energy(0);
  v.energy_drop = (w0 - traj.energy(samples - 1)) / std::max(w0, 1e-300);
  if (v.early_max <= 0.0) {
    // Started synchronized and stayed there.
    v.ratio = 0.0;
    v.synchronizes = true;
    return v;
  }
  v.ratio = v.late_max / v.early_max;
  if (v.ratio < decay_ratio_tol) {
    v.synchronizes = true;
  } else if (v.ratio < 10.0 * decay_ratio_tol) {
    v.conclusive = false;  // gray band
    v.synchronizes = false;
  } else {
    v.synchronizes = false;
  }
  return v;
}

bool require_conclusive(const EmpiricalVerdict& verdict) {
  if (!verdict.conclusive)
    fail(ErrorCode::InconclusiveHorizon,
         "decay ratio " + std::to_string(verdict.ratio) +
             " falls in the gray band; extend the horizon or rerun");
  return verdict.synchronizes;
}

}  // namespace kronsync
