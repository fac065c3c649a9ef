// Acceptance gate: every release-blocking property of the toolkit, one
// pass/fail line each. Exits with the number of failed criteria.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "kronsync/kron.hpp"
#include "kronsync/spectral.hpp"
#include "kronsync/suite.hpp"

namespace {

using namespace kronsync;
using Clock = std::chrono::steady_clock;

double seconds_since(const Clock::time_point& t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

int g_failures = 0;

void report(int index, const std::string& name, bool pass,
            const std::string& detail, double secs) {
  if (!pass) ++g_failures;
  std::cout << (pass ? "[PASS]" : "[FAIL]") << " " << index << ". " << name
            << " — " << detail << " [" << num(secs) << " s]\n";
  std::cout.flush();
}

CouplingNetwork make_net(Index nodes, const std::vector<std::string>& boundary,
                         const std::vector<RawNetwork::RawEdge>& dampers,
                         const std::vector<RawNetwork::RawEdge>& springs) {
  RawNetwork raw;
  raw.node_count = nodes;
  raw.boundary = boundary;
  raw.dampers = dampers;
  raw.springs = springs;
  return validate_network(raw);
}

OscillatorModel scalar_osc(double m, double k, double b) {
  return validate_oscillator(Matrix::Constant(1, 1, m),
                             Matrix::Constant(1, 1, k),
                             Vector::Constant(1, b));
}

// Minimum-norm least-squares solve of the defining relation W E = -V^T,
// independent of the SVD pseudoinverse used by the library.
ComplexMatrix lsq_gamma(const BlockPartition& blocks) {
  const Complex j(0.0, 1.0);
  const ComplexMatrix u = blocks.U1.cast<Complex>() + j * blocks.U2.cast<Complex>();
  const ComplexMatrix v = blocks.V1.cast<Complex>() + j * blocks.V2.cast<Complex>();
  const ComplexMatrix w = blocks.W1.cast<Complex>() + j * blocks.W2.cast<Complex>();
  if (w.rows() == 0) return u;
  Eigen::CompleteOrthogonalDecomposition<ComplexMatrix> cod(w);
  const ComplexMatrix e = cod.solve(ComplexMatrix(-v.transpose()));
  return u + v * e;
}

struct RandomSuite {
  std::vector<CouplingNetwork> nets;
  std::vector<BlockPartition> blocks;
  std::vector<ReducedCoupling> reduced;
};

InitialState seeded_start(const DescriptorSystem& sys, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const Index qn = sys.q * sys.n;
  Vector x0(qn), v0(qn);
  for (Index i = 0; i < qn; ++i) x0(i) = gauss(rng);
  for (Index i = 0; i < qn; ++i) v0(i) = gauss(rng);
  const double norm = std::sqrt(x0.squaredNorm() + v0.squaredNorm());
  x0 /= norm;
  v0 /= norm;
  return consistent_initial_state(sys, x0, v0);
}

}  // namespace

int main() {
  std::cout << "acceptance: synchronization toolkit release gate\n";

  // ---- 1. Boundary coupling structure on 1000 random networks ------------
  RandomSuite suite;
  {
    const auto t0 = Clock::now();
    std::mt19937_64 rng(20260814);
    bool pass = true;
    double worst_sym = 0.0, worst_row = 0.0, worst_re = 0.0, worst_im = 0.0;
    double worst_res_ratio = 0.0;
    std::string why;
    for (int c = 0; c < 1000; ++c) {
      const CouplingNetwork net = random_network(rng, 10);
      const BlockPartition blk = partition_network(net);
      ReducedCoupling rc;
      try {
        rc = reduce(blk);
      } catch (const Error& e) {
        pass = false;
        if (why.empty()) why = std::string("reduce threw: ") + e.what();
        break;
      }
      const ComplexMatrix& g = rc.Gamma;
      const double gmax = max_abs(g);
      // Hybrid guard: when the boundary coupling is mathematically zero
      // (single boundary node, detached boundary), |Gamma| is cancellation
      // residue of order eps*|D+jR| and a purely relative floor is
      // unattainable.
      const double floor_tol = 1e-8 * std::max(1.0, gmax);
      const CouplingCertificate cert = certify_reduced_coupling(g, 1e-8);
      const auto eigs = eigenvalues_sorted(g);
      double min_re = 0.0, min_im = 0.0;
      for (const Complex& ev : eigs) {
        min_re = std::min(min_re, ev.real());
        min_im = std::min(min_im, ev.imag());
      }
      const double dr_max = std::sqrt(
          (blk.D.array().square() + blk.R.array().square()).maxCoeff());
      const double res_tol = 1e-8 * (1.0 + dr_max);
      worst_sym = std::max(worst_sym, cert.max_asymmetry);
      worst_row = std::max(worst_row, cert.max_row_sum);
      worst_re = std::min(worst_re, min_re);
      worst_im = std::min(worst_im, min_im);
      worst_res_ratio =
          std::max(worst_res_ratio, rc.residual_gamma / res_tol);
      const bool ok = cert.pass() && min_re >= -floor_tol &&
                      min_im >= -floor_tol && rc.residual_gamma <= res_tol;
      if (!ok && why.empty()) {
        pass = false;
        why = "network " + std::to_string(c) + " violates the coupling shape";
      }
      pass = pass && ok;
      suite.nets.push_back(net);
      suite.blocks.push_back(blk);
      suite.reduced.push_back(rc);
    }
    const double secs = seconds_since(t0);
    pass = pass && secs < 30.0;
    report(1, "reduced coupling symmetric, zero row sums, spectrum cone",
           pass,
           why.empty()
               ? "1000 networks; worst asymmetry " + num(worst_sym) +
                     ", row sum " + num(worst_row) + ", Re floor " +
                     num(worst_re) + ", Im floor " + num(worst_im) +
                     ", residual/tol " + num(worst_res_ratio)
               : why,
           secs);
  }

  // ---- 2. Steady-state map: real symmetric PSD with zero row sums --------
  {
    const auto t0 = Clock::now();
    bool pass = !suite.reduced.empty();
    double worst_sym = 0.0, worst_eig = 0.0, worst_row = 0.0;
    for (const ReducedCoupling& rc : suite.reduced) {
      const Matrix& l = rc.Lambda;
      const double scale = std::max(1.0, max_abs(l));
      const double sym = max_abs(Matrix(l - l.transpose()));
      const double row = l.rowwise().sum().cwiseAbs().maxCoeff();
      Eigen::SelfAdjointEigenSolver<Matrix> es(
          Matrix((l + l.transpose()) / 2.0));
      const double min_eig = es.eigenvalues().minCoeff();
      worst_sym = std::max(worst_sym, sym);
      worst_eig = std::min(worst_eig, min_eig);
      worst_row = std::max(worst_row, row);
      pass = pass && sym <= 1e-9 * scale && min_eig >= -1e-9 &&
             row <= 1e-9 * scale;
    }
    report(2, "steady-state map real symmetric PSD with zero row sums", pass,
           "same networks; worst asymmetry " + num(worst_sym) +
               ", min eigenvalue " + num(worst_eig) + ", row sum " +
               num(worst_row),
           seconds_since(t0));
  }

  // ---- 3. Pseudoinverse elimination matches least squares ----------------
  {
    const auto t0 = Clock::now();
    bool pass = true;
    double worst = 0.0;
    for (std::size_t i = 0; i < suite.blocks.size(); ++i) {
      const ComplexMatrix ref = lsq_gamma(suite.blocks[i]);
      const double diff = max_abs(ComplexMatrix(ref - suite.reduced[i].Gamma));
      worst = std::max(worst, diff);
      pass = pass && diff <= 1e-8;
    }
    report(3, "elimination formula matches least-squares defining relation",
           pass, "max entrywise difference " + num(worst) + " (tol 1e-8)",
           seconds_since(t0));
  }

  // ---- 4. Bridge fixture reproduces the frozen boundary coupling ---------
  {
    const auto t0 = Clock::now();
    const CouplingNetwork bridge =
        make_net(4, {"1", "2", "4"}, {{"1", "3", 1.0}},
                 {{"1", "2", 1.0}, {"2", "3", 1.0}, {"3", "4", 1.0}});
    ComplexMatrix expect(3, 3);
    expect << Complex(0.8, 1.4), Complex(-0.4, -1.2), Complex(-0.4, -0.2),
        Complex(-0.4, -1.2), Complex(0.2, 1.6), Complex(0.2, -0.4),
        Complex(-0.4, -0.2), Complex(0.2, -0.4), Complex(0.2, 0.6);
    const double diff = max_abs(ComplexMatrix(reduce(bridge).Gamma - expect));
    report(4, "bridge network reduces to the frozen 3x3 coupling",
           diff <= 1e-10, "max difference " + num(diff) + " (tol 1e-10)",
           seconds_since(t0));
  }

  // ---- 5. Spectral verdict vs simulation on 200 randomized cases ---------
  SuiteParams sweep_params;  // cases=200, seed=1, horizon=200, dt=1e-3
  SweepReport sweep;
  {
    const auto t0 = Clock::now();
    sweep = run_sweep(sweep_params);
    const double secs = seconds_since(t0);
    const bool pass = sweep.agreements == sweep_params.cases &&
                      sweep.disagreement_seeds.empty() &&
                      sweep.inconclusive_seeds.empty() && secs < 600.0;
    report(5, "spectral and simulated verdicts agree on randomized cases",
           pass,
           std::to_string(sweep.agreements) + "/" +
               std::to_string(sweep_params.cases) + " agree, " +
               std::to_string(sweep.disagreement_seeds.size()) +
               " disagreements, " +
               std::to_string(sweep.inconclusive_seeds.size()) +
               " inconclusive",
           secs);
  }

  // ---- 6. Witness trajectories: periodic, non-decaying spread ------------
  std::vector<WitnessCheck> witness_checks;
  {
    const auto t0 = Clock::now();
    bool pass = true;
    double min_env = std::numeric_limits<double>::infinity();
    double max_per = 0.0;
    int count = 0;
    std::string why;
    for (const CaseOutcome& o : sweep.outcomes) {
      if (!o.target_fail) continue;
      try {
        const GeneratedCase gen =
            generate_case(sweep_params, o.case_seed, true);
        const BlockPartition blk = partition_network(gen.net);
        const ReducedCoupling rc = reduce(blk);
        const SpectralVerdict verdict = sync_verdict(rc.Gamma);
        const WitnessSolution ws = witness_nonsync(blk, gen.osc, rc, verdict);
        const DescriptorSystem sys = assemble_descriptor(gen.net, gen.osc);
        const WitnessCheck wc = check_witness_trajectory(sys, ws, 20, 1e-3);
        min_env = std::min(min_env, wc.envelope_min_ratio);
        max_per = std::max(max_per, wc.periodicity_max_rel);
        witness_checks.push_back(wc);
        ++count;
        if (!wc.ok() && why.empty()) {
          pass = false;
          why = "case seed " + std::to_string(o.case_seed) +
                ": envelope " + num(wc.envelope_min_ratio) +
                ", periodicity " + num(wc.periodicity_max_rel);
        }
        pass = pass && wc.ok();
      } catch (const Error& e) {
        pass = false;
        if (why.empty())
          why = "case seed " + std::to_string(o.case_seed) + " threw: " +
                e.what();
      }
    }
    report(6, "non-sync witnesses stay periodic over 20 periods", pass,
           why.empty() ? std::to_string(count) +
                             " failing cases; spread envelope >= " +
                             num(min_env) +
                             " of start (floor 0.5), periodicity error <= " +
                             num(max_per) + " (tol 1e-3)"
                       : why,
           seconds_since(t0));
  }

  // ---- 7. Energy law: nonincreasing; springs-only conservation -----------
  {
    const auto t0 = Clock::now();
    double worst_step = 0.0;
    for (const CaseOutcome& o : sweep.outcomes)
      worst_step = std::max(worst_step, o.max_energy_step_increase);
    for (const WitnessCheck& wc : witness_checks)
      worst_step = std::max(worst_step, wc.max_energy_step_increase);
    bool pass = worst_step <= 1e-7;
    std::string detail = "per-step increase <= " + num(worst_step) +
                         " of W(0) (tol 1e-7) across " +
                         std::to_string(sweep.outcomes.size()) + "+" +
                         std::to_string(witness_checks.size()) +
                         " trajectories";

    // Springs-only systems must conserve energy over a long horizon.
    const std::vector<CouplingNetwork> conservative = {
        make_net(3, {"1", "2"}, {}, {{"1", "3", 1.0}, {"2", "3", 0.5}}),
        make_net(4, {"1", "2", "3", "4"}, {},
                 {{"1", "2", 1.0},
                  {"2", "3", 0.7},
                  {"3", "4", 1.3},
                  {"4", "1", 0.9}})};
    double worst_drift = 0.0;
    for (std::size_t i = 0; i < conservative.size(); ++i) {
      const OscillatorModel osc = scalar_osc(1.0, 1.2, 1.0);
      const DescriptorSystem sys = assemble_descriptor(conservative[i], osc);
      SimulateOptions opts;
      opts.horizon = 100.0;
      opts.dt = 1e-3;
      opts.state_stride = 100000;
      const Trajectory traj =
          simulate(sys, seeded_start(sys, 7 + i), opts);
      const double w0 = traj.energy(0);
      const double drift =
          (traj.energy.array() - w0).abs().maxCoeff() / w0;
      worst_drift = std::max(worst_drift, drift);
      pass = pass && drift <= 1e-8;
    }
    detail += "; springs-only drift <= " + num(worst_drift) +
              " relative over T=100 (tol 1e-8)";
    report(7, "energy nonincreasing per step; undamped case conserves", pass,
           detail, seconds_since(t0));
  }

  // ---- 8. Verdict independent of the oscillator stiffness scale ----------
  {
    const auto t0 = Clock::now();
    const CouplingNetwork sync_net =
        make_net(2, {"1", "2"}, {{"1", "2", 1.0}}, {{"1", "2", 1.0}});
    const CouplingNetwork fail_net =
        make_net(3, {"1", "2"}, {}, {{"1", "3", 1.0}, {"2", "3", 0.5}});
    bool pass = true;
    std::string detail;
    for (const double k : {0.25, 1.0, 4.0}) {
      GeneratedCase gen;
      gen.case_seed = 1000 + static_cast<std::uint64_t>(4 * k);
      gen.osc = scalar_osc(1.0, k, 1.0);

      gen.net = sync_net;
      gen.target_fail = false;
      const CaseOutcome a = run_agreement_case(gen, sweep_params, 0);
      gen.net = fail_net;
      gen.target_fail = true;
      const CaseOutcome b = run_agreement_case(gen, sweep_params, 1);
      pass = pass && a.spectral_sync && a.agree && !b.spectral_sync && b.agree;
      detail += (detail.empty() ? "K=" : ", K=") + num(k) + ": " +
                (a.spectral_sync && a.agree ? "sync ok" : "sync BROKEN") +
                "/" + (!b.spectral_sync && b.agree ? "fail ok" : "fail BROKEN");
    }
    report(8, "verdicts unchanged across stiffness scales 0.25/1/4", pass,
           detail, seconds_since(t0));
  }

  // ---- 9. No-interior networks reduce exactly; axis count decides --------
  {
    const auto t0 = Clock::now();
    std::mt19937_64 rng(99);
    bool pass = true;
    double worst_diff = 0.0;
    int checked = 0;
    for (int c = 0; c < 200; ++c) {
      std::uniform_int_distribution<Index> psize(1, 8);
      const Index p = psize(rng);
      std::uniform_real_distribution<double> unit(0.0, 1.0);
      std::uniform_real_distribution<double> wdist(0.5, 2.0);
      std::vector<RawNetwork::RawEdge> dampers, springs;
      for (Index a = 0; a < p; ++a)
        for (Index b = a + 1; b < p; ++b) {
          if (unit(rng) < 0.4)
            dampers.push_back({std::to_string(a + 1), std::to_string(b + 1),
                               wdist(rng)});
          if (unit(rng) < 0.4)
            springs.push_back({std::to_string(a + 1), std::to_string(b + 1),
                               wdist(rng)});
        }
      std::vector<std::string> boundary;
      for (Index i = 0; i < p; ++i) boundary.push_back(std::to_string(i + 1));
      const CouplingNetwork net = make_net(p, boundary, dampers, springs);
      const BlockPartition blk = partition_network(net);
      const ReducedCoupling rc = reduce(blk);
      const Complex j(0.0, 1.0);
      const ComplexMatrix direct =
          blk.D.cast<Complex>() + j * blk.R.cast<Complex>();
      const double diff = max_abs(ComplexMatrix(rc.Gamma - direct));
      worst_diff = std::max(worst_diff, diff);
      const SpectralVerdict verdict = sync_verdict(rc.Gamma);
      const bool equiv =
          (imaginary_axis_count(verdict) == 1) == verdict.synchronizes;
      pass = pass && diff == 0.0 && equiv;
      ++checked;
    }
    report(9, "boundary-only networks keep D+jR; one axis eigenvalue iff sync",
           pass,
           std::to_string(checked) + " networks; max reduction difference " +
               num(worst_diff) + " (must be exactly 0)",
           seconds_since(t0));
  }

  std::cout << (9 - g_failures) << "/9 criteria passed\n";
  return g_failures;
}
