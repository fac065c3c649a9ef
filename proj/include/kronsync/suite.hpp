#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include <json.hpp>

#include "kronsync/dynamics.hpp"
#include "kronsync/witness.hpp"

namespace kronsync {

/// Randomized agreement suite: spectral verdicts cross-checked against
/// simulation. All draws derive from `seed`; case k uses a seed mixed from
/// (seed, k), so outcomes are reproducible and order-independent.
struct SuiteParams {
  int cases = 200;
  std::uint64_t seed = 1;
  Index max_nodes = 6;
  Index max_order = 3;
  double weight_min = 0.5;
  double weight_max = 2.0;
  double horizon = 200.0;
  double dt = 1e-3;
  double decay_ratio_tol = 1e-2;
  // Accepted synchronizing cases must be decisively synchronizing: margin
  // at least margin_floor and every coupled mode decaying at rate at least
  // decay_floor, so the pinned horizon can resolve the verdict.
  double margin_floor = 0.25;
  double decay_floor = 0.05;
  int max_ic_retries = 4;
  int max_draws = 400;
  int threads = 0;  // 0 = hardware concurrency
};

struct GeneratedCase {
  CouplingNetwork net;
  OscillatorModel osc;
  std::uint64_t case_seed = 0;
  bool target_fail = false;
};

std::uint64_t case_seed_for(std::uint64_t suite_seed, int index);

/// Unconstrained random network for structural property suites: p up to
/// max_nodes, any boundary size 1..p, independent damper/spring families
/// (either may be absent), no connectivity requirement.
CouplingNetwork random_network(std::mt19937_64& rng, Index max_nodes,
                               double weight_min = 0.5,
                               double weight_max = 2.0);

/// Draws (network, oscillator) pairs until the target verdict and the
/// conditioning filters hold; falls back to a fixed two-node case if the
/// draw budget runs out. Deterministic in case_seed.
GeneratedCase generate_case(const SuiteParams& params, std::uint64_t case_seed,
                            bool target_fail);

struct CaseOutcome {
  int index = 0;
  std::uint64_t case_seed = 0;
  Index p = 0, q = 0, n = 0;
  bool target_fail = false;
  double margin = 0.0;
  bool spectral_sync = false;
  bool empirical_sync = false;
  bool conclusive = false;
  int ic_retries = 0;
  double ratio = 0.0;
  bool agree = false;
  // Energy diagnostics across every simulated start (monotonicity audit).
  double max_energy_step_increase = 0.0;
  double energy0 = 0.0;
};

/// Simulates from a random consistent start (retrying with fresh starts
/// while the horizon verdict is inconclusive) and compares against the
/// spectral verdict.
CaseOutcome run_agreement_case(const GeneratedCase& gen,
                               const SuiteParams& params, int index);

struct SweepReport {
  SuiteParams params;
  std::vector<CaseOutcome> outcomes;
  int agreements = 0;
  std::vector<std::uint64_t> disagreement_seeds;
  std::vector<std::uint64_t> inconclusive_seeds;
  std::vector<double> histogram_edges;
  std::vector<int> histogram_counts;  // edges.size() + 1 bins
};

SweepReport run_sweep(const SuiteParams& params);

nlohmann::json to_json(const SweepReport& report);

/// Validation of a witness trajectory over whole periods: the spread must
/// not decay (per-period peak of sync_dist stays above half its start
/// value) and the state must return to itself after one period.
struct WitnessCheck {
  double period = 0.0;
  double envelope_min_ratio = 0.0;   // min over periods of peak / sync_dist(0)
  double periodicity_max_rel = 0.0;  // state mismatch across one period
  double min_sync_dist = 0.0;        // per-sample minimum (dips to ~0 for
                                     // standing waves; diagnostic only)
  double max_energy_step_increase = 0.0;
  double energy0 = 0.0;

  [[nodiscard]] bool ok(double envelope_floor = 0.5,
                        double periodicity_tol = 1e-3) const {
    return envelope_min_ratio >= envelope_floor &&
           periodicity_max_rel <= periodicity_tol;
  }
};

/// Runs `periods` periods with dt adjusted to divide the period exactly
/// (at most dt_target), 16 state snapshots per period.
WitnessCheck check_witness_trajectory(const DescriptorSystem& sys,
                                      const WitnessSolution& ws,
                                      int periods = 20,
                                      double dt_target = 1e-3);

}  // namespace kronsync
