#include "kronsync/suite.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <set>
#include <thread>
#include <utility>

#include "kronsync/spectral.hpp"

namespace kronsync {
namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

// splitmix64 finalizer; decorrelates consecutive seeds.
std::uint64_t mix64(std::uint64_t z) {
  z += kGolden;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Matrix random_spd(std::mt19937_64& rng, Index n, double lo, double hi) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unif(lo, hi);
  Matrix g(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) g(i, j) = gauss(rng);
  const Matrix qmat = Eigen::HouseholderQR<Matrix>(g).householderQ();
  Vector d(n);
  for (Index i = 0; i < n; ++i) d(i) = unif(rng);
  const Matrix s = qmat * d.asDiagonal() * qmat.transpose();
  return (s + s.transpose()) / 2.0;
}

OscillatorModel random_oscillator(std::mt19937_64& rng,
                                  const SuiteParams& params) {
  std::uniform_int_distribution<Index> order(1, params.max_order);
  const Index n = order(rng);
  const Matrix m = random_spd(rng, n, params.weight_min, params.weight_max);
  const Matrix k = random_spd(rng, n, params.weight_min, params.weight_max);
  // Writing B in the M-orthonormal modal basis of (K, M) with weights
  // bounded away from zero keeps every vibration mode visible at the port.
  Eigen::GeneralizedSelfAdjointEigenSolver<Matrix> es(k, m);
  std::uniform_real_distribution<double> mag(0.4, 1.0);
  Vector c(n);
  for (Index i = 0; i < n; ++i) {
    const double v = mag(rng);
    c(i) = (rng() & 1u) ? v : -v;
  }
  return validate_oscillator(m, k, m * es.eigenvectors() * c);
}

// Random spanning tree over `nodes` plus each remaining pair with
// probability extra_prob; weights uniform in [lo, hi].
void add_connected_edges(std::mt19937_64& rng, const std::vector<Index>& nodes,
                         double extra_prob, double lo, double hi,
                         std::vector<WeightedEdge>& out) {
  std::uniform_real_distribution<double> wdist(lo, hi);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::vector<Index> order = nodes;
  std::shuffle(order.begin(), order.end(), rng);
  std::set<std::pair<Index, Index>> used;
  auto push = [&](Index a, Index b) {
    if (a > b) std::swap(a, b);
    if (!used.insert({a, b}).second) return;
    out.push_back({a, b, wdist(rng)});
  };
  for (std::size_t k = 1; k < order.size(); ++k) {
    std::uniform_int_distribution<std::size_t> pick(0, k - 1);
    push(order[pick(rng)], order[k]);
  }
  for (std::size_t a = 0; a < nodes.size(); ++a)
    for (std::size_t b = a + 1; b < nodes.size(); ++b)
      if (coin(rng) < extra_prob) push(nodes[a], nodes[b]);
}

std::vector<Index> all_nodes(Index p) {
  std::vector<Index> v(static_cast<std::size_t>(p));
  for (Index i = 0; i < p; ++i) v[static_cast<std::size_t>(i)] = i;
  return v;
}

CouplingNetwork finish_network(Index p, Index q,
                               std::vector<WeightedEdge> dampers,
                               std::vector<WeightedEdge> springs) {
  RawNetwork raw;
  raw.node_count = p;
  for (Index i = 0; i < q; ++i) raw.boundary.push_back(std::to_string(i + 1));
  auto convert = [](const std::vector<WeightedEdge>& edges) {
    std::vector<RawNetwork::RawEdge> out;
    out.reserve(edges.size());
    for (const auto& e : edges)
      out.push_back({std::to_string(e.i + 1), std::to_string(e.j + 1), e.w});
    return out;
  };
  raw.dampers = convert(dampers);
  raw.springs = convert(springs);
  return validate_network(raw);
}

// Damper-connected network: random spanning tree of dampers over all nodes
// plus optional extra dampers and springs.
CouplingNetwork draw_sync_network(std::mt19937_64& rng,
                                  const SuiteParams& params, Index p,
                                  Index q) {
  std::vector<WeightedEdge> dampers, springs;
  const auto nodes = all_nodes(p);
  add_connected_edges(rng, nodes, 0.3, params.weight_min, params.weight_max,
                      dampers);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::uniform_real_distribution<double> wdist(params.weight_min,
                                               params.weight_max);
  for (Index a = 0; a < p; ++a)
    for (Index b = a + 1; b < p; ++b)
      if (coin(rng) < 0.3) springs.push_back({a, b, wdist(rng)});
  return finish_network(p, q, std::move(dampers), std::move(springs));
}

// Two structurally non-synchronizing families: a network with springs only
// (no dissipation between nodes), and one that splits into two components
// each holding at least one boundary node.
CouplingNetwork draw_fail_network(std::mt19937_64& rng,
                                  const SuiteParams& params, Index p,
                                  Index q) {
  std::vector<WeightedEdge> dampers, springs;
  if (rng() & 1u) {
    add_connected_edges(rng, all_nodes(p), 0.3, params.weight_min,
                        params.weight_max, springs);
    return finish_network(p, q, std::move(dampers), std::move(springs));
  }
  // Split boundary and interior nodes between two groups. Every interior
  // node lands in a group with at least two members (its group also holds a
  // boundary node), so the spanning trees leave no interior node isolated.
  std::uniform_int_distribution<Index> bsplit(1, q - 1);
  const Index qa = bsplit(rng);
  const Index m = p - q;
  std::uniform_int_distribution<Index> isplit(0, m);
  const Index ma = isplit(rng);
  std::vector<Index> group_a, group_b;
  for (Index i = 0; i < q; ++i)
    (i < qa ? group_a : group_b).push_back(i);
  for (Index i = 0; i < m; ++i)
    (i < ma ? group_a : group_b).push_back(q + i);
  for (const auto& group : {group_a, group_b}) {
    add_connected_edges(rng, group, 0.3, params.weight_min, params.weight_max,
                        dampers);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    std::uniform_real_distribution<double> wdist(params.weight_min,
                                                 params.weight_max);
    for (std::size_t a = 0; a < group.size(); ++a)
      for (std::size_t b = a + 1; b < group.size(); ++b)
        if (coin(rng) < 0.3) springs.push_back({group[a], group[b], wdist(rng)});
  }
  return finish_network(p, q, std::move(dampers), std::move(springs));
}

// Fixed fallbacks if the draw budget runs out: a damper+spring pair
// (margin 2, coupled modes decay at rate about 1) and a spring-only pair.
GeneratedCase fallback_case(std::uint64_t case_seed, bool target_fail) {
  GeneratedCase gen;
  gen.case_seed = case_seed;
  gen.target_fail = target_fail;
  std::vector<WeightedEdge> dampers, springs;
  if (!target_fail) dampers.push_back({0, 1, 1.0});
  springs.push_back({0, 1, 1.0});
  gen.net = finish_network(2, 2, std::move(dampers), std::move(springs));
  gen.osc = validate_oscillator(Matrix::Identity(1, 1), Matrix::Identity(1, 1),
                                Vector::Ones(1));
  return gen;
}

// A synchronizing draw is kept only when the pinned horizon can resolve it:
// decisive margin, every coupled mode decaying at rate >= decay_floor, and
// exactly the 2n synchronized free-motion modes left on the imaginary axis.
bool sync_case_resolvable(const GeneratedCase& gen, const SuiteParams& params) {
  const DescriptorSystem sys = assemble_descriptor(gen.net, gen.osc);
  const auto modes = pencil_eigenvalues(sys);
  constexpr double axis_tol = 1e-6;
  int axis = 0;
  double slowest_decay = std::numeric_limits<double>::infinity();
  for (const Complex& s : modes) {
    if (s.real() > axis_tol) return false;
    if (std::abs(s.real()) <= axis_tol)
      ++axis;
    else
      slowest_decay = std::min(slowest_decay, -s.real());
  }
  return axis == 2 * gen.osc.n && std::isfinite(slowest_decay) &&
         slowest_decay >= params.decay_floor;
}

}  // namespace

std::uint64_t case_seed_for(std::uint64_t suite_seed, int index) {
  return mix64(suite_seed +
               kGolden * static_cast<std::uint64_t>(index) + kGolden);
}

CouplingNetwork random_network(std::mt19937_64& rng, Index max_nodes,
                               double weight_min, double weight_max) {
  std::uniform_int_distribution<Index> psize(1, std::max<Index>(1, max_nodes));
  const Index p = psize(rng);
  std::uniform_int_distribution<Index> qsize(1, p);
  const Index q = qsize(rng);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> wdist(weight_min, weight_max);
  auto family_density = [&] {
    const double mode = unit(rng);
    return mode < 0.2 ? 0.0 : 0.2 + 0.4 * unit(rng);
  };
  const double damper_density = family_density();
  const double spring_density = family_density();
  std::vector<WeightedEdge> dampers, springs;
  for (Index a = 0; a < p; ++a)
    for (Index b = a + 1; b < p; ++b) {
      if (unit(rng) < damper_density) dampers.push_back({a, b, wdist(rng)});
      if (unit(rng) < spring_density) springs.push_back({a, b, wdist(rng)});
    }
  return finish_network(p, q, std::move(dampers), std::move(springs));
}

GeneratedCase generate_case(const SuiteParams& params, std::uint64_t case_seed,
                            bool target_fail) {
  std::mt19937_64 rng(case_seed);
  const Index max_nodes = std::max<Index>(2, params.max_nodes);
  for (int attempt = 0; attempt < params.max_draws; ++attempt) {
    std::uniform_int_distribution<Index> psize(2, max_nodes);
    const Index p = psize(rng);
    std::uniform_int_distribution<Index> qsize(2, p);
    const Index q = qsize(rng);
    GeneratedCase gen;
    gen.case_seed = case_seed;
    gen.target_fail = target_fail;
    gen.net = target_fail ? draw_fail_network(rng, params, p, q)
                          : draw_sync_network(rng, params, p, q);
    gen.osc = random_oscillator(rng, params);
    const auto verdict = sync_verdict(reduce(gen.net).Gamma);
    if (target_fail) {
      if (!verdict.synchronizes) return gen;
    } else if (verdict.synchronizes && verdict.margin >= params.margin_floor &&
               sync_case_resolvable(gen, params)) {
      return gen;
    }
  }
  return fallback_case(case_seed, target_fail);
}

CaseOutcome run_agreement_case(const GeneratedCase& gen,
                               const SuiteParams& params, int index) {
  CaseOutcome out;
  out.index = index;
  out.case_seed = gen.case_seed;
  out.target_fail = gen.target_fail;
  out.p = gen.net.p;
  out.q = gen.net.q;
  out.n = gen.osc.n;

  const auto verdict = sync_verdict(reduce(gen.net).Gamma);
  out.margin = verdict.margin;
  out.spectral_sync = verdict.synchronizes;

  const DescriptorSystem sys = assemble_descriptor(gen.net, gen.osc);
  SimulateOptions sopts;
  sopts.horizon = params.horizon;
  sopts.dt = params.dt;
  sopts.state_stride = std::max<Index>(
      1, static_cast<Index>(std::llround(params.horizon / params.dt)));

  const Index qn = gen.net.q * gen.osc.n;
  EmpiricalVerdict ev;
  for (int r = 0; r <= params.max_ic_retries; ++r) {
    std::mt19937_64 rng(mix64(gen.case_seed ^
                              (kGolden * static_cast<std::uint64_t>(r + 1))));
    std::normal_distribution<double> gauss(0.0, 1.0);
    Vector x0(qn), v0(qn);
    for (Index i = 0; i < qn; ++i) x0(i) = gauss(rng);
    for (Index i = 0; i < qn; ++i) v0(i) = gauss(rng);
    const double norm = std::sqrt(x0.squaredNorm() + v0.squaredNorm());
    if (norm < 1e-12) continue;
    x0 /= norm;
    v0 /= norm;

    const InitialState init = consistent_initial_state(sys, x0, v0);
    const Trajectory traj = simulate(sys, init, sopts);
    const double w0 = std::max(traj.energy(0), 1e-300);
    out.energy0 = std::max(out.energy0, traj.energy(0));
    for (Index k = 1; k < traj.energy.size(); ++k)
      out.max_energy_step_increase =
          std::max(out.max_energy_step_increase,
                   (traj.energy(k) - traj.energy(k - 1)) / w0);
    ev = empirical_verdict(traj, params.decay_ratio_tol);
    out.ratio = ev.ratio;
    out.ic_retries = r;
    if (ev.conclusive) break;
  }
  out.conclusive = ev.conclusive;
  out.empirical_sync = ev.synchronizes;
  out.agree = ev.conclusive && ev.synchronizes == verdict.synchronizes;
  return out;
}

SweepReport run_sweep(const SuiteParams& params) {
  if (params.cases < 1) fail(ErrorCode::BadInput, "need at least one case");
  SweepReport report;
  report.params = params;
  report.outcomes.resize(static_cast<std::size_t>(params.cases));

  std::atomic<int> next{0};
  auto worker = [&report, &params, &next] {
    for (;;) {
      const int i = next.fetch_add(1);
      if (i >= params.cases) return;
      const std::uint64_t cs = case_seed_for(params.seed, i);
      const GeneratedCase gen = generate_case(params, cs, i % 2 == 1);
      report.outcomes[static_cast<std::size_t>(i)] =
          run_agreement_case(gen, params, i);
    }
  };
  int nthreads = params.threads > 0
                     ? params.threads
                     : static_cast<int>(std::thread::hardware_concurrency());
  nthreads = std::clamp(nthreads, 1, std::max(1, params.cases));
  if (nthreads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(nthreads));
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  report.histogram_edges = {0.0, 1e-8, 1e-6, 1e-4, 1e-2, 0.25, 1.0, 10.0};
  report.histogram_counts.assign(report.histogram_edges.size() + 1, 0);
  for (const CaseOutcome& o : report.outcomes) {
    if (o.agree)
      ++report.agreements;
    else if (!o.conclusive)
      report.inconclusive_seeds.push_back(o.case_seed);
    else
      report.disagreement_seeds.push_back(o.case_seed);
    std::size_t bin = 0;
    while (bin < report.histogram_edges.size() &&
           o.margin > report.histogram_edges[bin])
      ++bin;
    ++report.histogram_counts[bin];
  }
  return report;
}

nlohmann::json to_json(const SweepReport& r) {
  nlohmann::json j;
  j["config"] = {{"cases", r.params.cases},
                 {"seed", r.params.seed},
                 {"max_nodes", r.params.max_nodes},
                 {"max_order", r.params.max_order},
                 {"weight_min", r.params.weight_min},
                 {"weight_max", r.params.weight_max},
                 {"horizon", r.params.horizon},
                 {"dt", r.params.dt},
                 {"decay_ratio_tol", r.params.decay_ratio_tol},
                 {"margin_floor", r.params.margin_floor},
                 {"decay_floor", r.params.decay_floor},
                 {"max_ic_retries", r.params.max_ic_retries}};
  j["agreements"] = r.agreements;
  j["disagreement_seeds"] = r.disagreement_seeds;
  j["inconclusive_seeds"] = r.inconclusive_seeds;
  j["margin_histogram"] = {{"edges", r.histogram_edges},
                           {"counts", r.histogram_counts}};
  auto arr = nlohmann::json::array();
  for (const CaseOutcome& o : r.outcomes) {
    arr.push_back(
        {{"index", o.index},
         {"seed", o.case_seed},
         {"p", o.p},
         {"q", o.q},
         {"n", o.n},
         {"target_fail", o.target_fail},
         {"margin", std::isfinite(o.margin) ? nlohmann::json(o.margin)
                                            : nlohmann::json()},
         {"spectral_sync", o.spectral_sync},
         {"empirical_sync", o.empirical_sync},
         {"conclusive", o.conclusive},
         {"ratio", o.ratio},
         {"ic_retries", o.ic_retries},
         {"max_energy_step_increase", o.max_energy_step_increase},
         {"agree", o.agree}});
  }
  j["outcomes"] = arr;
  return j;
}

WitnessCheck check_witness_trajectory(const DescriptorSystem& sys,
                                      const WitnessSolution& ws, int periods,
                                      double dt_target) {
  if (!(ws.omega > 0.0))
    fail(ErrorCode::BadInput, "witness frequency must be positive");
  if (periods < 2) fail(ErrorCode::BadInput, "need at least two periods");
  WitnessCheck wc;
  const double period = 2.0 * std::numbers::pi / ws.omega;
  wc.period = period;
  constexpr Index snaps_per_period = 16;
  const Index substeps = std::max<Index>(
      1, static_cast<Index>(
             std::ceil(period / (snaps_per_period * dt_target))));
  const Index steps_per_period = snaps_per_period * substeps;
  const double dt = period / static_cast<double>(steps_per_period);

  const InitialState init =
      consistent_initial_state(sys, ws.x0, ws.v0, ws.g0);
  SimulateOptions opts;
  opts.dt = dt;
  opts.horizon = static_cast<double>(periods) * period;
  opts.state_stride = substeps;
  const Trajectory traj = simulate(sys, init, opts);

  const Index samples = traj.sync_dist.size();
  wc.min_sync_dist = traj.sync_dist.minCoeff();
  const double w0 = std::max(traj.energy(0), 1e-300);
  wc.energy0 = traj.energy(0);
  for (Index k = 1; k < samples; ++k)
    wc.max_energy_step_increase =
        std::max(wc.max_energy_step_increase,
                 (traj.energy(k) - traj.energy(k - 1)) / w0);

  // Per-period peaks of the spread versus its start value. A standing-wave
  // witness passes through zero spread twice a period, so only the envelope
  // is meaningful.
  double ref = traj.sync_dist(0);
  if (ref <= 0.0) ref = traj.sync_dist.head(steps_per_period + 1).maxCoeff();
  ref = std::max(ref, 1e-300);
  wc.envelope_min_ratio = std::numeric_limits<double>::infinity();
  for (int k = 0; k < periods; ++k) {
    const Index lo = static_cast<Index>(k) * steps_per_period;
    const double peak =
        traj.sync_dist.segment(lo, steps_per_period + 1).maxCoeff();
    wc.envelope_min_ratio = std::min(wc.envelope_min_ratio, peak / ref);
  }

  // State must return to itself after each whole period.
  const Index cols = traj.x.cols();
  for (Index s = 0; s + snaps_per_period < cols; ++s) {
    Vector a(sys.N), b(sys.N);
    a << traj.x.col(s), traj.v.col(s), traj.g.col(s);
    b << traj.x.col(s + snaps_per_period), traj.v.col(s + snaps_per_period),
        traj.g.col(s + snaps_per_period);
    const double rel = (b - a).norm() / std::max(a.norm(), 1e-300);
    wc.periodicity_max_rel = std::max(wc.periodicity_max_rel, rel);
  }
  return wc;
}

}  // namespace kronsync
