#include "kronsync/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <random>
#include <string>

#include <CLI11.hpp>

#include "kronsync/io.hpp"
#include "kronsync/suite.hpp"

namespace kronsync {
namespace {

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

int exit_code_for(const Error& e) {
  if (e.code() == ErrorCode::InconclusiveHorizon) return kExitInconclusive;
  return is_input_error(e.code()) ? kExitBadInput : kExitNumerical;
}

/// Empty path means stdout.
void emit(const std::string& path, const std::string& payload,
          std::ostream& out) {
  if (path.empty()) {
    out << payload;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) fail(ErrorCode::BadInput, "cannot open output file " + path);
  f << payload;
}

nlohmann::json oscillator_summary(const OscillatorModel& osc) {
  const auto report = check_observability(osc);
  nlohmann::json j;
  j["n"] = osc.n;
  j["natural_frequencies"] = report.natural_frequencies;
  j["observable"] = report.observable;
  j["invisible_frequencies"] = report.violations;
  return j;
}

struct CommonPaths {
  std::string network;
  std::string oscillator;
  std::string output;
};

int cmd_validate(const CommonPaths& paths, std::ostream& out) {
  nlohmann::json j;
  j["network"] = to_json(load_network_file(paths.network));
  if (!paths.oscillator.empty())
    j["oscillator"] = oscillator_summary(load_oscillator_file(paths.oscillator));
  emit(paths.output, j.dump(2) + "\n", out);
  return kExitOk;
}

int cmd_reduce(const CommonPaths& paths, const ReduceOptions& opts,
               std::ostream& out) {
  const CouplingNetwork net = load_network_file(paths.network);
  const ReducedCoupling reduced = reduce(net, opts);
  const CouplingCertificate cert =
      certify_reduced_coupling(reduced.Gamma, opts.certify_tol);
  nlohmann::json j = to_json(reduced, cert);
  j["network"] = to_json(net);
  emit(paths.output, j.dump(2) + "\n", out);
  return kExitOk;
}

int cmd_check(const CommonPaths& paths, double zero_tol, std::ostream& out) {
  const CouplingNetwork net = load_network_file(paths.network);
  const ReducedCoupling reduced = reduce(net);
  const SpectralVerdict verdict = sync_verdict(reduced.Gamma, zero_tol);
  const bool inconclusive = !verdict.synchronizes && verdict.margin > 0.0 &&
                            verdict.margin <= verdict.zero_tol;
  if (!paths.oscillator.empty()) {
    const auto report =
        check_observability(load_oscillator_file(paths.oscillator));
    if (!report.observable)
      out << "warning: some free-vibration modes are invisible at the port; "
             "the verdict assumes every mode couples into the network\n";
  }
  out << "verdict: "
      << (verdict.synchronizes
              ? "synchronizes"
              : (inconclusive ? "inconclusive (leaning fail)"
                              : "does not synchronize"))
      << "\n";
  out << "margin: " << fmt(verdict.margin) << "\n";
  out << "zero_tol: " << fmt(verdict.zero_tol) << "\n";
  out << "eigenvalues:\n";
  for (std::size_t i = 0; i < verdict.eigenvalues.size(); ++i)
    out << "  " << (i + 1) << ": " << fmt(verdict.eigenvalues[i].real())
        << " " << fmt(verdict.eigenvalues[i].imag()) << "j\n";
  if (!paths.output.empty()) {
    nlohmann::json j = to_json(verdict);
    j["network"] = to_json(net);
    emit(paths.output, j.dump(2) + "\n", out);
  }
  if (verdict.synchronizes) return kExitOk;
  return inconclusive ? kExitInconclusive : kExitNoSync;
}

struct SimulateArgs {
  CommonPaths paths;
  SimulateOptions opts;
  std::uint64_t seed = 0;
  std::string initial;
  bool witness = false;
};

int cmd_simulate(const SimulateArgs& args, std::ostream& out) {
  const CouplingNetwork net = load_network_file(args.paths.network);
  const OscillatorModel osc = load_oscillator_file(args.paths.oscillator);
  const DescriptorSystem sys = assemble_descriptor(net, osc);

  InitialState init;
  if (args.witness) {
    const BlockPartition blocks = partition_network(net);
    const ReducedCoupling reduced = reduce(blocks);
    const SpectralVerdict verdict = sync_verdict(reduced.Gamma);
    const WitnessSolution ws = witness_nonsync(blocks, osc, reduced, verdict);
    init = consistent_initial_state(sys, ws.x0, ws.v0, ws.g0, args.opts.dae_tol);
  } else if (!args.initial.empty()) {
    const RawInitialState ris = load_initial_state_file(args.initial);
    init = consistent_initial_state(sys, ris.x, ris.v, ris.g_hint,
                                    args.opts.dae_tol);
  } else {
    // Random start on the unit sphere in (x, v); the interior values are
    // completed to consistency.
    std::mt19937_64 rng(args.seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const Index qn = sys.q * sys.n;
    Vector x0(qn), v0(qn);
    for (Index i = 0; i < qn; ++i) x0(i) = gauss(rng);
    for (Index i = 0; i < qn; ++i) v0(i) = gauss(rng);
    const double norm = std::sqrt(x0.squaredNorm() + v0.squaredNorm());
    if (norm > 0.0) {
      x0 /= norm;
      v0 /= norm;
    }
    init = consistent_initial_state(sys, x0, v0, Vector(), args.opts.dae_tol);
  }

  const Trajectory traj = simulate(sys, init, args.opts);
  if (args.paths.output.empty()) {
    write_trajectory_csv(out, sys, traj);
  } else {
    std::ofstream f(args.paths.output, std::ios::binary);
    if (!f)
      fail(ErrorCode::BadInput,
           "cannot open output file " + args.paths.output);
    write_trajectory_csv(f, sys, traj);
  }
  return kExitOk;
}

int cmd_witness(const CommonPaths& paths, std::ostream& out) {
  const CouplingNetwork net = load_network_file(paths.network);
  const OscillatorModel osc = load_oscillator_file(paths.oscillator);
  const BlockPartition blocks = partition_network(net);
  const ReducedCoupling reduced = reduce(blocks);
  const SpectralVerdict verdict = sync_verdict(reduced.Gamma);
  const WitnessSolution ws = witness_nonsync(blocks, osc, reduced, verdict);
  emit(paths.output, to_json(ws).dump(2) + "\n", out);
  return kExitOk;
}

int cmd_sweep(const SuiteParams& params, const std::string& output,
              std::ostream& out) {
  const SweepReport report = run_sweep(params);
  emit(output, to_json(report).dump(2) + "\n", out);
  if (!report.disagreement_seeds.empty()) return kExitNoSync;
  if (!report.inconclusive_seeds.empty()) return kExitInconclusive;
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err) {
  CLI::App app{
      "kronsync: decides whether identical oscillators coupled through a "
      "damper/spring network synchronize, by interior-node elimination and "
      "boundary spectrum analysis"};
  app.require_subcommand(1);

  CommonPaths validate_paths;
  auto* validate =
      app.add_subcommand("validate", "Parse and canonicalize inputs");
  validate->add_option("--network", validate_paths.network, "network JSON file")
      ->required();
  validate->add_option("--oscillator", validate_paths.oscillator,
                       "oscillator JSON file (adds a modal summary)");
  validate->add_option("--output", validate_paths.output,
                       "write JSON here instead of stdout");

  CommonPaths reduce_paths;
  ReduceOptions reduce_opts;
  auto* reduce_cmd = app.add_subcommand(
      "reduce", "Eliminate interior nodes; print the boundary coupling, the "
                "steady-state map, lifts, residuals, and the certificate");
  reduce_cmd->add_option("--network", reduce_paths.network, "network JSON file")
      ->required();
  reduce_cmd->add_option("--pinv-tol", reduce_opts.pinv_tol,
                         "relative singular-value cutoff")
      ->capture_default_str();
  reduce_cmd->add_option("--certify-tol", reduce_opts.certify_tol,
                         "residual/certificate tolerance")
      ->capture_default_str();
  reduce_cmd->add_option("--output", reduce_paths.output,
                         "write JSON here instead of stdout");

  CommonPaths check_paths;
  double check_zero_tol = -1.0;
  auto* check = app.add_subcommand(
      "check", "Synchronization verdict from the boundary spectrum; exit 0 "
               "= synchronizes, 3 = does not, 4 = inconclusive");
  check->add_option("--network", check_paths.network, "network JSON file")
      ->required();
  check->add_option("--oscillator", check_paths.oscillator,
                    "oscillator JSON file (observability warning only)");
  check->add_option("--zero-tol", check_zero_tol,
                    "absolute eigenvalue zero tolerance; negative selects "
                    "1e-8 * max(1, |Gamma|_max)")
      ->capture_default_str();
  check->add_option("--output", check_paths.output,
                    "also write the verdict as JSON to this file");

  SimulateArgs sim;
  auto* simulate_cmd = app.add_subcommand(
      "simulate", "Integrate the coupled dynamics; emit one CSV row per step");
  simulate_cmd->add_option("--network", sim.paths.network, "network JSON file")
      ->required();
  simulate_cmd
      ->add_option("--oscillator", sim.paths.oscillator, "oscillator JSON file")
      ->required();
  simulate_cmd->add_option("--horizon", sim.opts.horizon, "total time")
      ->capture_default_str();
  simulate_cmd->add_option("--dt", sim.opts.dt, "fixed step size")
      ->capture_default_str();
  auto* opt_seed = simulate_cmd->add_option(
      "--seed", sim.seed, "random unit-norm start (default seed 0)");
  auto* opt_initial = simulate_cmd->add_option(
      "--initial", sim.initial, "initial-state JSON file {x, v, g?}");
  auto* opt_witness = simulate_cmd->add_flag(
      "--witness", sim.witness,
      "start from the periodic non-synchronizing witness");
  opt_seed->excludes(opt_initial)->excludes(opt_witness);
  opt_initial->excludes(opt_witness);
  simulate_cmd
      ->add_option("--state-stride", sim.opts.state_stride,
                   "record full state every this many steps")
      ->capture_default_str();
  simulate_cmd
      ->add_option("--dae-tol", sim.opts.dae_tol,
                   "constraint-consistency tolerance")
      ->capture_default_str();
  simulate_cmd->add_option("--output", sim.paths.output,
                           "CSV file (default stdout)");

  CommonPaths witness_paths;
  auto* witness_cmd = app.add_subcommand(
      "witness", "Construct the periodic non-synchronizing solution");
  witness_cmd
      ->add_option("--network", witness_paths.network, "network JSON file")
      ->required();
  witness_cmd
      ->add_option("--oscillator", witness_paths.oscillator,
                   "oscillator JSON file")
      ->required();
  witness_cmd->add_option("--output", witness_paths.output,
                          "write JSON here instead of stdout");

  SuiteParams sweep_params;
  std::string sweep_output;
  auto* sweep = app.add_subcommand(
      "sweep", "Randomized agreement suite: spectral verdict vs simulation");
  sweep->add_option("--cases", sweep_params.cases, "number of cases")
      ->capture_default_str();
  sweep->add_option("--seed", sweep_params.seed, "suite seed")
      ->capture_default_str();
  sweep->add_option("--max-nodes", sweep_params.max_nodes, "largest network")
      ->capture_default_str();
  sweep->add_option("--max-order", sweep_params.max_order,
                    "largest oscillator order")
      ->capture_default_str();
  sweep->add_option("--horizon", sweep_params.horizon, "simulation horizon")
      ->capture_default_str();
  sweep->add_option("--dt", sweep_params.dt, "simulation step")
      ->capture_default_str();
  sweep->add_option("--weight-min", sweep_params.weight_min, "smallest weight")
      ->capture_default_str();
  sweep->add_option("--weight-max", sweep_params.weight_max, "largest weight")
      ->capture_default_str();
  sweep
      ->add_option("--decay-ratio-tol", sweep_params.decay_ratio_tol,
                   "empirical decay threshold")
      ->capture_default_str();
  sweep
      ->add_option("--margin-floor", sweep_params.margin_floor,
                   "smallest accepted synchronizing margin")
      ->capture_default_str();
  sweep
      ->add_option("--decay-floor", sweep_params.decay_floor,
                   "slowest accepted coupled-mode decay rate")
      ->capture_default_str();
  sweep
      ->add_option("--max-ic-retries", sweep_params.max_ic_retries,
                   "fresh starts before declaring a case inconclusive")
      ->capture_default_str();
  sweep->add_option("--threads", sweep_params.threads,
                    "worker threads (0 = hardware)")
      ->capture_default_str();
  sweep->add_option("--output", sweep_output,
                    "write the JSON report here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? kExitOk : kExitBadInput;
  }

  try {
    if (validate->parsed()) return cmd_validate(validate_paths, out);
    if (reduce_cmd->parsed()) return cmd_reduce(reduce_paths, reduce_opts, out);
    if (check->parsed()) return cmd_check(check_paths, check_zero_tol, out);
    if (simulate_cmd->parsed()) return cmd_simulate(sim, out);
    if (witness_cmd->parsed()) return cmd_witness(witness_paths, out);
    if (sweep->parsed()) return cmd_sweep(sweep_params, sweep_output, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitOk;
}

}  // namespace kronsync
