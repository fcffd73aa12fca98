#include "cli.hpp"

#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bomp/adversarial.hpp"
#include "bomp/bounds.hpp"
#include "bomp/errors.hpp"
#include "bomp/experiment.hpp"
#include "bomp/io.hpp"
#include "bomp/proof_checks.hpp"
#include "bomp/rip.hpp"
#include "bomp/serialize.hpp"
#include "bomp/solver.hpp"

namespace bomp::cli {
namespace {

namespace fs = std::filesystem;

struct RunArgs {
  std::string matrix, layout, obs, trace, mode;
  std::optional<double> epsilon;
  std::optional<std::size_t> max_iter;
};

struct RipArgs {
  std::string matrix, layout;
  std::size_t order = 1;
  bool exact = false;
  std::optional<std::size_t> sample;
  std::uint64_t seed = 0;
  double budget = kDefaultRipBudget;
};

struct BoundsArgs {
  std::size_t K = 1;
  double delta = 0.0;
  double epsilon = 1.0;
  std::optional<double> min_norm;
};

struct Figure1Args {
  std::vector<std::size_t> K = kFigure1DefaultK;
  std::size_t points = kFigure1DefaultPoints;
  std::string out;
};

struct AdversarialArgs {
  std::size_t d = 1, K = 1;
  double delta = 0.1, epsilon = 1.0;
  std::optional<double> t0;
  std::string out_dir;
};

struct ProofArgs {
  std::size_t trials = 1000;
  std::uint64_t seed = 42;
};

struct ExperimentArgs {
  std::string config, out;
  std::optional<std::size_t> trials;
  std::optional<std::uint64_t> seed;
  std::optional<double> min_block_norm, noise_norm;
  bool certify = false;
};

void print(std::ostream& out, const nlohmann::json& j) { out << j.dump(2) << '\n'; }

std::string slurp(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

StoppingRule stopping_from(const RunArgs& a) {
  StoppingRule rule;
  if (!a.mode.empty()) {
    rule.mode = parse_stop_mode(a.mode);
  } else if (a.epsilon && a.max_iter) {
    rule.mode = StopMode::kBoth;
  } else if (a.max_iter) {
    rule.mode = StopMode::kFixedIterations;
  } else {
    rule.mode = StopMode::kResidualThreshold;
  }
  rule.epsilon = a.epsilon.value_or(0.0);
  rule.max_iterations = a.max_iter;
  rule.validate();
  return rule;
}

int cmd_run(const RunArgs& a, std::ostream& out) {
  BlockedMatrix matrix = io::read_blocked_matrix(a.matrix, a.layout);
  Vector y = io::read_vector_csv(a.obs);
  const StoppingRule stop = stopping_from(a);
  const SensingProblem problem(std::move(matrix), std::move(y), stop.epsilon);
  const RecoveryTrace trace = run_bomp(problem, stop);
  const nlohmann::json j = to_json(trace);
  if (!a.trace.empty()) io::write_text(a.trace, j.dump(2) + "\n");
  print(out, j);
  return kOk;
}

int cmd_rip(const RipArgs& a, std::ostream& out) {
  const BlockedMatrix matrix = io::read_blocked_matrix(a.matrix, a.layout);
  if (a.exact && a.sample) throw InvalidArgument("--exact and --sample are exclusive");
  RipReport report = a.sample ? rip_lower_bound_sampled(matrix, a.order, *a.sample, a.seed)
                              : exact_block_rip(matrix, a.order, a.budget);
  nlohmann::json j = to_json(report);
  j["method"] = a.sample ? "sampled_lower_bound" : "exact";
  print(out, j);
  return kOk;
}

int cmd_bounds(const BoundsArgs& a, std::ostream& out) {
  const BoundInputs b{a.K, a.delta, a.epsilon};
  const double z1 = z1_sufficient_bound(b);
  const double necessary = necessary_bound(b);
  nlohmann::json j = {
      {"K", a.K},
      {"delta", a.delta},
      {"epsilon", a.epsilon},
      {"z1", z1},
      {"z2", z2_prior_bound(b)},
      {"necessary", necessary},
      {"gap", z1 - necessary},
  };
  j["verdict"] = a.min_norm ? to_json(check_sufficient(a.K, a.delta, a.epsilon, *a.min_norm))
                            : nlohmann::json(nullptr);
  print(out, j);
  return kOk;
}

int cmd_figure1(const Figure1Args& a, std::ostream& out) {
  const std::string csv = figure1_csv(figure1_curves(a.K, a.points));
  if (a.out.empty()) {
    out << csv;
  } else {
    io::write_text(a.out, csv);
  }
  return kOk;
}

int cmd_adversarial(const AdversarialArgs& a, std::ostream& out) {
  const AdversarialParams p{a.d, a.K, a.delta, a.epsilon, a.t0};
  const AdversarialInstance inst = build_adversarial_instance(p);
  const FailureReport report = demonstrate_failure(p);
  nlohmann::json j = to_json(report);
  j["params"] = {{"d", a.d}, {"K", a.K}, {"delta", a.delta}, {"epsilon", a.epsilon}};
  if (!a.out_dir.empty()) {
    const fs::path dir(a.out_dir);
    fs::create_directories(dir);
    const auto& matrix = inst.problem.matrix();
    io::write_csv(dir / "A.csv", matrix.entries());
    io::write_layout(dir / "layout.json", matrix.rows(), matrix.layout());
    io::write_vector_csv(dir / "y.csv", inst.problem.observation());
    io::write_vector_csv(dir / "truth.csv", inst.truth.values());
    io::write_vector_csv(dir / "noise.csv", inst.noise);
    io::write_text(dir / "report.json", j.dump(2) + "\n");
  }
  print(out, j);
  return kOk;
}

int cmd_verify_proofs(const ProofArgs& a, std::ostream& out) {
  const ProofSweep sweep = verify_proofs(a.trials, a.seed);
  nlohmann::json j = to_json(sweep);
  j["seed"] = a.seed;
  print(out, j);
  const bool all = sweep.identity_passes == sweep.identity_checks &&
                   sweep.lemma1_passes == sweep.trials && sweep.theta_passes == sweep.trials;
  return all ? kOk : kFailure;
}

int cmd_experiment(const ExperimentArgs& a, std::ostream& out) {
  ExperimentConfig cfg = parse_experiment_config(slurp(a.config));
  // Relative file paths in the config resolve against the config's directory.
  const fs::path base = fs::path(a.config).parent_path();
  for (fs::path* p : {&cfg.matrix_path, &cfg.layout_path, &cfg.truth_path, &cfg.noise_path}) {
    if (!p->empty() && p->is_relative()) *p = base / *p;
  }
  if (a.trials) cfg.trials = *a.trials;
  if (a.seed) cfg.seed = *a.seed;
  if (a.min_block_norm) cfg.min_block_norm = *a.min_block_norm;
  if (a.noise_norm) cfg.noise_norm = *a.noise_norm;
  if (a.certify) cfg.certify = true;
  const ExperimentResult result = run_experiment(cfg);
  const nlohmann::json j = to_json(result);
  if (!a.out.empty()) io::write_text(a.out, j.dump(2) + "\n");
  nlohmann::json summary = j;
  summary.erase("records");
  summary["trials"] = result.records.size();
  print(out, summary);
  return kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Block orthogonal matching pursuit: recovery, block-RIP and bound analysis"};
  app.require_subcommand(1);

  RunArgs run_args;
  auto* run_cmd = app.add_subcommand("run", "Run BOMP on a measurement vector");
  run_cmd->add_option("--matrix", run_args.matrix, "Matrix CSV")->required();
  run_cmd->add_option("--layout", run_args.layout, "Layout JSON sidecar")->required();
  run_cmd->add_option("--obs", run_args.obs, "Observation CSV")->required();
  run_cmd->add_option("--epsilon", run_args.epsilon, "Residual threshold");
  run_cmd->add_option("--max-iter", run_args.max_iter, "Iteration count or budget");
  run_cmd->add_option("--mode", run_args.mode,
                      "residual_threshold | fixed_iterations | both");
  run_cmd->add_option("--trace", run_args.trace, "Write the trace JSON here");

  RipArgs rip_args;
  auto* rip_cmd = app.add_subcommand("rip", "Block-RIP constant of a matrix");
  rip_cmd->add_option("--matrix", rip_args.matrix, "Matrix CSV")->required();
  rip_cmd->add_option("--layout", rip_args.layout, "Layout JSON sidecar")->required();
  rip_cmd->add_option("--order", rip_args.order, "Order K")->required();
  rip_cmd->add_flag("--exact", rip_args.exact, "Exhaustive enumeration (default)");
  rip_cmd->add_option("--sample", rip_args.sample, "Sampled lower bound with N supports");
  rip_cmd->add_option("--seed", rip_args.seed, "Sampling seed");
  rip_cmd->add_option("--budget", rip_args.budget, "Flop budget for exact enumeration");

  BoundsArgs bounds_args;
  auto* bounds_cmd = app.add_subcommand("bounds", "Evaluate the recovery bounds");
  bounds_cmd->add_option("--K", bounds_args.K, "Block sparsity")->required();
  bounds_cmd->add_option("--delta", bounds_args.delta, "Block-RIP constant of order K+1")
      ->required();
  bounds_cmd->add_option("--epsilon", bounds_args.epsilon, "Noise bound");
  bounds_cmd->add_option("--min-norm", bounds_args.min_norm,
                         "Smallest block norm, for a recovery verdict");

  Figure1Args fig_args;
  auto* fig_cmd = app.add_subcommand("figure1", "Tabulate z1 - z2 over delta");
  fig_cmd->add_option("--K", fig_args.K, "Comma-separated K values")->delimiter(',');
  fig_cmd->add_option("--points", fig_args.points, "Grid points per K");
  fig_cmd->add_option("--out", fig_args.out, "CSV output (stdout if omitted)");

  AdversarialArgs adv_args;
  auto* adv_cmd = app.add_subcommand("adversarial", "Build an instance on which BOMP fails");
  adv_cmd->add_option("--d", adv_args.d, "Block width")->required();
  adv_cmd->add_option("--K", adv_args.K, "Block sparsity")->required();
  adv_cmd->add_option("--delta", adv_args.delta, "Target block-RIP constant")->required();
  adv_cmd->add_option("--epsilon", adv_args.epsilon, "Noise norm");
  adv_cmd->add_option("--t0", adv_args.t0, "Block magnitude (default 0.99 x bound)");
  adv_cmd->add_option("--out-dir", adv_args.out_dir, "Write A.csv, layout.json, y.csv, ...");

  ProofArgs proof_args;
  auto* proof_cmd = app.add_subcommand("verify-proofs", "Check the proof identities numerically");
  proof_cmd->add_option("--trials", proof_args.trials, "Random instances");
  proof_cmd->add_option("--seed", proof_args.seed, "Seed");

  ExperimentArgs exp_args;
  auto* exp_cmd = app.add_subcommand("experiment", "Monte Carlo recovery experiment");
  exp_cmd->add_option("--config", exp_args.config, "Config JSON")->required();
  exp_cmd->add_option("--out", exp_args.out, "Result JSON");
  exp_cmd->add_option("--trials", exp_args.trials, "Override trials");
  exp_cmd->add_option("--seed", exp_args.seed, "Override seed");
  exp_cmd->add_option("--min-block-norm", exp_args.min_block_norm, "Override min_block_norm");
  exp_cmd->add_option("--noise-norm", exp_args.noise_norm, "Override noise_norm");
  exp_cmd->add_flag("--certify", exp_args.certify, "Certify trials with the exact RIP constant");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    if (*run_cmd) return cmd_run(run_args, out);
    if (*rip_cmd) return cmd_rip(rip_args, out);
    if (*bounds_cmd) return cmd_bounds(bounds_args, out);
    if (*fig_cmd) return cmd_figure1(fig_args, out);
    if (*adv_cmd) return cmd_adversarial(adv_args, out);
    if (*proof_cmd) return cmd_verify_proofs(proof_args, out);
    if (*exp_cmd) return cmd_experiment(exp_args, out);
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  } catch (const BudgetExceeded& e) {
    err << "error: " << e.what() << '\n';
    return kBudgetError;
  } catch (const Infeasible& e) {
    err << "error: " << e.what() << '\n';
    return kBudgetError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
  return kFailure;
}

}  // namespace bomp::cli
