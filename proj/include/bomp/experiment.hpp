#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "bomp/core.hpp"
#include "bomp/solver.hpp"

namespace bomp {

enum class MatrixEnsemble { kGaussian, kFromFile };

struct ExperimentConfig {
  std::size_t m = 0;
  std::size_t M = 0;
  std::size_t d = 1;
  std::size_t K = 1;
  double noise_norm = 0.0;      ///< exact ||e||_2
  double min_block_norm = 1.0;  ///< exact min_{i in T} ||x[i]||_2
  std::size_t trials = 1;
  std::uint64_t seed = 0;
  MatrixEnsemble matrix_ensemble = MatrixEnsemble::kGaussian;
  StoppingRule stopping;
  /// Set by the parser when the config omits them; the stopping epsilon then
  /// follows noise_norm and the budget follows K, resolved after any files
  /// have been loaded.
  bool stop_epsilon_from_noise = false;
  bool stop_budget_from_k = false;

  // kFromFile: matrix + layout sidecar, and optionally a fixed truth and noise.
  std::filesystem::path matrix_path;
  std::filesystem::path layout_path;
  std::filesystem::path truth_path;
  std::filesystem::path noise_path;

  /// Compute the exact order-(K+1) block-RIP constant per instance and mark
  /// trials whose recovery is guaranteed by the sufficient condition.
  bool certify = false;

  /// Throws InvalidArgument on K > M, K d > m, zero trials, bad norms.
  void validate() const;
};

/// Parses the JSON config format; field names follow ExperimentConfig, with
/// "stopping": {"mode", "epsilon", "max_iterations"}. A missing stopping
/// epsilon defaults to noise_norm. Throws InvalidArgument on bad input.
ExperimentConfig parse_experiment_config(const std::string& json_text);

/// Draws instances for a config. For the Gaussian ensemble, A has i.i.d.
/// N(0, 1/m) entries, T is a uniform size-K subset, supported blocks are
/// Gaussian rescaled so the smallest block norm equals min_block_norm, and
/// e is Gaussian rescaled to norm noise_norm. Trial i depends only on
/// (seed, i).
class InstanceGenerator {
 public:
  explicit InstanceGenerator(ExperimentConfig cfg);

  PlantedInstance generate(std::uint64_t trial_index) const;
  const ExperimentConfig& config() const { return cfg_; }

 private:
  ExperimentConfig cfg_;
  std::optional<BlockedMatrix> fixed_matrix_;
  std::optional<BlockSignal> fixed_truth_;
  std::optional<Vector> fixed_noise_;
};

PlantedInstance generate_instance(const ExperimentConfig& cfg, std::uint64_t trial_index);

struct TrialRecord {
  std::uint64_t seed_offset = 0;
  bool recovered = false;
  std::size_t iterations = 0;
  std::string status;
  std::string error;  ///< empty unless the solver threw
  std::optional<bool> certified;
};

struct ExperimentResult {
  double recovery_rate = 0.0;
  double avg_iterations = 0.0;
  std::vector<TrialRecord> records;
  std::size_t certified_trials = 0;
  std::size_t certified_recovered = 0;
};

/// True when the sufficient condition (with the exact order-(K+1) block-RIP
/// constant) guarantees BOMP recovers `inst.support` under `stop`.
bool certify_instance(const PlantedInstance& inst, const StoppingRule& stop);

/// Runs BOMP on every trial. Solver errors are recorded per trial; the batch
/// never aborts. Results are identical for any worker count.
ExperimentResult run_experiment(const ExperimentConfig& cfg);
ExperimentResult run_experiment(const ExperimentConfig& cfg, std::size_t workers);

}  // namespace bomp
