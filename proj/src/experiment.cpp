#include "bomp/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <json.hpp>

#include "bomp/bounds.hpp"
#include "bomp/errors.hpp"
#include "bomp/io.hpp"
#include "bomp/parallel.hpp"
#include "bomp/random.hpp"
#include "bomp/rip.hpp"

namespace bomp {
namespace {

// Gaussian block coefficients rescaled so the smallest block norm is exact.
Vector planted_coefficients(std::mt19937_64& rng, std::size_t K, std::size_t d,
                            double min_block_norm) {
  Vector coeffs = gaussian_vector(rng, static_cast<Eigen::Index>(K * d));
  const auto w = static_cast<Eigen::Index>(d);
  double smallest = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < K; ++i) {
    smallest = std::min(smallest, coeffs.segment(static_cast<Eigen::Index>(i) * w, w).norm());
  }
  coeffs *= min_block_norm / smallest;
  return coeffs;
}

Vector planted_noise(std::mt19937_64& rng, Eigen::Index rows, double noise_norm) {
  Vector e = gaussian_vector(rng, rows);
  if (noise_norm == 0.0) return Vector::Zero(rows);
  return e * (noise_norm / e.norm());
}

template <class T>
T json_get(const nlohmann::json& j, const char* key, T fallback) {
  return j.contains(key) ? j.at(key).get<T>() : fallback;
}

}  // namespace

void ExperimentConfig::validate() const {
  if (K == 0) throw InvalidArgument("K must be >= 1");
  if (trials == 0) throw InvalidArgument("trials must be >= 1");
  if (!(min_block_norm > 0.0)) throw InvalidArgument("min_block_norm must be > 0");
  if (!(noise_norm >= 0.0)) throw InvalidArgument("noise_norm must be >= 0");
  stopping.validate();
  if (matrix_ensemble == MatrixEnsemble::kFromFile) {
    if (matrix_path.empty() || layout_path.empty()) {
      throw InvalidArgument("from_file ensemble needs matrix_path and layout_path");
    }
    return;
  }
  if (m == 0 || M == 0 || d == 0) throw InvalidArgument("m, M and d must be >= 1");
  if (K > M) throw InvalidArgument("K must not exceed M");
  if (K * d > m) throw InvalidArgument("K d must not exceed m");
}

ExperimentConfig parse_experiment_config(const std::string& json_text) {
  ExperimentConfig cfg;
  try {
    const auto j = nlohmann::json::parse(json_text);
    cfg.m = json_get<std::size_t>(j, "m", 0);
    cfg.M = json_get<std::size_t>(j, "M", 0);
    cfg.d = json_get<std::size_t>(j, "d", 1);
    cfg.K = json_get<std::size_t>(j, "K", 1);
    cfg.noise_norm = json_get<double>(j, "noise_norm", 0.0);
    cfg.min_block_norm = json_get<double>(j, "min_block_norm", 1.0);
    cfg.trials = json_get<std::size_t>(j, "trials", 1);
    cfg.seed = json_get<std::uint64_t>(j, "seed", 0);
    const auto ensemble = json_get<std::string>(j, "matrix_ensemble", "gaussian");
    if (ensemble == "gaussian") {
      cfg.matrix_ensemble = MatrixEnsemble::kGaussian;
    } else if (ensemble == "from_file") {
      cfg.matrix_ensemble = MatrixEnsemble::kFromFile;
    } else {
      throw InvalidArgument("unknown matrix_ensemble '" + ensemble + "'");
    }
    cfg.matrix_path = json_get<std::string>(j, "matrix_path", "");
    cfg.layout_path = json_get<std::string>(j, "layout_path", "");
    cfg.truth_path = json_get<std::string>(j, "truth_path", "");
    cfg.noise_path = json_get<std::string>(j, "noise_path", "");
    cfg.certify = json_get<bool>(j, "certify", false);

    const auto stop = j.contains("stopping") ? j.at("stopping") : nlohmann::json::object();
    cfg.stopping.mode = parse_stop_mode(json_get<std::string>(stop, "mode", "residual_threshold"));
    cfg.stop_epsilon_from_noise = !stop.contains("epsilon");
    cfg.stop_budget_from_k = !stop.contains("max_iterations");
    cfg.stopping.epsilon = json_get<double>(stop, "epsilon", cfg.noise_norm);
    cfg.stopping.max_iterations = json_get<std::size_t>(stop, "max_iterations", cfg.K);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("bad experiment config: ") + e.what());
  }
  return cfg;
}

InstanceGenerator::InstanceGenerator(ExperimentConfig cfg) : cfg_(std::move(cfg)) {
  if (cfg_.matrix_ensemble == MatrixEnsemble::kFromFile) {
    if (cfg_.matrix_path.empty() || cfg_.layout_path.empty()) {
      throw InvalidArgument("from_file ensemble needs matrix_path and layout_path");
    }
    fixed_matrix_ = io::read_blocked_matrix(cfg_.matrix_path, cfg_.layout_path);
    cfg_.m = fixed_matrix_->rows();
    cfg_.M = fixed_matrix_->layout().num_blocks();
    cfg_.d = fixed_matrix_->layout().block_width();
    if (!cfg_.truth_path.empty()) {
      fixed_truth_ = BlockSignal(fixed_matrix_->layout(), io::read_vector_csv(cfg_.truth_path));
      cfg_.K = block_support(*fixed_truth_, 0.0).size();
    }
    if (!cfg_.noise_path.empty()) {
      fixed_noise_ = io::read_vector_csv(cfg_.noise_path);
      if (static_cast<std::size_t>(fixed_noise_->size()) != cfg_.m) {
        throw InvalidArgument("noise file length does not match matrix rows");
      }
      cfg_.noise_norm = fixed_noise_->norm();
    }
  }
  if (cfg_.stop_epsilon_from_noise) cfg_.stopping.epsilon = cfg_.noise_norm;
  if (cfg_.stop_budget_from_k) cfg_.stopping.max_iterations = cfg_.K;
  cfg_.validate();
}

PlantedInstance InstanceGenerator::generate(std::uint64_t trial_index) const {
  auto rng = keyed_engine(cfg_.seed, trial_index);
  const BlockLayout layout(cfg_.M, cfg_.d);
  const auto rows = static_cast<Eigen::Index>(cfg_.m);

  BlockedMatrix a = fixed_matrix_
                        ? *fixed_matrix_
                        : BlockedMatrix(layout, gaussian_matrix(
                                                    rng, rows,
                                                    static_cast<Eigen::Index>(layout.ambient_dim()),
                                                    1.0 / std::sqrt(static_cast<double>(cfg_.m))));
  BlockSet support;
  std::optional<BlockSignal> truth = fixed_truth_;
  if (truth) {
    support = block_support(*truth, 0.0);
  } else {
    support = uniform_subset(rng, cfg_.M, cfg_.K);
    truth = scatter_blocks(layout, planted_coefficients(rng, cfg_.K, cfg_.d, cfg_.min_block_norm),
                           support);
  }
  Vector noise = fixed_noise_ ? *fixed_noise_ : planted_noise(rng, rows, cfg_.noise_norm);
  Vector y = a.entries() * truth->values() + noise;
  const double bound = noise.norm();
  return PlantedInstance{SensingProblem(std::move(a), std::move(y), bound), std::move(*truth),
                         std::move(noise), std::move(support)};
}

PlantedInstance generate_instance(const ExperimentConfig& cfg, std::uint64_t trial_index) {
  return InstanceGenerator(cfg).generate(trial_index);
}

bool certify_instance(const PlantedInstance& inst, const StoppingRule& stop) {
  const auto& a = inst.problem.matrix();
  const std::size_t K = inst.support.size();
  if (K == 0) return false;
  double epsilon = 0.0;
  const double noise = inst.noise.norm();
  if (stop.mode == StopMode::kFixedIterations) {
    if (stop.max_iterations != K) return false;
    epsilon = noise;
  } else {
    if (stop.max_iterations && *stop.max_iterations < K) return false;
    if (!(noise <= stop.epsilon)) return false;
    epsilon = stop.epsilon;
  }
  const std::size_t order = std::min(K + 1, a.layout().num_blocks());
  const double delta = exact_block_rip(a, order, kDefaultRipBudget, 1).delta;
  if (!(delta < 1.0)) return false;
  double min_norm = std::numeric_limits<double>::infinity();
  for (const BlockIndex i : inst.support) min_norm = std::min(min_norm, inst.truth.block(i).norm());
  return check_sufficient(K, delta, epsilon, min_norm).guaranteed;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  return run_experiment(cfg, worker_count());
}

ExperimentResult run_experiment(const ExperimentConfig& cfg, std::size_t workers) {
  const InstanceGenerator generator(cfg);
  const ExperimentConfig& c = generator.config();
  ExperimentResult result;
  result.records.resize(c.trials);
  parallel_chunks(c.trials, workers, [&](std::size_t, std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      TrialRecord& rec = result.records[i];
      rec.seed_offset = i;
      try {
        const PlantedInstance inst = generator.generate(i);
        if (c.certify) rec.certified = certify_instance(inst, c.stopping);
        const RecoveryTrace trace = run_bomp(inst.problem, c.stopping);
        rec.iterations = trace.iterations_run;
        rec.status = std::string(to_string(trace.status));
        rec.recovered = trace.support() == inst.support;
      } catch (const Error& e) {
        rec.error = e.what();
        rec.status = "error";
      }
    }
  });
  std::size_t recovered = 0;
  double iterations = 0.0;
  for (const auto& rec : result.records) {
    recovered += rec.recovered ? 1 : 0;
    iterations += static_cast<double>(rec.iterations);
    if (rec.certified.value_or(false)) {
      ++result.certified_trials;
      if (rec.recovered) ++result.certified_recovered;
    }
  }
  result.recovery_rate = static_cast<double>(recovered) / static_cast<double>(c.trials);
  result.avg_iterations = iterations / static_cast<double>(c.trials);
  return result;
}

}  // namespace bomp
