// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bomp/adversarial.hpp"
#include "bomp/bounds.hpp"
#include "bomp/errors.hpp"
#include "bomp/experiment.hpp"
#include "bomp/io.hpp"
#include "bomp/proof_checks.hpp"
#include "bomp/random.hpp"
#include "bomp/rip.hpp"
#include "bomp/solver.hpp"
#include "oracles.hpp"

using namespace bomp;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

// Criterion 1: reported bound values for K = 10, delta = 0.04, eps = 1.
Outcome bound_values() {
  const BoundInputs in{10, 0.04, 1.0};
  const double z1 = z1_sufficient_bound(in);
  const double nec = necessary_bound(in);
  const double gap = z1 - nec;
  const bool pass = std::abs(z1 - 2.1964) <= 1e-3 && std::abs(nec - 1.1468) <= 1e-3 &&
                    std::abs(gap - 1.0496) <= 1e-3;
  return {pass, fmt("z1=%.6f necessary=%.6f gap=%.6f", z1, nec, gap)};
}

// Criterion 2: the adversarial matrix has block-RIP constant exactly delta.
Outcome adversarial_rip() {
  std::size_t cells = 0, passes = 0;
  double worst = 0.0;
  for (std::size_t d = 1; d <= 3; ++d) {
    for (std::size_t K = 1; K <= 4; ++K) {
      for (double delta : {0.1, 0.3, 0.5 / std::sqrt(static_cast<double>(K + 1))}) {
        const double got = exact_block_rip(adversarial_matrix(d, K, delta), K + 1).delta;
        const double err = std::abs(got - delta);
        worst = std::max(worst, err);
        ++cells;
        if (err <= 1e-8) ++passes;
      }
    }
  }
  return {cells == 36 && passes == cells,
          fmt("%.0f/%.0f cells, max |delta_B - delta| = %.3g", double(passes), double(cells),
              worst)};
}

// Criterion 3: Gram spectrum of A(1) against the closed form.
Outcome adversarial_spectrum() {
  std::size_t cases = 0, passes = 0;
  double worst = 0.0;
  for (std::size_t K = 1; K <= 6; ++K) {
    for (double delta : {0.1, 0.4}) {
      const Matrix a = adversarial_matrix(1, K, delta).entries();
      const std::vector<double> numeric = oracle::jacobi_eigenvalues(a.transpose() * a);
      std::vector<double> expected{1.0 - delta, 1.0 + delta};
      expected.insert(expected.end(), K - 1, 1.0 - delta * delta);
      std::sort(expected.begin(), expected.end());
      const std::vector<double> closed =
          closed_form_spectrum(AdversarialParams{1, K, delta, 1.0, {}});
      bool ok = numeric.size() == expected.size() && closed.size() == expected.size();
      for (std::size_t i = 0; ok && i < expected.size(); ++i) {
        const double err = std::max(std::abs(numeric[i] - expected[i]),
                                    std::abs(closed[i] - expected[i]));
        worst = std::max(worst, err);
        ok = err <= 1e-10;
      }
      ++cases;
      if (ok) ++passes;
    }
  }
  return {passes == cases,
          fmt("%.0f/%.0f cases, max eigenvalue error %.3g", double(passes), double(cases), worst)};
}

// Criterion 4: BOMP's first pick is the wrong block across a 50-point grid.
Outcome failure_grid() {
  std::size_t points = 0, failures = 0, score_matches = 0;
  double worst = 0.0;
  for (std::size_t d = 1; d <= 2; ++d) {
    for (std::size_t K = 1; K <= 5; ++K) {
      for (double f : {0.1, 0.3, 0.5, 0.7, 0.9}) {
        const double delta = f / std::sqrt(static_cast<double>(K + 1));
        const double eps = 1.0;
        AdversarialParams p{d, K, delta, eps, {}};
        const double t0 = 0.99 * oracle::necessary(K, delta, eps);
        p.t0 = t0;
        const FailureReport r = demonstrate_failure(p);
        ++points;
        if (r.first_selected_index == 1) ++failures;
        const double s = delta / std::sqrt(static_cast<double>(K));
        const double a = std::sqrt(1.0 - delta * delta);
        const double outside = eps + static_cast<double>(K) * a * s * t0;
        const double inside = a * a * t0;
        double err = std::abs(r.scores(0) - outside);
        for (Eigen::Index l = 1; l < r.scores.size(); ++l) {
          err = std::max(err, std::abs(r.scores(l) - inside));
        }
        worst = std::max(worst, err);
        if (err <= 1e-10) ++score_matches;
      }
    }
  }
  return {points == 50 && failures == points && score_matches == points,
          fmt("first pick = block 1 in %.0f/%.0f, scores matched %.0f, max error %.3g",
              double(failures), double(points), double(score_matches), worst)};
}

// Criterion 5: exact support recovery in K iterations whenever the sufficient
// condition holds with the exact block-RIP constant.
Outcome sufficient_condition_instances() {
  const std::size_t target = 500;
  std::size_t accepted = 0, recovered = 0, rejected = 0;
  auto rng = keyed_engine(20240601, 0);
  for (std::uint64_t attempt = 0; accepted < target && attempt < 20 * target; ++attempt) {
    ExperimentConfig cfg;
    cfg.M = uniform_index(rng, 2, 8);
    cfg.d = uniform_index(rng, 1, 3);
    cfg.K = uniform_index(rng, 1, std::min<std::size_t>(3, cfg.M - 1));
    cfg.m = uniform_index(rng, 10, 40) * (cfg.K + 1) * cfg.d;
    cfg.noise_norm = 0.05 + 0.95 * std::uniform_real_distribution<double>(0, 1)(rng);
    cfg.min_block_norm = 1.0;
    cfg.seed = attempt;
    cfg.stopping = StoppingRule::residual_threshold(cfg.noise_norm, cfg.M);

    const PlantedInstance probe = generate_instance(cfg, 0);
    const double delta = exact_block_rip(probe.problem.matrix(), cfg.K + 1).delta;
    if (!rip_condition_holds(cfg.K, delta)) {
      ++rejected;
      continue;
    }
    const double factor = 1.01 + 2.0 * std::uniform_real_distribution<double>(0, 1)(rng);
    cfg.min_block_norm = factor * static_cast<double>(oracle::z1(cfg.K, delta, cfg.noise_norm));
    const PlantedInstance inst = generate_instance(cfg, 0);
    if (inst.problem.matrix().entries() != probe.problem.matrix().entries()) {
      return {false, "regenerated instance changed the matrix"};
    }
    ++accepted;
    const RecoveryTrace trace = run_bomp(inst.problem, cfg.stopping);
    if (trace.support() == inst.support && trace.iterations_run == cfg.K &&
        trace.status == RecoveryStatus::kResidualMet) {
      ++recovered;
    }
  }
  return {accepted == target && recovered == accepted,
          fmt("%.0f/%.0f recovered in exactly K iterations (%.0f draws rejected by RIP)",
              double(recovered), double(accepted), double(rejected))};
}

// Criterion 6: z1 is below z2 over the whole figure grid.
Outcome figure1(const fs::path& csv_dir) {
  const std::vector<Figure1Row> rows = figure1_curves(kFigure1DefaultK, kFigure1DefaultPoints);
  std::size_t negative = 0;
  double worst = -std::numeric_limits<double>::infinity();
  for (const auto& r : rows) {
    const double diff = static_cast<double>(oracle::z1(r.K, r.delta, 1.0) -
                                            oracle::z2(r.K, r.delta, 1.0));
    if (r.diff < 0.0 && diff < 0.0) ++negative;
    worst = std::max(worst, r.diff);
  }
  const fs::path out = csv_dir / "figure1.csv";
  io::write_text(out, figure1_csv(rows));
  const bool written = fs::exists(out) && fs::file_size(out) > 0;
  return {rows.size() == 1000 && negative == rows.size() && written,
          fmt("%.0f/%.0f rows with z1 - z2 < 0 (max %.4g), csv ", double(negative),
              double(rows.size()), worst) +
              (written ? out.string() : std::string("missing"))};
}

// Criteria 7 and 8 share one sweep of random instances.
Outcome identity_checks(const ProofSweep& s) {
  return {s.identity_checks == 3000 && s.identity_passes == s.identity_checks,
          fmt("%.0f/%.0f, worst relative residual %.3g", double(s.identity_passes),
              double(s.identity_checks), s.worst_identity_residual)};
}

Outcome lemma1_checks(const ProofSweep& s) {
  return {s.trials == 1000 && s.lemma1_passes == s.trials && s.theta_passes == s.trials,
          fmt("lower bound %.0f/%.0f, theta bound %.0f/%.0f", double(s.lemma1_passes),
              double(s.trials), double(s.theta_passes), double(s.trials))};
}

// Criterion 9: orthogonality, monotone residuals and determinism.
Outcome solver_invariants() {
  std::size_t problems = 0, passes = 0;
  double worst_ortho = 0.0;
  for (unsigned long long seed = 1; seed <= 200; ++seed) {
    auto rng = keyed_engine(seed, 9);
    const std::size_t M = uniform_index(rng, 2, 12);
    const std::size_t d = uniform_index(rng, 1, 4);
    const std::size_t m = uniform_index(rng, d, M * d + 5);
    const BlockLayout layout(M, d);
    const BlockedMatrix a(layout, oracle::random_gaussian(m, M * d, seed));
    const Vector y = oracle::random_gaussian(m, 1, seed + 1000).col(0);
    const SensingProblem problem(a, y, 0.0);
    const std::size_t budget = std::min(M, m / d);
    const StoppingRule stop = StoppingRule::fixed_iterations(budget);

    ++problems;
    bool ok = true;
    const RecoveryTrace first = run_bomp(problem, stop);
    const RecoveryTrace second = run_bomp(problem, stop);
    ok = ok && first.chosen_indices == second.chosen_indices &&
         first.residual_norms == second.residual_norms &&
         first.final_estimate.values() == second.final_estimate.values();
    for (std::size_t k = 1; ok && k < first.residual_norms.size(); ++k) {
      ok = first.residual_norms[k] <= first.residual_norms[k - 1] * (1.0 + 1e-12);
    }
    for (std::size_t k = 1; ok && k <= budget; ++k) {
      const RecoveryTrace partial = run_bomp(problem, StoppingRule::fixed_iterations(k));
      ok = std::equal(partial.chosen_indices.begin(), partial.chosen_indices.end(),
                      first.chosen_indices.begin());
      const Vector r = y - a.entries() * partial.final_estimate.values();
      const Matrix chosen = extract_blocks(a, partial.chosen_indices);
      const double ortho = (chosen.transpose() * r).norm();
      worst_ortho = std::max(worst_ortho, ortho / y.norm());
      ok = ok && ortho <= 1e-8 * y.norm();
    }
    if (ok) ++passes;
  }
  return {passes == problems && problems == 200,
          fmt("%.0f/%.0f problems, worst ||A[L]^T r|| / ||y|| = %.3g", double(passes),
              double(problems), worst_ortho)};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance checks"};
  std::string csv_dir = ".";
  app.add_option("--csv-dir", csv_dir, "Directory for the figure CSV");
  CLI11_PARSE(app, argc, argv);

  std::optional<ProofSweep> sweep;
  auto proof_sweep = [&]() -> const ProofSweep& {
    if (!sweep) sweep = verify_proofs(1000, 42);
    return *sweep;
  };

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"bound values K=10 delta=0.04", bound_values},
      {"adversarial block-RIP constant", adversarial_rip},
      {"adversarial Gram spectrum", adversarial_spectrum},
      {"first-selection failure grid", failure_grid},
      {"sufficient-condition recovery", sufficient_condition_instances},
      {"z1 below z2 on figure grid", [&] { return figure1(csv_dir); }},
      {"eta identity", [&] { return identity_checks(proof_sweep()); }},
      {"block-norm lower bound and theta bound", [&] { return lemma1_checks(proof_sweep()); }},
      {"solver invariants", solver_invariants},
  };

  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("criterion %zu %s: %s (%s) [%.2fs]\n", i + 1, o.pass ? "PASS" : "FAIL",
                criteria[i].first.c_str(), o.detail.c_str(), secs);
    if (!o.pass) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
