#include "bomp/rip.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "bomp/errors.hpp"
#include "bomp/parallel.hpp"
#include "bomp/random.hpp"

namespace bomp {
namespace {

void check_order(const BlockLayout& layout, std::size_t order) {
  if (order == 0 || order > layout.num_blocks()) {
    throw InvalidArgument("RIP order " + std::to_string(order) + " outside 1.." +
                          std::to_string(layout.num_blocks()));
  }
}

// Strictly larger delta wins; equal deltas keep the earlier support.
void absorb(RipReport& into, const RipReport& from) {
  if (from.supports_checked == 0) return;
  if (into.supports_checked == 0) {
    into = from;
    return;
  }
  if (from.delta > into.delta) {
    into.delta = from.delta;
    into.arg_support = from.arg_support;
  }
  into.lambda_min = std::min(into.lambda_min, from.lambda_min);
  into.lambda_max = std::max(into.lambda_max, from.lambda_max);
  into.supports_checked += from.supports_checked;
}

void absorb(RipReport& into, const BlockSet& support, const SupportSpectrum& s) {
  RipReport one;
  one.order = support.size();
  one.delta = s.delta();
  one.arg_support = support;
  one.lambda_min = s.lambda_min;
  one.lambda_max = s.lambda_max;
  one.supports_checked = 1;
  absorb(into, one);
}

}  // namespace

double SupportSpectrum::delta() const {
  return std::max(lambda_max - 1.0, 1.0 - lambda_min);
}

SupportSpectrum support_spectrum(const BlockedMatrix& a,
                                 std::span<const BlockIndex> support) {
  const Matrix sub = extract_blocks(a, support);
  const Matrix gram = sub.transpose() * sub;
  const Eigen::SelfAdjointEigenSolver<Matrix> eig(gram, Eigen::EigenvaluesOnly);
  if (eig.info() != Eigen::Success) {
    throw Error("symmetric eigensolver did not converge");
  }
  const Vector& ev = eig.eigenvalues();
  return {ev.minCoeff(), ev.maxCoeff()};
}

double binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0.0;
  k = std::min(k, n - k);
  double c = 1.0;
  for (std::size_t i = 1; i <= k; ++i) {
    c = c * static_cast<double>(n - k + i) / static_cast<double>(i);
  }
  return std::round(c);
}

double exact_rip_cost(const BlockLayout& layout, std::size_t order) {
  const double width = static_cast<double>(order * layout.block_width());
  return binomial(layout.num_blocks(), order) * width * width * width;
}

BlockSet unrank_combination(std::size_t n, std::size_t k, std::uint64_t rank) {
  BlockSet combo;
  combo.reserve(k);
  std::size_t next = 1;
  for (std::size_t slot = 0; slot < k; ++slot) {
    while (true) {
      // Combinations that start with `next` in this slot.
      const auto with_next =
          static_cast<std::uint64_t>(binomial(n - next, k - slot - 1));
      if (rank < with_next) break;
      rank -= with_next;
      ++next;
    }
    combo.push_back(next);
    ++next;
  }
  return combo;
}

bool next_combination(BlockSet& combo, std::size_t n) {
  const std::size_t k = combo.size();
  std::size_t i = k;
  while (i > 0) {
    --i;
    if (combo[i] < n - (k - 1 - i)) {
      ++combo[i];
      for (std::size_t j = i + 1; j < k; ++j) combo[j] = combo[j - 1] + 1;
      return true;
    }
  }
  return false;
}

RipReport exact_block_rip(const BlockedMatrix& a, std::size_t order, double budget) {
  return exact_block_rip(a, order, budget, worker_count());
}

RipReport exact_block_rip(const BlockedMatrix& a, std::size_t order, double budget,
                          std::size_t workers) {
  const auto& layout = a.layout();
  check_order(layout, order);
  const double cost = exact_rip_cost(layout, order);
  if (cost > budget) {
    throw BudgetExceeded("exact block RIP of order " + std::to_string(order) +
                         " needs ~" + std::to_string(cost) + " flops, budget is " +
                         std::to_string(budget));
  }
  const auto total = static_cast<std::size_t>(binomial(layout.num_blocks(), order));
  std::vector<RipReport> partial(chunk_count(total, workers));
  parallel_chunks(total, workers, [&](std::size_t chunk, std::size_t begin, std::size_t end) {
    if (begin == end) return;
    RipReport local;
    BlockSet combo = unrank_combination(layout.num_blocks(), order, begin);
    for (std::size_t r = begin; r < end; ++r) {
      absorb(local, combo, support_spectrum(a, combo));
      next_combination(combo, layout.num_blocks());
    }
    partial[chunk] = std::move(local);
  });
  RipReport report;
  for (const auto& p : partial) absorb(report, p);
  report.order = order;
  return report;
}

RipReport rip_lower_bound_sampled(const BlockedMatrix& a, std::size_t order,
                                  std::size_t trials, std::uint64_t seed) {
  const auto& layout = a.layout();
  check_order(layout, order);
  if (trials == 0) throw InvalidArgument("trials must be >= 1");
  if (static_cast<double>(trials) >= binomial(layout.num_blocks(), order)) {
    return exact_block_rip(a, order, std::numeric_limits<double>::infinity());
  }
  std::mt19937_64 rng(seed);
  RipReport report;
  for (std::size_t t = 0; t < trials; ++t) {
    const BlockSet support = uniform_subset(rng, layout.num_blocks(), order);
    absorb(report, support, support_spectrum(a, support));
  }
  report.order = order;
  return report;
}

}  // namespace bomp
