#include <doctest.h>

#include <cmath>

#include "bomp/adversarial.hpp"
#include "bomp/errors.hpp"
#include "bomp/rip.hpp"
#include "oracles.hpp"

using namespace bomp;

TEST_CASE("combination unranking agrees with lexicographic stepping") {
  for (std::size_t n = 1; n <= 8; ++n) {
    for (std::size_t k = 1; k <= n; ++k) {
      BlockSet combo = unrank_combination(n, k, 0);
      const auto total = static_cast<std::uint64_t>(binomial(n, k));
      for (std::uint64_t r = 0; r < total; ++r) {
        CHECK(unrank_combination(n, k, r) == combo);
        const bool more = next_combination(combo, n);
        CHECK(more == (r + 1 < total));
      }
    }
  }
  CHECK(binomial(8, 4) == 70.0);
  CHECK(binomial(3, 5) == 0.0);
}

TEST_CASE("identity has block-RIP constant 0 at every order") {
  const BlockedMatrix a(BlockLayout(5, 2), Matrix::Identity(10, 10));
  for (std::size_t K = 1; K <= 5; ++K) {
    const RipReport r = exact_block_rip(a, K);
    CHECK(r.delta <= 1e-15);
    CHECK(r.rip_holds());
    CHECK(rip_lower_bound_sampled(a, K, 3, 7).delta <= 1e-15);
  }
}

TEST_CASE("adversarial matrices: order K+1 constant equals the design delta") {
  SUBCASE("d = 1, K = 1, delta = 0.3") {
    const RipReport r = exact_block_rip(adversarial_matrix(1, 1, 0.3), 2);
    CHECK(std::abs(r.delta - 0.3) <= 1e-12);
    CHECK(std::abs(r.lambda_min - 0.7) <= 1e-12);
    CHECK(std::abs(r.lambda_max - 1.3) <= 1e-12);
    CHECK(r.arg_support == BlockSet{1, 2});
  }
  SUBCASE("d = 2, K = 3, delta = 0.2") {
    const RipReport r = exact_block_rip(adversarial_matrix(2, 3, 0.2), 4);
    CHECK(std::abs(r.delta - 0.2) <= 1e-12);
    CHECK(r.supports_checked == 1);
  }
}

TEST_CASE("exact enumeration matches a bitmask brute force") {
  for (unsigned long long seed = 1; seed <= 12; ++seed) {
    const std::size_t M = 3 + seed % 4, d = 1 + seed % 3;
    const BlockedMatrix a(BlockLayout(M, d), oracle::random_gaussian(8 * d, M * d, seed));
    for (std::size_t K = 1; K <= M; ++K) {
      const double expected = oracle::brute_force_block_rip(a, K);
      const RipReport r = exact_block_rip(a, K);
      CHECK(std::abs(r.delta - expected) <= 1e-10);
      CHECK(r.delta == doctest::Approx(std::max(r.lambda_max - 1.0, 1.0 - r.lambda_min)));
      CHECK(r.arg_support.size() == K);
      CHECK(std::abs(support_spectrum(a, r.arg_support).delta() - r.delta) == 0.0);
    }
  }
}

TEST_CASE("exact constant is nondecreasing in the order") {
  for (unsigned long long seed = 1; seed <= 20; ++seed) {
    const BlockedMatrix a(BlockLayout(6, 2), oracle::random_gaussian(20, 12, seed));
    double previous = 0.0;
    for (std::size_t K = 1; K <= 6; ++K) {
      const double delta = exact_block_rip(a, K).delta;
      CHECK(delta >= previous - 1e-14);
      previous = delta;
    }
  }
}

TEST_CASE("result does not depend on how the enumeration is split") {
  const BlockedMatrix a(BlockLayout(9, 2), oracle::random_gaussian(30, 18, 4));
  const RipReport serial = exact_block_rip(a, 4, kDefaultRipBudget, 1);
  for (std::size_t workers : {2, 3, 7, 64}) {
    const RipReport split = exact_block_rip(a, 4, kDefaultRipBudget, workers);
    CHECK(split.delta == serial.delta);
    CHECK(split.arg_support == serial.arg_support);
    CHECK(split.lambda_min == serial.lambda_min);
    CHECK(split.lambda_max == serial.lambda_max);
    CHECK(split.supports_checked == serial.supports_checked);
  }
}

TEST_CASE("RIP inequality holds for random block-sparse vectors") {
  const BlockLayout layout(6, 2);
  const BlockedMatrix a(layout, oracle::random_gaussian(25, 12, 17));
  const std::size_t K = 3;
  const RipReport r = exact_block_rip(a, K);
  for (unsigned long long seed = 1; seed <= 200; ++seed) {
    const BlockSet support = unrank_combination(6, K, seed % 20);
    const BlockSignal h = oracle::random_signal(layout, support, seed);
    const double energy = h.values().squaredNorm();
    const double image = (a.entries() * h.values()).squaredNorm();
    CHECK(image >= (1.0 - r.delta) * energy - 1e-10 * energy);
    CHECK(image <= (1.0 + r.delta) * energy + 1e-10 * energy);
  }
}

TEST_CASE("argument validation and budget guard") {
  const BlockedMatrix a(BlockLayout(4, 2), oracle::random_gaussian(10, 8, 1));
  CHECK_THROWS_AS(exact_block_rip(a, 0), InvalidArgument);
  CHECK_THROWS_AS(exact_block_rip(a, 5), InvalidArgument);
  // C(4,2) * 4^3 = 384
  CHECK(exact_rip_cost(a.layout(), 2) == 384.0);
  CHECK_THROWS_AS(exact_block_rip(a, 2, 383.0), BudgetExceeded);
  CHECK_NOTHROW(exact_block_rip(a, 2, 384.0));
  CHECK_THROWS_AS(rip_lower_bound_sampled(a, 2, 0, 1), InvalidArgument);

  const BlockedMatrix big(BlockLayout(40, 2), oracle::random_gaussian(100, 80, 2));
  CHECK_THROWS_AS(exact_block_rip(big, 10), BudgetExceeded);
}

TEST_CASE("delta >= 1 is reported and flagged, not thrown") {
  Matrix entries = Matrix::Zero(2, 2);
  entries(0, 0) = 1.0;  // second column is zero
  const RipReport r = exact_block_rip(BlockedMatrix(BlockLayout(2, 1), entries), 1);
  CHECK(r.delta == doctest::Approx(1.0));
  CHECK_FALSE(r.rip_holds());
}

TEST_CASE("sampled lower bound") {
  SUBCASE("exhaustive when trials cover every support") {
    const BlockedMatrix a = adversarial_matrix(1, 2, 0.3);
    const RipReport sampled = rip_lower_bound_sampled(a, 2, 50, 9);
    const RipReport exact = exact_block_rip(a, 2);
    CHECK(sampled.delta == exact.delta);
    CHECK(sampled.delta > 0.0);
    CHECK(sampled.delta <= 0.3 + 1e-12);
    CHECK(std::abs(sampled.delta - oracle::brute_force_block_rip(a, 2)) <= 1e-10);
  }
  SUBCASE("never exceeds the exact constant; deterministic given the seed") {
    const BlockedMatrix a(BlockLayout(10, 2), oracle::random_gaussian(40, 20, 3));
    const double exact = exact_block_rip(a, 3).delta;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const RipReport s = rip_lower_bound_sampled(a, 3, 15, seed);
      CHECK(s.delta <= exact);
      CHECK(s.supports_checked == 15);
      CHECK(rip_lower_bound_sampled(a, 3, 15, seed).delta == s.delta);
    }
  }
}
