#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "bomp/bounds.hpp"
#include "bomp/errors.hpp"
#include "oracles.hpp"

using namespace bomp;

// Reference values computed with 30-digit arithmetic (mpmath).
constexpr double kZ1_K10 = 2.19641081056606946;
constexpr double kZ2_K10 = 2.30591407087584689;
constexpr double kNec_K10 = 1.14677567272542582;
constexpr double kZ1_K1_half = 5.59575411272515044;
constexpr double kNec_K1_half = 3.15470053837925153;

TEST_CASE("reference values for K = 10, delta = 0.04") {
  const BoundInputs b{10, 0.04, 1.0};
  CHECK(std::abs(z1_sufficient_bound(b) - 2.1964) <= 1e-3);
  CHECK(std::abs(necessary_bound(b) - 1.1468) <= 1e-3);
  CHECK(std::abs(z1_sufficient_bound(b) - necessary_bound(b) - 1.0496) <= 2e-3);
  CHECK(std::abs(z2_prior_bound(b) - 2.3059) <= 1e-3);

  CHECK(z1_sufficient_bound(b) == doctest::Approx(kZ1_K10).epsilon(1e-14));
  CHECK(z2_prior_bound(b) == doctest::Approx(kZ2_K10).epsilon(1e-14));
  CHECK(necessary_bound(b) == doctest::Approx(kNec_K10).epsilon(1e-14));
}

TEST_CASE("further closed-form examples") {
  CHECK(z1_sufficient_bound({1, 0.5, 1.0}) == doctest::Approx(kZ1_K1_half).epsilon(1e-14));
  CHECK(z2_prior_bound({3, 0.2, 2.0}) == doctest::Approx(20.0 / 3.0).epsilon(1e-14));
  CHECK(necessary_bound({1, 0.5, 1.0}) == doctest::Approx(kNec_K1_half).epsilon(1e-14));
}

TEST_CASE("small-delta limits") {
  for (std::size_t K : {1, 5, 50}) {
    const BoundInputs b{K, 1e-12, 1.0};
    CHECK(z1_sufficient_bound(b) == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(z2_prior_bound(b) == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(necessary_bound(b) == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("infeasible and invalid inputs") {
  const double edge = 1.0 / std::sqrt(11.0);
  CHECK_THROWS_AS(z1_sufficient_bound({10, edge, 1.0}), Infeasible);
  CHECK_THROWS_AS(z2_prior_bound({10, 0.5, 1.0}), Infeasible);
  CHECK_THROWS_AS(necessary_bound({10, 0.5, 1.0}), Infeasible);
  CHECK_THROWS_AS(z1_sufficient_bound({0, 0.1, 1.0}), InvalidArgument);
  CHECK_THROWS_AS(z1_sufficient_bound({1, -0.1, 1.0}), InvalidArgument);
  CHECK_THROWS_AS(z1_sufficient_bound({1, 0.1, -1.0}), InvalidArgument);
}

TEST_CASE("check_sufficient") {
  const auto ok = check_sufficient(10, 0.04, 1.0, 2.5);
  CHECK(ok.guaranteed);
  CHECK(ok.failed_clauses.empty());

  const auto boundary = check_sufficient(10, 1.0 / std::sqrt(11.0), 1.0, 100.0);
  CHECK_FALSE(boundary.guaranteed);
  CHECK(boundary.failed_clauses == std::vector<std::string>{"rip"});

  const auto small = check_sufficient(10, 0.04, 1.0, 2.0);
  CHECK_FALSE(small.guaranteed);
  CHECK(small.failed_clauses == std::vector<std::string>{"norm"});
  CHECK(small.threshold == doctest::Approx(kZ1_K10));
}

TEST_CASE("bounds against long-double oracle, dominance, ordering and monotonicity") {
  for (std::size_t K = 1; K <= 50; ++K) {
    const double upper = 1.0 / std::sqrt(static_cast<double>(K + 1));
    double prev_z1 = 0, prev_z2 = 0, prev_nec = 0;
    for (int i = 1; i <= 1000; ++i) {
      const double delta = upper * i / 1001.0;
      const BoundInputs b{K, delta, 1.0};
      const double z1 = z1_sufficient_bound(b);
      const double z2 = z2_prior_bound(b);
      const double nec = necessary_bound(b);
      CHECK(std::abs(z1 - static_cast<double>(oracle::z1(K, delta, 1))) <= 1e-12 * z1);
      CHECK(std::abs(z2 - static_cast<double>(oracle::z2(K, delta, 1))) <= 1e-12 * z2);
      CHECK(std::abs(nec - static_cast<double>(oracle::necessary(K, delta, 1))) <= 1e-12 * nec);
      CHECK(z2 > z1);
      CHECK(nec < z1);
      if (i > 1) {
        CHECK(z1 > prev_z1);
        CHECK(z2 > prev_z2);
        CHECK(nec > prev_nec);
      }
      prev_z1 = z1;
      prev_z2 = z2;
      prev_nec = nec;
    }
  }
}

TEST_CASE("bounds scale linearly in epsilon") {
  for (double c : {0.5, 2.0, 4.0, 0.25}) {
    const BoundInputs unit{7, 0.2, 1.0};
    const BoundInputs scaled{7, 0.2, c};
    CHECK(z1_sufficient_bound(scaled) == c * z1_sufficient_bound(unit));
    CHECK(z2_prior_bound(scaled) == c * z2_prior_bound(unit));
    CHECK(necessary_bound(scaled) == c * necessary_bound(unit));
  }
}

TEST_CASE("figure1 curves") {
  const auto rows = figure1_curves(kFigure1DefaultK, kFigure1DefaultPoints);
  CHECK(rows.size() == 5 * 200);
  for (const auto& r : rows) {
    CHECK(r.diff < 0.0);
    CHECK(r.delta > 0.0);
    CHECK(r.delta < 1.0 / std::sqrt(static_cast<double>(r.K + 1)));
    CHECK(r.diff == r.z1 - r.z2);
  }
  CHECK(std::abs(rows.front().diff) < 1e-2);

  const Figure1Row* nearest = nullptr;
  for (const auto& r : rows) {
    if (r.K == 10 && (!nearest || std::abs(r.delta - 0.04) < std::abs(nearest->delta - 0.04))) {
      nearest = &r;
    }
  }
  REQUIRE(nearest != nullptr);
  CHECK(std::abs(nearest->delta - 0.04) <= 0.5 * (1.0 / std::sqrt(11.0)) / 201.0);
  CHECK(std::abs(nearest->z1 - 2.1964) < 1e-2);
  CHECK(std::abs(nearest->z2 - 2.3059) < 1e-2);

  const std::string csv = figure1_csv(figure1_curves({10}, 3));
  CHECK(csv.rfind("K,delta,z1,z2,diff\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
  CHECK_THROWS_AS(figure1_curves({10}, 1), InvalidArgument);
}

TEST_CASE("inequality 2 - sqrt(1+d) > sqrt(1-d)") {
  CHECK(2.0 - std::sqrt(1.5) > std::sqrt(0.5));
  CHECK(2.0 - std::sqrt(1.0) == std::sqrt(1.0));  // equality at 0, hence the open grid
  CHECK(verify_inequality_20(10000));
  CHECK(verify_inequality_20(1));
}
