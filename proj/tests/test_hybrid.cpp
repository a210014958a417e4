#include <doctest.h>

#include <cmath>
#include <numbers>

#include "ladderlab/hybrid.hpp"
#include "support.hpp"

using namespace ladderlab;
using namespace ladderlab::hybrid;

TEST_CASE("A terms are positive and nearly balanced") {
  const auto& table = testsupport::table();
  for (long L : {100L, 300L, 1000L}) {
    for (double U : {0.1, 0.3, 0.7}) {
      const auto a = a_terms(L, U, table);
      CHECK(a.A1 > 0.0);
      CHECK(a.A2 > 0.0);
      CHECK(a.A3 > 0.0);
      CHECK(std::abs((a.A1 + a.A3) / a.A2 - 1.0) < 0.05);
    }
  }
}

TEST_CASE("constant modulus turns the hybrid formula into the trig identity") {
  const auto& table = testsupport::table();
  auto tr = triples(300, 0.3, table);
  for (auto& t : tr) t.alpha0 = tr[0].alpha0;
  const auto a = compose_a_terms(tr, [](double) { return 1.0; });
  CHECK(a.A1 + a.A3 == doctest::Approx(a.A2).epsilon(1e-15));
}

TEST_CASE("exact hybrid formula") {
  const auto& table = testsupport::table();
  CHECK(check_exact_hybrid(100, 0.7, table) < 1e-8);
  CHECK(check_exact_hybrid(1000, 0.1, table) < 1e-8);
  factorization::MeanValueOptions fine;
  fine.rel_tol = 0.5e-12;
  fine.initial_samples = 1024;
  for (long L : {100L, 300L, 1000L}) {
    for (double U : {0.1, 0.3, 0.7}) {
      const double r = check_exact_hybrid(L, U, table);
      CHECK(r < 1e-8);
      CHECK(std::abs(check_exact_hybrid(L, U, table, fine) - r) < 1e-10);
    }
  }
}

TEST_CASE("epsilon breakdown") {
  const auto& table = testsupport::table();
  const std::vector<long> grid = {100, 300, 1000, 3000, 9000};
  const auto scan = epsilon_scan(grid, 0.3, table);
  REQUIRE(scan.size() == grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto& e = scan[i];
    CHECK(e.L == grid[i]);
    CHECK(1.0 + e.epsilon > 0.0);
    CHECK(std::abs(e.epsilon - e.epsilon_prime) < 1e-9);
    CHECK(e.bound_ratio <= 5.0);
    const double lnL = std::log(static_cast<double>(e.L));
    CHECK(e.bound_ratio == doctest::Approx(std::abs(e.epsilon) * lnL / std::log(lnL)));
    CHECK(e.exact_residual < 1e-8);
    for (double w : {e.omega1, e.omega2, e.omega3}) CHECK(w > 0.0);
  }
}
