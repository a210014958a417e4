#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>

#include "ladderlab/error.hpp"
#include "ladderlab/ladder.hpp"
#include "ladderlab/numerics.hpp"
#include "ladderlab/specfun.hpp"
#include "support.hpp"

using namespace ladderlab;
using namespace ladderlab::ladder;
using testsupport::kEulerGamma;

namespace {

constexpr double pi = std::numbers::pi;

double second_moment(double T) {
  return T * std::log(T) - (1.0 + std::log(2.0 * pi) - 2.0 * kEulerGamma) * T;
}

double first_zero() {
  double a = 14.0;
  while (specfun::hardy_z(a) * specfun::hardy_z(a + 0.01) > 0.0) a += 0.01;
  return numerics::find_root_bracketed([](double t) { return specfun::hardy_z(t); },
                                       {a, a + 0.01}, 0.0);
}

}  // namespace

TEST_CASE("shared cache warm") {
  const auto& t = testsupport::table();
  CHECK(t.t_max() >= testsupport::shared_t_max());
}

TEST_CASE("ladder equation inverse") {
  CHECK(phi_from_h(0.0) == doctest::Approx(kPhiAtZero).epsilon(1e-15));
  CHECK(kPhiAtZero == doctest::Approx(2.0 * pi * std::exp(-kEulerGamma)).epsilon(1e-15));
  CHECK(kLadderShift == doctest::Approx(kEulerGamma - std::log(2.0 * pi)).epsilon(1e-15));
  for (double h : {1e-3, 1.0, 17.0, 1e3, 2.5e5}) {
    const double phi = phi_from_h(h);
    CHECK(std::abs(ladder_lhs(phi) - h) <= 1e-12 * std::max(1.0, h));
  }
  CHECK_THROWS_AS(phi_from_h(-1.0), DomainError);
}

TEST_CASE("H table") {
  const auto& t = testsupport::table();
  CHECK(t.H(0.0) == 0.0);
  const auto h = t.knots_h();
  for (std::size_t i = 1; i < h.size(); ++i) REQUIRE(h[i] > h[i - 1]);
  // Oracle: direct quadrature from 0.
  auto f = [](double x) { return specfun::zeta_critical_abs_sq(x); };
  for (double T : {10.0, 123.4, 777.7}) {
    const double direct = numerics::integrate_adaptive(f, {0.0, T}, 1e-12).value;
    CHECK(std::abs(t.H(T) - direct) / direct < 1e-9);
  }
  for (double T : {5000.0, 10000.0, 20000.0, 30000.0}) {
    CHECK(std::abs(t.H(T) / second_moment(T) - 1.0) < 0.02);
  }
  CHECK_THROWS_AS(t.H(t.t_max() + 1.0), RangeError);
}

TEST_CASE("phi1 properties") {
  const auto& t = testsupport::table();
  CHECK(t.phi1(0.0) == doctest::Approx(kPhiAtZero).epsilon(1e-14));
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> T(0.0, 30000.0);
  for (int k = 0; k < 1000; ++k) {
    const double x = T(rng);
    CHECK(t.phi1(x + 1.0) > t.phi1(x));
    if (x >= 100.0) CHECK(x - t.phi1(x) > 0.0);
  }
  const double T3 = 3e4;
  const double trend = (T3 - t.phi1(T3)) * std::log(T3) / T3;
  CHECK(std::abs(trend / (1.0 - kEulerGamma) - 1.0) < 0.2);
}

TEST_CASE("phi1_prime and omega") {
  const auto& t = testsupport::table();
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> T(100.0, 30000.0);
  int checked = 0;
  while (checked < 300) {
    const double x = T(rng);
    const double z2 = specfun::zeta_critical_abs_sq(x);
    CHECK(t.phi1_prime(x) >= 0.0);
    if (z2 <= 0.1) continue;
    // Central differences converge as h^2; the extrapolated value removes the
    // h^2 term.
    const double p = t.phi1_prime(x);
    auto fd = [&](double h) { return (t.phi1(x + h) - t.phi1(x - h)) / (2.0 * h); };
    const double coarse = fd(1e-3) - p;
    const double fine = fd(5e-4) - p;
    if (std::abs(coarse) > 1e-5 * p) CHECK(coarse / fine == doctest::Approx(4.0).epsilon(0.15));
    CHECK(std::abs((4.0 * fine - coarse) / 3.0) / p < 1e-6);
    CHECK(std::abs(t.omega(x) - z2 / t.phi1_prime(x)) / t.omega(x) < 1e-12);
    CHECK(t.omega(x) > 0.0);
    ++checked;
  }
  for (double x = 1e4; x <= 3e4; x += 997.0) {
    if (specfun::zeta_critical_abs_sq(x) < 1e-8) continue;
    const double r = t.omega(x) / std::log(x);
    CHECK(r > 0.9);
    CHECK(r < 1.1);
  }
  const double g1 = first_zero();
  CHECK(t.phi1_prime(g1) < 1e-7);
  CHECK_THROWS_AS(t.omega(g1), DomainError);
}

TEST_CASE("reverse iteration") {
  const auto& t = testsupport::table();
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> T(10.0, t.phi1_max());
  for (int k = 0; k < 1000; ++k) {
    const double x = T(rng);
    const double r = t.reverse_iterate(x);
    CHECK(std::abs(t.phi1(r) - x) < 1e-8);
    CHECK(r > x);
  }
  const double T9 = pi * 9000.0;
  const double gap = (t.reverse_iterate(T9) - T9) * std::log(T9) / ((1.0 - kEulerGamma) * T9);
  CHECK(std::abs(gap - 1.0) < 0.2);
  CHECK_THROWS_AS(t.reverse_iterate(t.phi1_max() + 1.0), RangeError);
}

TEST_CASE("disconnected set") {
  const auto& t = testsupport::table();
  for (long L : {100L, 300L, 1000L, 3000L, 9000L}) {
    for (double U : {0.1, 0.3, 0.7}) {
      const auto d = disconnected_set(L, U, t);
      CHECK(d.base.hi() < d.lifted.lo());
      CHECK(d.base.lo() == doctest::Approx(pi * L));
      CHECK(d.base_len == doctest::Approx(U));
      CHECK(d.rho > 0.0);
      CHECK(std::abs(t.phi1(d.lifted.lo()) - pi * L) < 1e-8);
      CHECK(std::abs(t.phi1(d.lifted.hi()) - (pi * L + U)) < 1e-8);
    }
  }
  const auto d9 = disconnected_set(9000, 0.3, t);
  const double ratio = d9.rho * std::log(9000.0) / (pi * (1.0 - kEulerGamma) * 9000.0);
  CHECK(ratio >= 0.8);
  CHECK(ratio <= 1.2);
  CHECK_THROWS_AS(disconnected_set(100, 0.0, t), DomainError);
  CHECK_THROWS_AS(disconnected_set(100, pi / 4, t), DomainError);
  CHECK_THROWS_AS(disconnected_set(20000, 0.3, t), RangeError);
}

TEST_CASE("change of variables through the ladder") {
  const auto& t = testsupport::table();
  const std::vector<std::function<double(double)>> fs = {
      [](double u) { return std::sin(u) * std::sin(u); },
      [](double u) { return std::cos(u) * std::cos(u); },
      [](double u) { return std::cos(2.0 * u); },
      [](double u) { return 1.0 + 0.01 * u - 1e-6 * u * u; },
  };
  for (const auto& f : fs) {
    for (double a : {500.0, 2500.0}) {
      const double b = a + 0.6;
      auto lifted = [&](double x) { return f(t.phi1(x)) * t.phi1_prime(x); };
      numerics::QuadratureOptions opts;
      opts.initial_panels = 16;
      const double left =
          numerics::integrate_adaptive(lifted, {t.reverse_iterate(a), t.reverse_iterate(b)},
                                       1e-12, opts)
              .value;
      auto direct = [&](double u) { return f(u); };
      const double right = numerics::integrate_adaptive(direct, {a, b}, 1e-13).value;
      CHECK(std::abs(left - right) < 1e-9 * std::max(1.0, std::abs(right)));
    }
  }
}

TEST_CASE("cache round trip and validation") {
  const auto dir = std::filesystem::temp_directory_path() / "ladderlab_test_ladder";
  std::filesystem::create_directories(dir);
  const auto path = (dir / "small.csv").string();
  const auto built = LadderTable::build(1000.0, 1e-9);
  built.save(path);
  const auto loaded = LadderTable::load(path);
  REQUIRE(loaded.size() == built.size());
  CHECK(loaded.tolerance() == built.tolerance());
  for (double T : {0.5, 99.9, 640.0, 999.0}) CHECK(loaded.H(T) == built.H(T));

  const auto broken = (dir / "broken.csv").string();
  {
    std::ofstream out(broken);
    out << "#ladderlab-cache-v1\n#tol=1e-10\nT,H\n0,0\n1,2\n0.5,3\n";
  }
  CHECK_THROWS_AS(LadderTable::load(broken), FormatError);
  {
    std::ofstream out(broken);
    out << "#something-else\nT,H\n0,0\n";
  }
  CHECK_THROWS_AS(LadderTable::load(broken), FormatError);
  CHECK_THROWS_AS(LadderTable::build(10.0), DomainError);
  CHECK_THROWS_AS(LadderTable::build(2000.0, 1e-3), DomainError);
  std::filesystem::remove_all(dir);
}
