#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "ladderlab/error.hpp"
#include "ladderlab/numerics.hpp"
#include "ladderlab/specfun.hpp"

using namespace ladderlab;
using namespace ladderlab::specfun;

namespace {

constexpr double pi = std::numbers::pi;

double rel(Complex a, Complex b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

// First zero of Z(t), bracketed by a sign change on a 0.01 grid from t = 14.
double first_zero() {
  double a = 14.0;
  while (hardy_z(a) * hardy_z(a + 0.01) > 0.0) a += 0.01;
  return numerics::find_root_bracketed([](double t) { return hardy_z(t); }, {a, a + 0.01},
                                       0.0);
}

}  // namespace

TEST_CASE("gamma special values") {
  CHECK(rel(gamma_complex(0.5), std::sqrt(pi)) < 1e-12);
  CHECK(rel(gamma_complex(5.0), 24.0) < 1e-13);
  CHECK(rel(gamma_complex(1.0), 1.0) < 1e-14);
  CHECK(rel(gamma_complex(-0.5), -2.0 * std::sqrt(pi)) < 1e-12);
}

TEST_CASE("gamma recurrence and reflection") {
  const Complex s(1.0, 1.0);
  CHECK(rel(gamma_complex(s + 1.0), s * gamma_complex(s)) < 1e-13);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> re(-4.5, 4.5);
  std::uniform_real_distribution<double> im(-5.0, 5.0);
  for (int k = 0; k < 200; ++k) {
    const Complex z(re(rng), im(rng));
    CHECK(rel(gamma_complex(z + 1.0), z * gamma_complex(z)) < 1e-11);
    CHECK(rel(gamma_complex(z) * gamma_complex(1.0 - z), pi / std::sin(pi * z)) < 1e-10);
    CHECK(rel(gamma_complex(std::conj(z)), std::conj(gamma_complex(z))) < 1e-13);
  }
}

TEST_CASE("gamma poles") {
  CHECK_THROWS_AS(gamma_complex(0.0), PoleError);
  CHECK_THROWS_AS(gamma_complex(-3.0), PoleError);
}

TEST_CASE("zeta special values") {
  CHECK(rel(zeta_complex(2.0), pi * pi / 6.0) < 1e-10);
  CHECK(rel(zeta_complex(4.0), std::pow(pi, 4) / 90.0) < 1e-12);
  CHECK(rel(zeta_complex(0.0), -0.5) < 1e-12);
  CHECK(rel(zeta_complex(-1.0), -1.0 / 12.0) < 1e-11);
  CHECK(std::abs(zeta_complex(-2.0)) < 1e-12);
  CHECK_THROWS_AS(zeta_complex(1.0), PoleError);
}

TEST_CASE("critical-line modulus agrees with the complex evaluator") {
  CHECK(std::abs(zeta_critical_abs_sq(2.0) - std::norm(zeta_complex({0.5, 2.0}))) /
            std::norm(zeta_complex({0.5, 2.0})) <
        1e-9);
  const Complex s(0.5, 14.13);
  CHECK(std::abs(zeta_critical_abs_sq(14.13) - std::norm(zeta_complex(s))) < 1e-8);
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> t(150.0, 3000.0);
  for (int k = 0; k < 60; ++k) {
    const double x = t(rng);
    const double ref = std::norm(zeta_complex({0.5, x}));
    CHECK(std::abs(zeta_critical_abs_sq(x) - ref) <= 1e-8 * std::max(1.0, ref));
  }
  const double zeta_half = -1.4603545088095868;
  CHECK(zeta_critical_abs_sq(0.0) == doctest::Approx(zeta_half * zeta_half).epsilon(1e-12));
}

TEST_CASE("zeta functional equation on and off the critical line") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> t(5.0, 2000.0);
  std::uniform_real_distribution<double> sigma(-0.5, 1.5);
  for (int k = 0; k < 100; ++k) {
    const Complex s(sigma(rng), t(rng));
    const Complex left = zeta_complex(s);
    const Complex right = zeta_chi(s) * zeta_complex(1.0 - s);
    CHECK(std::abs(left - right) <= 1e-8 * std::max(1.0, std::abs(left)));
  }
}

TEST_CASE("Hardy Z is real-valued and vanishes at the first zero") {
  const double g1 = first_zero();
  CHECK(g1 == doctest::Approx(14.134725141734693).epsilon(1e-10));
  CHECK(zeta_critical_abs_sq(g1) < 1e-6);
  CHECK(hardy_z(g1 - 0.1) * hardy_z(g1 + 0.1) < 0.0);
  // Z is continuous across the evaluator switch.
  const double below = hardy_z(kRiemannSiegelCutover - 1e-9);
  const double above = hardy_z(kRiemannSiegelCutover + 1e-9);
  CHECK(std::abs(below - above) < 1e-8);
}

TEST_CASE("bessel values and identities") {
  CHECK(rel(bessel_j(0, 0.0), 1.0) < 1e-15);
  CHECK(std::abs(bessel_j(1, 0.0)) < 1e-15);
  auto j0 = [](double x) { return bessel_j(0, x).real(); };
  const double z = numerics::find_root_bracketed(j0, {2.0, 3.0}, 0.0);
  CHECK(z == doctest::Approx(2.404825557695773).epsilon(1e-12));
  CHECK(std::abs(bessel_j(0, 2.404825557695773)) < 1e-14);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-25.0, 25.0);
  for (int k = 0; k < 200; ++k) {
    const Complex s(u(rng), 0.2 * u(rng));
    for (int p = 1; p <= 3; ++p) {
      const Complex lhs = bessel_j(p - 1, s) + bessel_j(p + 1, s);
      const Complex rhs = 2.0 * p / s * bessel_j(p, s);
      CHECK(std::abs(lhs - rhs) <= 1e-9 * std::max(1.0, std::abs(rhs)));
    }
    CHECK(rel(bessel_j(-3, s), -bessel_j(3, s)) < 1e-13);
  }
  // The two evaluators agree across the switch radius.
  for (int p : {0, 1, 2, 5}) {
    const Complex s = std::polar(17.0, 0.3);
    const Complex d = std::polar(1e-9, 0.3);
    const Complex slope = 0.5 * (bessel_j(p - 1, s) - bessel_j(p + 1, s));
    const Complex jump = bessel_j(p, s + d) - bessel_j(p, s - d) - 2.0 * d * slope;
    CHECK(std::abs(jump) < 1e-10 * std::abs(bessel_j(p, s)));
  }
}

TEST_CASE("gamma far from the real axis") {
  // |Gamma(x + iy)| ~ sqrt(2 pi) |y|^(x - 1/2) exp(-pi |y| / 2)
  for (double y : {50.0, 200.0}) {
    for (double x : {-0.5, 0.25, 2.0}) {
      const Complex g = gamma_complex({x, y});
      const double stirling =
          std::sqrt(2.0 * pi) * std::pow(y, x - 0.5) * std::exp(-0.5 * pi * y);
      CHECK(std::isfinite(std::abs(g)));
      CHECK(std::abs(g) / stirling == doctest::Approx(1.0).epsilon(0.05));
    }
  }
}

TEST_CASE("jacobi special values") {
  const auto k = EllipticModulus::from_k_squared(0.5);
  CHECK(std::abs(jacobi_sn(0.0, k)) < 1e-15);
  CHECK(rel(jacobi_cn(0.0, k), 1.0) < 1e-15);
  CHECK(rel(jacobi_dn(0.0, k), 1.0) < 1e-15);
  const double K = elliptic_k(k);
  CHECK(K == doctest::Approx(1.854074677301372).epsilon(1e-13));
  CHECK(rel(jacobi_sn(K, k), 1.0) < 1e-12);
  CHECK(std::abs(jacobi_cn(K, k)) < 1e-12);
  CHECK(rel(jacobi_dn(K, k), std::sqrt(0.5)) < 1e-12);
  CHECK_THROWS_AS(EllipticModulus::from_k_squared(1.0), DomainError);
  CHECK_THROWS_AS(jacobi_sn(Complex(0.0, elliptic_k_prime(k)), k), PoleError);
}

TEST_CASE("jacobi Pythagorean identities at random complex points") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> ksq(0.05, 0.95);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  int checked = 0;
  while (checked < 10000) {
    const auto k = EllipticModulus::from_k_squared(ksq(rng));
    const Complex s(4.0 * u(rng), 4.0 * u(rng));
    JacobiValues v;
    try {
      v = jacobi_sncndn(s, k);
    } catch (const PoleError&) {
      continue;
    }
    const double scale = std::max(1.0, std::norm(v.sn));
    CHECK(std::abs(v.sn * v.sn + v.cn * v.cn - 1.0) <= 1e-9 * scale);
    CHECK(std::abs(v.dn * v.dn + k.k_squared() * v.sn * v.sn - 1.0) <= 1e-9 * scale);
    ++checked;
  }
}

TEST_CASE("jacobi derivative sn' = cn dn") {
  const auto k = EllipticModulus::from_k_squared(0.7);
  const double h = 1e-5;
  for (const Complex s : {Complex(0.3, 0.2), Complex(1.1, -0.4), Complex(-0.7, 0.9)}) {
    const Complex d = (jacobi_sn(s + h, k) - jacobi_sn(s - h, k)) / (2.0 * h);
    CHECK(rel(d, jacobi_cn(s, k) * jacobi_dn(s, k)) < 1e-8);
  }
}
