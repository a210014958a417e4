#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include "ladderlab/error.hpp"
#include "ladderlab/specfun.hpp"

namespace ladderlab::specfun {

namespace {

double agm(double a, double b) {
  for (int i = 0; i < 64; ++i) {
    const double next_a = 0.5 * (a + b);
    const double next_b = std::sqrt(a * b);
    a = next_a;
    b = next_b;
    if (std::abs(a - b) <= 1e-16 * a) break;
  }
  return 0.5 * (a + b);
}

// sn, cn, dn of real u for complementary parameter mc = k'^2 in (0, 1], by
// descending Landen transformation.
void landen_sncndn(double u, double mc, double& sn, double& cn, double& dn) {
  constexpr double kTolerance = 1e-9;
  std::array<double, 16> em{};
  std::array<double, 16> en{};
  double a = 1.0;
  double c = 1.0;
  int last = 0;
  dn = 1.0;
  for (int i = 0; i < 16; ++i) {
    last = i;
    em[i] = a;
    mc = std::sqrt(mc);
    en[i] = mc;
    c = 0.5 * (a + mc);
    if (std::abs(a - mc) <= kTolerance * a) break;
    mc *= a;
    a = c;
  }
  u *= c;
  sn = std::sin(u);
  cn = std::cos(u);
  if (sn != 0.0) {
    a = cn / sn;
    c *= a;
    for (int ii = last; ii >= 0; --ii) {
      const double b = em[ii];
      a *= c;
      c *= dn;
      dn = (en[ii] + a) / (b + a);
      a = c / b;
    }
    a = 1.0 / std::sqrt(c * c + 1.0);
    sn = (sn >= 0.0) ? a : -a;
    cn = c * sn;
  }
}

}  // namespace

EllipticModulus EllipticModulus::from_k_squared(double k_squared) {
  if (!(k_squared > 0.0 && k_squared < 1.0)) {
    std::ostringstream msg;
    msg << "elliptic modulus: k^2 = " << k_squared << " must lie in (0, 1)";
    throw DomainError(msg.str());
  }
  return EllipticModulus(std::sqrt(k_squared), k_squared, 1.0 - k_squared);
}

double elliptic_k(const EllipticModulus& k) {
  return std::numbers::pi / (2.0 * agm(1.0, std::sqrt(k.complementary_squared())));
}

double elliptic_k_prime(const EllipticModulus& k) {
  return std::numbers::pi / (2.0 * agm(1.0, k.k()));
}

void jacobi_real(double u, const EllipticModulus& k, double& sn, double& cn,
                 double& dn) {
  landen_sncndn(u, k.complementary_squared(), sn, cn, dn);
}

JacobiValues jacobi_sncndn(Complex u, const EllipticModulus& k) {
  const double x = u.real();
  const double y = u.imag();
  const double big_k = elliptic_k(k);
  const double big_kp = elliptic_k_prime(k);
  const double m = std::round(x / (2.0 * big_k));
  const double n = std::round((y / big_kp - 1.0) / 2.0);
  const Complex nearest_pole(2.0 * m * big_k, (2.0 * n + 1.0) * big_kp);
  if (std::abs(u - nearest_pole) <= 1e-6) {
    std::ostringstream msg;
    msg << "jacobi: argument " << u << " within 1e-6 of pole " << nearest_pole;
    throw PoleError(msg.str());
  }

  double s, c, d;
  landen_sncndn(x, k.complementary_squared(), s, c, d);
  if (y == 0.0) return {Complex(s), Complex(c), Complex(d)};
  double s1, c1, d1;
  landen_sncndn(y, k.k_squared(), s1, c1, d1);  // modulus k'
  const double m2 = k.k_squared();
  const double delta = c1 * c1 + m2 * s * s * s1 * s1;
  return {Complex(s * d1, c * d * s1 * c1) / delta,
          Complex(c * c1, -s * d * s1 * d1) / delta,
          Complex(d * c1 * d1, -m2 * s * c * s1) / delta};
}

Complex jacobi_sn(Complex u, const EllipticModulus& k) { return jacobi_sncndn(u, k).sn; }
Complex jacobi_cn(Complex u, const EllipticModulus& k) { return jacobi_sncndn(u, k).cn; }
Complex jacobi_dn(Complex u, const EllipticModulus& k) { return jacobi_sncndn(u, k).dn; }

}  // namespace ladderlab::specfun
