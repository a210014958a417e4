#pragma once

#include <complex>

namespace ladderlab::specfun {

using Complex = std::complex<double>;

// Euler's constant to 20 digits.
inline constexpr double kEulerGamma = 0.57721566490153286061;

// Jacobi modulus k with k^2 in (0, 1).
class EllipticModulus {
 public:
  static EllipticModulus from_k_squared(double k_squared);

  double k() const noexcept { return k_; }
  double k_squared() const noexcept { return m_; }
  // k'^2 = 1 - k^2.
  double complementary_squared() const noexcept { return mc_; }

 private:
  EllipticModulus(double k, double m, double mc) : k_(k), m_(m), mc_(mc) {}
  double k_;
  double m_;
  double mc_;
};

// --- Riemann zeta -----------------------------------------------------------

// Riemann-Siegel theta function (asymptotic series; t >= 10).
double riemann_siegel_theta(double t);

// Hardy's Z(t) with |Z(t)| = |zeta(1/2 + it)|. Uses the Riemann-Siegel main
// sum with correction terms C0..C4 for t >= kRiemannSiegelCutover and the
// Euler-Maclaurin evaluator below it.
double hardy_z(double t);

inline constexpr double kRiemannSiegelCutover = 200.0;

// |zeta(1/2 + it)|^2 for t >= 0.
double zeta_critical_abs_sq(double t);

// zeta(s) by Euler-Maclaurin summation, N = max(20, ceil|Im s|) terms and
// eight Bernoulli tail corrections; the functional equation is used for
// Re s < 0. Supported window: Re s in [-10, 40], |Im s| <= 1e5.
Complex zeta_complex(Complex s);

// chi(s) = 2^s pi^(s-1) sin(pi s / 2) Gamma(1 - s), so zeta(s) = chi(s) zeta(1-s).
Complex zeta_chi(Complex s);

// --- Gamma ------------------------------------------------------------------

// Lanczos approximation (g = 7, 9 terms) with reflection for Re s < 1/2.
Complex gamma_complex(Complex s);

// Principal-sheet-agnostic log Gamma; only exp() of the result is meaningful
// for Re s < 1/2.
Complex log_gamma_complex(Complex s);

// log sin(z) modulo 2 pi i, safe for large |Im z|.
Complex log_sin(Complex z);

// --- Bessel -----------------------------------------------------------------

// Integer-order J_p(s): ascending series for |s| <= 17 or |p| >= |s|;
// otherwise the Hankel expansion of J_0, J_1 and forward recurrence. |s| <= 1000.
Complex bessel_j(int p, Complex s);

// --- Jacobi elliptic --------------------------------------------------------

struct JacobiValues {
  Complex sn;
  Complex cn;
  Complex dn;
};

// Complete elliptic integral of the first kind, K(k), by AGM.
double elliptic_k(const EllipticModulus& k);
// K'(k) = K(k').
double elliptic_k_prime(const EllipticModulus& k);

// Real-argument sn, cn, dn by descending Landen transformation.
void jacobi_real(double u, const EllipticModulus& k, double& sn, double& cn,
                 double& dn);

// Complex-argument sn, cn, dn assembled from real values at x (modulus k) and
// y (modulus k') through the addition theorem. Throws PoleError within 1e-6
// of the common pole lattice 2mK + (2n+1)iK'.
JacobiValues jacobi_sncndn(Complex u, const EllipticModulus& k);

Complex jacobi_sn(Complex u, const EllipticModulus& k);
Complex jacobi_cn(Complex u, const EllipticModulus& k);
Complex jacobi_dn(Complex u, const EllipticModulus& k);

}  // namespace ladderlab::specfun
