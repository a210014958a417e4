#include <array>
#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "ladderlab/error.hpp"
#include "ladderlab/specfun.hpp"

namespace ladderlab::specfun {

namespace {

constexpr double kPi = std::numbers::pi;

// log(n) split into a double-double pair. Built once on first use;
// magic-static initialisation makes construction race-free.
struct LogEntry {
  double hi;
  double lo;
  double inv_sqrt;
};

constexpr std::size_t kLogTableSize = std::size_t{1} << 17;

LogEntry make_log_entry(std::size_t n) {
  const long double ln = std::log(static_cast<long double>(n));
  const auto hi = static_cast<double>(ln);
  return {hi, static_cast<double>(ln - hi), 1.0 / std::sqrt(static_cast<double>(n))};
}

const std::vector<LogEntry>& log_table() {
  static const std::vector<LogEntry> table = [] {
    std::vector<LogEntry> t(kLogTableSize);
    t[0] = {0.0, 0.0, 0.0};
    for (std::size_t n = 1; n < t.size(); ++n) t[n] = make_log_entry(n);
    return t;
  }();
  return table;
}

inline LogEntry log_entry(std::size_t n) {
  return n < kLogTableSize ? log_table()[n] : make_log_entry(n);
}

// 2 pi as a double-double.
constexpr double kTwoPiHi = 6.283185307179586232;
constexpr double kTwoPiLo = 2.4492935982947064e-16;

// (hi + lo) reduced to about [-pi, pi]; hi may be large, |lo| is small.
inline double reduce_phase(double hi, double lo) {
  const double k = std::nearbyint(hi / kTwoPiHi);
  double r = std::fma(-k, kTwoPiHi, hi);
  r = std::fma(-k, kTwoPiLo, r);
  return r + lo;
}

// t * log(n) as an unevaluated sum hi + lo.
inline void scaled_log(double t, const LogEntry& e, double& hi, double& lo) {
  hi = t * e.hi;
  lo = std::fma(t, e.hi, -hi) + t * e.lo;
}

// --- Riemann-Siegel remainder coefficients --------------------------------
//
// Psi(p) = cos(2 pi (p^2 - p - 1/16)) / cos(2 pi p) is entire. In z = 2p - 1
// it reads -cos(pi z^2 / 2 - 5 pi / 8) / cos(pi z). Its Taylor coefficients
// are obtained once by the trapezoidal Cauchy integral on |z| = 2, and the
// C_k are assembled from derivatives of that series.

constexpr int kPsiDegree = 64;

struct RemainderSeries {
  // c[k][n]: coefficient of z^n in C_k.
  std::array<std::array<double, kPsiDegree>, 5> c{};
};

const RemainderSeries& remainder_series() {
  static const RemainderSeries series = [] {
    using C = std::complex<double>;
    constexpr int kNodes = 256;
    constexpr double kRadius = 2.0;
    std::array<C, kNodes> values;
    for (int j = 0; j < kNodes; ++j) {
      const C z = std::polar(kRadius, 2.0 * kPi * j / kNodes);
      values[j] = -std::cos(kPi * z * z / 2.0 - 5.0 * kPi / 8.0) / std::cos(kPi * z);
    }
    std::array<double, kPsiDegree> psi{};
    for (int n = 0; n < kPsiDegree; ++n) {
      C acc = 0.0;
      for (int j = 0; j < kNodes; ++j) {
        acc += values[j] * std::polar(1.0, -2.0 * kPi * n * j / kNodes);
      }
      psi[n] = (acc / static_cast<double>(kNodes)).real() / std::pow(kRadius, n);
    }
    // Coefficients of d^k Psi / dp^k = 2^k d^k Psi / dz^k.
    auto derivative = [&](int k) {
      std::array<double, kPsiDegree> d{};
      for (int n = 0; n + k < kPsiDegree; ++n) {
        double falling = 1.0;
        for (int i = 1; i <= k; ++i) falling *= static_cast<double>(n + i);
        d[n] = std::ldexp(falling * psi[n + k], k);
      }
      return d;
    };
    std::array<std::array<double, kPsiDegree>, 13> dpsi;
    for (int k = 0; k <= 12; ++k) dpsi[k] = derivative(k);

    const double pi2 = kPi * kPi;
    const double pi4 = pi2 * pi2;
    const double pi6 = pi4 * pi2;
    const double pi8 = pi4 * pi4;
    RemainderSeries out;
    for (int n = 0; n < kPsiDegree; ++n) {
      out.c[0][n] = dpsi[0][n];
      out.c[1][n] = -dpsi[3][n] / (96.0 * pi2);
      out.c[2][n] = dpsi[6][n] / (18432.0 * pi4) + dpsi[2][n] / (64.0 * pi2);
      out.c[3][n] = -dpsi[9][n] / (5308416.0 * pi6) -
                    dpsi[5][n] / (3840.0 * pi4) - dpsi[1][n] / (64.0 * pi2);
      out.c[4][n] = dpsi[12][n] / (2038431744.0 * pi8) +
                    11.0 * dpsi[8][n] / (5898240.0 * pi6) +
                    19.0 * dpsi[4][n] / (24576.0 * pi4) + dpsi[0][n] / (128.0 * pi2);
    }
    return out;
  }();
  return series;
}

double eval_series(const std::array<double, kPsiDegree>& c, double z) {
  double acc = 0.0;
  for (int n = kPsiDegree - 1; n >= 0; --n) acc = acc * z + c[n];
  return acc;
}

double riemann_siegel_z(double t) {
  const double a = std::sqrt(t / (2.0 * kPi));
  const auto n_terms = static_cast<std::size_t>(a);
  const double p = a - static_cast<double>(n_terms);

  // theta(t) = (t/2) log(t / 2 pi) - t/2 - pi/8 + O(1/t); the large part is
  // carried as a double-double.
  const long double tl = t;
  const long double theta_main =
      0.5L * tl * std::log(tl / 6.283185307179586476925286766559L) - 0.5L * tl;
  const auto theta_hi = static_cast<double>(theta_main);
  const double theta_lo = static_cast<double>(theta_main - theta_hi) - kPi / 8.0 +
                          1.0 / (48.0 * t) + 7.0 / (5760.0 * t * t * t) +
                          31.0 / (80640.0 * std::pow(t, 5));
  double sum = 0.0;
  for (std::size_t n = n_terms; n >= 1; --n) {
    const LogEntry e = log_entry(n);
    double p_hi, p_lo;
    scaled_log(t, e, p_hi, p_lo);
    // two-sum of theta_hi - p_hi
    const double d = theta_hi - p_hi;
    const double bb = d - theta_hi;
    const double err = (theta_hi - (d - bb)) + (-p_hi - bb);
    sum += std::cos(reduce_phase(d, err + theta_lo - p_lo)) * e.inv_sqrt;
  }
  sum *= 2.0;

  const auto& series = remainder_series();
  const double z = 2.0 * p - 1.0;
  const double w = 1.0 / a;  // (t / 2 pi)^(-1/2)
  double rem = 0.0;
  double wk = 1.0;
  for (int k = 0; k < 5; ++k) {
    rem += eval_series(series.c[k], z) * wk;
    wk *= w;
  }
  rem *= std::sqrt(w);  // (t / 2 pi)^(-1/4)
  if (n_terms % 2 == 0) rem = -rem;
  return sum + rem;
}

constexpr std::array<double, 8> kBernoulliOverFactorial = {
    // B_{2k} / (2k)!
    1.0 / 6.0 / 2.0,
    -1.0 / 30.0 / 24.0,
    1.0 / 42.0 / 720.0,
    -1.0 / 30.0 / 40320.0,
    5.0 / 66.0 / 3628800.0,
    -691.0 / 2730.0 / 479001600.0,
    7.0 / 6.0 / 87178291200.0,
    -3617.0 / 510.0 / 20922789888000.0,
};

// Euler-Maclaurin for Re s >= 0, s != 1.
Complex zeta_euler_maclaurin(Complex s) {
  const double sigma = s.real();
  const auto n_terms = static_cast<std::size_t>(
      std::max(20.0, std::ceil(std::abs(s.imag()))));

  const double t = s.imag();
  auto power = [&](std::size_t n) {  // n^(-s)
    const LogEntry e = log_entry(n);
    double p_hi, p_lo;
    scaled_log(t, e, p_hi, p_lo);
    return std::polar(std::exp(-sigma * e.hi), -reduce_phase(p_hi, p_lo));
  };

  Complex sum = 0.0;
  for (std::size_t n = n_terms - 1; n >= 1; --n) sum += power(n);

  const double nd = static_cast<double>(n_terms);
  const Complex n_pow = power(n_terms);
  sum += 0.5 * n_pow;
  sum += n_pow * nd / (s - 1.0);

  Complex poch = s;
  Complex n_scale = n_pow / nd;
  const double inv_n2 = 1.0 / (nd * nd);
  for (std::size_t k = 0; k < kBernoulliOverFactorial.size(); ++k) {
    sum += kBernoulliOverFactorial[k] * poch * n_scale;
    const double j = 2.0 * static_cast<double>(k) + 1.0;
    poch *= (s + j) * (s + j + 1.0);
    n_scale *= inv_n2;
  }
  return sum;
}


}  // namespace

double riemann_siegel_theta(double t) {
  return 0.5 * t * std::log(t / (2.0 * kPi)) - 0.5 * t - kPi / 8.0 +
         1.0 / (48.0 * t) + 7.0 / (5760.0 * t * t * t) +
         31.0 / (80640.0 * std::pow(t, 5));
}

Complex zeta_chi(Complex s) {
  const Complex log_chi = s * std::log(2.0) + (s - 1.0) * std::log(kPi) +
                          log_sin(0.5 * kPi * s) + log_gamma_complex(1.0 - s);
  return std::exp(log_chi);
}

Complex zeta_complex(Complex s) {
  if (s == Complex(1.0, 0.0)) throw PoleError("zeta_complex: pole at s = 1");
  if (!(s.real() >= -10.0 && s.real() <= 40.0 && std::abs(s.imag()) <= 1e5)) {
    std::ostringstream msg;
    msg << "zeta_complex: s = " << s << " outside the supported window";
    throw DomainError(msg.str());
  }
  if (s.real() < 0.0) {
    // Trivial zeros are exact through sin(pi s / 2).
    if (s.imag() == 0.0 && std::fmod(s.real(), 2.0) == 0.0) return 0.0;
    return zeta_chi(s) * zeta_euler_maclaurin(1.0 - s);
  }
  return zeta_euler_maclaurin(s);
}

double hardy_z(double t) {
  if (t >= kRiemannSiegelCutover) return riemann_siegel_z(t);
  // Z(t) = exp(i theta(t)) zeta(1/2 + it) with
  // theta(t) = arg Gamma(1/4 + it/2) - (t/2) log pi; only theta mod 2 pi enters.
  const double theta =
      log_gamma_complex(Complex(0.25, 0.5 * t)).imag() - 0.5 * t * std::log(kPi);
  return (std::polar(1.0, theta) * zeta_complex(Complex(0.5, t))).real();
}

double zeta_critical_abs_sq(double t) {
  if (t < 0.0) t = -t;
  if (t >= kRiemannSiegelCutover) {
    const double z = riemann_siegel_z(t);
    return z * z;
  }
  return std::norm(zeta_complex(Complex(0.5, t)));
}

}  // namespace ladderlab::specfun
