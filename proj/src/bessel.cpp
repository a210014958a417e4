#include <cmath>
#include <cstdlib>
#include <numbers>
#include <sstream>

#include "ladderlab/error.hpp"
#include "ladderlab/specfun.hpp"

namespace ladderlab::specfun {

namespace {

constexpr double kPi = std::numbers::pi;
// Cancellation in the series costs about e^r / (2 pi r) ulps; the smallest
// Hankel term is about e^(-2r).
constexpr double kSeriesRadius = 17.0;

Complex bessel_series(int p, Complex z) {
  const Complex q = -0.25 * z * z;
  double factorial_p = 1.0;
  for (int i = 2; i <= p; ++i) factorial_p *= i;
  Complex term = 1.0 / factorial_p;
  Complex sum = term;
  for (int k = 1; k < 500; ++k) {
    term *= q / (static_cast<double>(k) * static_cast<double>(k + p));
    sum += term;
    if (std::abs(term) <= 1e-17 * std::abs(sum) && k > std::abs(z)) break;
  }
  return std::pow(0.5 * z, p) * sum;
}

// Hankel expansion, Re z >= 0 and |z| > kSeriesRadius.
Complex bessel_asymptotic(int p, Complex z) {
  const double mu = 4.0 * p * p;
  Complex pp = 0.0;
  Complex qq = 0.0;
  Complex term = 1.0;  // a_k(p) / z^k
  double last = std::abs(term);
  for (int k = 0; k < 60; ++k) {
    const int m = k % 4;
    if (m == 0) pp += term;
    else if (m == 1) qq += term;
    else if (m == 2) pp -= term;
    else qq -= term;
    const double odd = 2.0 * k + 1.0;
    const Complex next = term * (mu - odd * odd) / (static_cast<double>(k + 1) * 8.0 * z);
    const double size = std::abs(next);
    if (size > last || size < 1e-17 * std::abs(pp)) break;
    last = size;
    term = next;
  }
  const Complex omega = z - (0.5 * p + 0.25) * kPi;
  return std::sqrt(2.0 / (kPi * z)) * (pp * std::cos(omega) - qq * std::sin(omega));
}

}  // namespace

Complex bessel_j(int p, Complex s) {
  const double r = std::abs(s);
  if (!(r <= 1e3)) {
    std::ostringstream msg;
    msg << "bessel_j: |s| = " << r << " exceeds the supported window 1e3";
    throw DomainError(msg.str());
  }
  const int order = std::abs(p);
  const double order_sign = (p < 0 && order % 2 == 1) ? -1.0 : 1.0;
  if (r <= kSeriesRadius || order >= r) return order_sign * bessel_series(order, s);
  auto hankel = [&s](int q) {
    if (s.real() >= 0.0) return bessel_asymptotic(q, s);
    return (q % 2 == 1 ? -1.0 : 1.0) * bessel_asymptotic(q, -s);
  };
  if (order <= 1) return order_sign * hankel(order);
  // Forward recurrence is stable for order < |s|.
  Complex prev = hankel(0);
  Complex cur = hankel(1);
  for (int n = 1; n < order; ++n) {
    const Complex next = 2.0 * n / s * cur - prev;
    prev = cur;
    cur = next;
  }
  return order_sign * cur;
}

}  // namespace ladderlab::specfun
