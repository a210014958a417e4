#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include "ladderlab/error.hpp"
#include "ladderlab/specfun.hpp"

namespace ladderlab::specfun {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

void check_pole(Complex s) {
  if (s.imag() == 0.0 && s.real() <= 0.0 && std::floor(s.real()) == s.real()) {
    std::ostringstream msg;
    msg << "gamma: pole at s = " << s.real();
    throw PoleError(msg.str());
  }
}

Complex lanczos_sum(Complex z) {
  Complex acc = kLanczos[0];
  for (std::size_t k = 1; k < kLanczos.size(); ++k) {
    acc += kLanczos[k] / (z + static_cast<double>(k));
  }
  return acc;
}

// Re s >= 1/2.
Complex log_gamma_right(Complex s) {
  const Complex z = s - 1.0;
  const Complex tg = z + kLanczosG + 0.5;
  return 0.5 * std::log(2.0 * kPi) + (z + 0.5) * std::log(tg) - tg +
         std::log(lanczos_sum(z));
}

}  // namespace

Complex log_sin(Complex z) {
  const Complex i(0.0, 1.0);
  if (std::abs(z.imag()) < 20.0) return std::log(std::sin(z));
  if (z.imag() > 0.0) {
    return -i * z - std::log(2.0 * i) + std::log(std::exp(2.0 * i * z) - 1.0);
  }
  return i * z - std::log(2.0 * i) + std::log(1.0 - std::exp(-2.0 * i * z));
}

Complex log_gamma_complex(Complex s) {
  check_pole(s);
  if (s.real() < 0.5) {
    return std::log(kPi) - log_sin(kPi * s) - log_gamma_right(1.0 - s);
  }
  return log_gamma_right(s);
}

Complex gamma_complex(Complex s) {
  check_pole(s);
  if (s.real() < 0.5) {
    // sin(pi s) and Gamma(1 - s) over/underflow separately once |Im s| is large.
    if (std::abs(s.imag()) > 20.0) return std::exp(log_gamma_complex(s));
    return kPi / (std::sin(kPi * s) * gamma_complex(1.0 - s));
  }
  const Complex z = s - 1.0;
  const Complex tg = z + kLanczosG + 0.5;
  return std::sqrt(2.0 * kPi) * std::exp((z + 0.5) * std::log(tg) - tg) * lanczos_sum(z);
}

}  // namespace ladderlab::specfun
