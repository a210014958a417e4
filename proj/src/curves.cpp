#include "ladderlab/curves.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <optional>
#include <sstream>

#include "ladderlab/error.hpp"
#include "ladderlab/numerics.hpp"

namespace ladderlab::curves {

namespace {

constexpr std::array<double, 3> kExponent = {2.0, 2.0, 1.0};
constexpr double kSeedTol = 1e-10;
// Local minimum of Gamma on the positive axis.
constexpr double kGammaMinX = 1.4616321449683623;
constexpr double kGammaMin = 0.8856031944108887;

void check_l(int l) {
  if (l < 1 || l > 3) {
    std::ostringstream msg;
    msg << "component index l = " << l << " must be 1, 2 or 3";
    throw DomainError(msg.str());
  }
}

double scale(double c) { return std::max(1.0, c); }

// First sign change of g on the grid lo, lo + step, ..., hi, refined by Brent.
std::optional<double> scan_line(const std::function<double(double)>& g, double lo,
                                double hi, double step) {
  double a = lo;
  double ga = g(a);
  if (ga == 0.0) return a;
  const auto n = static_cast<std::size_t>(std::ceil((hi - lo) / step));
  for (std::size_t j = 1; j <= n; ++j) {
    const double b = std::min(hi, lo + step * static_cast<double>(j));
    const double gb = g(b);
    if (gb == 0.0) return b;
    if ((ga < 0.0) != (gb < 0.0)) {
      return numerics::find_root_bracketed(g, {a, b}, 0.0);
    }
    a = b;
    ga = gb;
  }
  return std::nullopt;
}

// Outward scan from center in both directions.
std::optional<double> scan_outward(const std::function<double(double)>& g, double center,
                                   double reach, double step) {
  double g0 = g(center);
  if (g0 == 0.0) return center;
  double up_a = center, up_ga = g0, dn_b = center, dn_gb = g0;
  const auto n = static_cast<std::size_t>(std::ceil(reach / step));
  for (std::size_t j = 1; j <= n; ++j) {
    const double up_b = center + step * static_cast<double>(j);
    const double up_gb = g(up_b);
    if ((up_ga < 0.0) != (up_gb < 0.0) || up_gb == 0.0) {
      return numerics::find_root_bracketed(g, {up_a, up_b}, 0.0);
    }
    up_a = up_b;
    up_ga = up_gb;
    const double dn_a = center - step * static_cast<double>(j);
    const double dn_ga = g(dn_a);
    if ((dn_ga < 0.0) != (dn_gb < 0.0) || dn_ga == 0.0) {
      return numerics::find_root_bracketed(g, {dn_a, dn_b}, 0.0);
    }
    dn_b = dn_a;
    dn_gb = dn_ga;
  }
  return std::nullopt;
}

Complex derivative(const LevelFamily& family, Complex s, double h) {
  return (family.F(s + h) - family.F(s - h)) / (2.0 * h);
}

// Gradient of |F|^2 as the complex number d/dx + i d/dy.
Complex gradient(const LevelFamily& family, Complex F, Complex s, double h) {
  return 2.0 * F * std::conj(derivative(family, s, h));
}

struct Correction {
  Complex s;
  int iterations = 0;
  bool converged = false;
};

Correction newton(const LevelFamily& family, double c, Complex s, double h,
                  int max_iterations, double max_move) {
  const double tight = 1e-12 * scale(c);
  const double loose = 1e-10 * scale(c);
  Correction out{s, 0, false};
  for (int it = 0; it <= max_iterations; ++it) {
    const Complex F = family.F(out.s);
    const double m = std::abs(F);
    const double r = m - c;
    if (std::abs(r) <= tight) {
      out.converged = true;
      return out;
    }
    if (it == max_iterations) break;
    const Complex G = gradient(family, F, out.s, h);
    const double g2 = std::norm(G);
    if (!(g2 > 0.0) || !std::isfinite(g2)) break;
    Complex delta = -(m * m - c * c) * G / g2;
    if (std::abs(delta) > max_move) delta *= max_move / std::abs(delta);
    out.s += delta;
    out.iterations = it + 1;
    if (std::abs(delta) <= 1e-15 * std::max(1.0, std::abs(out.s))) {
      out.converged = std::abs(family.modulus(out.s) - c) <= loose;
      return out;
    }
  }
  out.converged = std::abs(family.modulus(out.s) - c) <= loose;
  return out;
}

Complex unit_tangent(const LevelFamily& family, Complex s, double h) {
  const Complex F = family.F(s);
  const Complex G = gradient(family, F, s, h);
  const double g = std::abs(G);
  if (!(g > 0.0) || !std::isfinite(g)) {
    std::ostringstream msg;
    msg << "trace: vanishing gradient of |F|^2 at " << s << " for family "
        << family.name();
    throw SingularityError(msg.str());
  }
  return Complex(0.0, 1.0) * G / g;
}

double segment_distance(Complex p, Complex a, Complex b) {
  const Complex ab = b - a;
  const double len2 = std::norm(ab);
  if (len2 == 0.0) return std::abs(p - a);
  const double t = std::clamp(((p - a) * std::conj(ab)).real() / len2, 0.0, 1.0);
  return std::abs(p - (a + t * ab));
}

Complex point_at(const LevelCurve& curve, double a) {
  const auto& pts = curve.points;
  const auto& arc = curve.arc;
  if (a <= 0.0 || pts.size() == 1) return pts.front();
  if (a >= arc.back()) {
    if (!curve.closed) return pts.back();
    const double closing = std::abs(pts.front() - pts.back());
    const double t = closing > 0.0 ? (a - arc.back()) / closing : 0.0;
    return pts.back() + std::min(1.0, t) * (pts.front() - pts.back());
  }
  const auto it = std::upper_bound(arc.begin(), arc.end(), a);
  const auto j = static_cast<std::size_t>(it - arc.begin());
  const double seg = arc[j] - arc[j - 1];
  const double t = seg > 0.0 ? (a - arc[j - 1]) / seg : 0.0;
  return pts[j - 1] + t * (pts[j] - pts[j - 1]);
}

Complex reproject(const LevelCurve& curve, Complex s) {
  const auto r = newton(curve.family, curve.level, s, 1e-6, 30, 0.05);
  if (!r.converged || !on_level(curve.family, curve.level, r.s)) {
    std::ostringstream msg;
    msg << "sample: re-correction failed near " << s << " on family "
        << curve.family.name();
    throw ConvergenceError(msg.str());
  }
  return r.s;
}

}  // namespace

LevelFamily::LevelFamily(int n, int l, const FamilyParams& params) : n_(n), l_(l) {
  check_l(l);
  if (n < 1 || n > 7) {
    std::ostringstream msg;
    msg << "family index n = " << n << " must lie in 1..7";
    throw DomainError(msg.str());
  }
  const auto i = static_cast<std::size_t>(l - 1);
  if (n == 4) {
    int_param_ = params.n[i];
    if (int_param_ < 1) {
      std::ostringstream msg;
      msg << "power family: n_" << l << " = " << int_param_ << " must be a natural number";
      throw ConfigError(msg.str());
    }
  } else if (n == 6) {
    int_param_ = params.p[i];
  } else if (n == 7) {
    k_squared_ = params.ksq[i];
    specfun::EllipticModulus::from_k_squared(k_squared_);
  }
}

std::string LevelFamily::name() const {
  switch (n_) {
    case 1: return "zeta_sq";
    case 2: return "zeta";
    case 3: return "cos";
    case 4: return "power";
    case 5: return "gamma_reciprocal";
    case 6: return "bessel";
    default: return l_ == 1 ? "jacobi_sn" : l_ == 2 ? "jacobi_cn" : "jacobi_dn";
  }
}

Complex LevelFamily::F(Complex s) const {
  switch (n_) {
    case 1: {
      const Complex z = specfun::zeta_complex(s);
      return z * z;
    }
    case 2: return specfun::zeta_complex(s);
    case 3: return std::cos(s);
    case 4: return s;
    case 5: return specfun::gamma_complex(s);
    case 6: return specfun::bessel_j(int_param_, s);
    default: {
      const auto k = specfun::EllipticModulus::from_k_squared(k_squared_);
      const auto v = specfun::jacobi_sncndn(s, k);
      return l_ == 1 ? v.sn : l_ == 2 ? v.cn : v.dn;
    }
  }
}

LevelAssignment LevelAssignment::from_alphas(const Alphas& alphas,
                                             const FamilyParams& params) {
  LevelAssignment out;
  out.alphas_ = alphas;
  out.params_ = params;
  const std::array<double, 3> t = {std::pow(std::sin(alphas.alpha0[0]), 2),
                                   std::pow(std::cos(alphas.alpha0[1]), 2),
                                   std::cos(2.0 * alphas.alpha0[2])};
  for (std::size_t i = 0; i < 3; ++i) {
    if (!(t[i] > 0.0)) {
      std::ostringstream msg;
      msg << "level assignment: generator value t_" << i + 1 << " = " << t[i]
          << " is not positive; U must lie in (0, pi/4)";
      throw ConfigError(msg.str());
    }
    const double e = kExponent[i];
    const Complex z = specfun::zeta_complex(Complex(0.5, alphas.alpha1[i]));
    out.c_[0][i] = std::norm(z);
    const double root = std::pow(t[i], 1.0 / e);
    out.c_[1][i] = root;
    out.c_[2][i] = root;
    out.c_[3][i] = std::pow(t[i], 1.0 / (e * params.n[i]));
    out.c_[4][i] = 1.0 / root;
    out.c_[5][i] = root;
    out.c_[6][i] = root;
  }
  return out;
}

double LevelAssignment::level(int n, int l) const {
  check_l(l);
  if (n < 1 || n > 7) throw DomainError("level: family index must lie in 1..7");
  return c_[static_cast<std::size_t>(n - 1)][static_cast<std::size_t>(l - 1)];
}

double membership_residual(const LevelFamily& family, double level, Complex s) {
  return std::abs(family.modulus(s) - level);
}

bool on_level(const LevelFamily& family, double level, Complex s, double tol) {
  return membership_residual(family, level, s) <= tol * scale(level);
}

Complex find_seed(const LevelFamily& family, double c, double alpha1) {
  if (!(c > 0.0) || !std::isfinite(c)) {
    std::ostringstream msg;
    msg << "find_seed: level c = " << c << " must be positive";
    throw DomainError(msg.str());
  }
  const LevelFamily& f = family;
  auto along_real = [&](double x) { return f.modulus(Complex(x, 0.0)) - c; };
  auto along_imag = [&](double y) { return f.modulus(Complex(0.0, y)) - c; };
  std::optional<Complex> seed;
  std::string region;

  switch (f.n()) {
    case 1: {
      if (!(alpha1 > 0.0)) throw DomainError("find_seed: family 1 needs alpha1 > 0");
      seed = Complex(0.5, alpha1);
      region = "1/2 + i alpha1";
      break;
    }
    case 2: {
      if (!(alpha1 > 0.0)) throw DomainError("find_seed: family 2 needs alpha1 > 0");
      auto g = [&](double t) { return f.modulus(Complex(0.5, t)) - c; };
      if (auto t = scan_outward(g, alpha1, 20.0, 0.005)) seed = Complex(0.5, *t);
      region = "critical line within 20 of alpha1";
      break;
    }
    case 3: {
      seed = c <= 1.0 ? Complex(std::acos(c), 0.0) : Complex(0.0, std::acosh(c));
      break;
    }
    case 4: {
      seed = Complex(c, 0.0);
      break;
    }
    case 5: {
      constexpr double kXMax = 30.0;
      if (c >= 1.0) {
        if (specfun::gamma_complex(kXMax).real() >= c) {
          seed = Complex(numerics::find_root_bracketed(along_real, {2.0, kXMax}, 0.0), 0.0);
        } else {
          seed = Complex(numerics::find_root_bracketed(along_real, {1e-300, 1.0}, 0.0), 0.0);
        }
      } else if (c >= kGammaMin) {
        seed = Complex(numerics::find_root_bracketed(along_real, {kGammaMinX, 2.0}, 0.0), 0.0);
      } else {
        auto g = [&](double y) { return f.modulus(Complex(2.0, y)) - c; };
        if (auto y = scan_line(g, 0.0, 60.0, 0.05)) seed = Complex(2.0, *y);
        region = "vertical line Re s = 2, Im s in [0, 60]";
      }
      break;
    }
    case 6: {
      if (auto x = scan_line(along_real, 0.0, 40.0, 0.02)) {
        seed = Complex(*x, 0.0);
      } else if (auto y = scan_line(along_imag, 0.0, 40.0, 0.02)) {
        seed = Complex(0.0, *y);
      }
      region = "real axis [0, 40] and imaginary axis [0, 40]";
      break;
    }
    default: {
      const auto k = specfun::EllipticModulus::from_k_squared(f.k_squared());
      const double big_k = specfun::elliptic_k(k);
      const double big_kp = specfun::elliptic_k_prime(k);
      if (auto x = scan_line(along_real, 0.0, big_k, big_k / 512.0)) {
        seed = Complex(*x, 0.0);
        break;
      }
      constexpr int kRows = 32;
      for (int j = 1; j <= kRows && !seed; ++j) {
        const double y = 0.5 * big_kp * j / kRows;
        auto row = [&](double x) { return f.modulus(Complex(x, y)) - c; };
        if (auto x = scan_line(row, 0.0, big_k, big_k / 256.0)) seed = Complex(*x, y);
      }
      if (!seed) {
        std::ostringstream msg;
        msg << "family 7 (" << f.name() << ", l = " << f.l() << "): level " << c
            << " not attained on [0, K] x [0, K'/2] with k^2 = " << f.k_squared();
        if (f.l() == 3) {
          msg << "; dn ranges over [k', 1] on the real segment, so choose k_3^2 > "
              << 1.0 - c * c;
        }
        throw ConfigError(msg.str());
      }
      break;
    }
  }
  if (!seed) {
    std::ostringstream msg;
    msg << "find_seed: level " << c << " of family " << f.n() << " (" << f.name()
        << ", l = " << f.l() << ") not found on " << region;
    throw SeedNotFoundError(msg.str());
  }
  if (membership_residual(f, c, *seed) > kSeedTol * scale(c)) {
    const auto r = newton(f, c, *seed, 1e-6, 30, 0.05);
    if (!r.converged || membership_residual(f, c, r.s) > kSeedTol * scale(c)) {
      std::ostringstream msg;
      msg << "find_seed: could not polish seed " << *seed << " for family " << f.name();
      throw SeedNotFoundError(msg.str());
    }
    seed = r.s;
  }
  return *seed;
}

Complex correct(const LevelFamily& family, double level, Complex s, double fd_step) {
  const auto r = newton(family, level, s, fd_step, 30, 0.05);
  if (!r.converged) {
    std::ostringstream msg;
    msg << "correct: Newton projection did not converge from " << s;
    throw ConvergenceError(msg.str());
  }
  return r.s;
}

Complex unit_normal(const LevelFamily& family, Complex s, double fd_step) {
  return Complex(0.0, -1.0) * unit_tangent(family, s, fd_step);
}

double LevelCurve::length() const {
  if (arc.empty()) return 0.0;
  return arc.back() + (closed ? std::abs(points.front() - points.back()) : 0.0);
}

LevelCurve trace(const LevelFamily& family, double level, Complex seed,
                 const TraceOptions& opt) {
  LevelCurve curve;
  curve.family = family;
  curve.level = level;
  if (!on_level(family, level, seed)) seed = correct(family, level, seed, opt.fd_step);
  curve.seed = seed;
  curve.points.push_back(seed);
  curve.arc.push_back(0.0);

  const Complex seed_tangent = unit_tangent(family, seed, opt.fd_step);
  Complex tangent = seed_tangent;
  Complex s = seed;
  double h = std::clamp(opt.h_init, opt.h_min, opt.h_max);
  double travelled = 0.0;

  while (true) {
    if (travelled >= opt.max_arclen) {
      curve.stop_reason = "arclen";
      break;
    }
    if (curve.points.size() >= opt.max_points) {
      curve.stop_reason = "max_points";
      break;
    }
    Correction r;
    Complex next_tangent;
    bool accepted = false;
    try {
      r = newton(family, level, s + h * tangent, opt.fd_step, 8, 0.5 * h);
      if (r.converged) {
        const double moved = std::abs(r.s - s);
        next_tangent = unit_tangent(family, r.s, opt.fd_step);
        if ((next_tangent * std::conj(tangent)).real() < 0.0) next_tangent = -next_tangent;
        const double turn = (next_tangent * std::conj(tangent)).real();
        accepted = moved > 0.3 * h && moved < 2.0 * h && turn > 0.9;
      }
    } catch (const DomainError&) {
      curve.stop_reason = "domain";
      break;
    } catch (const PoleError&) {
      curve.stop_reason = "domain";
      break;
    }
    if (!accepted) {
      h *= 0.5;
      if (h < opt.h_min) {
        std::ostringstream msg;
        msg << "trace: step below " << opt.h_min << " at " << s << " on family "
            << family.name() << " (l = " << family.l() << "), likely near a critical "
            << "point of |F|";
        throw SingularityError(msg.str());
      }
      continue;
    }
    if (travelled > 3.0 * h && segment_distance(seed, s, r.s) <= 0.5 * h &&
        (next_tangent * std::conj(seed_tangent)).real() > 0.0) {
      curve.closed = true;
      curve.stop_reason = "closed";
      break;
    }
    travelled += std::abs(r.s - s);
    curve.points.push_back(r.s);
    curve.arc.push_back(travelled);
    const double turn = (next_tangent * std::conj(tangent)).real();
    s = r.s;
    tangent = next_tangent;
    if (r.iterations <= 3 && turn > 0.998) h = std::min(1.5 * h, opt.h_max);
  }
  return curve;
}

std::vector<Complex> sample(const LevelCurve& curve, std::size_t m) {
  std::vector<Complex> out;
  if (m == 0) return out;
  out.push_back(curve.seed);
  const double total = curve.length();
  for (std::size_t j = 1; j < m; ++j) {
    const double a = total * static_cast<double>(j) / static_cast<double>(m);
    out.push_back(reproject(curve, point_at(curve, a)));
  }
  return out;
}

std::vector<Complex> sample_random(const LevelCurve& curve, std::size_t m,
                                   std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, curve.length());
  std::vector<Complex> out;
  out.reserve(m);
  for (std::size_t j = 0; j < m; ++j) out.push_back(reproject(curve, point_at(curve, u(rng))));
  return out;
}

void write_csv(const LevelCurve& curve, const std::string& path) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(path);
  if (!out) throw FormatError("write_csv: cannot open " + path);
  out << "re,im,abs_F,level\n";
  char buf[128];
  for (const auto& s : curve.points) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n", s.real(), s.imag(),
                  curve.family.modulus(s), curve.level);
    out << buf;
  }
}

}  // namespace ladderlab::curves
