#include "ladderlab/ladder.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

#include "ladderlab/error.hpp"
#include "ladderlab/specfun.hpp"

namespace ladderlab::ladder {

const double kLadderShift = specfun::kEulerGamma - std::log(2.0 * std::numbers::pi);
const double kPhiAtZero = 2.0 * std::numbers::pi * std::exp(-specfun::kEulerGamma);

namespace {

constexpr const char* kCacheVersion = "#ladderlab-cache-v1";
// Target H-mass per panel; the width is also capped at 1.
constexpr double kPanelMass = 4.0;
constexpr double kMinPanel = 0.05;
constexpr double kMaxPanel = 1.0;
// Accuracy of the within-panel completion of H.
constexpr double kLocalTol = 1e-12;

double zeta_sq(double t) { return specfun::zeta_critical_abs_sq(t); }

}  // namespace

double ladder_lhs(double phi) { return phi * (std::log(phi) + kLadderShift); }

double phi_from_h(double h) {
  if (!(h >= 0.0) || !std::isfinite(h)) {
    std::ostringstream msg;
    msg << "phi_from_h: H = " << h << " must be finite and non-negative";
    throw DomainError(msg.str());
  }
  double lo = kPhiAtZero;
  double hi = std::max(kPhiAtZero, h) + 10.0;  // lhs(phi) >= phi beyond ~9.6
  double phi = h > 10.0 ? std::max(lo, h / std::log(h)) : 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    const double r = ladder_lhs(phi) - h;
    if (r == 0.0) return phi;
    if (r > 0.0) hi = phi;
    else lo = phi;
    const double slope = std::log(phi) + kLadderShift + 1.0;
    double next = phi - r / slope;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - phi) <= 4.0 * std::numeric_limits<double>::epsilon() * phi ||
        hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * hi) {
      return next;
    }
    phi = next;
  }
  throw ConvergenceError("phi_from_h: safeguarded Newton did not converge");
}

LadderTable::LadderTable(std::vector<double> t, std::vector<double> h, double tol)
    : t_(std::move(t)), h_(std::move(h)), tol_(tol) {
  if (t_.size() < 2 || t_.size() != h_.size()) {
    throw FormatError("ladder table: need at least two knots with matching columns");
  }
  if (t_.front() != 0.0 || h_.front() != 0.0) {
    throw FormatError("ladder table: first knot must be (0, 0)");
  }
  for (std::size_t i = 1; i < t_.size(); ++i) {
    if (!(t_[i] > t_[i - 1]) || !(h_[i] > h_[i - 1]) || !std::isfinite(h_[i])) {
      std::ostringstream msg;
      msg << "ladder table: knots not strictly increasing at row " << i << " (T = "
          << t_[i] << ")";
      throw FormatError(msg.str());
    }
    if (t_[i] - t_[i - 1] > kMaxPanel * (1.0 + 1e-12)) {
      std::ostringstream msg;
      msg << "ladder table: knot spacing above 1 at row " << i;
      throw FormatError(msg.str());
    }
  }
  inverse_ = numerics::MonotoneCubic(h_, t_);
}

LadderTable LadderTable::build(double t_max, double tol) {
  if (!(t_max >= 1e3 && t_max <= 1e5)) {
    std::ostringstream msg;
    msg << "build_table: t_max = " << t_max << " outside [1e3, 1e5]";
    throw DomainError(msg.str());
  }
  if (!(tol >= 1e-14 && tol <= 1e-6)) {
    std::ostringstream msg;
    msg << "build_table: tol = " << tol << " outside [1e-14, 1e-6]";
    throw DomainError(msg.str());
  }
  std::vector<double> t{0.0};
  std::vector<double> h{0.0};
  t.reserve(static_cast<std::size_t>(t_max * 2.5));
  h.reserve(t.capacity());
  numerics::QuadratureOptions opts;
  opts.abs_floor = 1e-14;
  double width = 0.5;
  while (t.back() < t_max) {
    const double a = t.back();
    double b = std::min(a + width, t_max);
    if (t_max - b < kMinPanel) b = t_max - a <= kMaxPanel ? t_max : t_max - kMinPanel;
    const auto q = numerics::integrate_adaptive(zeta_sq, {a, b}, tol, opts);
    t.push_back(b);
    h.push_back(h.back() + q.value);
    const double density = q.value / (b - a);
    width = density > 0.0 ? std::clamp(kPanelMass / density, kMinPanel, kMaxPanel)
                          : kMaxPanel;
  }
  return LadderTable(std::move(t), std::move(h), tol);
}

void LadderTable::save(const std::string& path) const {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw FormatError("ladder cache: cannot write " + tmp);
    out << kCacheVersion << '\n';
    char buf[64];
    std::snprintf(buf, sizeof buf, "#tol=%.17g\n", tol_);
    out << buf << "T,H\n";
    for (std::size_t i = 0; i < t_.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", t_[i], h_[i]);
      out << buf;
    }
    if (!out) throw FormatError("ladder cache: write failed for " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

LadderTable LadderTable::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("ladder cache: cannot open " + path);
  std::string line;
  if (!std::getline(in, line) || line != kCacheVersion) {
    throw FormatError("ladder cache: " + path + " lacks the " +
                      std::string(kCacheVersion) + " version line");
  }
  double tol = std::numeric_limits<double>::quiet_NaN();
  bool header = false;
  std::vector<double> t;
  std::vector<double> h;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty()) continue;
    if (line[0] == '#') {
      if (line.rfind("#tol=", 0) == 0) tol = std::strtod(line.c_str() + 5, nullptr);
      continue;
    }
    if (!header) {
      if (line != "T,H") throw FormatError("ladder cache: expected header T,H in " + path);
      header = true;
      continue;
    }
    const auto comma = line.find(',');
    char* end_t = nullptr;
    char* end_h = nullptr;
    const double tv = std::strtod(line.c_str(), &end_t);
    const double hv =
        comma == std::string::npos ? 0.0 : std::strtod(line.c_str() + comma + 1, &end_h);
    if (comma == std::string::npos || end_t != line.c_str() + comma ||
        end_h == nullptr || *end_h != '\0') {
      std::ostringstream msg;
      msg << "ladder cache: malformed row " << row << " in " << path;
      throw FormatError(msg.str());
    }
    t.push_back(tv);
    h.push_back(hv);
  }
  if (!header) throw FormatError("ladder cache: missing header in " + path);
  return LadderTable(std::move(t), std::move(h), tol);
}

LadderTable LadderTable::load_or_build(const std::string& path, double t_max, double tol) {
  if (!path.empty() && std::filesystem::exists(path)) {
    auto table = load(path);
    const bool tol_ok = std::isnan(table.tolerance()) || table.tolerance() <= tol;
    if (table.t_max() >= t_max && tol_ok) return table;
  }
  auto table = build(t_max, tol);
  if (!path.empty()) table.save(path);
  return table;
}

std::size_t LadderTable::panel_of(double T) const {
  if (!(T >= 0.0 && T <= t_max())) {
    std::ostringstream msg;
    msg << "ladder: T = " << T << " outside table range [0, " << t_max() << "]";
    throw RangeError(msg.str());
  }
  const auto it = std::upper_bound(t_.begin(), t_.end(), T);
  const auto i = static_cast<std::size_t>(it - t_.begin());
  return i == 0 ? 0 : std::min(i - 1, t_.size() - 2);
}

double LadderTable::h_from_knot(std::size_t i, double T) const {
  if (T == t_[i]) return h_[i];
  numerics::QuadratureOptions opts;
  opts.abs_floor = 1e-14;
  return h_[i] + numerics::integrate_adaptive(zeta_sq, {t_[i], T}, kLocalTol, opts).value;
}

double LadderTable::H(double T) const { return h_from_knot(panel_of(T), T); }

double LadderTable::phi1(double T) const { return phi_from_h(H(T)); }

double LadderTable::omega_unchecked(double T) const {
  return std::log(phi1(T)) + 1.0 + kLadderShift;
}

double LadderTable::phi1_prime(double T) const {
  panel_of(T);
  return zeta_sq(T) / omega_unchecked(T);
}

double LadderTable::omega(double T) const {
  panel_of(T);
  const double z = zeta_sq(T);
  if (z < 1e-8) {
    std::ostringstream msg;
    msg << "omega: |zeta(1/2+iT)|^2 = " << z << " < 1e-8 at T = " << T
        << "; omega is undefined at zeta zeros";
    throw DomainError(msg.str());
  }
  return omega_unchecked(T);
}

double LadderTable::phi1_max() const { return phi_from_h(h_.back()); }

double LadderTable::reverse_iterate(double T) const {
  if (!(T >= kPhiAtZero && T <= phi1_max())) {
    std::ostringstream msg;
    msg << "reverse_iterate: T = " << T << " outside the phi1-range [" << kPhiAtZero
        << ", " << phi1_max() << "] of the table";
    throw RangeError(msg.str());
  }
  const double target = ladder_lhs(T);
  auto it = std::upper_bound(h_.begin(), h_.end(), target);
  std::size_t i = it == h_.begin() ? 0 : static_cast<std::size_t>(it - h_.begin()) - 1;
  i = std::min(i, t_.size() - 2);
  double lo = t_[i];
  double hi = t_[i + 1];
  double x = std::clamp(inverse_(target), lo, hi);
  constexpr double eps = std::numeric_limits<double>::epsilon();
  const double h_tol = 64.0 * eps * std::max(1.0, target);
  for (int iter = 0; iter < 100; ++iter) {
    const double r = h_from_knot(i, x) - target;
    if (std::abs(r) <= h_tol) return x;
    if (r > 0.0) hi = x;
    else lo = x;
    const double slope = zeta_sq(x);
    double next = slope > 0.0 ? x - r / slope : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - x) <= 2.0 * eps * x || hi - lo <= 2.0 * eps * hi) return next;
    x = next;
  }
  throw ConvergenceError("reverse_iterate: safeguarded Newton did not converge");
}

LadderPoint LadderTable::point(double T) const {
  LadderPoint p;
  p.T = T;
  p.phi1 = phi1(T);
  p.omega = std::log(p.phi1) + 1.0 + kLadderShift;
  p.phi1_prime = zeta_sq(T) / p.omega;
  return p;
}

DisconnectedSet disconnected_set(long L, double U, const LadderTable& table) {
  if (!(U > 0.0 && U < std::numbers::pi / 4.0)) {
    std::ostringstream msg;
    msg << "disconnected_set: U = " << U << " violates U in (0, pi/4)";
    throw DomainError(msg.str());
  }
  if (L < 1) throw DomainError("disconnected_set: L must be a positive integer");
  const double a = std::numbers::pi * static_cast<double>(L);
  const double b = a + U;
  const double ra = table.reverse_iterate(a);
  const double rb = table.reverse_iterate(b);
  DisconnectedSet set;
  set.base = numerics::Interval(a, b);
  set.lifted = numerics::Interval(ra, rb);
  set.rho = ra - b;
  set.base_len = U;
  set.lifted_len = rb - ra;
  set.adjacent_len = ra - b;
  return set;
}

}  // namespace ladderlab::ladder
