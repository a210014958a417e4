#include "ladderlab/factorization.hpp"

#include <cmath>
#include <sstream>
#include <vector>

#include "ladderlab/error.hpp"
#include "ladderlab/numerics.hpp"
#include "ladderlab/specfun.hpp"

namespace ladderlab::factorization {

Generator::Generator(int l) : l_(l) {
  if (l < 1 || l > 3) {
    std::ostringstream msg;
    msg << "generator index l = " << l << " must be 1, 2 or 3";
    throw DomainError(msg.str());
  }
}

double Generator::operator()(double t) const {
  switch (l_) {
    case 1: {
      const double s = std::sin(t);
      return s * s;
    }
    case 2: {
      const double c = std::cos(t);
      return c * c;
    }
    default:
      return std::cos(2.0 * t);
  }
}

double Generator::integral(double a, double b) const {
  // sin 2b - sin 2a = 2 cos(a + b) sin(b - a), free of cancellation for small b - a.
  const double ds2 = 2.0 * std::cos(a + b) * std::sin(b - a);
  switch (l_) {
    case 1:
      return 0.5 * (b - a) - 0.25 * ds2;
    case 2:
      return 0.5 * (b - a) + 0.25 * ds2;
    default:
      return 0.5 * ds2;
  }
}

FactorizationTriple mean_value_point(long L, double U, int l,
                                     const ladder::LadderTable& table,
                                     const MeanValueOptions& options) {
  return mean_value_point(ladder::disconnected_set(L, U, table), l, table, options);
}

FactorizationTriple mean_value_point(const ladder::DisconnectedSet& segment, int l,
                                     const ladder::LadderTable& table,
                                     const MeanValueOptions& options) {
  const Generator f(l);
  const auto& lifted = segment.lifted;
  auto h = [&](double t) {
    const auto p = table.point(t);
    return f(p.phi1) * p.phi1_prime;
  };

  numerics::QuadratureOptions qopts;
  qopts.abs_floor = 1e-15;
  qopts.initial_panels = 8;
  const auto q = numerics::integrate_adaptive(h, lifted, options.rel_tol, qopts);
  const double mean = q.value / lifted.width();
  auto g = [&](double t) { return h(t) - mean; };

  FactorizationTriple out;
  out.l = l;
  out.segment = segment;
  out.mean = mean;
  out.mean_error = q.error_estimate / lifted.width();

  for (std::size_t n = options.initial_samples; n <= options.max_samples; n *= 2) {
    const double step = lifted.width() / static_cast<double>(n);
    double prev_t = lifted.lo();
    double prev_g = g(prev_t);
    bool prev_ok = specfun::zeta_critical_abs_sq(prev_t) >= options.zero_guard;
    for (std::size_t j = 1; j <= n; ++j) {
      const double t = j == n ? lifted.hi() : lifted.lo() + step * static_cast<double>(j);
      const double gt = g(t);
      const bool ok = specfun::zeta_critical_abs_sq(t) >= options.zero_guard;
      if (prev_ok && ok && (prev_g <= 0.0) != (gt <= 0.0)) {
        out.d = numerics::find_root_bracketed(g, {prev_t, t}, 0.0);
        out.alpha1 = out.d;
        out.alpha0 = table.phi1(out.d);
        out.scan_samples = n;
        return out;
      }
      if (prev_ok && gt == 0.0 && ok) {
        out.d = t;
        out.alpha1 = t;
        out.alpha0 = table.phi1(t);
        out.scan_samples = n;
        return out;
      }
      prev_t = t;
      prev_g = gt;
      prev_ok = ok;
    }
  }
  std::ostringstream msg;
  msg.precision(17);
  msg << "mean_value_point: no sign change of h - mean on [" << lifted.lo() << ", "
      << lifted.hi() << "] for l = " << l << " with " << options.max_samples
      << " samples; refine the scan or the quadrature";
  throw ResolutionError(msg.str());
}

double check_exact_factorization(const FactorizationTriple& triple,
                                 const ladder::LadderTable& table) {
  const Generator f(triple.l);
  const auto& base = triple.segment.base;
  const double exact = f.integral(base.lo(), base.hi());
  const double factored =
      f(triple.alpha0) * table.phi1_prime(triple.alpha1) * triple.segment.lifted_len;
  return std::abs(exact - factored) / std::abs(exact);
}

}  // namespace ladderlab::factorization
