#include "ladderlab/numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>

#include "ladderlab/error.hpp"

namespace ladderlab::numerics {

Interval::Interval(double lo, double hi) : lo_(lo), hi_(hi) {
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "invalid interval [" << lo << ", " << hi << "]";
    throw DomainError(msg.str());
  }
}

namespace {

// Abscissae and weights as tabulated in QUADPACK (Fullerton, 80 digits).
constexpr std::array<double, 11> kXgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.0};
constexpr std::array<double, 11> kWgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077958109831074, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
constexpr std::array<double, 5> kWg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

struct Segment {
  double a;
  double b;
  double value;
  double error;
  bool operator<(const Segment& other) const { return error < other.error; }
};

}  // namespace

QuadratureResult gauss_kronrod21(RealFunction f, double a, double b) {
  constexpr double kEps = std::numeric_limits<double>::epsilon();
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double abs_half = std::abs(half);

  std::array<double, 10> f1{};
  std::array<double, 10> f2{};
  const double fc = f(center);
  double res_g = 0.0;
  double res_k = kWgk[10] * fc;
  double res_abs = std::abs(res_k);
  for (int j = 0; j < 5; ++j) {
    const int jtw = 2 * j + 1;
    const double dx = half * kXgk[jtw];
    const double v1 = f(center - dx);
    const double v2 = f(center + dx);
    f1[jtw] = v1;
    f2[jtw] = v2;
    res_g += kWg[j] * (v1 + v2);
    res_k += kWgk[jtw] * (v1 + v2);
    res_abs += kWgk[jtw] * (std::abs(v1) + std::abs(v2));
  }
  for (int j = 0; j < 5; ++j) {
    const int jtwm1 = 2 * j;
    const double dx = half * kXgk[jtwm1];
    const double v1 = f(center - dx);
    const double v2 = f(center + dx);
    f1[jtwm1] = v1;
    f2[jtwm1] = v2;
    res_k += kWgk[jtwm1] * (v1 + v2);
    res_abs += kWgk[jtwm1] * (std::abs(v1) + std::abs(v2));
  }
  const double mean = 0.5 * res_k;
  double res_asc = kWgk[10] * std::abs(fc - mean);
  for (int j = 0; j < 10; ++j) {
    res_asc += kWgk[j] * (std::abs(f1[j] - mean) + std::abs(f2[j] - mean));
  }

  QuadratureResult out;
  out.value = res_k * half;
  res_abs *= abs_half;
  res_asc *= abs_half;
  double err = std::abs((res_k - res_g) * half);
  if (res_asc != 0.0 && err != 0.0) {
    err = res_asc * std::min(1.0, std::pow(200.0 * err / res_asc, 1.5));
  }
  if (res_abs > std::numeric_limits<double>::min() / (50.0 * kEps)) {
    err = std::max(50.0 * kEps * res_abs, err);
  }
  out.error_estimate = err;
  out.evaluations = 21;
  return out;
}

QuadratureResult integrate_adaptive(RealFunction f, const Interval& iv,
                                    double rel_tol,
                                    const QuadratureOptions& options) {
  if (!(rel_tol >= 1e-14 && rel_tol <= 1e-2)) {
    throw DomainError("integrate_adaptive: rel_tol must lie in [1e-14, 1e-2]");
  }
  const std::size_t panels = std::max<std::size_t>(1, options.initial_panels);
  std::priority_queue<Segment> heap;
  double area = 0.0;
  double err_sum = 0.0;
  std::size_t evaluations = 0;
  const double step = iv.width() / static_cast<double>(panels);
  for (std::size_t i = 0; i < panels; ++i) {
    const double a = iv.lo() + step * static_cast<double>(i);
    const double b = (i + 1 == panels) ? iv.hi() : a + step;
    const QuadratureResult r = gauss_kronrod21(f, a, b);
    evaluations += r.evaluations;
    area += r.value;
    err_sum += r.error_estimate;
    heap.push({a, b, r.value, r.error_estimate});
  }

  auto bound = [&] { return std::max(rel_tol * std::abs(area), options.abs_floor); };
  std::size_t subdivisions = panels;
  while (err_sum > bound()) {
    const Segment worst = heap.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (subdivisions >= options.max_subdivisions || !(worst.a < mid) ||
        !(mid < worst.b)) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "integrate_adaptive: no convergence on [" << iv.lo() << ", "
          << iv.hi() << "], error " << err_sum << " > bound " << bound()
          << "; worst subinterval [" << worst.a << ", " << worst.b
          << "] with error " << worst.error;
      throw QuadratureError(msg.str(), worst.a, worst.b, worst.error);
    }
    heap.pop();
    const QuadratureResult left = gauss_kronrod21(f, worst.a, mid);
    const QuadratureResult right = gauss_kronrod21(f, mid, worst.b);
    evaluations += left.evaluations + right.evaluations;
    area += left.value + right.value - worst.value;
    err_sum += left.error_estimate + right.error_estimate - worst.error;
    heap.push({worst.a, mid, left.value, left.error_estimate});
    heap.push({mid, worst.b, right.value, right.error_estimate});
    ++subdivisions;
  }

  // Re-sum from the segment list to shed the drift of incremental updates.
  QuadratureResult out;
  out.evaluations = evaluations;
  double value = 0.0;
  double error = 0.0;
  while (!heap.empty()) {
    value += heap.top().value;
    error += heap.top().error;
    heap.pop();
  }
  out.value = value;
  out.error_estimate = error;
  return out;
}

double find_root_bracketed(RealFunction g, const Interval& iv, double tol,
                           int max_iterations) {
  constexpr double kEps = std::numeric_limits<double>::epsilon();
  double a = iv.lo();
  double b = iv.hi();
  double fa = g(a);
  double fb = g(b);
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if ((fa > 0.0) == (fb > 0.0)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "find_root_bracketed: no sign change on [" << a << ", " << b
        << "] (g = " << fa << ", " << fb << ")";
    throw BracketError(msg.str());
  }
  double c = b;
  double fc = fb;
  double d = b - a;
  double e = d;
  for (int iter = 0; iter < max_iterations; ++iter) {
    if ((fb > 0.0) == (fc > 0.0)) {
      c = a;
      fc = fa;
      d = b - a;
      e = d;
    }
    if (std::abs(fc) < std::abs(fb)) {
      a = b;
      b = c;
      c = a;
      fa = fb;
      fb = fc;
      fc = fa;
    }
    const double tol1 = 2.0 * kEps * std::abs(b) + 0.5 * tol;
    const double xm = 0.5 * (c - b);
    if (std::abs(xm) <= tol1 || fb == 0.0) {
      return std::clamp(b, iv.lo(), iv.hi());
    }
    if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
      // Inverse quadratic interpolation, or secant when only two points.
      const double s = fb / fa;
      double p;
      double q;
      if (a == c) {
        p = 2.0 * xm * s;
        q = 1.0 - s;
      } else {
        const double qq = fa / fc;
        const double r = fb / fc;
        p = s * (2.0 * xm * qq * (qq - r) - (b - a) * (r - 1.0));
        q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0) q = -q;
      p = std::abs(p);
      const double min1 = 3.0 * xm * q - std::abs(tol1 * q);
      const double min2 = std::abs(e * q);
      if (2.0 * p < std::min(min1, min2)) {
        e = d;
        d = p / q;
      } else {
        d = xm;
        e = d;
      }
    } else {
      d = xm;
      e = d;
    }
    a = b;
    fa = fb;
    b += (std::abs(d) > tol1) ? d : (xm > 0.0 ? tol1 : -tol1);
    fb = g(b);
  }
  throw ConvergenceError("find_root_bracketed: iteration limit reached");
}

double solve_increasing(RealFunction g, double target, const Interval& iv,
                        double tol) {
  const double g_lo = g(iv.lo());
  const double g_hi = g(iv.hi());
  if (target < g_lo || target > g_hi) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "solve_increasing: target " << target << " outside range [" << g_lo
        << ", " << g_hi << "]";
    throw RangeError(msg.str());
  }
  if (target == g_lo) return iv.lo();
  if (target == g_hi) return iv.hi();
  return find_root_bracketed([&](double x) { return g(x) - target; }, iv, tol);
}

MonotoneCubic::MonotoneCubic(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
  const std::size_t n = x_.size();
  if (n < 2 || y_.size() != n) {
    throw DomainError("MonotoneCubic: need at least two matching points");
  }
  std::vector<double> delta(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double h = x_[i + 1] - x_[i];
    if (!(h > 0.0) || y_[i + 1] < y_[i]) {
      throw DomainError("MonotoneCubic: data must be increasing");
    }
    delta[i] = (y_[i + 1] - y_[i]) / h;
  }
  slope_.assign(n, 0.0);
  slope_.front() = delta.front();
  slope_.back() = delta.back();
  for (std::size_t i = 1; i + 1 < n; ++i) {
    slope_[i] = (delta[i - 1] * delta[i] > 0.0) ? 0.5 * (delta[i - 1] + delta[i]) : 0.0;
  }
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (delta[i] == 0.0) {
      slope_[i] = 0.0;
      slope_[i + 1] = 0.0;
      continue;
    }
    const double alpha = slope_[i] / delta[i];
    const double beta = slope_[i + 1] / delta[i];
    const double r2 = alpha * alpha + beta * beta;
    if (r2 > 9.0) {
      const double tau = 3.0 / std::sqrt(r2);
      slope_[i] = tau * alpha * delta[i];
      slope_[i + 1] = tau * beta * delta[i];
    }
  }
}

double MonotoneCubic::operator()(double x) const {
  if (x <= x_.front()) return y_.front();
  if (x >= x_.back()) return y_.back();
  const auto it = std::upper_bound(x_.begin(), x_.end(), x);
  const std::size_t i = static_cast<std::size_t>(it - x_.begin()) - 1;
  const double h = x_[i + 1] - x_[i];
  const double t = (x - x_[i]) / h;
  const double t2 = t * t;
  const double t3 = t2 * t;
  const double h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
  const double h10 = t3 - 2.0 * t2 + t;
  const double h01 = -2.0 * t3 + 3.0 * t2;
  const double h11 = t3 - t2;
  return h00 * y_[i] + h10 * h * slope_[i] + h01 * y_[i + 1] + h11 * h * slope_[i + 1];
}

}  // namespace ladderlab::numerics
