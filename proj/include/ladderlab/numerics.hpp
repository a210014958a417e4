#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <type_traits>
#include <utility>
#include <vector>

namespace ladderlab::numerics {

// Non-owning reference to a callable double(double). Cheaper than
// std::function in the inner loops of the ladder construction.
class RealFunction {
 public:
  template <typename F,
            typename = std::enable_if_t<
                !std::is_same_v<std::decay_t<F>, RealFunction> &&
                !std::is_function_v<std::remove_reference_t<F>> &&
                !std::is_pointer_v<std::decay_t<F>> &&
                std::is_invocable_r_v<double, F&, double>>>
  RealFunction(F&& f) noexcept  // NOLINT(google-explicit-constructor)
      : object_(const_cast<void*>(static_cast<const void*>(&f))),
        call_([](void* obj, double x) -> double {
          return (*static_cast<std::remove_reference_t<F>*>(obj))(x);
        }) {}

  RealFunction(double (*fn)(double)) noexcept  // NOLINT(google-explicit-constructor)
      : object_(reinterpret_cast<void*>(fn)),
        call_([](void* obj, double x) -> double {
          return reinterpret_cast<double (*)(double)>(obj)(x);
        }) {}

  double operator()(double x) const { return call_(object_, x); }

 private:
  void* object_;
  double (*call_)(void*, double);
};

// Closed interval [lo, hi] with lo < hi, both finite.
class Interval {
 public:
  Interval(double lo, double hi);

  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }
  double width() const noexcept { return hi_ - lo_; }
  double midpoint() const noexcept { return 0.5 * (lo_ + hi_); }
  bool contains(double x) const noexcept { return lo_ <= x && x <= hi_; }

 private:
  double lo_;
  double hi_;
};

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  std::size_t evaluations = 0;
};

struct QuadratureOptions {
  // Absolute accuracy floor for integrals whose value may be near zero.
  double abs_floor = 1e-12;
  std::size_t max_subdivisions = 20000;
  // Number of equal panels the interval is cut into before adaptation.
  std::size_t initial_panels = 1;
};

// Globally adaptive 10/21-point Gauss-Kronrod quadrature. Converges when the
// summed error estimate is at most max(rel_tol*|value|, abs_floor); throws
// QuadratureError carrying the worst subinterval otherwise. rel_tol must lie
// in [1e-14, 1e-2].
QuadratureResult integrate_adaptive(RealFunction f, const Interval& iv,
                                    double rel_tol,
                                    const QuadratureOptions& options = {});

// Single application of the 21-point Kronrod rule with the QUADPACK error
// heuristic. Exposed for tests and for callers that manage panels themselves.
QuadratureResult gauss_kronrod21(RealFunction f, double a, double b);

// Brent's method. Requires g(lo)*g(hi) <= 0 (BracketError otherwise) and
// returns a point of iv at which g vanishes or the bracket is narrower than
// tol.
double find_root_bracketed(RealFunction g, const Interval& iv, double tol,
                           int max_iterations = 200);

// Inverts a strictly increasing g on iv: returns x with g(x) = target. Throws
// RangeError when target lies outside [g(lo), g(hi)].
double solve_increasing(RealFunction g, double target, const Interval& iv,
                        double tol);

// Fritsch-Carlson monotone piecewise cubic Hermite interpolant through
// strictly increasing abscissae and non-decreasing ordinates.
class MonotoneCubic {
 public:
  MonotoneCubic() = default;
  MonotoneCubic(std::vector<double> x, std::vector<double> y);

  double operator()(double x) const;
  bool empty() const noexcept { return x_.empty(); }
  double x_min() const { return x_.front(); }
  double x_max() const { return x_.back(); }

 private:
  std::vector<double> x_;
  std::vector<double> y_;
  std::vector<double> slope_;
};

}  // namespace ladderlab::numerics
