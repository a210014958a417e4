#pragma once

#include <cstddef>

#include "ladderlab/ladder.hpp"

namespace ladderlab::factorization {

// f_1 = sin^2, f_2 = cos^2, f_3 = cos 2t; f_1 + f_3 = f_2.
class Generator {
 public:
  explicit Generator(int l);

  int index() const noexcept { return l_; }
  double operator()(double t) const;
  // Closed-form integral over [a, b].
  double integral(double a, double b) const;

 private:
  int l_;
};

struct MeanValueOptions {
  // Relative tolerance of the quadrature of h over the lifted segment.
  double rel_tol = 1e-12;
  std::size_t initial_samples = 512;
  std::size_t max_samples = std::size_t{1} << 16;
  // Scan brackets touching points with |zeta|^2 below this are skipped.
  double zero_guard = 1e-8;
};

struct FactorizationTriple {
  int l = 0;
  double d = 0.0;
  double alpha0 = 0.0;  // phi1(d), in the base segment
  double alpha1 = 0.0;  // d, in the lifted segment
  ladder::DisconnectedSet segment;
  // (1 / lifted_len) * int_lifted f_l(phi1(t)) phi1'(t) dt
  double mean = 0.0;
  double mean_error = 0.0;
  // Samples used by the scan that produced the bracket of d.
  std::size_t scan_samples = 0;
};

// First mean-value point of h(t) = f_l(phi1(t)) phi1'(t) on the lifted
// segment: the smallest root in the lifted interval of h(t) - mean.
// ResolutionError when no sign change is found at max_samples.
FactorizationTriple mean_value_point(long L, double U, int l,
                                     const ladder::LadderTable& table,
                                     const MeanValueOptions& options = {});
FactorizationTriple mean_value_point(const ladder::DisconnectedSet& segment, int l,
                                     const ladder::LadderTable& table,
                                     const MeanValueOptions& options = {});

// |int_base f_l - f_l(alpha0) phi1'(alpha1) lifted_len| / |int_base f_l|.
double check_exact_factorization(const FactorizationTriple& triple,
                                 const ladder::LadderTable& table);

}  // namespace ladderlab::factorization
