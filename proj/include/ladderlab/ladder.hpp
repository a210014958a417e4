#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "ladderlab/numerics.hpp"

namespace ladderlab::ladder {

// phi*ln(phi) + kLadderShift*phi = H(T) defines the surrogate ladder.
extern const double kLadderShift;  // c - ln(2 pi)

// Smallest phi on the increasing branch, where the left side vanishes:
// 2 pi exp(-c). phi1(0) equals this value.
extern const double kPhiAtZero;

struct LadderPoint {
  double T = 0.0;
  double phi1 = 0.0;
  double phi1_prime = 0.0;
  double omega = 0.0;
};

// Knot table of H(T) = int_0^T |zeta(1/2+it)|^2 dt on [0, t_max].
//
// Between knots H is completed by a local adaptive quadrature from the
// nearest knot below, so phi1 is differentiable with derivative exactly
// |zeta|^2 / omega. A global error in the knot values only shifts H by a
// near-constant and cannot break the change-of-variables identities.
//
// Immutable after construction; all queries are const and thread-safe.
class LadderTable {
 public:
  // Panels are chosen so that each carries roughly the same mass of H, with
  // width at most 1. t_max must lie in [1e3, 1e5], tol in [1e-14, 1e-6].
  static LadderTable build(double t_max, double tol = 1e-10);

  // Reads a cache written by save(). Throws FormatError on a malformed file
  // or a table that is not strictly increasing in both columns.
  static LadderTable load(const std::string& path);

  // Loads path if it exists, covers t_max and was built at tol or tighter;
  // otherwise builds and, when path is non-empty, writes the cache.
  static LadderTable load_or_build(const std::string& path, double t_max,
                                   double tol = 1e-10);

  void save(const std::string& path) const;

  LadderTable(std::vector<double> t, std::vector<double> h, double tol);

  double t_max() const noexcept { return t_.back(); }
  double tolerance() const noexcept { return tol_; }
  std::size_t size() const noexcept { return t_.size(); }
  std::span<const double> knots_t() const noexcept { return t_; }
  std::span<const double> knots_h() const noexcept { return h_; }

  double H(double T) const;
  double phi1(double T) const;
  // |zeta(1/2+iT)|^2 / omega(T); zero at zeta zeros.
  double phi1_prime(double T) const;
  // ln phi1(T) + 1 + c - ln(2 pi). Throws DomainError where
  // |zeta(1/2+iT)|^2 < 1e-8, since |zeta|^2 / phi1' is then undefined.
  double omega(double T) const;
  // The same expression without the zero check.
  double omega_unchecked(double T) const;

  // Largest phi1 value covered by the table.
  double phi1_max() const;

  // x with phi1(x) = T, |phi1(x) - T| < 1e-8. RangeError outside the
  // phi1-range of the table.
  double reverse_iterate(double T) const;

  LadderPoint point(double T) const;

 private:
  std::size_t panel_of(double T) const;
  double h_from_knot(std::size_t i, double T) const;

  std::vector<double> t_;
  std::vector<double> h_;
  double tol_;
  numerics::MonotoneCubic inverse_;  // H -> T, starting guesses only
};

// Solution phi >= kPhiAtZero of phi*ln(phi) + kLadderShift*phi = h, h >= 0,
// by safeguarded Newton.
double phi_from_h(double h);
// Left side of the ladder equation.
double ladder_lhs(double phi);

// Delta(pi L, U, 1): the base segment and its first reverse iteration.
struct DisconnectedSet {
  numerics::Interval base{0.0, 1.0};
  numerics::Interval lifted{0.0, 1.0};
  double rho = 0.0;           // lifted.lo - base.hi
  double base_len = 0.0;      // U
  double lifted_len = 0.0;
  double adjacent_len = 0.0;  // |[pi L + U, lifted.lo]|
};

// U must lie in (0, pi/4) and pi L + U inside the phi1-range of the table.
DisconnectedSet disconnected_set(long L, double U, const LadderTable& table);

}  // namespace ladderlab::ladder
