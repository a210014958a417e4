#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "ladderlab/specfun.hpp"

namespace ladderlab::curves {

using specfun::Complex;

// Per-component family parameters: n_l for the power family, p_l for the
// Bessel family and k_l^2 for the Jacobi family.
struct FamilyParams {
  std::array<int, 3> n{1, 1, 2};
  std::array<int, 3> p{0, 1, 2};
  std::array<double, 3> ksq{0.5, 0.5, 0.9};
};

// Holomorphic F whose modulus defines the level sets of family n:
// 1: zeta^2, 2: zeta, 3: cos, 4: s, 5: Gamma, 6: J_p, 7: sn / cn / dn for
// l = 1 / 2 / 3.
class LevelFamily {
 public:
  LevelFamily(int n, int l, const FamilyParams& params = {});

  int n() const noexcept { return n_; }
  int l() const noexcept { return l_; }
  // n_l (family 4), p_l (family 6); 0 otherwise.
  int integer_param() const noexcept { return int_param_; }
  // k_l^2 (family 7); 0 otherwise.
  double k_squared() const noexcept { return k_squared_; }

  std::string name() const;
  Complex F(Complex s) const;
  double modulus(Complex s) const { return std::abs(F(s)); }

 private:
  int n_;
  int l_;
  int int_param_ = 0;
  double k_squared_ = 0.0;
};

// Mean-value data the levels are derived from.
struct Alphas {
  std::array<double, 3> alpha0{};
  std::array<double, 3> alpha1{};
};

// Target level c for every (n, l), n = 1..7, l = 1..3. With t_1 = sin^2 a0^1,
// t_2 = cos^2 a0^2, t_3 = cos 2a0^3 and exponents e = (2, 2, 1):
//   n = 1:        |zeta(1/2 + i a1^l)|^2
//   n = 2, 3, 6, 7: t_l^(1/e_l)
//   n = 4:        t_l^(1/(e_l n_l))
//   n = 5:        t_l^(-1/e_l)
// so that every family factor in the transmutations equals t_l.
class LevelAssignment {
 public:
  static LevelAssignment from_alphas(const Alphas& alphas, const FamilyParams& params);

  double level(int n, int l) const;
  const Alphas& alphas() const noexcept { return alphas_; }
  const FamilyParams& params() const noexcept { return params_; }

 private:
  std::array<std::array<double, 3>, 7> c_{};
  Alphas alphas_;
  FamilyParams params_;
};

// Membership tolerance: | |F(s)| - c | <= kMembershipTol * max(1, c).
inline constexpr double kMembershipTol = 1e-8;
bool on_level(const LevelFamily& family, double level, Complex s,
              double tol = kMembershipTol);
double membership_residual(const LevelFamily& family, double level, Complex s);

// Seed on |F| = c with | |F| - c | < 1e-10 * max(1, c). alpha1 positions the
// critical-line search of families 1 and 2 (family 1 seeds at exactly
// 1/2 + i alpha1). SeedNotFoundError lists the scanned region; an
// unattainable Jacobi level raises ConfigError with a suggested k^2.
Complex find_seed(const LevelFamily& family, double level, double alpha1 = 0.0);

struct TraceOptions {
  double max_arclen = 12.0;
  double h_min = 1e-4;
  double h_max = 0.1;
  double h_init = 0.01;
  // Central-difference step for F'.
  double fd_step = 1e-6;
  std::size_t max_points = 100000;
};

struct LevelCurve {
  LevelFamily family{1, 1};
  double level = 0.0;
  Complex seed;
  std::vector<Complex> points;  // points[0] == seed
  std::vector<double> arc;      // cumulative polyline length
  bool closed = false;
  // "closed", "arclen", "max_points" or "domain" (left the evaluator window)
  std::string stop_reason;

  double length() const;
};

// Predictor-corrector continuation of |F|^2 - c^2 = 0 from seed. Only the
// component through the seed is traced. SingularityError when the step falls
// below h_min.
LevelCurve trace(const LevelFamily& family, double level, Complex seed,
                 const TraceOptions& options = {});

// Projects s onto the curve |F| = c by Newton along the gradient of |F|^2.
Complex correct(const LevelFamily& family, double level, Complex s,
                double fd_step = 1e-6);

// Unit vector along the gradient of |F|^2 at s (central differences).
Complex unit_normal(const LevelFamily& family, Complex s, double fd_step = 1e-6);

// m points at equal arc-length spacing starting at the seed, re-corrected and
// re-verified. m = 1 returns the seed.
std::vector<Complex> sample(const LevelCurve& curve, std::size_t m);
// m points at uniformly random arc positions.
std::vector<Complex> sample_random(const LevelCurve& curve, std::size_t m,
                                   std::mt19937_64& rng);

// CSV with columns re,im,abs_F,level.
void write_csv(const LevelCurve& curve, const std::string& path);

}  // namespace ladderlab::curves
