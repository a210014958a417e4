#pragma once

#include <array>
#include <functional>
#include <vector>

#include "ladderlab/factorization.hpp"
#include "ladderlab/ladder.hpp"

namespace ladderlab::hybrid {

// A_l = |zeta(1/2 + i alpha1^l)|^2 f_l(alpha0^l).
struct ATerms {
  double A1 = 0.0;
  double A2 = 0.0;
  double A3 = 0.0;
  std::array<factorization::FactorizationTriple, 3> triples;
};

// The three mean-value triples of (L, U), l = 1, 2, 3.
std::array<factorization::FactorizationTriple, 3> triples(
    long L, double U, const ladder::LadderTable& table,
    const factorization::MeanValueOptions& options = {});

ATerms a_terms(long L, double U, const ladder::LadderTable& table,
               const factorization::MeanValueOptions& options = {});

// A-terms of given triples with |zeta|^2 replaced by modulus_sq(alpha1).
ATerms compose_a_terms(const std::array<factorization::FactorizationTriple, 3>& triples,
                       const std::function<double(double)>& modulus_sq);

// |Z1 sin^2 a0^1 + Z3 cos(2 a0^3) - Z2 cos^2 a0^2| / (Z2 cos^2 a0^2) with
// Z_l = phi1'(alpha1^l).
double check_exact_hybrid(const std::array<factorization::FactorizationTriple, 3>& triples,
                          const ladder::LadderTable& table);
double check_exact_hybrid(long L, double U, const ladder::LadderTable& table,
                          const factorization::MeanValueOptions& options = {});

struct EpsilonBreakdown {
  long L = 0;
  double U = 0.0;
  double epsilon = 0.0;        // (A1 + A3) / A2 - 1
  double epsilon_prime = 0.0;  // the same ratio written without alpha0^2
  double omega1 = 0.0;
  double omega2 = 0.0;
  double omega3 = 0.0;
  double bound_ratio = 0.0;    // |epsilon| ln L / ln ln L
  double exact_residual = 0.0;
  ATerms terms;
};

EpsilonBreakdown epsilon(long L, double U, const ladder::LadderTable& table,
                         const factorization::MeanValueOptions& options = {});

std::vector<EpsilonBreakdown> epsilon_scan(const std::vector<long>& L_grid, double U,
                                           const ladder::LadderTable& table,
                                           const factorization::MeanValueOptions& options = {});

}  // namespace ladderlab::hybrid
