#include "ladderlab/hybrid.hpp"

#include <cmath>

#include "ladderlab/specfun.hpp"

namespace ladderlab::hybrid {

using factorization::FactorizationTriple;
using factorization::Generator;
using Triples = std::array<FactorizationTriple, 3>;

Triples triples(long L, double U, const ladder::LadderTable& table,
                const factorization::MeanValueOptions& options) {
  const auto segment = ladder::disconnected_set(L, U, table);
  return {factorization::mean_value_point(segment, 1, table, options),
          factorization::mean_value_point(segment, 2, table, options),
          factorization::mean_value_point(segment, 3, table, options)};
}

ATerms compose_a_terms(const Triples& tr, const std::function<double(double)>& modulus_sq) {
  ATerms out;
  out.triples = tr;
  out.A1 = modulus_sq(tr[0].alpha1) * Generator(1)(tr[0].alpha0);
  out.A2 = modulus_sq(tr[1].alpha1) * Generator(2)(tr[1].alpha0);
  out.A3 = modulus_sq(tr[2].alpha1) * Generator(3)(tr[2].alpha0);
  return out;
}

ATerms a_terms(long L, double U, const ladder::LadderTable& table,
               const factorization::MeanValueOptions& options) {
  return compose_a_terms(triples(L, U, table, options),
                         [](double t) { return specfun::zeta_critical_abs_sq(t); });
}

double check_exact_hybrid(const Triples& tr, const ladder::LadderTable& table) {
  const double left = table.phi1_prime(tr[0].alpha1) * Generator(1)(tr[0].alpha0) +
                      table.phi1_prime(tr[2].alpha1) * Generator(3)(tr[2].alpha0);
  const double right = table.phi1_prime(tr[1].alpha1) * Generator(2)(tr[1].alpha0);
  return std::abs(left - right) / right;
}

double check_exact_hybrid(long L, double U, const ladder::LadderTable& table,
                          const factorization::MeanValueOptions& options) {
  return check_exact_hybrid(triples(L, U, table, options), table);
}

EpsilonBreakdown epsilon(long L, double U, const ladder::LadderTable& table,
                         const factorization::MeanValueOptions& options) {
  EpsilonBreakdown out;
  out.L = L;
  out.U = U;
  out.terms = a_terms(L, U, table, options);
  const auto& tr = out.terms.triples;
  out.epsilon = (out.terms.A1 + out.terms.A3) / out.terms.A2 - 1.0;

  out.omega1 = table.omega(tr[0].alpha1);
  out.omega2 = table.omega(tr[1].alpha1);
  out.omega3 = table.omega(tr[2].alpha1);
  const double b1 = table.phi1_prime(tr[0].alpha1) * Generator(1)(tr[0].alpha0);
  const double b3 = table.phi1_prime(tr[2].alpha1) * Generator(3)(tr[2].alpha0);
  out.epsilon_prime = (out.omega1 * b1 + out.omega3 * b3) / (out.omega2 * (b1 + b3)) - 1.0;

  const double lnL = std::log(static_cast<double>(L));
  out.bound_ratio = std::abs(out.epsilon) * lnL / std::log(lnL);
  out.exact_residual = check_exact_hybrid(tr, table);
  return out;
}

std::vector<EpsilonBreakdown> epsilon_scan(const std::vector<long>& L_grid, double U,
                                           const ladder::LadderTable& table,
                                           const factorization::MeanValueOptions& options) {
  std::vector<EpsilonBreakdown> out;
  out.reserve(L_grid.size());
  for (long L : L_grid) out.push_back(epsilon(L, U, table, options));
  return out;
}

}  // namespace ladderlab::hybrid
