#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "ladderlab/curves.hpp"

namespace ladderlab::metaeq {

using specfun::Complex;

enum class TransmutationId { T3_10, T4_5, T4_10, T5_5, T5_10, T5_15 };

struct TransmutationSpec {
  TransmutationId id;
  const char* name;   // "T3_10"
  const char* label;  // "3.10"
  int family;         // level-curve family n, 2..7
  bool reciprocal;    // family factor in the denominator
};

// The six transmutations, in catalog order.
const std::array<TransmutationSpec, 6>& catalog();
const TransmutationSpec& spec(TransmutationId id);
// Accepts "T5_5" or "5.5". FormatError otherwise.
TransmutationId parse_id(const std::string& text);

// |f(s_l^n)|^exponent with f the base function of family n (zeta for n = 1,
// 2). For the power family the printed exponent is exponent * n_l.
struct Factor {
  int n = 1;
  int l = 1;
  int exponent = 2;

  friend auto operator<=>(const Factor&, const Factor&) = default;
};

// Product of factors kept in canonical order (zeta^1 first, then by n, then
// l); negative exponents are denominators.
struct Term {
  std::vector<Factor> factors;

  void canonicalize();
  friend bool operator==(const Term&, const Term&) = default;
};

enum class Form {
  Canonical,   // denominators cleared only for the T3_10 x T5_5 pair
  Cleared,     // every denominator cleared
  Fractional,  // Gamma factors left in denominators
};

struct MetaEquation {
  TransmutationId a;
  TransmutationId b;
  std::vector<Term> lhs;
  std::vector<Term> rhs;
  bool normalized = false;  // denominators were cleared
};

// (X_1^a + X_3^a) G_b(s_2^b) = (X_1^b + X_3^b) G_a(s_2^a) with
// X_l^t = |zeta(s_l^1)|^2 G_t(s_l^t); the common |zeta(s_2^1)|^2 is
// eliminated. DomainError for a == b.
MetaEquation crossbreed(TransmutationId a, TransmutationId b, Form form = Form::Canonical);

// All 15 unordered pairs a < b in catalog order.
std::vector<MetaEquation> generate_all(Form form = Form::Canonical);

std::string format_factor(const Factor& f);
std::string format_term(const Term& t);
std::string format_side(const std::vector<Term>& side);
// "pair: ...\nlhs: ...\nrhs: ...\n"
std::string format_equation(const MetaEquation& eq);
// File stem for golden files: "T3_10__T4_5".
std::string equation_key(const MetaEquation& eq);

inline constexpr const char* kGoldenVersion = "#ladderlab-metaeq-v1";

// Substitutes |zeta(s_l^1)|^2 -> z_l and every family factor G_t(s_l^t) ->
// A_l / z_l (what the level assignment guarantees) and compares both sides as
// Laurent polynomials. True when they agree and are non-zero.
bool eliminates_soundly(const MetaEquation& eq);

// Laurent polynomial over the symbols z1..z3, A1..A3 produced by the
// substitution above; exposed for tests.
using Monomial = std::array<int, 6>;
using LaurentPolynomial = std::map<Monomial, long>;
LaurentPolynomial substitute(const std::vector<Term>& side);

// Slot s_l^n -> points. Occurrence k of a slot (counted left to right over
// lhs then rhs) takes points[k % size].
using Slot = std::pair<int, int>;  // (n, l)
using Assignment = std::map<Slot, std::vector<Complex>>;

// Slots of eq with their occurrence counts.
std::map<Slot, int> slot_occurrences(const MetaEquation& eq);

struct EquationReport {
  std::size_t equation = 0;  // index into generate_all()
  std::string key;
  std::vector<std::pair<Slot, Complex>> points;  // in occurrence order
  double lhs = 0.0;
  double rhs = 0.0;
  double residual = 0.0;     // |lhs - rhs| / max(|lhs|, |rhs|)
};

// |f(s)| for the base function of family n, component l.
double base_modulus(int n, int l, const curves::FamilyParams& params, Complex s);

EquationReport evaluate(const MetaEquation& eq, const Assignment& assignment,
                        const curves::FamilyParams& params);

// Every (n, l) curve of one (L, U) configuration.
struct CurveSet {
  curves::LevelAssignment levels;
  std::map<Slot, curves::LevelCurve> curves;
};

CurveSet build_curves(const curves::Alphas& alphas, const curves::FamilyParams& params,
                      const curves::TraceOptions& options = {});

enum class SlotMode {
  Independent,  // a fresh point for every occurrence of a slot
  SamePoint,    // one point per slot symbol
};

// samples_per_equation random on-curve assignments for every equation.
std::vector<EquationReport> verify_all(const std::vector<MetaEquation>& equations,
                                       const CurveSet& curves, std::size_t samples,
                                       std::uint64_t seed,
                                       SlotMode mode = SlotMode::Independent);

// All slots at their seeds.
Assignment seed_assignment(const MetaEquation& eq, const CurveSet& curves);

// Residual after moving s_2^b off its curve by displacement along the
// gradient of |F|^2, other slots at their seeds.
double perturbation_control(const MetaEquation& eq, const CurveSet& curves,
                            double displacement = 1e-3);

}  // namespace ladderlab::metaeq
