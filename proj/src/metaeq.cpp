#include "ladderlab/metaeq.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "ladderlab/error.hpp"

namespace ladderlab::metaeq {

namespace {

constexpr std::array<int, 3> kExponent = {2, 2, 1};

const char* base_name(int n, int l) {
  switch (n) {
    case 1:
    case 2: return "zeta";
    case 3: return "cos";
    case 5: return "Gamma";
    case 7: return l == 1 ? "sn" : l == 2 ? "cn" : "dn";
    default: return "";
  }
}

Factor zeta_one(int l) { return {1, l, 2}; }

Factor family_factor(const TransmutationSpec& t, int l) {
  const int e = kExponent[static_cast<std::size_t>(l - 1)];
  return {t.family, l, t.reciprocal ? -e : e};
}

Term product(std::initializer_list<Factor> fs) {
  Term t{std::vector<Factor>(fs)};
  t.canonicalize();
  return t;
}

// Multiplies t by |f(s_l^n)|^exponent, merging exponents.
void multiply(Term& t, const Factor& f) {
  for (auto& g : t.factors) {
    if (g.n == f.n && g.l == f.l) {
      g.exponent += f.exponent;
      return;
    }
  }
  t.factors.push_back(f);
}

void clear_denominators(MetaEquation& eq) {
  // Least product of factors that clears every negative exponent.
  std::map<Slot, int> lcm;
  for (const auto* side : {&eq.lhs, &eq.rhs}) {
    for (const auto& term : *side) {
      for (const auto& f : term.factors) {
        if (f.exponent < 0) {
          int& need = lcm[{f.n, f.l}];
          need = std::max(need, -f.exponent);
        }
      }
    }
  }
  if (lcm.empty()) return;
  for (auto* side : {&eq.lhs, &eq.rhs}) {
    for (auto& term : *side) {
      for (const auto& [slot, power] : lcm) multiply(term, {slot.first, slot.second, power});
      std::erase_if(term.factors, [](const Factor& f) { return f.exponent == 0; });
      term.canonicalize();
    }
  }
  eq.normalized = true;
}

std::string slot_name(int n, int l) {
  std::ostringstream out;
  out << "s_" << l << '^' << n;
  return out.str();
}

}  // namespace

const std::array<TransmutationSpec, 6>& catalog() {
  static const std::array<TransmutationSpec, 6> table = {{
      {TransmutationId::T3_10, "T3_10", "3.10", 2, false},
      {TransmutationId::T4_5, "T4_5", "4.5", 3, false},
      {TransmutationId::T4_10, "T4_10", "4.10", 4, false},
      {TransmutationId::T5_5, "T5_5", "5.5", 5, true},
      {TransmutationId::T5_10, "T5_10", "5.10", 6, false},
      {TransmutationId::T5_15, "T5_15", "5.15", 7, false},
  }};
  return table;
}

const TransmutationSpec& spec(TransmutationId id) {
  return catalog()[static_cast<std::size_t>(id)];
}

TransmutationId parse_id(const std::string& text) {
  for (const auto& t : catalog()) {
    if (text == t.name || text == t.label) return t.id;
  }
  throw FormatError("unknown transmutation '" + text + "' (expected e.g. T5_5 or 5.5)");
}

void Term::canonicalize() {
  std::sort(factors.begin(), factors.end(), [](const Factor& x, const Factor& y) {
    if (x.n != y.n) return x.n < y.n;
    return x.l < y.l;
  });
}

MetaEquation crossbreed(TransmutationId a, TransmutationId b, Form form) {
  if (a == b) {
    throw DomainError(std::string("crossbreed: a transmutation crossed with itself (") +
                      spec(a).name + ") leaves only the trivial identity");
  }
  const auto& ta = spec(a);
  const auto& tb = spec(b);
  MetaEquation eq{a, b, {}, {}, false};
  eq.lhs = {product({zeta_one(1), family_factor(ta, 1), family_factor(tb, 2)}),
            product({zeta_one(3), family_factor(ta, 3), family_factor(tb, 2)})};
  eq.rhs = {product({zeta_one(1), family_factor(tb, 1), family_factor(ta, 2)}),
            product({zeta_one(3), family_factor(tb, 3), family_factor(ta, 2)})};
  const bool mixed_pair =
      (a == TransmutationId::T3_10 && b == TransmutationId::T5_5) ||
      (a == TransmutationId::T5_5 && b == TransmutationId::T3_10);
  if (form == Form::Cleared || (form == Form::Canonical && mixed_pair)) clear_denominators(eq);
  return eq;
}

std::vector<MetaEquation> generate_all(Form form) {
  std::vector<MetaEquation> out;
  const auto& cat = catalog();
  for (std::size_t i = 0; i < cat.size(); ++i) {
    for (std::size_t j = i + 1; j < cat.size(); ++j) {
      out.push_back(crossbreed(cat[i].id, cat[j].id, form));
    }
  }
  return out;
}

std::string format_factor(const Factor& f) {
  const int k = std::abs(f.exponent);
  std::ostringstream out;
  const std::string s = slot_name(f.n, f.l);
  switch (f.n) {
    case 4:
      out << '|' << s << "|^(";
      if (k != 1) out << k;
      out << "n_" << f.l << ')';
      return out.str();
    case 6:
      out << "|J_{p_" << f.l << "}(" << s << ")|";
      break;
    case 7:
      out << '|' << base_name(f.n, f.l) << '(' << s << ",k_" << f.l << ")|";
      break;
    default:
      out << '|' << base_name(f.n, f.l) << '(' << s << ")|";
      break;
  }
  if (k != 1) out << '^' << k;
  return out.str();
}

std::string format_term(const Term& t) {
  std::vector<std::string> num;
  std::vector<std::string> den;
  for (const auto& f : t.factors) {
    (f.exponent > 0 ? num : den).push_back(format_factor(f));
  }
  std::ostringstream out;
  for (std::size_t i = 0; i < num.size(); ++i) out << (i ? " " : "") << num[i];
  if (num.empty()) out << '1';
  if (!den.empty()) {
    out << " / ";
    if (den.size() > 1) out << '(';
    for (std::size_t i = 0; i < den.size(); ++i) out << (i ? " " : "") << den[i];
    if (den.size() > 1) out << ')';
  }
  return out.str();
}

std::string format_side(const std::vector<Term>& side) {
  std::ostringstream out;
  for (std::size_t i = 0; i < side.size(); ++i) out << (i ? " + " : "") << format_term(side[i]);
  return out.str();
}

std::string format_equation(const MetaEquation& eq) {
  std::ostringstream out;
  out << "pair: " << spec(eq.a).name << " x " << spec(eq.b).name << '\n'
      << "lhs: " << format_side(eq.lhs) << '\n'
      << "rhs: " << format_side(eq.rhs) << '\n';
  return out.str();
}

std::string equation_key(const MetaEquation& eq) {
  return std::string(spec(eq.a).name) + "__" + spec(eq.b).name;
}

LaurentPolynomial substitute(const std::vector<Term>& side) {
  LaurentPolynomial poly;
  for (const auto& term : side) {
    Monomial m{};
    for (const auto& f : term.factors) {
      const auto i = static_cast<std::size_t>(f.l - 1);
      if (f.n == 1) {
        m[i] += f.exponent / 2;
        continue;
      }
      // G = |f|^e (or |f|^-e for Gamma) equals A_l / z_l.
      const int e = kExponent[i];
      const int sign = f.n == 5 ? -1 : 1;
      if (f.exponent % e != 0) {
        throw FormatError("substitute: exponent " + std::to_string(f.exponent) +
                          " is not a multiple of the slot exponent");
      }
      const int k = sign * f.exponent / e;
      m[3 + i] += k;
      m[i] -= k;
    }
    poly[m] += 1;
  }
  std::erase_if(poly, [](const auto& kv) { return kv.second == 0; });
  return poly;
}

bool eliminates_soundly(const MetaEquation& eq) {
  const auto left = substitute(eq.lhs);
  return !left.empty() && left == substitute(eq.rhs);
}

std::map<Slot, int> slot_occurrences(const MetaEquation& eq) {
  std::map<Slot, int> out;
  for (const auto* side : {&eq.lhs, &eq.rhs}) {
    for (const auto& term : *side) {
      for (const auto& f : term.factors) ++out[{f.n, f.l}];
    }
  }
  return out;
}

double base_modulus(int n, int l, const curves::FamilyParams& params, Complex s) {
  if (n == 1) return std::abs(specfun::zeta_complex(s));
  return curves::LevelFamily(n, l, params).modulus(s);
}

EquationReport evaluate(const MetaEquation& eq, const Assignment& assignment,
                        const curves::FamilyParams& params) {
  EquationReport report;
  std::map<Slot, std::size_t> seen;
  auto side_value = [&](const std::vector<Term>& side) {
    double total = 0.0;
    for (const auto& term : side) {
      double value = 1.0;
      for (const auto& f : term.factors) {
        const Slot slot{f.n, f.l};
        const auto it = assignment.find(slot);
        if (it == assignment.end() || it->second.empty()) {
          throw DomainError("evaluate: no point assigned to slot " + slot_name(f.n, f.l));
        }
        const auto k = seen[slot]++;
        const Complex s = it->second[k % it->second.size()];
        report.points.emplace_back(slot, s);
        double power = f.exponent;
        if (f.n == 4) power *= params.n[static_cast<std::size_t>(f.l - 1)];
        value *= std::pow(base_modulus(f.n, f.l, params, s), power);
      }
      total += value;
    }
    return total;
  };
  report.lhs = side_value(eq.lhs);
  report.rhs = side_value(eq.rhs);
  report.residual =
      std::abs(report.lhs - report.rhs) / std::max(std::abs(report.lhs), std::abs(report.rhs));
  report.key = equation_key(eq);
  return report;
}

CurveSet build_curves(const curves::Alphas& alphas, const curves::FamilyParams& params,
                      const curves::TraceOptions& options) {
  CurveSet set{curves::LevelAssignment::from_alphas(alphas, params), {}};
  for (int n = 1; n <= 7; ++n) {
    for (int l = 1; l <= 3; ++l) {
      const curves::LevelFamily family(n, l, params);
      const double c = set.levels.level(n, l);
      const auto seed =
          curves::find_seed(family, c, alphas.alpha1[static_cast<std::size_t>(l - 1)]);
      set.curves.emplace(Slot{n, l}, curves::trace(family, c, seed, options));
    }
  }
  return set;
}

Assignment seed_assignment(const MetaEquation& eq, const CurveSet& curves) {
  Assignment out;
  for (const auto& [slot, count] : slot_occurrences(eq)) {
    out[slot] = {curves.curves.at(slot).seed};
  }
  return out;
}

std::vector<EquationReport> verify_all(const std::vector<MetaEquation>& equations,
                                       const CurveSet& curves, std::size_t samples,
                                       std::uint64_t seed, SlotMode mode) {
  std::mt19937_64 rng(seed);
  std::vector<EquationReport> out;
  out.reserve(equations.size() * samples);
  for (std::size_t e = 0; e < equations.size(); ++e) {
    const auto occurrences = slot_occurrences(equations[e]);
    for (std::size_t k = 0; k < samples; ++k) {
      Assignment assignment;
      for (const auto& [slot, count] : occurrences) {
        const std::size_t m = mode == SlotMode::Independent ? static_cast<std::size_t>(count) : 1;
        assignment[slot] = curves::sample_random(curves.curves.at(slot), m, rng);
      }
      auto report = evaluate(equations[e], assignment, curves.levels.params());
      report.equation = e;
      out.push_back(std::move(report));
    }
  }
  return out;
}

double perturbation_control(const MetaEquation& eq, const CurveSet& curves,
                            double displacement) {
  auto assignment = seed_assignment(eq, curves);
  const Slot target{spec(eq.b).family, 2};
  const auto& curve = curves.curves.at(target);
  const Complex s = curve.seed;
  assignment[target] = {s + displacement * curves::unit_normal(curve.family, s)};
  return evaluate(eq, assignment, curves.levels.params()).residual;
}

}  // namespace ladderlab::metaeq
