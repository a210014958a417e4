#include <doctest.h>

#include <fstream>
#include <set>
#include <sstream>

#include "ladderlab/error.hpp"
#include "ladderlab/hybrid.hpp"
#include "ladderlab/metaeq.hpp"
#include "support.hpp"

using namespace ladderlab;
using namespace ladderlab::metaeq;

namespace {

const CurveSet& curve_set() {
  static const CurveSet set = [] {
    const auto tr = hybrid::triples(100, 0.3, testsupport::table());
    curves::Alphas alphas;
    for (int l = 0; l < 3; ++l) {
      alphas.alpha0[l] = tr[l].alpha0;
      alphas.alpha1[l] = tr[l].alpha1;
    }
    return build_curves(alphas, {});
  }();
  return set;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("catalog") {
  const auto& c = catalog();
  REQUIRE(c.size() == 6);
  int reciprocal = 0;
  for (const auto& t : c) reciprocal += t.reciprocal ? 1 : 0;
  CHECK(reciprocal == 1);
  CHECK(spec(TransmutationId::T5_5).reciprocal);
  CHECK(spec(TransmutationId::T5_15).family == 7);
  CHECK(spec(TransmutationId::T3_10).family == 2);
  CHECK(parse_id("5.15") == TransmutationId::T5_15);
  CHECK(parse_id("T4_10") == TransmutationId::T4_10);
  CHECK_THROWS_AS(parse_id("6.1"), FormatError);
}

TEST_CASE("fifteen distinct equations in catalog order") {
  const auto all = generate_all();
  REQUIRE(all.size() == 15);
  std::set<std::string> keys;
  std::size_t k = 0;
  for (std::size_t i = 0; i < 6; ++i) {
    for (std::size_t j = i + 1; j < 6; ++j, ++k) {
      CHECK(all[k].a == catalog()[i].id);
      CHECK(all[k].b == catalog()[j].id);
      keys.insert(equation_key(all[k]));
    }
  }
  CHECK(keys.size() == 15);
  CHECK(equation_key(all[0]) == "T3_10__T4_5");
  CHECK_THROWS_AS(crossbreed(TransmutationId::T4_5, TransmutationId::T4_5), DomainError);
}

TEST_CASE("rendering") {
  const auto eq = crossbreed(TransmutationId::T3_10, TransmutationId::T5_5);
  CHECK(eq.normalized);
  CHECK(format_equation(eq) ==
        "pair: T3_10 x T5_5\n"
        "lhs: |zeta(s_1^1)|^2 |zeta(s_1^2)|^2 |Gamma(s_1^5)|^2 |Gamma(s_3^5)| + "
        "|zeta(s_3^1)|^2 |zeta(s_3^2)| |Gamma(s_1^5)|^2 |Gamma(s_3^5)|\n"
        "rhs: |zeta(s_1^1)|^2 |zeta(s_2^2)|^2 |Gamma(s_2^5)|^2 |Gamma(s_3^5)| + "
        "|zeta(s_3^1)|^2 |zeta(s_2^2)|^2 |Gamma(s_1^5)|^2 |Gamma(s_2^5)|^2\n");
  const auto frac = crossbreed(TransmutationId::T3_10, TransmutationId::T5_5, Form::Fractional);
  CHECK_FALSE(frac.normalized);
  CHECK(format_equation(frac).find(" / ") != std::string::npos);
  const auto other = crossbreed(TransmutationId::T5_5, TransmutationId::T5_15);
  CHECK_FALSE(other.normalized);
  CHECK(format_side(other.lhs) ==
        "|zeta(s_1^1)|^2 |cn(s_2^7,k_2)|^2 / |Gamma(s_1^5)|^2 + "
        "|zeta(s_3^1)|^2 |cn(s_2^7,k_2)|^2 / |Gamma(s_3^5)|");
  CHECK(format_factor({4, 2, 2}) == "|s_2^4|^(2n_2)");
  CHECK(format_factor({4, 3, 1}) == "|s_3^4|^(n_3)");
  CHECK(format_factor({6, 1, 1}) == "|J_{p_1}(s_1^6)|");
}

TEST_CASE("golden files") {
  for (const auto& eq : generate_all()) {
    const std::string path =
        std::string(LADDERLAB_GOLDEN_DIR) + "/" + equation_key(eq) + ".txt";
    CHECK_MESSAGE(read_file(path) == std::string(kGoldenVersion) + "\n" + format_equation(eq),
                  path);
  }
}

TEST_CASE("elimination is sound in every form") {
  for (Form f : {Form::Canonical, Form::Cleared, Form::Fractional}) {
    for (const auto& eq : generate_all(f)) CHECK_MESSAGE(eliminates_soundly(eq), equation_key(eq));
  }
  // Dropping a term breaks the identity.
  auto eq = crossbreed(TransmutationId::T4_5, TransmutationId::T5_10);
  eq.lhs.pop_back();
  CHECK_FALSE(eliminates_soundly(eq));
  // Swapping the pair swaps the sides.
  const auto ab = crossbreed(TransmutationId::T4_10, TransmutationId::T5_15);
  const auto ba = crossbreed(TransmutationId::T5_15, TransmutationId::T4_10);
  CHECK(substitute(ab.lhs) == substitute(ba.rhs));
  CHECK(substitute(ab.rhs) == substitute(ba.lhs));
}

TEST_CASE("numerical verification on traced curves") {
  const auto& set = curve_set();
  CHECK(set.curves.size() == 21);
  for (const auto& [slot, curve] : set.curves) {
    for (const auto& s : curve.points) CHECK(curves::on_level(curve.family, curve.level, s));
  }
  const auto all = generate_all();
  for (const auto& eq : all) {
    const auto r = evaluate(eq, seed_assignment(eq, set), set.levels.params());
    CHECK(r.residual < 1e-8);
    CHECK(perturbation_control(eq, set) > 1e-5);
  }
  const auto ab = crossbreed(TransmutationId::T4_10, TransmutationId::T5_15);
  const auto ba = crossbreed(TransmutationId::T5_15, TransmutationId::T4_10);
  const auto ra = evaluate(ab, seed_assignment(ab, set), set.levels.params());
  const auto rb = evaluate(ba, seed_assignment(ba, set), set.levels.params());
  CHECK(ra.residual == doctest::Approx(rb.residual).epsilon(1e-6));

  const auto reports = verify_all(all, set, 10, 7);
  REQUIRE(reports.size() == 150);
  for (const auto& r : reports) CHECK(r.residual < 1e-6);
  const auto again = verify_all(all, set, 10, 7);
  for (std::size_t i = 0; i < reports.size(); ++i) CHECK(again[i].residual == reports[i].residual);
  const auto same = verify_all(all, set, 3, 7, SlotMode::SamePoint);
  REQUIRE(same.size() == 45);
  for (const auto& r : same) {
    CHECK(r.residual < 1e-6);
    std::map<Slot, Complex> seen;
    for (const auto& [slot, s] : r.points) {
      if (seen.count(slot)) CHECK(seen[slot] == s);
      seen[slot] = s;
    }
  }
}

TEST_CASE("slot occurrences") {
  const auto eq = crossbreed(TransmutationId::T3_10, TransmutationId::T4_5);
  const auto occ = slot_occurrences(eq);
  CHECK(occ.at({1, 1}) == 2);
  CHECK(occ.at({1, 3}) == 2);
  CHECK(occ.count({1, 2}) == 0);
}
