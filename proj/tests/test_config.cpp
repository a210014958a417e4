#include <doctest.h>

#include <cmath>
#include <numbers>

#include "ladderlab/config.hpp"
#include "ladderlab/error.hpp"
#include "ladderlab/ladder.hpp"

using namespace ladderlab;
using namespace ladderlab::config;

namespace {

std::string message(const std::string& json) {
  try {
    from_json_text(json);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("defaults") {
  const RunConfig c;
  CHECK_NOTHROW(validate(c));
  CHECK(c.meta_L() == 100);
  CHECK(c.meta_U() == 0.3);
  CHECK(c.samples == 10);
  const auto parsed = from_json_text("{}");
  CHECK(parsed.L_grid == c.L_grid);
  CHECK(parsed.seed == c.seed);
}

TEST_CASE("violations quote the constraint") {
  CHECK(message(R"({"U": 0.9})").find("U in (0, pi/4)") != std::string::npos);
  CHECK(message(R"({"U": [0.1, -0.2]})").find("U in (0, pi/4)") != std::string::npos);
  CHECK(message(R"({"ksq": [0.5, 1.0, 0.9]})").find("(0,1)^3") != std::string::npos);
  CHECK_FALSE(message(R"({"n": [1, 0, 2]})").empty());
  CHECK_FALSE(message(R"({"L_grid": [2]})").empty());
  CHECK_FALSE(message(R"({"ladder_tol": 1e-3})").empty());
  CHECK(message(R"({"colour": 1})").find("colour") != std::string::npos);
  CHECK_FALSE(message("{not json").empty());
  CHECK_FALSE(message(R"({"samples": "ten"})").empty());
  CHECK_FALSE(message(R"({"slot_mode": "other"})").empty());
  CHECK_THROWS_AS(load("/nonexistent/ladderlab.json"), ConfigError);
}

TEST_CASE("json round trip") {
  const auto c = from_json_text(
      R"({"L_grid": [200, 400], "U": [0.2, 0.4], "ksq": [0.3, 0.6, 0.95], "seed": 5,
          "slot_mode": "same_point", "form": "cleared", "samples": 3})");
  const auto back = from_json_text(to_json_text(c));
  CHECK(back.L_grid == c.L_grid);
  CHECK(back.U_grid == c.U_grid);
  CHECK(back.params.ksq == c.params.ksq);
  CHECK(back.seed == 5);
  CHECK(back.samples == 3);
  CHECK(back.slot_mode == metaeq::SlotMode::SamePoint);
  CHECK(back.form == metaeq::Form::Cleared);
}

TEST_CASE("required table length covers the reverse iteration") {
  for (long L : {100L, 1000L, 9000L}) {
    const double t = required_t_max({L}, {0.7});
    const double top = std::numbers::pi * L + 0.7;
    // phi1(T) <= T - (1 - c) T / ln T roughly; the bound must clear the lift.
    const double lifted = top + (1.0 - 0.5772156649015329) * top / std::log(top);
    CHECK(t > lifted);
    CHECK(t >= 1e3);
    CHECK(t <= 1e5);
  }
  CHECK(required_t_max({100, 9000}, {0.1}) == required_t_max({9000}, {0.1}));
}
