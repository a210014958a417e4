#include "ladderlab/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include <json.hpp>

#include "ladderlab/error.hpp"
#include "ladderlab/ladder.hpp"
#include "ladderlab/numerics.hpp"

namespace ladderlab::config {

using nlohmann::json;

namespace {

constexpr double kEulerGamma = 0.57721566490153286061;

template <class T>
T get(const json& j, const char* key) {
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: bad value for '") + key + "': " + e.what());
  }
}

template <class T>
std::array<T, 3> triple(const json& j, const char* key) {
  const auto v = get<std::vector<T>>(j, key);
  if (v.size() != 3) {
    throw ConfigError(std::string("config: '") + key + "' needs exactly three entries");
  }
  return {v[0], v[1], v[2]};
}

metaeq::Form parse_form(const std::string& s) {
  if (s == "canonical") return metaeq::Form::Canonical;
  if (s == "cleared") return metaeq::Form::Cleared;
  if (s == "fractional") return metaeq::Form::Fractional;
  throw ConfigError("config: form must be canonical, cleared or fractional, got '" + s + "'");
}

const char* form_name(metaeq::Form f) {
  switch (f) {
    case metaeq::Form::Cleared: return "cleared";
    case metaeq::Form::Fractional: return "fractional";
    default: return "canonical";
  }
}

}  // namespace

void validate(const RunConfig& c) {
  if (c.L_grid.empty()) throw ConfigError("config: L_grid must not be empty");
  for (long L : c.L_grid) {
    if (L < 3) {
      throw ConfigError("config: L_grid entries must be integers >= 3 (ln ln L > 0), got " +
                        std::to_string(L));
    }
  }
  if (c.U_grid.empty()) throw ConfigError("config: U must not be empty");
  for (double U : c.U_grid) {
    if (!(U > 0.0 && U < std::numbers::pi / 4)) {
      std::ostringstream msg;
      msg << "config: U = " << U << " violates U in (0, pi/4)";
      throw ConfigError(msg.str());
    }
  }
  for (int l = 0; l < 3; ++l) {
    if (c.params.n[l] < 1) {
      throw ConfigError("config: n_" + std::to_string(l + 1) +
                        " violates (n_1,n_2,n_3) in N^3 (positive integers)");
    }
    const double k = c.params.ksq[l];
    if (!(k > 0.0 && k < 1.0)) {
      std::ostringstream msg;
      msg << "config: k_" << l + 1 << "^2 = " << k << " violates (k_1^2,k_2^2,k_3^2) in (0,1)^3";
      throw ConfigError(msg.str());
    }
  }
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw ConfigError(std::string("config: ") + name + " must be positive");
    }
  };
  positive(c.ladder_tol, "ladder_tol");
  positive(c.exact_tol, "exact_tol");
  positive(c.meta_tol, "meta_tol");
  positive(c.perturbation_min, "perturbation_min");
  positive(c.perturbation_step, "perturbation_step");
  if (c.ladder_tol < 1e-14 || c.ladder_tol > 1e-6) {
    throw ConfigError("config: ladder_tol must lie in [1e-14, 1e-6]");
  }
  if (c.samples == 0) throw ConfigError("config: samples must be at least 1");
}

RunConfig from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config: top level must be a JSON object");

  static const std::set<std::string> known = {
      "L_grid",  "U",         "n",         "p",          "ksq",
      "ladder_tol", "exact_tol", "meta_tol", "perturbation_min", "perturbation_step",
      "samples", "seed",      "slot_mode", "form",       "cache_path",
      "output_path"};
  for (const auto& [key, value] : j.items()) {
    if (!known.contains(key)) throw ConfigError("config: unknown key '" + key + "'");
  }

  RunConfig c;
  if (j.contains("L_grid")) c.L_grid = get<std::vector<long>>(j, "L_grid");
  if (j.contains("U")) {
    c.U_grid = j["U"].is_array() ? get<std::vector<double>>(j, "U")
                                 : std::vector<double>{get<double>(j, "U")};
  }
  if (j.contains("n")) c.params.n = triple<int>(j, "n");
  if (j.contains("p")) c.params.p = triple<int>(j, "p");
  if (j.contains("ksq")) c.params.ksq = triple<double>(j, "ksq");
  if (j.contains("ladder_tol")) c.ladder_tol = get<double>(j, "ladder_tol");
  if (j.contains("exact_tol")) c.exact_tol = get<double>(j, "exact_tol");
  if (j.contains("meta_tol")) c.meta_tol = get<double>(j, "meta_tol");
  if (j.contains("perturbation_min")) c.perturbation_min = get<double>(j, "perturbation_min");
  if (j.contains("perturbation_step")) c.perturbation_step = get<double>(j, "perturbation_step");
  if (j.contains("samples")) c.samples = get<std::size_t>(j, "samples");
  if (j.contains("seed")) c.seed = get<std::uint64_t>(j, "seed");
  if (j.contains("slot_mode")) {
    const auto mode = get<std::string>(j, "slot_mode");
    if (mode == "independent") {
      c.slot_mode = metaeq::SlotMode::Independent;
    } else if (mode == "same_point") {
      c.slot_mode = metaeq::SlotMode::SamePoint;
    } else {
      throw ConfigError("config: slot_mode must be independent or same_point, got '" + mode +
                        "'");
    }
  }
  if (j.contains("form")) c.form = parse_form(get<std::string>(j, "form"));
  if (j.contains("cache_path")) c.cache_path = get<std::string>(j, "cache_path");
  if (j.contains("output_path")) c.output_path = get<std::string>(j, "output_path");
  validate(c);
  return c;
}

RunConfig load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return from_json_text(text.str());
}

std::string to_json_text(const RunConfig& c) {
  json j;
  j["L_grid"] = c.L_grid;
  j["U"] = c.U_grid;
  j["n"] = c.params.n;
  j["p"] = c.params.p;
  j["ksq"] = c.params.ksq;
  j["ladder_tol"] = c.ladder_tol;
  j["exact_tol"] = c.exact_tol;
  j["meta_tol"] = c.meta_tol;
  j["perturbation_min"] = c.perturbation_min;
  j["perturbation_step"] = c.perturbation_step;
  j["samples"] = c.samples;
  j["seed"] = c.seed;
  j["slot_mode"] = c.slot_mode == metaeq::SlotMode::SamePoint ? "same_point" : "independent";
  j["form"] = form_name(c.form);
  j["cache_path"] = c.cache_path;
  j["output_path"] = c.output_path;
  return j.dump(2);
}

double required_t_max(const std::vector<long>& L_grid, const std::vector<double>& U_grid) {
  const long L = *std::max_element(L_grid.begin(), L_grid.end());
  const double U = *std::max_element(U_grid.begin(), U_grid.end());
  const double top = std::numbers::pi * static_cast<double>(L) + U;
  // Leading-order H(x) ~ x ln x - (1 + ln 2pi - 2c) x.
  const double shift = 1.0 + std::log(2.0 * std::numbers::pi) - 2.0 * kEulerGamma;
  const double target = ladder::ladder_lhs(std::max(top, 50.0));
  auto h = [shift](double x) { return x * std::log(x) - shift * x; };
  const double x = numerics::solve_increasing(h, target, {10.0, 10.0 * top + 1e3}, 1e-6);
  return std::clamp(1.03 * x + 200.0, 1e3, 1e5);
}

}  // namespace ladderlab::config
