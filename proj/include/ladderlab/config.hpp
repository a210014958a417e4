#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ladderlab/curves.hpp"
#include "ladderlab/metaeq.hpp"

namespace ladderlab::config {

// One verification campaign. Field names match the JSON keys.
struct RunConfig {
  std::vector<long> L_grid{100, 300, 1000};
  // The grid of U values for verify-hybrid; "U" in JSON sets a single value.
  std::vector<double> U_grid{0.3};
  curves::FamilyParams params;

  double ladder_tol = 1e-10;   // per-panel tolerance of the H table
  double exact_tol = 1e-8;     // factorization and hybrid residuals
  double meta_tol = 1e-6;      // meta-equation residuals
  double perturbation_min = 1e-5;
  double perturbation_step = 1e-3;

  std::size_t samples = 10;    // assignments per equation
  std::uint64_t seed = 20240101;
  metaeq::SlotMode slot_mode = metaeq::SlotMode::Independent;
  metaeq::Form form = metaeq::Form::Canonical;

  std::string cache_path = "ladder_cache.csv";
  std::string output_path = "out";

  // (L, U) used to derive the level values of verify-meta.
  long meta_L() const { return L_grid.front(); }
  double meta_U() const { return U_grid.front(); }
};

// ConfigError quoting the violated constraint.
void validate(const RunConfig& config);

// Unknown keys are rejected. ConfigError on type or range problems.
RunConfig from_json_text(const std::string& text);
RunConfig load(const std::string& path);
std::string to_json_text(const RunConfig& config);

// Table length that covers the reverse iteration of [pi L, pi L + U] for
// every L in the grid, with margin, clamped to the buildable range.
double required_t_max(const std::vector<long>& L_grid, const std::vector<double>& U_grid);

}  // namespace ladderlab::config
