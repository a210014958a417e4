// ladderlab: ladder tables, hybrid-formula checks and meta-equation campaigns.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ladderlab/config.hpp"
#include "ladderlab/error.hpp"
#include "ladderlab/factorization.hpp"
#include "ladderlab/hybrid.hpp"
#include "ladderlab/ladder.hpp"
#include "ladderlab/metaeq.hpp"

#ifndef LADDERLAB_GOLDEN_DIR
#define LADDERLAB_GOLDEN_DIR "golden/metaeq"
#endif

namespace fs = std::filesystem;
using nlohmann::json;
using namespace ladderlab;

namespace {

constexpr double kEulerGamma = 0.57721566490153286061;

enum Exit { kPass = 0, kFail = 1, kConfig = 2, kNumeric = 3 };

struct Overrides {
  std::string config_path;
  std::string cache_path;
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;
  std::optional<std::size_t> samples;
  std::string pair;
  bool check_golden = false;
  std::string golden_dir = LADDERLAB_GOLDEN_DIR;
  std::string output_path;
};

config::RunConfig resolve(const Overrides& o) {
  auto c = o.config_path.empty() ? config::RunConfig{} : config::load(o.config_path);
  if (!o.cache_path.empty()) c.cache_path = o.cache_path;
  if (!o.output_path.empty()) c.output_path = o.output_path;
  if (o.seed) c.seed = *o.seed;
  if (o.samples) c.samples = *o.samples;
  config::validate(c);
  return c;
}

ladder::LadderTable table_for(const config::RunConfig& c) {
  const double t_max = config::required_t_max(c.L_grid, c.U_grid);
  return ladder::LadderTable::load_or_build(c.cache_path, t_max, c.ladder_tol);
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Merges one section into <out>/report.json, keeping the others.
void write_report(const std::string& out_dir, const std::string& section, json value) {
  fs::create_directories(out_dir);
  const fs::path path = fs::path(out_dir) / "report.json";
  json report = json::object();
  if (fs::exists(path)) {
    std::ifstream in(path);
    try {
      report = json::parse(in);
    } catch (const json::exception&) {
      report = json::object();
    }
    if (!report.is_object()) report = json::object();
  }
  report[section] = std::move(value);
  const fs::path tmp = path.string() + ".tmp";
  std::ofstream(tmp) << report.dump(2) << '\n';
  fs::rename(tmp, path);
}

std::ofstream open_csv(const fs::path& path) {
  fs::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write " + path.string());
  return out;
}

int cmd_ladder(const Overrides& o) {
  const auto c = resolve(o);
  const auto table = table_for(c);
  const double U = c.meta_U();
  auto csv = open_csv(fs::path(c.output_path) / "ladder.csv");
  csv << "L,U,base_lo,base_hi,lifted_lo,lifted_hi,rho,rho_ratio,lifted_len,lifted_ratio,"
         "adjacent_len\n";
  json rows = json::array();
  bool ordered = true;
  for (long L : c.L_grid) {
    const auto d = ladder::disconnected_set(L, U, table);
    const double lnL = std::log(static_cast<double>(L));
    const double rho_ratio =
        d.rho * lnL / (std::numbers::pi * (1.0 - kEulerGamma) * static_cast<double>(L));
    const double lifted_ratio = d.lifted_len / (static_cast<double>(L) / lnL);
    ordered = ordered && d.base.hi() < d.lifted.lo();
    csv << L << ',' << fmt(U) << ',' << fmt(d.base.lo()) << ',' << fmt(d.base.hi()) << ','
        << fmt(d.lifted.lo()) << ',' << fmt(d.lifted.hi()) << ',' << fmt(d.rho) << ','
        << fmt(rho_ratio) << ',' << fmt(d.lifted_len) << ',' << fmt(lifted_ratio) << ','
        << fmt(d.adjacent_len) << '\n';
    rows.push_back({{"L", L},
                    {"U", U},
                    {"base", {d.base.lo(), d.base.hi()}},
                    {"lifted", {d.lifted.lo(), d.lifted.hi()}},
                    {"rho", d.rho},
                    {"rho_ratio", rho_ratio},
                    {"lifted_len", d.lifted_len},
                    {"lifted_ratio", lifted_ratio},
                    {"adjacent_len", d.adjacent_len}});
    std::printf("L=%-6ld rho=%.6f rho_ratio=%.4f lifted_len=%.4e\n", L, d.rho, rho_ratio,
                d.lifted_len);
  }
  write_report(c.output_path, "ladder",
               {{"cache", c.cache_path},
                {"t_max", table.t_max()},
                {"knots", table.size()},
                {"ordered", ordered},
                {"rows", rows}});
  return ordered ? kPass : kFail;
}

int cmd_verify_hybrid(const Overrides& o) {
  const auto c = resolve(o);
  const double tol = o.tol.value_or(c.exact_tol);
  const auto table = table_for(c);
  auto csv = open_csv(fs::path(c.output_path) / "hybrid.csv");
  csv << "L,U,l,alpha0,alpha1,factorization_residual,hybrid_residual,epsilon,epsilon_prime,"
         "bound_ratio\n";
  json entries = json::array();
  bool pass = true;
  for (long L : c.L_grid) {
    for (double U : c.U_grid) {
      const auto e = hybrid::epsilon(L, U, table);
      json triples = json::array();
      double worst = e.exact_residual;
      for (const auto& t : e.terms.triples) {
        const double r = factorization::check_exact_factorization(t, table);
        worst = std::max(worst, r);
        triples.push_back({{"l", t.l},
                           {"alpha0", t.alpha0},
                           {"alpha1", t.alpha1},
                           {"mean", t.mean},
                           {"root_rule", "smallest"},
                           {"scan_samples", t.scan_samples},
                           {"residual", r}});
        csv << L << ',' << fmt(U) << ',' << t.l << ',' << fmt(t.alpha0) << ','
            << fmt(t.alpha1) << ',' << fmt(r) << ',' << fmt(e.exact_residual) << ','
            << fmt(e.epsilon) << ',' << fmt(e.epsilon_prime) << ',' << fmt(e.bound_ratio)
            << '\n';
      }
      const bool ok = worst <= tol;
      pass = pass && ok;
      entries.push_back({{"L", L},
                         {"U", U},
                         {"triples", triples},
                         {"hybrid_residual", e.exact_residual},
                         {"epsilon", e.epsilon},
                         {"epsilon_prime", e.epsilon_prime},
                         {"omega", {e.omega1, e.omega2, e.omega3}},
                         {"A", {e.terms.A1, e.terms.A2, e.terms.A3}},
                         {"bound_ratio", e.bound_ratio},
                         {"pass", ok}});
      std::printf("L=%-6ld U=%.3f worst_residual=%.3e epsilon=%+.3e bound_ratio=%.3e %s\n", L,
                  U, worst, e.epsilon, e.bound_ratio, ok ? "ok" : "FAIL");
    }
  }
  write_report(c.output_path, "hybrid", {{"tolerance", tol}, {"entries", entries}});
  return pass ? kPass : kFail;
}

json point_json(const metaeq::Slot& slot, metaeq::Complex s) {
  return {{"n", slot.first}, {"l", slot.second}, {"re", s.real()}, {"im", s.imag()}};
}

int cmd_verify_meta(const Overrides& o) {
  const auto c = resolve(o);
  const double tol = o.tol.value_or(c.meta_tol);
  const auto table = table_for(c);
  const auto tr = hybrid::triples(c.meta_L(), c.meta_U(), table);
  curves::Alphas alphas;
  for (int l = 0; l < 3; ++l) {
    alphas.alpha0[l] = tr[l].alpha0;
    alphas.alpha1[l] = tr[l].alpha1;
  }
  const auto set = metaeq::build_curves(alphas, c.params);

  const fs::path curve_dir = fs::path(c.output_path) / "curves";
  fs::create_directories(curve_dir);
  json manifest = json::array();
  for (const auto& [slot, curve] : set.curves) {
    const std::string file =
        "omega_" + std::to_string(slot.first) + "_" + std::to_string(slot.second) + ".csv";
    curves::write_csv(curve, (curve_dir / file).string());
    manifest.push_back({{"file", file},
                        {"n", slot.first},
                        {"l", slot.second},
                        {"family", curve.family.name()},
                        {"level", curve.level},
                        {"seed", {curve.seed.real(), curve.seed.imag()}},
                        {"points", curve.points.size()},
                        {"length", curve.length()},
                        {"closed", curve.closed},
                        {"stop_reason", curve.stop_reason}});
  }
  std::ofstream(curve_dir / "manifest.json") << manifest.dump(2) << '\n';

  const auto equations = metaeq::generate_all(c.form);
  const auto reports = metaeq::verify_all(equations, set, c.samples, c.seed, c.slot_mode);
  json summary = json::array();
  json all = json::array();
  bool pass = true;
  for (std::size_t e = 0; e < equations.size(); ++e) {
    double worst = 0.0;
    for (const auto& r : reports) {
      if (r.equation == e) worst = std::max(worst, r.residual);
    }
    const double control = metaeq::perturbation_control(equations[e], set, c.perturbation_step);
    const bool ok = worst < tol && control > c.perturbation_min;
    pass = pass && ok;
    summary.push_back({{"key", metaeq::equation_key(equations[e])},
                       {"max_residual", worst},
                       {"perturbation_residual", control},
                       {"pass", ok}});
    std::printf("%-14s max_residual=%.3e perturbation=%.3e %s\n",
                metaeq::equation_key(equations[e]).c_str(), worst, control,
                ok ? "ok" : "FAIL");
  }
  for (const auto& r : reports) {
    json pts = json::array();
    for (const auto& [slot, s] : r.points) pts.push_back(point_json(slot, s));
    all.push_back({{"equation", r.equation},
                   {"key", r.key},
                   {"lhs", r.lhs},
                   {"rhs", r.rhs},
                   {"residual", r.residual},
                   {"points", pts}});
  }
  const auto& lv = set.levels;
  json levels = json::array();
  for (int n = 1; n <= 7; ++n) {
    levels.push_back({lv.level(n, 1), lv.level(n, 2), lv.level(n, 3)});
  }
  write_report(c.output_path, "meta",
               {{"L", c.meta_L()},
                {"U", c.meta_U()},
                {"seed", c.seed},
                {"samples", c.samples},
                {"tolerance", tol},
                {"alpha0", alphas.alpha0},
                {"alpha1", alphas.alpha1},
                {"levels", levels},
                {"equations", summary},
                {"reports", all}});
  return pass ? kPass : kFail;
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

// Single-hunk unified diff from a longest common subsequence of lines.
std::string unified_diff(const std::string& a, const std::string& b, const std::string& name_a,
                         const std::string& name_b) {
  const auto x = split_lines(a);
  const auto y = split_lines(b);
  const std::size_t n = x.size();
  const std::size_t m = y.size();
  std::vector<std::vector<std::size_t>> lcs(n + 1, std::vector<std::size_t>(m + 1, 0));
  for (std::size_t i = n; i-- > 0;) {
    for (std::size_t j = m; j-- > 0;) {
      lcs[i][j] = x[i] == y[j] ? lcs[i + 1][j + 1] + 1 : std::max(lcs[i + 1][j], lcs[i][j + 1]);
    }
  }
  std::ostringstream out;
  out << "--- " << name_a << "\n+++ " << name_b << "\n@@ -1," << n << " +1," << m << " @@\n";
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < n || j < m) {
    if (i < n && j < m && x[i] == y[j]) {
      out << ' ' << x[i++] << '\n';
      ++j;
    } else if (j < m && (i == n || lcs[i][j + 1] >= lcs[i + 1][j])) {
      out << '+' << y[j++] << '\n';
    } else {
      out << '-' << x[i++] << '\n';
    }
  }
  return out.str();
}

std::vector<metaeq::MetaEquation> select_equations(const std::string& pair, metaeq::Form form) {
  if (pair.empty()) return metaeq::generate_all(form);
  const auto comma = pair.find(',');
  if (comma == std::string::npos) {
    throw ConfigError("--pair expects two transmutations separated by a comma, e.g. 5.5,5.15");
  }
  metaeq::TransmutationId a;
  metaeq::TransmutationId b;
  try {
    a = metaeq::parse_id(pair.substr(0, comma));
    b = metaeq::parse_id(pair.substr(comma + 1));
  } catch (const FormatError& e) {
    throw ConfigError(std::string("--pair: ") + e.what());
  }
  if (a == b) throw ConfigError("--pair needs two different transmutations");
  if (static_cast<int>(a) > static_cast<int>(b)) std::swap(a, b);
  return {metaeq::crossbreed(a, b, form)};
}

int cmd_generate_equations(const Overrides& o) {
  const auto c = o.config_path.empty() ? config::RunConfig{} : config::load(o.config_path);
  const auto equations = select_equations(o.pair, c.form);
  bool pass = true;
  for (std::size_t k = 0; k < equations.size(); ++k) {
    const auto& eq = equations[k];
    const std::string text = metaeq::format_equation(eq);
    if (k) std::cout << '\n';
    std::cout << text;
    if (!o.check_golden) continue;
    const fs::path path = fs::path(o.golden_dir) / (metaeq::equation_key(eq) + ".txt");
    const std::string generated = std::string(metaeq::kGoldenVersion) + "\n" + text;
    std::ifstream in(path);
    if (!in) {
      std::cerr << "golden file missing: " << path.string() << '\n';
      pass = false;
      continue;
    }
    std::ostringstream golden;
    golden << in.rdbuf();
    if (golden.str() != generated) {
      std::cerr << unified_diff(golden.str(), generated, path.string(), "generated");
      pass = false;
    }
  }
  if (o.check_golden) {
    std::cerr << (pass ? "golden: all equations match\n" : "golden: MISMATCH\n");
  }
  return pass ? kPass : kFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ladderlab: surrogate ladder, hybrid formulas and meta-equations"};
  app.require_subcommand(1);
  Overrides o;

  auto common = [&o](CLI::App* sub) {
    sub->add_option("--config", o.config_path, "JSON run configuration");
    sub->add_option("--cache", o.cache_path, "ladder table cache file");
    sub->add_option("--out", o.output_path, "output directory");
    sub->add_option("--seed", o.seed, "sampler seed");
    sub->add_option("--tol", o.tol, "pass tolerance override");
    sub->add_option("--samples", o.samples, "assignments per equation");
  };
  auto* ladder_cmd = app.add_subcommand("ladder", "build or load the table, report gap metrics");
  common(ladder_cmd);
  auto* hybrid_cmd = app.add_subcommand("verify-hybrid", "factorization and hybrid-formula checks");
  common(hybrid_cmd);
  auto* meta_cmd = app.add_subcommand("verify-meta", "trace level curves, verify 15 equations");
  common(meta_cmd);
  auto* gen_cmd = app.add_subcommand("generate-equations", "print the canonical equations");
  gen_cmd->add_option("--config", o.config_path, "JSON run configuration");
  gen_cmd->add_option("--pair", o.pair, "one pair only, e.g. 5.5,5.15 or T5_5,T5_15");
  gen_cmd->add_flag("--check-golden", o.check_golden, "diff against the golden files");
  gen_cmd->add_option("--golden-dir", o.golden_dir, "golden file directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfig;
  }

  try {
    if (*ladder_cmd) return cmd_ladder(o);
    if (*hybrid_cmd) return cmd_verify_hybrid(o);
    if (*meta_cmd) return cmd_verify_meta(o);
    return cmd_generate_equations(o);
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kConfig;
  } catch (const Error& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kNumeric;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kNumeric;
  }
}
