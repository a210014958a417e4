#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ladderlab/config.hpp"
#include "ladderlab/error.hpp"
#include "ladderlab/factorization.hpp"
#include "ladderlab/hybrid.hpp"
#include "ladderlab/ladder.hpp"
#include "ladderlab/metaeq.hpp"
#include "ladderlab/specfun.hpp"

namespace py = pybind11;
using namespace ladderlab;

namespace {

py::dict interval(const numerics::Interval& iv) {
  py::dict d;
  d["lo"] = iv.lo();
  d["hi"] = iv.hi();
  return d;
}

py::dict segment_dict(const ladder::DisconnectedSet& d) {
  py::dict out;
  out["base"] = interval(d.base);
  out["lifted"] = interval(d.lifted);
  out["rho"] = d.rho;
  out["base_len"] = d.base_len;
  out["lifted_len"] = d.lifted_len;
  out["adjacent_len"] = d.adjacent_len;
  return out;
}

py::dict triple_dict(const factorization::FactorizationTriple& t) {
  py::dict out;
  out["l"] = t.l;
  out["d"] = t.d;
  out["alpha0"] = t.alpha0;
  out["alpha1"] = t.alpha1;
  out["mean"] = t.mean;
  out["mean_error"] = t.mean_error;
  out["segment"] = segment_dict(t.segment);
  return out;
}

curves::FamilyParams family_params(std::array<int, 3> n, std::array<int, 3> p,
                                   std::array<double, 3> ksq) {
  curves::FamilyParams params;
  params.n = n;
  params.p = p;
  params.ksq = ksq;
  return params;
}

// alphas -> curves -> all 15 equations; one summary dict per equation.
py::list verify_meta(long L, double U, const ladder::LadderTable& table, std::size_t samples,
                     std::uint64_t seed, bool same_point, std::array<int, 3> n,
                     std::array<int, 3> p, std::array<double, 3> ksq) {
  const auto tr = hybrid::triples(L, U, table);
  curves::Alphas alphas;
  for (int l = 0; l < 3; ++l) {
    alphas.alpha0[l] = tr[l].alpha0;
    alphas.alpha1[l] = tr[l].alpha1;
  }
  const auto set = metaeq::build_curves(alphas, family_params(n, p, ksq));
  const auto equations = metaeq::generate_all();
  const auto reports =
      metaeq::verify_all(equations, set, samples, seed,
                         same_point ? metaeq::SlotMode::SamePoint : metaeq::SlotMode::Independent);
  py::list out;
  for (std::size_t e = 0; e < equations.size(); ++e) {
    double worst = 0.0;
    std::size_t count = 0;
    for (const auto& r : reports) {
      if (r.equation != e) continue;
      worst = std::max(worst, r.residual);
      ++count;
    }
    py::dict d;
    d["key"] = metaeq::equation_key(equations[e]);
    d["max_residual"] = worst;
    d["assignments"] = count;
    d["perturbation_residual"] = metaeq::perturbation_control(equations[e], set);
    out.append(d);
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_ladderlab, m) {
  m.doc() = "Native core of ladderlab";

  auto base = py::register_exception<Error>(m, "Error");
  py::register_exception<DomainError>(m, "DomainError", base.ptr());
  py::register_exception<PoleError>(m, "PoleError", base.ptr());
  py::register_exception<RangeError>(m, "RangeError", base.ptr());
  py::register_exception<ConvergenceError>(m, "ConvergenceError", base.ptr());
  py::register_exception<ResolutionError>(m, "ResolutionError", base.ptr());
  py::register_exception<SeedNotFoundError>(m, "SeedNotFoundError", base.ptr());
  py::register_exception<SingularityError>(m, "SingularityError", base.ptr());
  py::register_exception<ConfigError>(m, "ConfigError", base.ptr());
  py::register_exception<FormatError>(m, "FormatError", base.ptr());

  m.def("zeta_critical_abs_sq", &specfun::zeta_critical_abs_sq, py::arg("t"));
  m.def("hardy_z", &specfun::hardy_z, py::arg("t"));
  m.def("zeta", &specfun::zeta_complex, py::arg("s"));
  m.def("gamma", &specfun::gamma_complex, py::arg("s"));
  m.def("bessel_j", &specfun::bessel_j, py::arg("p"), py::arg("s"));
  m.def(
      "jacobi_sncndn",
      [](specfun::Complex u, double k_squared) {
        const auto v =
            specfun::jacobi_sncndn(u, specfun::EllipticModulus::from_k_squared(k_squared));
        return py::make_tuple(v.sn, v.cn, v.dn);
      },
      py::arg("u"), py::arg("k_squared"));

  m.attr("LADDER_SHIFT") = ladder::kLadderShift;
  m.attr("PHI_AT_ZERO") = ladder::kPhiAtZero;
  m.def("phi_from_h", &ladder::phi_from_h, py::arg("h"));
  m.def("ladder_lhs", &ladder::ladder_lhs, py::arg("phi"));

  py::class_<ladder::LadderTable>(m, "LadderTable")
      .def_static("build", &ladder::LadderTable::build, py::arg("t_max"), py::arg("tol") = 1e-10,
                  py::call_guard<py::gil_scoped_release>())
      .def_static("load", &ladder::LadderTable::load, py::arg("path"))
      .def_static("load_or_build", &ladder::LadderTable::load_or_build, py::arg("path"),
                  py::arg("t_max"), py::arg("tol") = 1e-10,
                  py::call_guard<py::gil_scoped_release>())
      .def("save", &ladder::LadderTable::save, py::arg("path"))
      .def_property_readonly("t_max", &ladder::LadderTable::t_max)
      .def_property_readonly("tolerance", &ladder::LadderTable::tolerance)
      .def("__len__", &ladder::LadderTable::size)
      .def("H", &ladder::LadderTable::H, py::arg("T"))
      .def("phi1", &ladder::LadderTable::phi1, py::arg("T"))
      .def("phi1_prime", &ladder::LadderTable::phi1_prime, py::arg("T"))
      .def("omega", &ladder::LadderTable::omega, py::arg("T"))
      .def("phi1_max", &ladder::LadderTable::phi1_max)
      .def("reverse_iterate", &ladder::LadderTable::reverse_iterate, py::arg("T"));

  m.def(
      "disconnected_set",
      [](long L, double U, const ladder::LadderTable& table) {
        return segment_dict(ladder::disconnected_set(L, U, table));
      },
      py::arg("L"), py::arg("U"), py::arg("table"));

  m.def(
      "mean_value_point",
      [](long L, double U, int l, const ladder::LadderTable& table) {
        const auto t = factorization::mean_value_point(L, U, l, table);
        auto d = triple_dict(t);
        d["residual"] = factorization::check_exact_factorization(t, table);
        return d;
      },
      py::arg("L"), py::arg("U"), py::arg("l"), py::arg("table"));

  m.def(
      "epsilon",
      [](long L, double U, const ladder::LadderTable& table) {
        const auto e = hybrid::epsilon(L, U, table);
        py::dict d;
        d["L"] = e.L;
        d["U"] = e.U;
        d["epsilon"] = e.epsilon;
        d["epsilon_prime"] = e.epsilon_prime;
        d["omega"] = py::make_tuple(e.omega1, e.omega2, e.omega3);
        d["A"] = py::make_tuple(e.terms.A1, e.terms.A2, e.terms.A3);
        d["bound_ratio"] = e.bound_ratio;
        d["hybrid_residual"] = e.exact_residual;
        py::list triples;
        for (const auto& t : e.terms.triples) triples.append(triple_dict(t));
        d["triples"] = triples;
        return d;
      },
      py::arg("L"), py::arg("U"), py::arg("table"));

  m.def(
      "equations",
      [](const std::string& form) {
        metaeq::Form f = metaeq::Form::Canonical;
        if (form == "cleared") {
          f = metaeq::Form::Cleared;
        } else if (form == "fractional") {
          f = metaeq::Form::Fractional;
        } else if (form != "canonical") {
          throw ConfigError("form must be canonical, cleared or fractional");
        }
        py::list out;
        for (const auto& eq : metaeq::generate_all(f)) {
          py::dict d;
          d["key"] = metaeq::equation_key(eq);
          d["text"] = metaeq::format_equation(eq);
          d["sound"] = metaeq::eliminates_soundly(eq);
          d["normalized"] = eq.normalized;
          out.append(d);
        }
        return out;
      },
      py::arg("form") = "canonical");
  m.def(
      "crossbreed",
      [](const std::string& a, const std::string& b) {
        return metaeq::format_equation(
            metaeq::crossbreed(metaeq::parse_id(a), metaeq::parse_id(b)));
      },
      py::arg("a"), py::arg("b"));
  m.attr("GOLDEN_VERSION") = metaeq::kGoldenVersion;

  m.def(
      "find_seed",
      [](int n, int l, double level, double alpha1, std::array<int, 3> nn,
         std::array<int, 3> p, std::array<double, 3> ksq) {
        return curves::find_seed(curves::LevelFamily(n, l, family_params(nn, p, ksq)), level,
                                 alpha1);
      },
      py::arg("n"), py::arg("l"), py::arg("level"), py::arg("alpha1") = 0.0,
      py::arg("n_params") = std::array<int, 3>{1, 1, 2},
      py::arg("p_params") = std::array<int, 3>{0, 1, 2},
      py::arg("ksq") = std::array<double, 3>{0.5, 0.5, 0.9});
  m.def(
      "trace",
      [](int n, int l, double level, specfun::Complex seed, double max_arclen) {
        curves::TraceOptions opts;
        opts.max_arclen = max_arclen;
        const curves::LevelFamily family(n, l);
        const auto curve = curves::trace(family, level, seed, opts);
        py::dict d;
        d["points"] = curve.points;
        d["closed"] = curve.closed;
        d["stop_reason"] = curve.stop_reason;
        d["length"] = curve.length();
        return d;
      },
      py::arg("n"), py::arg("l"), py::arg("level"), py::arg("seed"), py::arg("max_arclen") = 12.0);

  m.def("verify_meta", &verify_meta, py::arg("L"), py::arg("U"), py::arg("table"),
        py::arg("samples") = 10, py::arg("seed") = 20240101, py::arg("same_point") = false,
        py::arg("n_params") = std::array<int, 3>{1, 1, 2},
        py::arg("p_params") = std::array<int, 3>{0, 1, 2},
        py::arg("ksq") = std::array<double, 3>{0.5, 0.5, 0.9});

  m.def(
      "validate_config",
      [](const std::string& json_text) {
        return config::to_json_text(config::from_json_text(json_text));
      },
      py::arg("json_text"));
  m.def("required_t_max", &config::required_t_max, py::arg("L_grid"), py::arg("U_grid"));
}
