#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "entropylab/harness/cache.hpp"
#include "entropylab/harness/runner.hpp"
#include "entropylab/identities.hpp"
#include "entropylab/instances.hpp"
#include "entropylab/lattice/exact_diag.hpp"
#include "entropylab/lattice/experiments.hpp"
#include "entropylab/lattice/scaling.hpp"

namespace py = pybind11;
using namespace entropylab;
namespace lat = entropylab::lattice;
namespace h = entropylab::harness;

namespace {

MatrixBlockAlgebra legs_algebra(const std::vector<int>& legs, const std::vector<bool>& active) {
  if (legs.size() != active.size()) throw InvalidArgument("legs and active must have the same length");
  // std::vector<bool> has no contiguous storage to view as a span.
  const auto flags = std::make_unique<bool[]>(active.size());
  std::copy(active.begin(), active.end(), flags.get());
  return tensor_leg_algebra(legs, std::span<const bool>(flags.get(), active.size()));
}

lat::RegionSpec region(const std::vector<std::pair<double, double>>& arcs) {
  std::vector<lat::Arc> a;
  for (const auto& [x, y] : arcs) a.push_back({x, y});
  return lat::RegionSpec(a);
}

lat::LengthConvention convention(const std::string& s) {
  if (s == "chord") return lat::LengthConvention::chord;
  if (s == "arc") return lat::LengthConvention::arc;
  throw InvalidArgument("convention must be 'chord' or 'arc'");
}

py::dict deficit_dict(const lat::DeficitReport& d) {
  py::dict out;
  out["n"] = d.n;
  out["s_I"] = d.s_I;
  out["s_Icomp"] = d.s_Icomp;
  out["eta"] = d.eta;
  out["G_I"] = d.G_I;
  out["G_Icomp"] = d.G_Icomp;
  out["D"] = d.D;
  out["D_cross_ratio"] = d.D_cross_ratio;
  out["path_residual"] = d.path_residual;
  out["mu"] = d.mu;
  out["D_hat"] = d.D_hat;
  return out;
}

ConditionalExpectation average(const std::vector<int>& legs, const std::vector<Mat>& unitaries) {
  std::vector<bool> all(legs.size(), true);
  return group_average_ce(legs_algebra(legs, all), unitaries);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "entropylab C++ core";
  m.attr("engine_version") = h::kEngineVersion;

  py::register_exception<Error>(m, "EntropyLabError");
  py::register_exception<h::ConfigError>(m, "ConfigError");

  // Finite-dimensional core. Matrices are numpy arrays; algebras are tensor-leg algebras
  // given by leg dimensions and a flag per leg.
  m.def("relative_entropy_umegaki",
        [](const Mat& rho, const Mat& sigma) {
          const auto full = build_algebra({{static_cast<int>(rho.rows()), 1}});
          return relative_entropy_umegaki(canonical_density(rho, full), canonical_density(sigma, full));
        },
        py::arg("rho"), py::arg("sigma"), "Tr rho (ln rho - ln sigma); inf outside the support.");

  m.def("relative_entropy_spatial",
        [](const Vec& omega, const Mat& phi_density, const std::vector<int>& legs, const std::vector<bool>& active) {
          const auto a = legs_algebra(legs, active);
          return relative_entropy_spatial(VectorState(omega), canonical_density(phi_density, a));
        },
        py::arg("omega"), py::arg("phi_density"), py::arg("legs"), py::arg("active"),
        "Araki relative entropy of the vector state of omega and the state with the given ambient density,\n"
        "both on the tensor-leg algebra.");

  m.def("spatial_derivative",
        [](const Mat& psi, const Mat& phi_prime, const std::vector<int>& legs, const std::vector<bool>& active) {
          const auto a = legs_algebra(legs, active);
          return spatial_derivative(canonical_density(psi, a), canonical_density(phi_prime, a.commutant()));
        },
        py::arg("psi"), py::arg("phi_prime"), py::arg("legs"), py::arg("active"));

  m.def("group_average_index",
        [](const std::vector<int>& legs, const std::vector<Mat>& unitaries) {
          return kosaki_index_scalar(average(legs, unitaries));
        },
        py::arg("legs"), py::arg("unitaries"), "Index of the fixed-point expectation of a unitary group on the full algebra.");

  m.def("pimsner_popa",
        [](const std::vector<int>& legs, const std::vector<Mat>& unitaries, int samples, std::uint64_t seed,
           std::optional<double> lambda) {
          const auto r = pimsner_popa_check(average(legs, unitaries), samples, seed, lambda);
          py::dict out;
          out["lambda"] = r.lambda;
          out["worst_eigenvalue"] = r.worst_eigenvalue;
          out["samples"] = r.samples;
          out["passed"] = r.passed;
          return out;
        },
        py::arg("legs"), py::arg("unitaries"), py::arg("samples") = 500, py::arg("seed") = 1,
        py::arg("lambda_") = py::none());

  m.def("weyl_group", &weyl_group, py::arg("d"));

  m.def("verify_prop1",
        [](int a, std::uint64_t seed) {
          const auto i = make_prop1_instance(a, seed);
          const auto r = verify_prop1(i.m, i.omega, i.e1, i.e2);
          return py::make_tuple(r.s1, r.s2, r.s12, r.residual);
        },
        py::arg("a"), py::arg("seed"), "(S1, S2, S12, residual) on a seeded instance with M = M_a (x) 1.");

  m.def("verify_cor_fun",
        [](std::uint64_t seed, bool entangled, int d) {
          const auto i = entangled ? make_cor_entangled_instance(seed, d) : make_cor_product_instance(seed, d, d);
          const auto r = verify_cor_fun(i.omega, i.f1, i.f2);
          return py::make_tuple(r.s_composed, r.s_f2, r.s_f1, r.residual);
        },
        py::arg("seed"), py::arg("entangled") = false, py::arg("d") = 2);

  m.def("check_th515",
        [](int which, std::uint64_t seed, int trials) {
          const auto r = check_th515(which, seed, trials);
          py::dict out;
          out["worst"] = r.worst;
          out["passed"] = r.passed;
          out["values"] = r.values;
          out["detail"] = r.detail;
          return out;
        },
        py::arg("which"), py::arg("seed") = 1, py::arg("trials") = 20);

  // Lattice. Regions are lists of (a, b) half-open arcs in radians.
  m.def("ground_state_correlations", [](int n) { return lat::ground_state_correlations(n).c; }, py::arg("n"));
  m.def("region_entropy",
        [](int n, const std::vector<int>& sites) { return lat::region_entropy(lat::ground_state_correlations(n), sites); },
        py::arg("n"), py::arg("sites"));
  m.def("lattice_region",
        [](int n, const std::vector<std::pair<double, double>>& arcs) {
          return lat::lattice_region(lat::LatticeCircle(n), region(arcs));
        },
        py::arg("n"), py::arg("arcs"));
  m.def("product_state_relative_entropy",
        [](int n, const std::vector<std::pair<double, double>>& arcs) {
          return lat::product_state_relative_entropy(lat::ground_state_correlations(n), region(arcs));
        },
        py::arg("n"), py::arg("arcs"));
  m.def("cross_ratio",
        [](const std::vector<std::pair<double, double>>& arcs, const std::string& conv) {
          return lat::cross_ratio(region(arcs), convention(conv));
        },
        py::arg("arcs"), py::arg("convention") = "chord");
  m.def("deficit",
        [](int n, const std::vector<std::pair<double, double>>& arcs, double c, bool chiral, const std::string& conv) {
          const lat::DeficitOptions o{c, convention(conv), chiral ? 0.5 : 1.0};
          return deficit_dict(lat::deficit_D(lat::ground_state_correlations(n), region(arcs), o));
        },
        py::arg("n"), py::arg("arcs"), py::arg("c") = 1.0, py::arg("chiral") = true, py::arg("convention") = "chord");
  m.def("central_charge_fit",
        [](int n, const std::vector<int>& lengths) {
          const auto f = lat::central_charge_fit(lat::ground_state_correlations(n), lengths);
          return py::make_tuple(f.c_hat, f.intercept, f.residual_norm);
        },
        py::arg("n"), py::arg("lengths"));
  m.def("extrapolate",
        [](const std::vector<int>& ns, const std::vector<double>& values) {
          const auto e = lat::extrapolate(ns, values);
          return py::make_tuple(e.v_inf, e.a, e.b, e.error_estimate);
        },
        py::arg("ns"), py::arg("values"));
  m.def("exact_entropy",
        [](int n, const std::vector<int>& sites) { return lat::ExactDiagonalization(n).entropy(sites); },
        py::arg("n"), py::arg("sites"), "Entropy from the exact many-body ground state (n <= 12).");

  // Harness.
  m.def("default_config_text",
        [](const std::string& kind) { return h::default_config_text(h::parse_kind(kind)); }, py::arg("kind"));
  m.def("canonical_config", [](const std::string& text) { return h::canonical_text(h::parse_config(text)); },
        py::arg("text"));
  m.def("config_hash", [](const std::string& text) { return h::config_hash(text); }, py::arg("canonical_text"));
  m.def("run_experiment_json",
        [](const std::string& text, bool use_cache, std::optional<std::string> out_dir) {
          const auto cfg = h::parse_config(text);
          h::RunReport rep;
          {
            py::gil_scoped_release release;
            h::RunOptions opts;
            opts.use_cache = use_cache;
            rep = h::run_experiment(cfg, opts);
            if (out_dir) h::emit_report(rep, *out_dir);
          }
          return h::to_json(rep).dump();
        },
        py::arg("config_text"), py::arg("use_cache") = false, py::arg("out_dir") = py::none());
}
