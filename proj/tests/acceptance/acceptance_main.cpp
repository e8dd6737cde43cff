// Acceptance run: one PASS/FAIL line per criterion. Exit status is the number of failures.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <thread>

#include "entropylab/harness/runner.hpp"
#include "entropylab/identities.hpp"
#include "entropylab/instances.hpp"
#include "entropylab/lattice/exact_diag.hpp"

using namespace entropylab;
namespace h = entropylab::harness;
namespace lat = entropylab::lattice;

namespace {

constexpr std::uint64_t kSeed = 20240611;

struct Outcome {
  bool passed = false;
  std::string detail;
};

int failures = 0;

void criterion(int id, const char* name, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (!o.passed) ++failures;
  std::printf("%s [%2d] %s: %s (%.2f s)\n", o.passed ? "PASS" : "FAIL", id, name, o.detail.c_str(), secs);
  std::fflush(stdout);
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

double elapsed(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Mat pauli_x() {
  Mat s(2, 2);
  s << 0, 1, 1, 0;
  return s;
}
Mat pauli_z() {
  Mat s(2, 2);
  s << 1, 0, 0, -1;
  return s;
}

// Runs a lattice experiment from its built-in config, uncached, and reports its verdicts.
Outcome from_run(h::ExperimentKind kind, int jobs, double time_limit = 0.0) {
  auto cfg = h::default_config(kind);
  cfg.jobs = jobs;
  h::RunOptions opts;
  opts.use_cache = false;
  const auto t0 = std::chrono::steady_clock::now();
  const auto rep = h::run_experiment(cfg, opts);
  const double secs = elapsed(t0);
  std::string detail;
  for (const auto& v : rep.verdicts) {
    if (!detail.empty()) detail += "; ";
    detail += v.id + "=" + h::cell(v.value) + (v.passed ? "" : " (fail, tol " + h::cell(v.tolerance) + ")");
  }
  bool ok = rep.passed() && !rep.vacuous();
  if (time_limit > 0.0) {
    detail += fmt("; %.1f s of %.0f s", secs, time_limit);
    ok = ok && secs <= time_limit;
  }
  return {ok, detail};
}

std::vector<std::vector<int>> random_arc_regions(int n, int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::vector<int>> out;
  while (static_cast<int>(out.size()) < count) {
    const int arcs = std::uniform_int_distribution<int>(1, 4)(rng);
    std::vector<char> in(n, 0);
    for (int a = 0; a < arcs; ++a) {
      const int start = std::uniform_int_distribution<int>(0, n - 1)(rng);
      const int len = std::uniform_int_distribution<int>(1, std::max(1, n / 3))(rng);
      for (int k = 0; k < len; ++k) in[(start + k) % n] = 1;
    }
    std::vector<int> sites;
    for (int j = 0; j < n; ++j)
      if (in[j]) sites.push_back(j);
    if (!sites.empty() && static_cast<int>(sites.size()) < n) out.push_back(sites);
  }
  return out;
}

}  // namespace

int main() {
  const int jobs = std::max(1u, std::thread::hardware_concurrency());

  criterion(1, "Araki relative entropy equals the trace formula", [] {
    const auto t0 = std::chrono::steady_clock::now();
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
      const auto inst = make_factor_instance(kSeed + i, 16);
      const double s = relative_entropy_spatial(inst.omega, inst.phi);
      const double u = relative_entropy_umegaki(inst.omega.state_on(inst.m), inst.phi);
      worst = std::max(worst, std::abs(s - u));
    }
    const double secs = elapsed(t0);
    return Outcome{worst <= 1e-8 && secs < 10.0, fmt("200 instances, max diff %.3g (tol 1e-8), %.2f s (< 10 s)", worst, secs)};
  });

  criterion(2, "two-expectation identity", [] {
    const auto t0 = std::chrono::steady_clock::now();
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      const auto inst = make_prop1_instance(2 + i % 3, kSeed + 1000 + i);
      worst = std::max(worst, verify_prop1(inst.m, inst.omega, inst.e1, inst.e2).residual);
    }
    const double secs = elapsed(t0);
    return Outcome{worst <= 1e-6 && secs < 60.0, fmt("100 instances, max residual %.3g (tol 1e-6), %.2f s (< 60 s)", worst, secs)};
  });

  criterion(3, "additivity along expectation chains", [] {
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      const std::uint64_t s = kSeed + 2000 + i;
      CorReport r;
      if (i % 2 == 0) {
        const auto inst = make_cor_product_instance(s, 2, 2);
        r = verify_cor_fun(inst.omega, inst.f1, inst.f2);
      } else {
        const auto inst = make_cor_entangled_instance(s, (i / 2) % 2 == 0 ? 2 : 3);
        r = verify_cor_fun(inst.omega, inst.f1, inst.f2);
      }
      worst = std::max(worst, r.residual);
    }
    return Outcome{worst <= 1e-6, fmt("100 chains, max residual %.3g (tol 1e-6)", worst)};
  });

  criterion(4, "relative-entropy property list", [] {
    const double tol[] = {1e-8, 1e-12, 1e-9, 1e-9, 1e-8};
    bool ok = true;
    std::string detail;
    for (int which = 1; which <= 5; ++which) {
      const auto r = check_th515(which, kSeed + 3000 + which, 200, 16);
      bool item = r.worst <= tol[which - 1];
      if (which == 2) item = item && r.passed;
      ok = ok && item;
      detail += fmt("(%.0f) %.3g", which, r.worst) + (item ? "" : " FAIL") + (which < 5 ? ", " : "");
    }
    return Outcome{ok, "200 trials each: " + detail};
  });

  criterion(5, "index, multiplicativity and Pimsner-Popa", [] {
    bool ok = true;
    double idx_err = 0.0;
    {
      const std::vector<Mat> g{Mat::Identity(4, 4), kron(pauli_x(), pauli_x())};
      const auto flip = group_average_ce(tensor_leg_algebra({2, 2}, {true, true}), g);
      idx_err = std::max(idx_err, std::abs(kosaki_index_scalar(flip) - 2.0));
      const auto pp = pimsner_popa_check(flip, 500, kSeed + 4000);
      const auto wrong = pimsner_popa_check(flip, 500, kSeed + 4000, 0.6);
      ok = ok && pp.passed && !wrong.passed;
    }
    for (const auto& [table, order] : {std::pair{cyclic_group_table(2), 2}, std::pair{cyclic_group_table(3), 3},
                                       std::pair{symmetric_group_table(3), 6}}) {
      const auto act = translation_action(table);
      const auto e = group_average_ce(act.algebra, act.unitaries);
      idx_err = std::max(idx_err, std::abs(kosaki_index_scalar(e) - order));
    }
    double mult = 0.0;
    {
      const std::vector<Mat> g1{Mat::Identity(4, 4), kron(pauli_z(), Mat::Identity(2, 2))};
      const std::vector<Mat> g2{Mat::Identity(4, 4), kron(Mat::Identity(2, 2), pauli_z())};
      const auto outer = group_average_ce(tensor_leg_algebra({2, 2}, {true, true}), g1);
      const auto inner = group_average_ce(outer.target(), g2);
      const double prod = kosaki_index_scalar(outer) * kosaki_index_scalar(inner);
      mult = std::max(mult, std::abs(kosaki_index_scalar(compose_ce(outer, inner)) - prod) / prod);
      const std::vector<int> legs{2, 2, 2};
      const auto w = weyl_group(2);
      const auto a = group_average_ce(tensor_leg_algebra({2, 2, 2}, {true, true, true}), embed_group_on_leg(w, legs, 2));
      const auto b = group_average_ce(a.target(), embed_group_on_leg(w, legs, 1));
      const double p2 = kosaki_index_scalar(a) * kosaki_index_scalar(b);
      mult = std::max(mult, std::abs(kosaki_index_scalar(compose_ce(a, b)) - p2) / p2);
      const auto pp = pimsner_popa_check(a, 500, kSeed + 4001);
      ok = ok && pp.passed;
    }
    ok = ok && idx_err <= 1e-9 && mult <= 1e-8;
    return Outcome{ok, fmt("max |Ind - |G|| %.3g (tol 1e-9), multiplicativity %.3g (tol 1e-8), PP 500 samples",
                           idx_err, mult) +
                           (ok ? " pass, wrong lambda caught" : "")};
  });

  criterion(6, "Gaussian entropies agree with exact diagonalization", [] {
    const auto t0 = std::chrono::steady_clock::now();
    double worst = 0.0;
    int regions = 0;
    for (int n : {8, 10}) {
      const lat::ExactDiagonalization ed(n);
      const auto c = lat::ground_state_correlations(n);
      for (const auto& sites : random_arc_regions(n, 25, kSeed + n)) {
        worst = std::max(worst, std::abs(ed.entropy(sites) - lat::region_entropy(c, sites)));
        ++regions;
      }
    }
    const double secs = elapsed(t0);
    return Outcome{worst <= 1e-6 && secs < 60.0,
                   fmt("%.0f regions at N = 8, 10, max |dS| %.3g (tol 1e-6), %.2f s", regions, worst, secs)};
  });

  criterion(7, "global purity S(A) = S(A')", [] {
    const int n = 512;
    const auto c = lat::ground_state_correlations(n);
    double worst = 0.0;
    for (const auto& sites : random_arc_regions(n, 50, kSeed + 7)) {
      const auto comp = lat::complement_sites(c.circle, sites);
      worst = std::max(worst, std::abs(lat::region_entropy(c, sites) - lat::region_entropy(c, comp)));
    }
    return Outcome{worst <= 1e-8, fmt("50 regions at N = 512, max |S(A) - S(A')| %.3g (tol 1e-8)", worst)};
  });

  criterion(8, "free-fermion deficit vanishes", [&] { return from_run(h::ExperimentKind::duality, jobs, 180.0); });
  criterion(9, "central charge of the hopping chain", [&] { return from_run(h::ExperimentKind::c_fit, jobs); });
  criterion(10, "cross-ratio collapse", [&] { return from_run(h::ExperimentKind::collapse, jobs); });
  criterion(11, "shrink limit", [&] { return from_run(h::ExperimentKind::shrink, jobs); });
  criterion(12, "tensor-product net deficit", [&] { return from_run(h::ExperimentKind::two_d, jobs); });

  std::printf("%d of 12 criteria failed\n", failures);
  return failures;
}
