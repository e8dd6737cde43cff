#include <cmath>
#include <numbers>

#include "doctest.h"
#include "oracles.hpp"

#include "entropylab/lattice/exact_diag.hpp"
#include "entropylab/lattice/experiments.hpp"
#include "entropylab/lattice/scaling.hpp"

using namespace entropylab;
using namespace entropylab::lattice;

namespace {

constexpr double pi = std::numbers::pi;

std::vector<int> range(int a, int b) {
  std::vector<int> v;
  for (int j = a; j < b; ++j) v.push_back(j);
  return v;
}

}  // namespace

TEST_CASE("ground-state correlations are a half-filled projector") {
  for (int n : {8, 10, 64, 130}) {
    const auto c = ground_state_correlations(n);
    CHECK(c.c.trace() == doctest::Approx(n / 2.0).epsilon(1e-12));
    CHECK((c.c * c.c - c.c).norm() < 1e-11);
    for (int j = 0; j < n; ++j) CHECK(std::abs(c.c(j, j) - 0.5) < 1e-13);
    CHECK((c.c - c.c.transpose()).norm() < 1e-14);
  }
  CHECK_THROWS(ground_state_correlations(9));
}

TEST_CASE("correlations match direct single-particle diagonalization") {
  for (int n : {4, 8, 10, 12, 32}) {
    const auto c = ground_state_correlations(n);
    const RMat want = oracle::filled_correlations(hopping_matrix(n, c.circle.boundary_sign()));
    CHECK((c.c - want).norm() < 1e-12);
  }
  // Four sites, antiperiodic: modes at +-pi/4 are filled, C_01 = cos(pi/4)/2.
  CHECK(ground_state_correlations(4).c(0, 1) == doctest::Approx(1.0 / (2.0 * std::sqrt(2.0))).epsilon(1e-14));
  CHECK(ground_state_sector(8) == BoundarySector::antiperiodic);
  CHECK(ground_state_sector(10) == BoundarySector::periodic);
}

TEST_CASE("lattice regions are half-open and snap to the grid") {
  const LatticeCircle c8(8);
  CHECK(lattice_region(c8, RegionSpec({{0.0, pi}})) == range(0, 4));
  CHECK_THROWS_AS(lattice_region(c8, RegionSpec({{0.0, 2 * pi - 0.1}})), InvalidArgument);
  CHECK_THROWS_AS(lattice_region(c8, RegionSpec({{0.1, 0.2}})), InvalidArgument);
  CHECK_THROWS(RegionSpec({{0.0, 1.0}, {0.5, 2.0}}));

  const LatticeCircle c64(64);
  const RegionSpec a({{0.0, 5 * pi / 16}, {pi / 2, 17 * pi / 16}});
  const auto sa = lattice_region(c64, a);
  CHECK(sa.size() == 10 + 18);
  CHECK(lattice_region(c64, a.rotated(pi / 8)).size() == sa.size());
  const auto comp = complement_sites(c64, sa);
  CHECK(comp.size() == 64 - sa.size());
  CHECK(lattice_region(c64, a.complement()) == comp);
}

TEST_CASE("Gaussian entropy kernel") {
  const auto c = ground_state_correlations(16);
  CHECK(region_entropy(c, {3}) == doctest::Approx(std::log(2.0)).epsilon(1e-13));
  CHECK(std::abs(region_entropy(c, range(0, 16))) < 1e-10);
  CHECK(binary_entropy(0.5) == doctest::Approx(std::log(2.0)));
  CHECK(binary_entropy(0.0) == 0.0);
  CHECK_THROWS(binary_entropy(1.1));
  CHECK(std::abs(product_state_relative_entropy(c, RegionSpec({{0.0, pi / 2}})) - 0.0) < 1e-15);
}

TEST_CASE("splitting an interval increases the product-state relative entropy") {
  const auto c = ground_state_correlations(128);
  const double whole = product_state_relative_entropy(c, RegionSpec({{0.0, pi / 2}, {pi, 3 * pi / 2}}));
  const double split =
      product_state_relative_entropy(c, RegionSpec({{0.0, pi / 4}, {pi / 4 + 1e-11, pi / 2}, {pi, 3 * pi / 2}}));
  CHECK(split > whole);
  CHECK(whole > 0.0);
}

TEST_CASE("exact diagonalization oracle") {
  for (int n : {8, 10}) {
    const ExactDiagonalization ed(n);
    const auto c = ground_state_correlations(n);
    CHECK((ed.correlation_matrix() - c.c).norm() < 1e-10);
    CHECK(ed.entropy({0}) == doctest::Approx(std::log(2.0)).epsilon(1e-10));
    const std::vector<int> a{0, 1};
    CHECK(std::abs(ed.entropy(a) - region_entropy(c, a)) < 1e-10);
    const std::vector<int> region{0, 1, 4, 5, 6};
    CHECK(std::abs(ed.entropy(region) - ed.entropy(complement_sites(c.circle, region))) < 1e-10);
    const RegionSpec two({{0.0, pi / 2}, {pi, 3 * pi / 2}});
    CHECK(std::abs(ed.product_state_relative_entropy(two) - product_state_relative_entropy(c, two)) < 1e-8);
  }
  CHECK_THROWS(ExactDiagonalization(14));
}

TEST_CASE("chord lengths and cross ratios") {
  CHECK(chord_length(0.0, pi) == doctest::Approx(2.0));
  CHECK(interval_length(0.0, 1.0, LengthConvention::arc) == doctest::Approx(1.0));
  CHECK_THROWS(interval_length(1.0, 1.0));
  CHECK(cross_ratio(RegionSpec({{0.0, pi / 2}, {pi, 3 * pi / 2}})) == doctest::Approx(1.0).epsilon(1e-14));
  const double small = cross_ratio(RegionSpec({{0.0, 1.0}, {1.0 + 1e-6, 3.0}}));
  CHECK(small < 1e-5);

  // Recompute eta from endpoints in long double.
  const long double a1 = 0.3L, b1 = 1.1L, a2 = 2.0L, b2 = 4.4L;
  auto chord = [](long double x, long double y) { return 2.0L * std::sin((y - x) / 2.0L); };
  const long double want = chord(b1, a2) * chord(b2, a1 + 2.0L * std::numbers::pi_v<long double>) /
                           (chord(a1, b1) * chord(a2, b2));
  const double got = cross_ratio(RegionSpec({{0.3, 1.1}, {2.0, 4.4}}));
  CHECK(std::abs(got - static_cast<double>(want)) < 1e-14);
}

TEST_CASE("regularized entropy and deficit") {
  const auto c = ground_state_correlations(64);
  const double third = pi / 3;  // chord length 1
  CHECK(std::abs(regularized_G(c, RegionSpec({{0.0, third}}))) < 1e-15);
  const DeficitOptions o{2.0, LengthConvention::chord, 1.0};
  CHECK(regularized_G(c, RegionSpec({{0.0, 1.0}}), o) == doctest::Approx(std::log(chord_length(0.0, 1.0)) / 3.0));

  // Rotation by a quarter turn maps I onto I'.
  const auto d = deficit_D(c, RegionSpec({{0.0, pi / 2}, {pi, 3 * pi / 2}}));
  CHECK(std::abs(d.D) < 1e-9);
  CHECK(d.mu == 1.0);
  CHECK(d.D_hat == 0.0);

  const auto g = deficit_D(c, RegionSpec({{0.0, 5 * pi / 16}, {pi / 2, 17 * pi / 16}}));
  CHECK(g.path_residual < 1e-12);
  CHECK(std::abs(g.D - (g.G_I - g.G_Icomp)) < 1e-15);
  CHECK_THROWS(deficit_D(c, RegionSpec({{0.0, 1.0}})));

  const auto r2 = product_net_deficit_2d(d, d);
  CHECK(std::abs(r2.D) < 1e-9);
  const auto three = deficit_D(c, RegionSpec({{0.0, 0.5}, {1.0, 2.0}, {3.0, 4.0}}));
  CHECK(std::isnan(three.eta));
  CHECK_THROWS_AS(product_net_deficit_2d(d, three), InvalidArgument);
}

TEST_CASE("central charge fit and extrapolation on exact model data") {
  const int n = 512;
  std::vector<int> ls{4, 8, 16, 32, 64, 128};
  std::vector<double> s;
  for (int l : ls) s.push_back(std::log(n / pi * std::sin(pi * l / n)) / 3.0 + 0.7);
  const auto f = central_charge_fit(ls, s, n);
  CHECK(f.c_hat == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(f.intercept == doctest::Approx(0.7).epsilon(1e-12));
  CHECK(f.points == 6);
  std::vector<int> few{1, 2, 3};
  std::vector<double> fs{0, 0, 0};
  CHECK_THROWS(central_charge_fit(few, fs, n));

  const std::vector<int> ns{256, 512, 1024, 2048};
  const std::vector<double> constant{2.5, 2.5, 2.5, 2.5};
  CHECK(extrapolate(ns, constant).v_inf == doctest::Approx(2.5).epsilon(1e-12));
  std::vector<double> v;
  for (int m : ns) v.push_back(3.0 + 5.0 / m);
  CHECK(std::abs(extrapolate(ns, v).v_inf - 3.0) < 1e-10);
  CHECK_THROWS(extrapolate(std::vector<int>{256, 512}, std::vector<double>{1, 2}));
}

TEST_CASE("shrink experiment") {
  const auto c = ground_state_correlations(256);
  // Two arcs: the remaining single arc has value 0.
  const RegionSpec two({{0.0, pi / 2}, {pi, 3 * pi / 2}});
  const std::vector<int> down{32, 16, 8, 4, 2, 1};
  const auto r = shrink_experiment(c, two, 0, down);
  CHECK(r.target == 0.0);
  CHECK(r.eventually_monotone);
  CHECK(r.steps.back().value < r.steps.front().value);

  const std::vector<int> up{1, 2, 4, 8, 16};
  const auto g = shrink_experiment(c, RegionSpec({{0.0, pi / 4}, {3 * pi / 4, 3 * pi / 2}, {7 * pi / 4 - 0.2, 7 * pi / 4}}), 0, up);
  CHECK(g.eventually_monotone);
  for (std::size_t k = 1; k < g.steps.size(); ++k) CHECK(g.steps[k].value > g.steps[k - 1].value);
}

TEST_CASE("cross-ratio collapse") {
  const auto c = ground_state_correlations(256);
  const RegionSpec a({{0.0, 5 * pi / 16}, {5 * pi / 8, 15 * pi / 16}});
  const std::vector<RegionSpec> rotated{a, a.rotated(3 * pi / 4)};
  CHECK(cross_ratio_collapse(c, rotated).spread < 1e-9);
  const std::vector<RegionSpec> mismatch{a, RegionSpec({{0.0, pi / 2}, {pi, 3 * pi / 2}})};
  CHECK_THROWS_AS(cross_ratio_collapse(c, mismatch), InvalidArgument);
  const auto ctl = cross_ratio_collapse(c, mismatch, {LengthConvention::chord, false, 0.0});
  CHECK(ctl.spread > 1e-2);
}
