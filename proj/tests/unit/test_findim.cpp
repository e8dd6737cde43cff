#include <cmath>
#include <numbers>

#include "doctest.h"
#include "oracles.hpp"

#include "entropylab/algebra.hpp"
#include "entropylab/instances.hpp"
#include "entropylab/spatial.hpp"

using namespace entropylab;

namespace {

Mat diag2(double a, double b) {
  Mat d = Mat::Zero(2, 2);
  d(0, 0) = a;
  d(1, 1) = b;
  return d;
}

Mat id(int d) { return Mat::Identity(d, d); }

}  // namespace

TEST_CASE("block algebras have the expected spans") {
  CHECK(build_algebra({{2, 1}}).span_dim() == 4);
  const auto scalars = build_algebra({{1, 3}});
  CHECK(scalars.span_dim() == 1);
  CHECK(scalars.ambient_dim() == 3);
  const auto mixed = build_algebra({{2, 2}, {1, 1}});
  CHECK(mixed.ambient_dim() == 5);
  CHECK(mixed.span_dim() == 5);
  CHECK(mixed.closure_residual() < 1e-12);
}

TEST_CASE("commutant swaps block sizes and multiplicities") {
  const auto full = build_algebra({{2, 1}});
  CHECK(full.commutant().span_dim() == 1);
  CHECK(full.commutant().blocks() == std::vector<Block>{{1, 2}});

  const auto f = build_algebra({{2, 2}});
  CHECK(f.commutant().blocks() == std::vector<Block>{{2, 2}});
  CHECK(same_span(f.commutant().commutant(), f, 1e-12));

  // Null space of [x, b] = 0 over the basis, solved directly.
  const auto a = build_algebra({{2, 2}, {1, 1}});
  const Eigen::Index d = a.ambient_dim();
  Mat eqs(0, d * d);
  for (const auto& b : a.basis()) {
    const Mat c = sandwich(b, id(d)) - sandwich(id(d), b);
    Mat stacked(eqs.rows() + c.rows(), d * d);
    stacked << eqs, c;
    eqs = stacked;
  }
  Eigen::JacobiSVD<Mat> svd(eqs);
  int nullity = 0;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i) nullity += svd.singularValues()(i) < 1e-10;
  nullity += static_cast<int>(d * d - svd.singularValues().size());
  CHECK(nullity == a.commutant().span_dim());
  for (const auto& x : a.commutant().basis())
    for (const auto& b : a.basis()) CHECK((x * b - b * x).norm() < 1e-12);
  CHECK(a.commutant().blocks().size() == 2);
}

TEST_CASE("canonical densities") {
  const auto m2 = build_algebra({{2, 1}});
  const auto tr = trace_state(m2);
  CHECK((tr.density() - id(2) / 2.0).norm() < 1e-14);

  // Partial-trace oracle: the vector state on B(H_L) (x) 1 is rho_L (x) 1/m.
  Rng rng(3);
  const auto m = tensor_leg_algebra({3, 2}, {true, false});
  const Vec omega = random_unit_vector(6, rng);
  const auto w = VectorState(omega).state_on(m);
  Mat rho_l = Mat::Zero(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int r = 0; r < 2; ++r) rho_l(i, j) += omega(i * 2 + r) * std::conj(omega(j * 2 + r));
  CHECK((w.block_density() - kron(rho_l, id(2))).norm() < 1e-13);
  CHECK((w.density() - kron(rho_l, id(2) / 2.0)).norm() < 1e-13);

  const auto two = build_algebra({{1, 1}, {1, 1}});
  const auto zero_block = canonical_density(diag2(1.0, 0.0), two);
  CHECK_FALSE(zero_block.faithful());
  CHECK(std::abs(zero_block.density()(1, 1)) < 1e-15);

  CHECK_THROWS_AS(canonical_density(diag2(1.0, -0.5), two), NonPositiveFunctional);
}

TEST_CASE("spatial derivative of commuting diagonal densities") {
  const auto m = tensor_leg_algebra({2, 2}, {true, false});
  const auto mp = m.commutant();
  {
    const auto d = spatial_derivative(canonical_density(kron(id(2) / 2.0, id(2) / 2.0), m),
                                      canonical_density(kron(id(2) / 2.0, id(2) / 2.0), mp));
    CHECK((d - id(4)).norm() < 1e-13);
  }
  const double p = 0.3, q = 0.8;
  const auto psi = canonical_density(kron(diag2(p, 1 - p), id(2) / 2.0), m);
  const auto phip = canonical_density(kron(id(2) / 2.0, diag2(q, 1 - q)), mp);
  const RVec ev = eigh(spatial_derivative(psi, phip)).values;
  std::vector<double> want{p / q, p / (1 - q), (1 - p) / q, (1 - p) / (1 - q)};
  std::sort(want.begin(), want.end());
  for (int i = 0; i < 4; ++i) CHECK(ev(i) == doctest::Approx(want[i]).epsilon(1e-12));

  CHECK_THROWS_AS(spatial_derivative(psi, canonical_density(kron(id(2) / 2.0, diag2(1.0, 0.0)), mp)), NotFaithful);
  CHECK_THROWS_AS(spatial_derivative(psi, trace_state(m)), AlgebraMismatch);
}

TEST_CASE("spatial derivative agrees with the GNS modular operator") {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    Rng rng(seed);
    for (int n : {2, 3}) {
      const auto m = build_algebra({{n, n}}).conjugated(rng.random_unitary(n * n));
      const VectorState omega(random_unit_vector(n * n, rng));
      REQUIRE(omega.is_cyclic(m));
      REQUIRE(omega.is_separating(m));
      const Mat delta = spatial_derivative(omega.state_on(m), omega.state_on(m.commutant()));
      const Mat gns = oracle::gns_modular_operator(m.basis(), omega.vector());
      CHECK((delta - gns).norm() < 1e-9 * gns.norm());

      // Both flows: Delta^{it} preserves M and M', and omega is invariant.
      const Mat u = spatial_derivative_power(omega.state_on(m), omega.state_on(m.commutant()), 0.7);
      const Mat x = m.random_element(rng);
      const Mat y = m.commutant().random_element(rng);
      const Mat sx = u * x * u.adjoint();
      const Mat sy = u * y * u.adjoint();
      CHECK(m.distance(sx) < 1e-10);
      CHECK(m.commutant().distance(sy) < 1e-10);
      const Vec& o = omega.vector();
      CHECK(std::abs(o.dot(sx * o) - o.dot(x * o)) < 1e-10);
    }
  }
}

TEST_CASE("modular flow and cocycle closed forms") {
  const auto m2 = build_algebra({{2, 1}});
  const double p = 0.2, t = 1.3;
  Mat e12 = Mat::Zero(2, 2);
  e12(0, 1) = 1.0;
  const auto psi = canonical_density(diag2(p, 1 - p), m2);
  const Mat flowed = modular_flow(psi, e12, t);
  CHECK((flowed - std::polar(1.0, t * std::log(p / (1 - p))) * e12).norm() < 1e-13);
  CHECK((modular_flow(psi, e12, 0.0) - e12).norm() < 1e-14);
  CHECK((modular_flow(trace_state(m2), e12, t) - e12).norm() < 1e-13);

  CHECK((connes_cocycle(psi, psi, t) - id(2)).norm() < 1e-13);
  const double a = 0.6;
  const auto psi2 = canonical_density(diag2(a, 1 - a), m2);
  Mat want = Mat::Zero(2, 2);
  want(0, 0) = std::polar(1.0, t * (std::log(p) - std::log(a)));
  want(1, 1) = std::polar(1.0, t * (std::log(1 - p) - std::log(1 - a)));
  CHECK((connes_cocycle(psi, psi2, t) - want).norm() < 1e-13);

  Rng rng(5);
  const auto m = build_algebra({{2, 2}});
  const auto r1 = random_state(m, rng), r2 = random_state(m, rng);
  const auto p1 = random_state(m.commutant(), rng), p2 = random_state(m.commutant(), rng);
  CHECK((connes_cocycle(r1, r2, t, p1) - connes_cocycle(r1, r2, t, p2)).norm() < 1e-11);
}

TEST_CASE("relative entropy: spatial and trace forms") {
  Rng rng(9);
  const auto m = tensor_leg_algebra({3, 3}, {true, false});
  const VectorState generic(random_unit_vector(9, rng));
  CHECK(std::abs(relative_entropy_spatial(generic, generic.state_on(m))) < 1e-12);

  // Omega = sum sqrt(p_i) e_i (x) e_i against sigma on the left factor.
  const std::vector<double> p{0.5, 0.3, 0.2};
  Vec omega = Vec::Zero(9);
  for (int i = 0; i < 3; ++i) omega(i * 3 + i) = std::sqrt(p[i]);
  const Mat sigma = rng.random_density(3);
  const auto phi = canonical_density(kron(sigma, id(3) / 3.0), m);
  Mat rho = Mat::Zero(3, 3);
  for (int i = 0; i < 3; ++i) rho(i, i) = p[i];
  const long double want = oracle::umegaki(rho, sigma);
  CHECK(relative_entropy_spatial(VectorState(omega), phi) == doctest::Approx(static_cast<double>(want)).epsilon(1e-12));
}

TEST_CASE("relative entropy: infinite outside the support") {
  const auto m = tensor_leg_algebra({2, 2}, {true, false});
  Vec omega = Vec::Zero(4);
  omega(0) = omega(3) = 1.0 / std::sqrt(2.0);
  const auto phi = canonical_density(kron(diag2(1.0, 0.0), id(2) / 2.0), m);
  CHECK(std::isinf(relative_entropy_spatial(VectorState(omega), phi)));
}

TEST_CASE("Umegaki closed forms and a long-double recomputation") {
  const auto m2 = build_algebra({{2, 1}});
  const auto rho = canonical_density(diag2(1.0, 0.0), m2);
  CHECK(relative_entropy_umegaki(rho, trace_state(m2)) == doctest::Approx(std::log(2.0)).epsilon(1e-14));
  CHECK(relative_entropy_umegaki(rho, rho) == doctest::Approx(0.0));
  CHECK(std::isinf(relative_entropy_umegaki(trace_state(m2), rho)));

  const auto m4 = build_algebra({{4, 1}});
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    Rng rng(seed);
    const auto a = random_state(m4, rng), b = random_state(m4, rng);
    const double got = relative_entropy_umegaki(a, b);
    const long double want = oracle::umegaki(a.density(), b.density());
    CHECK(std::abs(got - static_cast<double>(want)) < 1e-12);
  }
}

TEST_CASE("Araki and Umegaki agree on random factor instances") {
  for (std::uint64_t seed = 100; seed < 120; ++seed) {
    const auto inst = make_factor_instance(seed, 16);
    const double s = relative_entropy_spatial(inst.omega, inst.phi);
    const double u = relative_entropy_umegaki(inst.omega.state_on(inst.m), inst.phi);
    CHECK(std::abs(s - u) < 1e-8);
    CHECK(s >= -1e-12);
  }
}
