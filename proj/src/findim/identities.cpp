#include "entropylab/identities.hpp"

#include <cmath>
#include <sstream>

namespace entropylab {

Prop1Report verify_prop1(const MatrixBlockAlgebra& m, const VectorState& omega, const ConditionalExpectation& e1,
                         const ConditionalExpectation& e2) {
  if (!omega.is_cyclic(m) || !omega.is_separating(m))
    throw NotStandard("verify_prop1: Omega is not cyclic and separating for M");
  if (!same_span(e1.source(), m, 1e-9)) throw AlgebraMismatch("verify_prop1: E1 must be defined on M");
  if (!same_span(e2.source(), m.commutant(), 1e-9)) throw AlgebraMismatch("verify_prop1: E2 must be defined on M'");

  const WeightDensity we1 = pullback(omega.state_on(e1.target()), e1);
  const WeightDensity we2 = pullback(omega.state_on(e2.target()), e2);
  // E2^{-1} maps M2' to M'' = M, so w E1 E2^{-1} is a weight on M2'.
  const WeightDensity we12 = dual_weight(e2, we1);

  Prop1Report r;
  r.s1 = relative_entropy_spatial(omega, we1);
  r.s2 = relative_entropy_spatial(omega, we2);
  r.s12 = relative_entropy_spatial(omega, we12);
  r.residual = std::abs(r.s1 - r.s2 - r.s12);
  return r;
}

CorReport verify_cor_fun(const VectorState& omega, const ConditionalExpectation& f1, const ConditionalExpectation& f2) {
  const MatrixBlockAlgebra& n2 = f2.source();
  if (!omega.is_cyclic(n2) || !omega.is_separating(n2))
    throw NotStandard("verify_cor_fun: Omega is not cyclic and separating for N2");
  const ConditionalExpectation f21 = compose_ce(f1, f2);
  const WeightDensity w3 = omega.state_on(f2.target());
  CorReport r;
  r.s_composed = relative_entropy_spatial(omega, pullback(w3, f21));
  r.s_f2 = relative_entropy_spatial(omega, pullback(w3, f2));
  r.s_f1 = relative_entropy_spatial(omega, pullback(omega.state_on(n2), f1));
  r.residual = std::abs(r.s_composed - r.s_f2 - r.s_f1);
  return r;
}

namespace {

void require_dim(int dim, int max_dim) {
  if (dim > max_dim) throw InvalidArgument("check_th515: instance dimension exceeds the configured cap");
}

ConditionalExpectation trace_preserving_ce(const MatrixBlockAlgebra& m, const MatrixBlockAlgebra& n) {
  return ConditionalExpectation(m, n, n.hs_projector() * m.hs_projector());
}

Th515Report chain_rule(Rng& rng, int trials) {
  Th515Report r;
  const auto m = tensor_leg_algebra({4}, {true});
  for (int t = 0; t < trials; ++t) {
    const auto m1 = tensor_leg_algebra({2, 2}, {true, false}).conjugated(rng.random_unitary(4));
    const auto e = trace_preserving_ce(m, m1);
    const auto omega = random_state(m, rng);
    const auto psi = random_state(m1, rng);
    const double lhs = relative_entropy_umegaki(omega, pullback(psi, e));
    const double rhs = relative_entropy_umegaki(omega.restricted_to(m1), psi) +
                       relative_entropy_umegaki(omega, pullback(omega.restricted_to(m1), e));
    r.worst = std::max(r.worst, std::abs(lhs - rhs));
  }
  r.passed = r.worst <= 1e-8;
  r.detail = "max |S(w, psi E) - S(w|M1, psi) - S(w, wE)|";
  return r;
}

Th515Report filtration(Rng& rng, int trials) {
  Th515Report r;
  const std::vector<MatrixBlockAlgebra> chain{
      tensor_leg_algebra({2, 2, 2}, {false, false, false}), tensor_leg_algebra({2, 2, 2}, {true, false, false}),
      tensor_leg_algebra({2, 2, 2}, {true, true, false}), tensor_leg_algebra({2, 2, 2}, {true, true, true})};
  const auto& full = chain.back();
  bool monotone = true;
  for (int t = 0; t < trials; ++t) {
    const auto w1 = random_state(full, rng);
    const auto w2 = random_state(full, rng);
    std::vector<double> seq;
    for (const auto& a : chain) seq.push_back(relative_entropy_umegaki(w1.restricted_to(a), w2.restricted_to(a)));
    const double target = relative_entropy_umegaki(w1, w2);
    for (std::size_t i = 1; i < seq.size(); ++i)
      if (seq[i] < seq[i - 1] - 1e-12) monotone = false;
    r.worst = std::max(r.worst, std::abs(seq.back() - target));
    if (t == 0) {
      r.values = seq;
      r.values.push_back(target);
    }
  }
  r.passed = monotone && r.worst <= 1e-12;
  r.detail = monotone ? "nondecreasing along the filtration" : "sequence decreased";
  return r;
}

Th515Report mixture_bound(Rng& rng, int trials) {
  Th515Report r;
  r.worst = -kInfinity;
  const auto m = build_algebra({Block{2, 2}, Block{1, 1}});
  for (int t = 0; t < trials; ++t) {
    const double mu = 0.05 + 0.9 * rng.uniform();
    const auto omega = random_state(m, rng);
    const auto phi = random_state(m, rng);
    const WeightDensity omega1(mu * omega.density() + (1.0 - mu) * phi.density(), m);
    const double s = relative_entropy_umegaki(omega, omega1);
    r.worst = std::max(r.worst, s + std::log(mu));
  }
  r.passed = r.worst <= 1e-9;
  r.detail = "max of S(w, w1) - ln(1/mu)";
  return r;
}

Th515Report restriction(Rng& rng, int trials) {
  Th515Report r;
  r.worst = -kInfinity;
  const auto m = tensor_leg_algebra({4}, {true});
  const std::vector<MatrixBlockAlgebra> shapes{tensor_leg_algebra({2, 2}, {true, false}),
                                               build_algebra({Block{2, 1}, Block{1, 1}, Block{1, 1}}),
                                               build_algebra({Block{1, 1}, Block{1, 1}, Block{1, 1}, Block{1, 1}})};
  for (int t = 0; t < trials; ++t) {
    const auto sub = shapes[t % shapes.size()].conjugated(rng.random_unitary(4));
    const auto omega = random_state(m, rng);
    const auto phi = random_state(m, rng);
    const double big = relative_entropy_umegaki(omega, phi);
    const double small = relative_entropy_umegaki(omega.restricted_to(sub), phi.restricted_to(sub));
    r.worst = std::max(r.worst, small - big);
  }
  r.passed = r.worst <= 1e-9;
  r.detail = "max of S(w1, phi1) - S(w, phi)";
  return r;
}

Th515Report tensor_identity(Rng& rng, int trials, int max_dim) {
  Th515Report r;
  for (int t = 0; t < trials; ++t) {
    const int a = 2;
    const int b = (t % 2 == 0 || max_dim < 6) ? 2 : 3;
    const auto full = tensor_leg_algebra({a, b}, {true, true});
    const auto m1 = tensor_leg_algebra({a, b}, {true, false});
    const auto m2 = tensor_leg_algebra({a, b}, {false, true});
    const auto phi = random_state(full, rng);
    const auto psi1 = random_state(m1, rng);
    const auto psi2 = random_state(m2, rng);
    const auto phi1 = phi.restricted_to(m1);
    const auto phi2 = phi.restricted_to(m2);
    // Product functionals: block densities multiply, and the full algebra has coupling 1.
    const WeightDensity psi12(psi1.block_density() * psi2.block_density(), full);
    const WeightDensity phi12(phi1.block_density() * phi2.block_density(), full);
    const double lhs = relative_entropy_umegaki(phi, psi12);
    const double rhs = relative_entropy_umegaki(phi1, psi1) + relative_entropy_umegaki(phi2, psi2) +
                       relative_entropy_umegaki(phi, phi12);
    r.worst = std::max(r.worst, std::abs(lhs - rhs));
  }
  r.passed = r.worst <= 1e-8;
  r.detail = "max |S(phi, psi1 psi2) - S(phi1, psi1) - S(phi2, psi2) - S(phi, phi1 phi2)|";
  return r;
}

}  // namespace

Th515Report check_th515(int which, std::uint64_t seed, int trials, int max_dim) {
  if (which < 1 || which > 5) throw InvalidArgument("check_th515: which must be in 1..5");
  if (trials < 1) throw InvalidArgument("check_th515: trials must be positive");
  Rng rng(seed);
  Th515Report r;
  switch (which) {
    case 1:
      require_dim(4, max_dim);
      r = chain_rule(rng, trials);
      break;
    case 2:
      require_dim(8, max_dim);
      r = filtration(rng, trials);
      break;
    case 3:
      require_dim(5, max_dim);
      r = mixture_bound(rng, trials);
      break;
    case 4:
      require_dim(4, max_dim);
      r = restriction(rng, trials);
      break;
    default:
      require_dim(4, max_dim);
      r = tensor_identity(rng, trials, max_dim);
      break;
  }
  r.which = which;
  r.seed = seed;
  r.trials = trials;
  return r;
}

}  // namespace entropylab
