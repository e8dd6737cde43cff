#pragma once

#include <string>
#include <vector>

#include "entropylab/expectation.hpp"
#include "entropylab/spatial.hpp"

namespace entropylab {

struct Prop1Report {
  double s1 = 0.0;   // S(w, w E1) on M
  double s2 = 0.0;   // S(w, w E2) on M'
  double s12 = 0.0;  // S(w, w E1 E2^{-1}) on M2'
  double residual = 0.0;
};

/// Evaluates the three entropies of S(w, wE1) - S(w, wE2) = S(w, wE1 E2^{-1}) with
/// spatial derivatives, the last weight coming from dual_weight.
/// E1: M -> M1, E2: M' -> M2. Throws NotStandard unless Omega is cyclic and separating for M.
Prop1Report verify_prop1(const MatrixBlockAlgebra& m, const VectorState& omega, const ConditionalExpectation& e1,
                         const ConditionalExpectation& e2);

struct CorReport {
  double s_composed = 0.0;  // S(w, w F2 F1) on N1
  double s_f2 = 0.0;        // S(w, w F2) on N2
  double s_f1 = 0.0;        // S(w, w F1) on N1
  double residual = 0.0;
};

/// Additivity S(w, wF2F1) = S(w, wF2) + S(w, wF1) for F1: N1 -> N2, F2: N2 -> N3.
/// Throws NotStandard unless Omega is cyclic and separating for N2.
CorReport verify_cor_fun(const VectorState& omega, const ConditionalExpectation& f1, const ConditionalExpectation& f2);

struct Th515Report {
  int which = 0;
  std::uint64_t seed = 0;
  int trials = 0;
  double worst = 0.0;  // worst residual, or worst violation for the inequalities
  std::vector<double> values;  // (2): the filtration sequence, then the full value
  bool passed = false;
  std::string detail;
};

/// Randomized check of one item of the standard relative-entropy property list:
/// 1 chain rule for an expectation, 2 convergence along a filtration, 3 the bound
/// -ln mu for w1 >= mu w, 4 monotonicity under restriction, 5 the tensor identity.
/// Ambient dimensions stay at or below max_dim (the chain-rule and tensor items need 4).
Th515Report check_th515(int which, std::uint64_t seed, int trials = 20, int max_dim = 16);

}  // namespace entropylab
