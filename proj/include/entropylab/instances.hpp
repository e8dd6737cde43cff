#pragma once

#include <vector>

#include "entropylab/expectation.hpp"

namespace entropylab {

// Unitary groups used to build finite-index expectations.

/// Clock-and-shift operators X^a Z^b on C^d (d^2 elements); for d = 2 the Pauli group up to phases.
std::vector<Mat> weyl_group(int d);
/// Powers Z^k of the clock matrix on C^d.
std::vector<Mat> clock_group(int d);
/// 1 (x) .. (x) u (x) .. (x) 1 with u on the given leg.
Mat embed_on_leg(const Mat& u, std::span<const int> leg_dims, int leg);
std::vector<Mat> embed_group_on_leg(std::span<const Mat> group, std::span<const int> leg_dims, int leg);

/// Multiplication table table[g][h] = gh of a finite group, identity at index 0.
using GroupTable = std::vector<std::vector<int>>;
GroupTable cyclic_group_table(int n);
GroupTable symmetric_group_table(int n);
/// Regular representation P_g e_h = e_{gh}, tensored with 1 on a C^k factor.
std::vector<Mat> regular_representation(const GroupTable& table, int k = 1);

/// l^inf(G) (x) M_k on C^|G| (x) C^k with G acting by translations; the average
/// projects onto 1 (x) M_k with index |G|.
struct TranslationAction {
  MatrixBlockAlgebra algebra;
  std::vector<Mat> unitaries;
};
TranslationAction translation_action(const GroupTable& table, int k = 1);

/// Unit vector with Gaussian entries; generically of full Schmidt rank.
Vec random_unit_vector(Eigen::Index dim, Rng& rng);

/// Expectation M -> N preserving the state with the given ambient density
/// (the density must factor so that such an expectation exists, e.g. a product state).
ConditionalExpectation slice_ce(const MatrixBlockAlgebra& m, const MatrixBlockAlgebra& n, const Mat& density);

/// Random factor M_n (x) 1_m (n m <= max_dim), unit vector Omega and faithful state phi on M.
struct FactorInstance {
  MatrixBlockAlgebra m;
  VectorState omega;
  WeightDensity phi;
};
FactorInstance make_factor_instance(std::uint64_t seed, int max_dim = 16);

/// Data for S(w, wE1) - S(w, wE2) = S(w, wE1 E2^{-1}): M = M_a (x) 1 on C^a (x) C^a,
/// E1: M -> M1 and E2: M' -> M2 slices against random states. M1, M2 are C for
/// a < 4 and rotated copies of M_2 (x) 1 for a = 4.
struct Prop1Instance {
  MatrixBlockAlgebra m;
  VectorState omega;
  ConditionalExpectation e1;
  ConditionalExpectation e2;
};
Prop1Instance make_prop1_instance(int a, std::uint64_t seed);

struct CorInstance {
  MatrixBlockAlgebra n1, n2, n3;
  VectorState omega;
  ConditionalExpectation f1;  // N1 -> N2
  ConditionalExpectation f2;  // N2 -> N3
};
/// Product Omega on (K (x) K) (x) (L (x) L) with tensor-leg factors and slice maps.
CorInstance make_cor_product_instance(std::uint64_t seed, int k = 2, int l = 2);
/// Entangled Omega on C^d (x) C^d: F1 twirls leg 2 by the Weyl group, F2 averages
/// leg 1 over a rotated clock group.
CorInstance make_cor_entangled_instance(std::uint64_t seed, int d = 2);

}  // namespace entropylab
