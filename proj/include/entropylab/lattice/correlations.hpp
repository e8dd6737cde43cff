#pragma once

#include "entropylab/lattice/circle.hpp"
#include "entropylab/linalg.hpp"

namespace entropylab::lattice {

/// Ground-state two-point function C_jl = <c_j^* c_l> of H = -sum_j (c_j^* c_{j+1} + h.c.)
/// at half filling. The matrix is real and symmetric; C_jl = f(l - j).
struct CorrelationMatrix {
  LatticeCircle circle;
  RMat c;
  int size() const { return circle.size(); }
};

/// Correlations of the N-site chain in the sector chosen by LatticeCircle. N must be even;
/// N >= 4 is accepted here so small chains can be compared with direct diagonalization.
CorrelationMatrix ground_state_correlations(int n);

/// The N x N single-particle hopping matrix with the boundary sign of the sector.
RMat hopping_matrix(int n, double boundary_sign);

/// Eigenvalues of C restricted to the sites.
RVec restricted_spectrum(const CorrelationMatrix& c, const std::vector<int>& sites);

/// -sum [nu ln nu + (1 - nu) ln(1 - nu)] over the restricted spectrum, nu clamped at 1e-14.
/// Throws InvalidArgument for empty sites and Error for nu outside [-1e-8, 1 + 1e-8].
double region_entropy(const CorrelationMatrix& c, const std::vector<int>& sites);

/// S(w, w_{I_1} (x) ... (x) w_{I_n}) = sum_k S(I_k) - S(union), the multi-interval mutual information.
double product_state_relative_entropy(const CorrelationMatrix& c, const RegionSpec& spec);

/// Kernel shared with the exact oracle: binary entropy of one occupation number.
double binary_entropy(double nu);

}  // namespace entropylab::lattice
