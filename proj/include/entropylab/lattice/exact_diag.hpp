#pragma once

#include <cstdint>
#include <vector>

#include "entropylab/lattice/circle.hpp"
#include "entropylab/linalg.hpp"

namespace entropylab::lattice {

/// Many-body ground state of the same hopping chain in the N/2-particle sector,
/// with Jordan-Wigner signs. Independent of the correlation-matrix route; N <= 12.
class ExactDiagonalization {
 public:
  static constexpr int kMaxSites = 12;
  explicit ExactDiagonalization(int n);

  int size() const { return circle_.size(); }
  double ground_energy() const { return energy_; }
  double spectral_gap() const { return gap_; }

  /// Reduced density matrix of the modes in the given order; the first mode is the most
  /// significant bit of the row index.
  RMat reduced_density(const std::vector<int>& sites) const;
  double entropy(const std::vector<int>& sites) const;
  /// Tr rho (ln rho - ln(rho_1 (x) ... (x) rho_n)) with rho the state of the union of the groups.
  double product_state_relative_entropy(const std::vector<std::vector<int>>& groups) const;
  double product_state_relative_entropy(const RegionSpec& spec) const;
  /// <c_j^* c_l> evaluated in the many-body state.
  RMat correlation_matrix() const;

 private:
  LatticeCircle circle_;
  std::vector<std::uint32_t> basis_;
  RVec psi_;
  double energy_ = 0.0;
  double gap_ = 0.0;
};

}  // namespace entropylab::lattice
