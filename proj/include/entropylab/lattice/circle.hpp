#pragma once

#include <vector>

namespace entropylab::lattice {

enum class BoundarySector { antiperiodic, periodic };

/// N sites at angles 2 pi j / N. The boundary sector is antiperiodic for N = 0 mod 4
/// and periodic for N = 2 mod 4: the one whose half-filled ground state is unique.
class LatticeCircle {
 public:
  explicit LatticeCircle(int n);

  int size() const { return n_; }
  BoundarySector sector() const { return sector_; }
  /// -1 across the bond (N-1, 0) for antiperiodic fermions, +1 otherwise.
  double boundary_sign() const { return sector_ == BoundarySector::antiperiodic ? -1.0 : 1.0; }
  double angle(int j) const;
  double spacing() const;

 private:
  int n_;
  BoundarySector sector_;
};

BoundarySector ground_state_sector(int n);

/// Half-open arc [a, b) in radians, a < b < a + 2 pi. Endpoints may exceed 2 pi; only
/// their value mod 2 pi matters.
struct Arc {
  double a = 0.0;
  double b = 0.0;
  double length() const { return b - a; }
};

/// Disjoint arcs with nonempty complement, kept sorted by start angle in [0, 2 pi).
class RegionSpec {
 public:
  explicit RegionSpec(std::vector<Arc> arcs);

  const std::vector<Arc>& arcs() const { return arcs_; }
  std::size_t size() const { return arcs_.size(); }
  /// The gaps between consecutive arcs, as arcs [b_i, a_{i+1}).
  RegionSpec complement() const;
  /// The same arcs rotated by an angle.
  RegionSpec rotated(double angle) const;
  /// Total angular measure.
  double measure() const;

 private:
  std::vector<Arc> arcs_;
};

/// Sites j with angle in [a, b) mod 2 pi; endpoints within 1e-9 of a spacing snap to the grid.
std::vector<int> arc_sites(const LatticeCircle& circle, const Arc& arc);
/// Sorted sites of the union of the arcs. Throws InvalidArgument when the region has
/// no site or its complement has none.
std::vector<int> lattice_region(const LatticeCircle& circle, const RegionSpec& spec);
/// All sites not in the region.
std::vector<int> complement_sites(const LatticeCircle& circle, const std::vector<int>& sites);

}  // namespace entropylab::lattice
