#pragma once

#include <vector>

#include "entropylab/lattice/correlations.hpp"

namespace entropylab::lattice {

enum class LengthConvention { chord, arc };

/// r = |e^{ia} - e^{ib}| (chord) or b - a (arc). Throws for a degenerate interval.
double interval_length(double a, double b, LengthConvention convention = LengthConvention::chord);
double chord_length(double a, double b);

/// eta = r_J1 r_J2 / (r_I1 r_I2) for a two-arc region I with complement arcs J1, J2.
double cross_ratio(const RegionSpec& spec, LengthConvention convention = LengthConvention::chord);

struct DeficitOptions {
  double c = 1.0;
  LengthConvention convention = LengthConvention::chord;
  /// Multiplies the lattice entropies. The hopping chain carries both chiral halves of
  /// a Dirac fermion, so the chiral net uses 1/2 with c = 1; the full chain uses 1 with c = 2.
  double entropy_scale = 0.5;
};

/// sum_i (c/6) ln r_{I_i} - scale * S(w, w^(x)_I).
double regularized_G(const CorrelationMatrix& c, const RegionSpec& spec, const DeficitOptions& options = {});

struct DeficitReport {
  int n = 0;
  std::vector<Arc> arcs;
  std::vector<Arc> complement_arcs;
  double s_I = 0.0;      // lattice S(w, w^(x)) of I, before scaling
  double s_Icomp = 0.0;  // same for I'
  std::vector<double> r_lengths;
  std::vector<double> r_comp_lengths;
  double eta = 0.0;  // NaN unless the region has two arcs
  double c = 0.0;
  double entropy_scale = 0.0;
  double G_I = 0.0;
  double G_Icomp = 0.0;
  double D = 0.0;             // G(I) - G(I')
  double D_cross_ratio = 0.0;  // -(c/6) ln eta - S_I + S_I' (scaled); NaN unless two arcs
  double path_residual = 0.0;
  double mu = 1.0;     // global index of the free fermion net
  double D_hat = 0.0;  // S(w, w F_I) - (n-1)/2 ln mu, zero since F_I is the identity for mu = 1
};

/// Deficit D(I) = G(I) - G(I') computed from the definition and, for two arcs, from
/// the cross-ratio form. Requires at least two arcs.
DeficitReport deficit_D(const CorrelationMatrix& c, const RegionSpec& spec, const DeficitOptions& options = {});

struct Deficit2dReport {
  DeficitReport left;
  DeficitReport right;
  double G_I = 0.0;
  double G_Icomp = 0.0;
  double D = 0.0;
};

/// Tensor-product net A_L (x) A_R: regularized entropies and deficits add.
/// Throws InvalidArgument when the two chiral regions have different arc counts.
Deficit2dReport product_net_deficit_2d(const DeficitReport& left, const DeficitReport& right);

}  // namespace entropylab::lattice
