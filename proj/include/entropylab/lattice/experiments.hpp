#pragma once

#include <span>
#include <vector>

#include "entropylab/lattice/deficit.hpp"

namespace entropylab::lattice {

struct ShrinkStep {
  int sites = 0;        // sites in the designated arc
  double length = 0.0;  // its continuum length in radians
  double value = 0.0;   // S(w, w^(x)) with the designated arc present
  double gap = 0.0;     // value - target
};

struct ShrinkReport {
  int n = 0;
  int arc = 0;
  double target = 0.0;  // S(w, w^(x)) of the remaining arcs
  std::vector<ShrinkStep> steps;
  /// Number of final steps over which the gap moves monotonically in the schedule's direction.
  int monotone_tail = 0;
  bool eventually_monotone = false;
  double final_gap = 0.0;
};

/// Resizes one arc to the given site counts with its left endpoint fixed and tracks
/// S(w, w^(x)) against the value for the remaining arcs. A shrinking schedule should give
/// a decreasing gap and an enlarging one an increasing gap. "Eventually monotone" means
/// the last three steps (or all, if fewer) move the right way.
ShrinkReport shrink_experiment(const CorrelationMatrix& c, const RegionSpec& spec, int arc,
                               std::span<const int> site_schedule);

struct CollapseOptions {
  LengthConvention convention = LengthConvention::chord;
  bool require_equal_eta = true;
  double eta_tolerance = 1e-12;
};

struct CollapseReport {
  int n = 0;
  std::vector<double> etas;
  std::vector<double> values;  // lattice S(w, w^(x)) per geometry
  double spread = 0.0;         // max pairwise |difference| of values
  double eta_spread = 0.0;
};

/// Two-arc geometries compared at one N. Throws InvalidArgument when equal eta is
/// required and the cross ratios differ by more than the tolerance.
CollapseReport cross_ratio_collapse(const CorrelationMatrix& c, std::span<const RegionSpec> geometries,
                                    const CollapseOptions& options = {});

}  // namespace entropylab::lattice
