#include "entropylab/lattice/experiments.hpp"

#include <algorithm>
#include <cmath>

namespace entropylab::lattice {

ShrinkReport shrink_experiment(const CorrelationMatrix& c, const RegionSpec& spec, int arc,
                               std::span<const int> site_schedule) {
  if (spec.size() < 2) throw InvalidArgument("shrink_experiment: need at least two arcs");
  if (arc < 0 || arc >= static_cast<int>(spec.size())) throw InvalidArgument("shrink_experiment: arc index out of range");
  if (site_schedule.empty()) throw InvalidArgument("shrink_experiment: empty schedule");
  std::vector<Arc> rest;
  for (int i = 0; i < static_cast<int>(spec.size()); ++i)
    if (i != arc) rest.push_back(spec.arcs()[i]);

  ShrinkReport rep;
  rep.n = c.size();
  rep.arc = arc;
  rep.target = product_state_relative_entropy(c, RegionSpec(rest));
  const double h = c.circle.spacing();
  const Arc base = spec.arcs()[arc];
  for (int sites : site_schedule) {
    if (sites < 1) throw InvalidArgument("shrink_experiment: schedule empties the arc");
    std::vector<Arc> arcs = rest;
    // Snap to the grid so the arc holds exactly `sites` sites.
    const double a = std::ceil(base.a / h - 1e-9) * h;
    arcs.push_back({a, a + sites * h});
    ShrinkStep step;
    step.sites = sites;
    step.length = sites * h;
    step.value = product_state_relative_entropy(c, RegionSpec(arcs));
    step.gap = step.value - rep.target;
    rep.steps.push_back(step);
  }
  const auto& st = rep.steps;
  const bool shrinking = st.size() < 2 || st.back().sites <= st.front().sites;
  int tail = 1;
  for (std::size_t i = st.size() - 1; i > 0; --i) {
    const double change = st[i].gap - st[i - 1].gap;
    if (shrinking ? change <= 0.0 : change >= 0.0)
      ++tail;
    else
      break;
  }
  rep.monotone_tail = tail;
  rep.eventually_monotone = tail >= std::min<int>(3, static_cast<int>(st.size()));
  rep.final_gap = st.back().gap;
  return rep;
}

CollapseReport cross_ratio_collapse(const CorrelationMatrix& c, std::span<const RegionSpec> geometries,
                                    const CollapseOptions& options) {
  if (geometries.size() < 2) throw InvalidArgument("cross_ratio_collapse: need at least two geometries");
  CollapseReport rep;
  rep.n = c.size();
  for (const auto& g : geometries) rep.etas.push_back(cross_ratio(g, options.convention));
  const auto [emin, emax] = std::minmax_element(rep.etas.begin(), rep.etas.end());
  rep.eta_spread = *emax - *emin;
  if (options.require_equal_eta && rep.eta_spread > options.eta_tolerance * std::max(1.0, *emax))
    throw InvalidArgument("cross_ratio_collapse: geometries have different cross ratios");
  for (const auto& g : geometries) rep.values.push_back(product_state_relative_entropy(c, g));
  const auto [vmin, vmax] = std::minmax_element(rep.values.begin(), rep.values.end());
  rep.spread = *vmax - *vmin;
  return rep;
}

}  // namespace entropylab::lattice
