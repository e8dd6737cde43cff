#include "entropylab/lattice/deficit.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace entropylab::lattice {

double chord_length(double a, double b) { return 2.0 * std::abs(std::sin(0.5 * (b - a))); }

double interval_length(double a, double b, LengthConvention convention) {
  const double r = convention == LengthConvention::chord ? chord_length(a, b) : std::abs(b - a);
  if (!(r > 1e-300)) throw InvalidArgument("degenerate interval");
  return r;
}

namespace {

std::vector<double> lengths(const RegionSpec& spec, LengthConvention convention) {
  std::vector<double> r;
  for (const auto& arc : spec.arcs()) r.push_back(interval_length(arc.a, arc.b, convention));
  return r;
}

double log_length_sum(const std::vector<double>& r, double c) {
  double s = 0.0;
  for (double x : r) s += std::log(x);
  return c / 6.0 * s;
}

}  // namespace

double cross_ratio(const RegionSpec& spec, LengthConvention convention) {
  if (spec.size() != 2) throw InvalidArgument("cross_ratio needs a region with exactly two arcs");
  const auto ri = lengths(spec, convention);
  const auto rj = lengths(spec.complement(), convention);
  return rj[0] * rj[1] / (ri[0] * ri[1]);
}

double regularized_G(const CorrelationMatrix& c, const RegionSpec& spec, const DeficitOptions& options) {
  if (!(options.c > 0.0)) throw InvalidArgument("central charge must be positive");
  return log_length_sum(lengths(spec, options.convention), options.c) -
         options.entropy_scale * product_state_relative_entropy(c, spec);
}

DeficitReport deficit_D(const CorrelationMatrix& c, const RegionSpec& spec, const DeficitOptions& options) {
  if (spec.size() < 2) throw InvalidArgument("deficit_D needs at least two arcs");
  if (!(options.c > 0.0)) throw InvalidArgument("central charge must be positive");
  const RegionSpec comp = spec.complement();
  DeficitReport r;
  r.n = c.size();
  r.arcs = spec.arcs();
  r.complement_arcs = comp.arcs();
  r.c = options.c;
  r.entropy_scale = options.entropy_scale;
  r.s_I = product_state_relative_entropy(c, spec);
  r.s_Icomp = product_state_relative_entropy(c, comp);
  r.r_lengths = lengths(spec, options.convention);
  r.r_comp_lengths = lengths(comp, options.convention);
  r.G_I = log_length_sum(r.r_lengths, options.c) - options.entropy_scale * r.s_I;
  r.G_Icomp = log_length_sum(r.r_comp_lengths, options.c) - options.entropy_scale * r.s_Icomp;
  r.D = r.G_I - r.G_Icomp;
  constexpr double nan = std::numeric_limits<double>::quiet_NaN();
  if (spec.size() == 2) {
    r.eta = r.r_comp_lengths[0] * r.r_comp_lengths[1] / (r.r_lengths[0] * r.r_lengths[1]);
    r.D_cross_ratio = -options.c / 6.0 * std::log(r.eta) - options.entropy_scale * (r.s_I - r.s_Icomp);
    r.path_residual = std::abs(r.D - r.D_cross_ratio);
  } else {
    r.eta = nan;
    r.D_cross_ratio = nan;
    r.path_residual = 0.0;
  }
  return r;
}

Deficit2dReport product_net_deficit_2d(const DeficitReport& left, const DeficitReport& right) {
  if (left.arcs.size() != right.arcs.size())
    throw InvalidArgument("product_net_deficit_2d: left and right regions have different interval counts");
  Deficit2dReport r{left, right, left.G_I + right.G_I, left.G_Icomp + right.G_Icomp, left.D + right.D};
  return r;
}

}  // namespace entropylab::lattice
