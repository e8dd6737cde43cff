#include "entropylab/lattice/correlations.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace entropylab::lattice {

CorrelationMatrix ground_state_correlations(int n) {
  const LatticeCircle circle(n);
  // Allowed momenta satisfy e^{ikN} = boundary sign; energies -2 cos k, filled where cos k > 0.
  const double offset = circle.sector() == BoundarySector::antiperiodic ? 0.5 : 0.0;
  std::vector<double> occupied;
  for (int m = 0; m < n; ++m) {
    const double k = 2.0 * std::numbers::pi * (m + offset) / n;
    const double ck = std::cos(k);
    if (std::abs(ck) < 1e-12) throw Error("ground_state_correlations: zero mode in the chosen sector");
    if (ck > 0.0) occupied.push_back(k);
  }
  if (static_cast<int>(occupied.size()) * 2 != n) throw Error("ground_state_correlations: not half filled");
  RVec f(n);
  for (int d = 0; d < n; ++d) {
    double s = 0.0;
    for (double k : occupied) s += std::cos(k * d);
    f(d) = s / n;
  }
  RMat c(n, n);
  for (int j = 0; j < n; ++j)
    for (int l = 0; l < n; ++l) c(j, l) = f(std::abs(l - j));
  return {circle, std::move(c)};
}

RMat hopping_matrix(int n, double boundary_sign) {
  RMat h = RMat::Zero(n, n);
  for (int j = 0; j + 1 < n; ++j) h(j, j + 1) = h(j + 1, j) = -1.0;
  h(n - 1, 0) += -boundary_sign;
  h(0, n - 1) += -boundary_sign;
  return h;
}

RVec restricted_spectrum(const CorrelationMatrix& c, const std::vector<int>& sites) {
  if (sites.empty()) throw InvalidArgument("region_entropy: empty site set");
  const RMat sub = c.c(sites, sites);
  Eigen::SelfAdjointEigenSolver<RMat> es(sub, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

double binary_entropy(double nu) {
  if (nu < -1e-8 || nu > 1.0 + 1e-8) throw Error("occupation number outside [0, 1]");
  nu = std::clamp(nu, 0.0, 1.0);
  return von_neumann_kernel(nu) + von_neumann_kernel(1.0 - nu);
}

double region_entropy(const CorrelationMatrix& c, const std::vector<int>& sites) {
  const RVec nu = restricted_spectrum(c, sites);
  double s = 0.0;
  for (Eigen::Index i = 0; i < nu.size(); ++i) s += binary_entropy(nu(i));
  return s;
}

double product_state_relative_entropy(const CorrelationMatrix& c, const RegionSpec& spec) {
  double total = 0.0;
  for (const auto& arc : spec.arcs()) {
    const auto sites = arc_sites(c.circle, arc);
    if (sites.empty()) throw InvalidArgument("an arc of the region contains no lattice site");
    total += region_entropy(c, sites);
  }
  if (spec.size() == 1) return 0.0;
  return total - region_entropy(c, lattice_region(c.circle, spec));
}

}  // namespace entropylab::lattice
