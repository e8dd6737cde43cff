#include "entropylab/lattice/circle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "entropylab/linalg.hpp"

namespace entropylab::lattice {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kGapTolerance = 1e-12;
}  // namespace

BoundarySector ground_state_sector(int n) {
  if (n < 2 || n % 2 != 0) throw InvalidArgument("lattice size must be even");
  return n % 4 == 0 ? BoundarySector::antiperiodic : BoundarySector::periodic;
}

LatticeCircle::LatticeCircle(int n) : n_(n), sector_(ground_state_sector(n)) {
  if (n < 4) throw InvalidArgument("lattice needs at least 4 sites");
}

double LatticeCircle::angle(int j) const { return kTwoPi * j / n_; }
double LatticeCircle::spacing() const { return kTwoPi / n_; }

RegionSpec::RegionSpec(std::vector<Arc> arcs) : arcs_(std::move(arcs)) {
  if (arcs_.empty()) throw InvalidArgument("region needs at least one arc");
  for (auto& arc : arcs_) {
    if (!std::isfinite(arc.a) || !std::isfinite(arc.b)) throw InvalidArgument("arc endpoints must be finite");
    if (!(arc.b > arc.a)) throw InvalidArgument("arc must satisfy a < b");
    if (arc.length() >= kTwoPi - kGapTolerance) throw InvalidArgument("arc covers the whole circle");
    const double shift = std::floor(arc.a / kTwoPi) * kTwoPi;
    arc.a -= shift;
    arc.b -= shift;
  }
  std::sort(arcs_.begin(), arcs_.end(), [](const Arc& x, const Arc& y) { return x.a < y.a; });
  for (std::size_t i = 0; i < arcs_.size(); ++i) {
    const double next = i + 1 < arcs_.size() ? arcs_[i + 1].a : arcs_.front().a + kTwoPi;
    if (next - arcs_[i].b <= kGapTolerance) throw InvalidArgument("arcs overlap, touch, or leave no complement");
  }
}

RegionSpec RegionSpec::complement() const {
  std::vector<Arc> gaps;
  for (std::size_t i = 0; i < arcs_.size(); ++i) {
    const double next = i + 1 < arcs_.size() ? arcs_[i + 1].a : arcs_.front().a + kTwoPi;
    gaps.push_back({arcs_[i].b, next});
  }
  return RegionSpec(std::move(gaps));
}

RegionSpec RegionSpec::rotated(double angle) const {
  std::vector<Arc> out = arcs_;
  for (auto& arc : out) {
    arc.a += angle;
    arc.b += angle;
  }
  return RegionSpec(std::move(out));
}

double RegionSpec::measure() const {
  double m = 0.0;
  for (const auto& arc : arcs_) m += arc.length();
  return m;
}

std::vector<int> arc_sites(const LatticeCircle& circle, const Arc& arc) {
  const double h = circle.spacing();
  const auto first = static_cast<long>(std::ceil(arc.a / h - 1e-9));
  const auto end = static_cast<long>(std::ceil(arc.b / h - 1e-9));
  std::vector<int> sites;
  const long n = circle.size();
  for (long j = first; j < end; ++j) sites.push_back(static_cast<int>(((j % n) + n) % n));
  return sites;
}

std::vector<int> lattice_region(const LatticeCircle& circle, const RegionSpec& spec) {
  std::vector<int> sites;
  for (const auto& arc : spec.arcs()) {
    const auto s = arc_sites(circle, arc);
    sites.insert(sites.end(), s.begin(), s.end());
  }
  std::sort(sites.begin(), sites.end());
  sites.erase(std::unique(sites.begin(), sites.end()), sites.end());
  if (sites.empty()) throw InvalidArgument("region contains no lattice site");
  if (static_cast<int>(sites.size()) >= circle.size()) throw InvalidArgument("region leaves no site in the complement");
  return sites;
}

std::vector<int> complement_sites(const LatticeCircle& circle, const std::vector<int>& sites) {
  std::vector<char> in(circle.size(), 0);
  for (int s : sites) in.at(s) = 1;
  std::vector<int> out;
  for (int j = 0; j < circle.size(); ++j)
    if (!in[j]) out.push_back(j);
  return out;
}

}  // namespace entropylab::lattice
