#include "entropylab/lattice/exact_diag.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

namespace entropylab::lattice {

namespace {

using State = std::uint32_t;

bool occupied(State s, int j) { return (s >> j) & 1u; }

// (-1)^(number of occupied modes before j), the Jordan-Wigner string.
double jw_sign(State s, int j) { return (std::popcount(s & ((State{1} << j) - 1)) % 2 == 0) ? 1.0 : -1.0; }

// c_i^* c_j |s>: returns false when the result vanishes.
bool hop(State s, int i, int j, State& out, double& sign) {
  if (!occupied(s, j)) return false;
  sign = jw_sign(s, j);
  State t = s & ~(State{1} << j);
  if (occupied(t, i)) return false;
  sign *= jw_sign(t, i);
  out = t | (State{1} << i);
  return true;
}

double entropy_of(const RMat& rho) {
  Eigen::SelfAdjointEigenSolver<RMat> es(rho, Eigen::EigenvaluesOnly);
  double s = 0.0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) s += von_neumann_kernel(std::max(es.eigenvalues()(i), 0.0));
  return s;
}

RMat log_psd(const RMat& a, double cutoff) {
  Eigen::SelfAdjointEigenSolver<RMat> es(a);
  RVec l = es.eigenvalues();
  const double top = std::max(1.0, l.maxCoeff());
  for (Eigen::Index i = 0; i < l.size(); ++i) l(i) = l(i) > cutoff * top ? std::log(l(i)) : 0.0;
  return es.eigenvectors() * l.asDiagonal() * es.eigenvectors().transpose();
}

}  // namespace

ExactDiagonalization::ExactDiagonalization(int n) : circle_(n) {
  if (n > kMaxSites) throw InvalidArgument("exact diagonalization is limited to 12 sites");
  const int filling = n / 2;
  std::vector<int> index(std::size_t{1} << n, -1);
  for (State s = 0; s < (State{1} << n); ++s)
    if (std::popcount(s) == filling) {
      index[s] = static_cast<int>(basis_.size());
      basis_.push_back(s);
    }
  const Eigen::Index dim = static_cast<Eigen::Index>(basis_.size());
  RMat h = RMat::Zero(dim, dim);
  for (int j = 0; j < n; ++j) {
    const int l = (j + 1) % n;
    const double t = (l == 0) ? circle_.boundary_sign() : 1.0;
    for (Eigen::Index k = 0; k < dim; ++k) {
      State out;
      double sign;
      if (hop(basis_[k], j, l, out, sign)) h(index[out], k) += -t * sign;
      if (hop(basis_[k], l, j, out, sign)) h(index[out], k) += -t * sign;
    }
  }
  Eigen::SelfAdjointEigenSolver<RMat> es(h);
  energy_ = es.eigenvalues()(0);
  gap_ = dim > 1 ? es.eigenvalues()(1) - energy_ : kInfinity;
  if (gap_ < 1e-9) throw Error("exact diagonalization: degenerate ground state");
  psi_ = es.eigenvectors().col(0);
}

RMat ExactDiagonalization::reduced_density(const std::vector<int>& sites) const {
  const int n = size();
  std::vector<int> pos(n, -1);
  std::vector<int> order;
  for (int s : sites) {
    if (s < 0 || s >= n || pos[s] >= 0) throw InvalidArgument("reduced_density: invalid or repeated site");
    pos[s] = static_cast<int>(order.size());
    order.push_back(s);
  }
  const int na = static_cast<int>(order.size());
  for (int j = 0; j < n; ++j)
    if (pos[j] < 0) {
      pos[j] = static_cast<int>(order.size());
      order.push_back(j);
    }
  const Eigen::Index da = Eigen::Index{1} << na;
  const Eigen::Index db = Eigen::Index{1} << (n - na);
  RMat amp = RMat::Zero(da, db);
  for (std::size_t k = 0; k < basis_.size(); ++k) {
    const State s = basis_[k];
    // Reordering the creation operators into the new mode order costs the parity of the
    // permutation restricted to the occupied modes.
    int inversions = 0;
    for (int p = 0; p < n; ++p)
      if (occupied(s, p))
        for (int q = p + 1; q < n; ++q)
          if (occupied(s, q) && pos[p] > pos[q]) ++inversions;
    Eigen::Index a = 0, b = 0;
    for (int t = 0; t < na; ++t) a = (a << 1) | (occupied(s, order[t]) ? 1 : 0);
    for (int t = na; t < n; ++t) b = (b << 1) | (occupied(s, order[t]) ? 1 : 0);
    amp(a, b) += (inversions % 2 == 0 ? 1.0 : -1.0) * psi_(static_cast<Eigen::Index>(k));
  }
  return amp * amp.transpose();
}

double ExactDiagonalization::entropy(const std::vector<int>& sites) const {
  if (sites.empty()) return 0.0;
  return entropy_of(reduced_density(sites));
}

double ExactDiagonalization::product_state_relative_entropy(const std::vector<std::vector<int>>& groups) const {
  std::vector<int> all;
  for (const auto& g : groups) all.insert(all.end(), g.begin(), g.end());
  const RMat rho = reduced_density(all);
  RMat product = RMat::Ones(1, 1);
  Eigen::Index offset = 0;
  const Eigen::Index total = static_cast<Eigen::Index>(all.size());
  for (const auto& g : groups) {
    // Marginal on this group: trace out the modes before and after it.
    const Eigen::Index before = Eigen::Index{1} << offset;
    const Eigen::Index mine = Eigen::Index{1} << g.size();
    const Eigen::Index after = Eigen::Index{1} << (total - offset - static_cast<Eigen::Index>(g.size()));
    RMat marginal = RMat::Zero(mine, mine);
    for (Eigen::Index x = 0; x < before; ++x)
      for (Eigen::Index z = 0; z < after; ++z)
        for (Eigen::Index i = 0; i < mine; ++i)
          for (Eigen::Index j = 0; j < mine; ++j)
            marginal(i, j) += rho((x * mine + i) * after + z, (x * mine + j) * after + z);
    const RMat prev = product;
    product.resize(prev.rows() * mine, prev.cols() * mine);
    for (Eigen::Index r = 0; r < prev.rows(); ++r)
      for (Eigen::Index c = 0; c < prev.cols(); ++c) product.block(r * mine, c * mine, mine, mine) = prev(r, c) * marginal;
    offset += static_cast<Eigen::Index>(g.size());
  }
  return (rho * (log_psd(rho, 1e-14) - log_psd(product, 1e-14))).trace();
}

double ExactDiagonalization::product_state_relative_entropy(const RegionSpec& spec) const {
  std::vector<std::vector<int>> groups;
  for (const auto& arc : spec.arcs()) groups.push_back(arc_sites(circle_, arc));
  return product_state_relative_entropy(groups);
}

RMat ExactDiagonalization::correlation_matrix() const {
  const int n = size();
  std::vector<int> index(std::size_t{1} << n, -1);
  for (std::size_t k = 0; k < basis_.size(); ++k) index[basis_[k]] = static_cast<int>(k);
  RMat c = RMat::Zero(n, n);
  for (int j = 0; j < n; ++j)
    for (int l = 0; l < n; ++l)
      for (std::size_t k = 0; k < basis_.size(); ++k) {
        State out;
        double sign;
        if (j == l) {
          if (occupied(basis_[k], j)) c(j, l) += psi_(k) * psi_(k);
        } else if (hop(basis_[k], j, l, out, sign)) {
          c(j, l) += psi_(index[out]) * sign * psi_(k);
        }
      }
  return c;
}

}  // namespace entropylab::lattice
