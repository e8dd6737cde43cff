#include "entropylab/lattice/scaling.hpp"

#include <cmath>
#include <numbers>

namespace entropylab::lattice {

CentralChargeFit central_charge_fit(std::span<const int> lengths, std::span<const double> entropies, int n) {
  if (lengths.size() != entropies.size()) throw InvalidArgument("central_charge_fit: size mismatch");
  if (lengths.size() < 6) throw InvalidArgument("central_charge_fit: need at least 6 interval lengths");
  const Eigen::Index m = static_cast<Eigen::Index>(lengths.size());
  RMat design(m, 2);
  RVec y(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const int l = lengths[i];
    if (l <= 0 || l >= n) throw InvalidArgument("central_charge_fit: length outside (0, N)");
    design(i, 0) = std::log(n / std::numbers::pi * std::sin(std::numbers::pi * l / n)) / 3.0;
    design(i, 1) = 1.0;
    y(i) = entropies[i];
  }
  const RVec x = design.col(0);
  if ((x.array() - x.mean()).matrix().norm() < 1e-12 * std::max(1.0, x.norm()))
    throw InvalidArgument("central_charge_fit: degenerate design matrix");
  const RVec coef = design.colPivHouseholderQr().solve(y);
  CentralChargeFit fit;
  fit.c_hat = coef(0);
  fit.intercept = coef(1);
  fit.residual_norm = (design * coef - y).norm();
  fit.points = static_cast<int>(m);
  return fit;
}

CentralChargeFit central_charge_fit(const CorrelationMatrix& c, std::span<const int> lengths) {
  std::vector<double> s;
  for (int l : lengths) {
    std::vector<int> sites(l);
    for (int j = 0; j < l; ++j) sites[j] = j;
    s.push_back(region_entropy(c, sites));
  }
  return central_charge_fit(lengths, s, c.size());
}

namespace {

RVec least_squares(const RMat& a, const RVec& y) { return a.colPivHouseholderQr().solve(y); }

}  // namespace

Extrapolation extrapolate(std::span<const int> ns, std::span<const double> values) {
  if (ns.size() != values.size()) throw InvalidArgument("extrapolate: size mismatch");
  if (ns.size() < 3) throw InvalidArgument("extrapolate: need at least 3 points");
  for (std::size_t i = 0; i < ns.size(); ++i) {
    if (ns[i] <= 0) throw InvalidArgument("extrapolate: N must be positive");
    if (i > 0 && ns[i] <= ns[i - 1]) throw InvalidArgument("extrapolate: N must be strictly increasing");
  }
  const Eigen::Index m = static_cast<Eigen::Index>(ns.size());
  // Work in x = N_0 / N so the columns are of comparable size.
  const double n0 = ns[0];
  RMat a3(m, 3);
  RVec y(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const double x = n0 / ns[i];
    a3(i, 0) = 1.0;
    a3(i, 1) = x;
    a3(i, 2) = x * x;
    y(i) = values[i];
  }
  const RVec c3 = least_squares(a3, y);
  const RVec c2 = least_squares(a3.leftCols(2), y);
  Extrapolation e;
  e.v_inf = c3(0);
  e.a = c3(1) * n0;
  e.b = c3(2) * n0 * n0;
  e.max_residual = (a3 * c3 - y).cwiseAbs().maxCoeff();
  e.error_estimate = std::abs(c3(0) - c2(0));
  return e;
}

}  // namespace entropylab::lattice
