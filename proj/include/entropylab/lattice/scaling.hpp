#pragma once

#include <span>
#include <vector>

#include "entropylab/lattice/correlations.hpp"

namespace entropylab::lattice {

struct CentralChargeFit {
  double c_hat = 0.0;
  double intercept = 0.0;
  double residual_norm = 0.0;
  int points = 0;
};

/// Least squares S(l) = c_hat x + b with x = (1/3) ln[(N/pi) sin(pi l / N)].
/// Needs at least 6 lengths; throws for a degenerate design.
CentralChargeFit central_charge_fit(std::span<const int> lengths, std::span<const double> entropies, int n);
/// Same fit on the entropies of the intervals [0, l) of the chain.
CentralChargeFit central_charge_fit(const CorrelationMatrix& c, std::span<const int> lengths);

struct Extrapolation {
  double v_inf = 0.0;
  double a = 0.0;
  double b = 0.0;
  double max_residual = 0.0;
  /// |v_inf - v_inf of the two-parameter fit v_inf + a/N|: a proxy for the model error.
  double error_estimate = 0.0;
};

/// Least squares v(N) = v_inf + a/N + b/N^2 over at least 3 points with N strictly increasing.
Extrapolation extrapolate(std::span<const int> ns, std::span<const double> values);

}  // namespace entropylab::lattice
