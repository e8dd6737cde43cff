#pragma once

#include <optional>

#include "entropylab/weights.hpp"

namespace entropylab {

/// Connes spatial derivative Delta(psi / phi') for psi on M and a faithful phi' on M'.
///
/// In finite dimensions Delta = (+)_k rho_k (x) sigma_k^{-1}, the product of the
/// commuting block-trace densities of psi (in M) and phi'^{-1} (in M').
/// Throws NotFaithful when phi' is not faithful, AlgebraMismatch when phi' does not
/// live on the commutant of psi's algebra.
Mat spatial_derivative(const WeightDensity& psi, const WeightDensity& phi_prime);

/// Araki relative entropy S(omega, phi) = -<ln Delta(phi / omega') Omega, Omega> for
/// the vector state of Omega and a weight phi on some algebra M; omega' is the
/// vector state on M'. Returns +inf when Omega is not in the support of phi.
double relative_entropy_spatial(const VectorState& omega, const WeightDensity& phi);

/// Tr rho (ln rho - ln sigma) from ambient trace densities; +inf when the support of
/// rho is not contained in that of sigma. The ambient normalization cancels, so this
/// equals the algebra relative entropy for every block algebra.
double relative_entropy_umegaki(const WeightDensity& rho, const WeightDensity& sigma);

/// [D psi1 : D psi2]_t = Delta(psi1/phi')^{it} Delta(psi2/phi')^{-it}. The auxiliary
/// phi' defaults to the trace state on M'. Throws NotFaithful when psi2 is not faithful.
Mat connes_cocycle(const WeightDensity& psi1, const WeightDensity& psi2, double t,
                   const std::optional<WeightDensity>& phi_prime = std::nullopt);

/// sigma_t^psi(x) = Delta^{it} x Delta^{-it} with Delta = Delta(psi / phi').
Mat modular_flow(const WeightDensity& psi, const Mat& x, double t,
                 const std::optional<WeightDensity>& phi_prime = std::nullopt);

/// Delta(psi/phi')^{it}, the unitary group implementing both modular flows.
Mat spatial_derivative_power(const WeightDensity& psi, const WeightDensity& phi_prime, double t);

}  // namespace entropylab
