#include "entropylab/spatial.hpp"

#include <cmath>

namespace entropylab {

namespace {

void require_commutant_pair(const MatrixBlockAlgebra& m, const MatrixBlockAlgebra& m_prime) {
  if (m.ambient_dim() != m_prime.ambient_dim()) throw AlgebraMismatch("ambient dimensions differ");
  if (!same_span(m.commutant(), m_prime, 1e-9)) throw AlgebraMismatch("phi' does not live on the commutant of M");
}

WeightDensity default_auxiliary(const WeightDensity& psi) { return trace_state(psi.algebra().commutant()); }

}  // namespace

Mat spatial_derivative(const WeightDensity& psi, const WeightDensity& phi_prime) {
  require_commutant_pair(psi.algebra(), phi_prime.algebra());
  if (!phi_prime.faithful()) throw NotFaithful("spatial_derivative: phi' is not faithful");
  const Mat inv = pinv_psd(phi_prime.block_density());
  return hermitize(psi.block_density() * inv);
}

Mat spatial_derivative_power(const WeightDensity& psi, const WeightDensity& phi_prime, double t) {
  return power_it(spatial_derivative(psi, phi_prime), t);
}

double relative_entropy_spatial(const VectorState& omega, const WeightDensity& phi) {
  const MatrixBlockAlgebra& m = phi.algebra();
  if (omega.dim() != m.ambient_dim()) throw InvalidArgument("relative_entropy_spatial: dimension mismatch");
  const Vec& v = omega.vector();

  const Mat d_phi = phi.block_density();
  const Mat s_phi = support_projector(d_phi);
  const double leak = (v - s_phi * v).squaredNorm();
  if (leak > tol::kClamp) return kInfinity;

  // omega' need not be faithful; the pseudo-inverse acts on its support, which contains Omega.
  const WeightDensity omega_prime = omega.state_on(m.commutant());
  const Mat delta = hermitize(d_phi * pinv_psd(omega_prime.block_density()));
  const Mat log_delta = log_on_support(delta);
  return -std::real(v.dot(log_delta * v));
}

double relative_entropy_umegaki(const WeightDensity& rho, const WeightDensity& sigma) {
  if (rho.density().rows() != sigma.density().rows())
    throw InvalidArgument("relative_entropy_umegaki: dimension mismatch");
  const Mat& r = rho.density();
  const Mat& s = sigma.density();
  const Mat s_sigma = support_projector(s);
  const double leak = (r - s_sigma * r * s_sigma).trace().real();
  if (leak > tol::kClamp * std::max(1.0, rho.mass())) return kInfinity;
  return (r * (log_on_support(r) - log_on_support(s))).trace().real();
}

Mat connes_cocycle(const WeightDensity& psi1, const WeightDensity& psi2, double t,
                   const std::optional<WeightDensity>& phi_prime) {
  if (!same_span(psi1.algebra(), psi2.algebra(), 1e-9))
    throw AlgebraMismatch("connes_cocycle: weights live on different algebras");
  if (!psi2.faithful()) throw NotFaithful("connes_cocycle: psi2 is not faithful");
  const WeightDensity aux = phi_prime ? *phi_prime : default_auxiliary(psi1);
  return spatial_derivative_power(psi1, aux, t) * spatial_derivative_power(psi2, aux, -t);
}

Mat modular_flow(const WeightDensity& psi, const Mat& x, double t, const std::optional<WeightDensity>& phi_prime) {
  if (!psi.faithful()) throw NotFaithful("modular_flow: psi is not faithful");
  if (!psi.algebra().contains(x, 1e-9)) throw InvalidArgument("modular_flow: x does not lie in the algebra");
  const WeightDensity aux = phi_prime ? *phi_prime : default_auxiliary(psi);
  const Mat u = spatial_derivative_power(psi, aux, t);
  return u * x * u.adjoint();
}

}  // namespace entropylab
