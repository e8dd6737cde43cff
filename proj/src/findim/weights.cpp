#include "entropylab/weights.hpp"

#include <cmath>

namespace entropylab {

WeightDensity::WeightDensity(Mat density, MatrixBlockAlgebra algebra)
    : density_(hermitize(density)), algebra_(std::move(algebra)) {
  if (density_.rows() != algebra_.ambient_dim()) throw InvalidArgument("density dimension does not match algebra");
  const double scale = std::max(1.0, density_.norm());
  if (algebra_.distance(density_) > 1e-10 * scale) throw InvalidArgument("density does not lie in the algebra");
  if (min_eigenvalue(density_) < -1e-12 * scale) throw NonPositiveFunctional("density is not positive semidefinite");
  mass_ = density_.trace().real();
  normalized_ = std::abs(mass_ - 1.0) <= 1e-10;
}

bool WeightDensity::faithful() const {
  const double top = std::max(1.0, density_.norm());
  return min_eigenvalue(density_) > tol::kClamp * top;
}

Mat WeightDensity::block_density() const { return algebra_.coupling() * density_; }

WeightDensity WeightDensity::scaled(double s) const {
  if (!(s > 0.0)) throw InvalidArgument("scale must be positive");
  return WeightDensity(s * density_, algebra_);
}

WeightDensity WeightDensity::restricted_to(const MatrixBlockAlgebra& sub) const {
  return canonical_density(density_, sub);
}

WeightDensity canonical_density(const Mat& guess, const MatrixBlockAlgebra& a) {
  if (guess.rows() != a.ambient_dim() || guess.cols() != a.ambient_dim())
    throw InvalidArgument("canonical_density: dimension mismatch");
  const Mat d = hermitize(a.project(hermitize(guess)));
  if (min_eigenvalue(d) < -1e-12 * std::max(1.0, d.norm()))
    throw NonPositiveFunctional("canonical_density: functional is not positive on the algebra");
  return WeightDensity(d, a);
}

WeightDensity canonical_density(const std::function<cplx(const Mat&)>& functional, const MatrixBlockAlgebra& a) {
  const Eigen::Index dim = a.ambient_dim();
  Mat d = Mat::Zero(dim, dim);
  // Tr(D b_i) = <D, b_i> for Hermitian D, so D = sum_i conj(psi(b_i)) b_i.
  for (Eigen::Index i = 0; i < a.span_dim(); ++i) {
    const Mat b = a.basis_element(i);
    d += std::conj(functional(b)) * b;
  }
  return canonical_density(d, a);
}

WeightDensity trace_state(const MatrixBlockAlgebra& a) {
  const Eigen::Index dim = a.ambient_dim();
  return canonical_density(Mat::Identity(dim, dim) / static_cast<double>(dim), a);
}

WeightDensity random_state(const MatrixBlockAlgebra& a, Rng& rng) {
  const Mat rho = rng.random_density(a.ambient_dim());
  return canonical_density(rho, a);
}

VectorState::VectorState(Vec omega) : omega_(std::move(omega)) {
  const double n = omega_.norm();
  if (n == 0.0) throw InvalidArgument("zero vector");
  if (std::abs(n - 1.0) > 1e-12) throw InvalidArgument("vector is not normalized");
}

WeightDensity VectorState::state_on(const MatrixBlockAlgebra& a) const {
  return canonical_density(omega_ * omega_.adjoint(), a);
}

namespace {

Eigen::Index orbit_rank(const MatrixBlockAlgebra& a, const Vec& omega) {
  Mat orbit(a.ambient_dim(), a.span_dim());
  for (Eigen::Index i = 0; i < a.span_dim(); ++i) orbit.col(i) = a.basis_element(i) * omega;
  Eigen::JacobiSVD<Mat> svd(orbit);
  const auto& s = svd.singularValues();
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > 1e-10 * std::max(1.0, s(0))) ++rank;
  return rank;
}

}  // namespace

bool VectorState::is_cyclic(const MatrixBlockAlgebra& a) const { return orbit_rank(a, omega_) == dim(); }

bool VectorState::is_separating(const MatrixBlockAlgebra& a) const {
  return orbit_rank(a, omega_) == a.span_dim();
}

}  // namespace entropylab
