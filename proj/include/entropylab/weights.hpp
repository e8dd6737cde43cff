#pragma once

#include <functional>

#include "entropylab/algebra.hpp"

namespace entropylab {

/// A positive functional psi on an algebra A, stored as its ambient trace density:
/// the unique D_psi in A with Tr(D_psi x) = psi(x) for x in A.
class WeightDensity {
 public:
  WeightDensity(Mat density, MatrixBlockAlgebra algebra);

  const Mat& density() const { return density_; }
  const MatrixBlockAlgebra& algebra() const { return algebra_; }
  /// Tr(D_psi) = 1 within 1e-10.
  bool normalized() const { return normalized_; }
  double mass() const { return mass_; }
  bool faithful() const;

  /// (+)_k rho_k (x) 1_{m_k}: the density with respect to the block traces of A.
  Mat block_density() const;
  cplx operator()(const Mat& x) const { return (density_ * x).trace(); }

  /// Same functional multiplied by s > 0.
  WeightDensity scaled(double s) const;
  /// Restriction to a subalgebra B of the algebra this lives on.
  WeightDensity restricted_to(const MatrixBlockAlgebra& sub) const;

 private:
  Mat density_;
  MatrixBlockAlgebra algebra_;
  double mass_ = 0.0;
  bool normalized_ = false;
};

/// psi(x) = Tr(guess x) restricted to A; the density guess may be any Hermitian
/// matrix, its projection onto A is the canonical density.
/// Throws NonPositiveFunctional when the restricted functional is not positive.
WeightDensity canonical_density(const Mat& guess, const MatrixBlockAlgebra& a);
/// The density of a functional given by its values on A.
WeightDensity canonical_density(const std::function<cplx(const Mat&)>& functional, const MatrixBlockAlgebra& a);

/// Normalized trace of the ambient space, restricted to A.
WeightDensity trace_state(const MatrixBlockAlgebra& a);
/// Random faithful state on A: projection of X X^* / Tr(X X^*).
WeightDensity random_state(const MatrixBlockAlgebra& a, Rng& rng);

/// A unit vector Omega of the ambient space.
class VectorState {
 public:
  explicit VectorState(Vec omega);

  const Vec& vector() const { return omega_; }
  Eigen::Index dim() const { return omega_.size(); }
  /// The vector state x -> <Omega, x Omega> restricted to A.
  WeightDensity state_on(const MatrixBlockAlgebra& a) const;
  bool is_cyclic(const MatrixBlockAlgebra& a) const;
  bool is_separating(const MatrixBlockAlgebra& a) const;

 private:
  Vec omega_;
};

}  // namespace entropylab
