#pragma once

#include <optional>
#include <span>

#include "entropylab/weights.hpp"

namespace entropylab {

struct ExpectationCheck {
  double unit_residual = 0.0;
  double idempotence_residual = 0.0;
  double choi_min_eigenvalue = 0.0;
  double bimodule_residual = 0.0;
  double range_residual = 0.0;  // distance of E(M) from N
  bool ok(double tolerance = tol::kResidual) const {
    return unit_residual <= tolerance && idempotence_residual <= tolerance && choi_min_eigenvalue >= -tolerance &&
           bimodule_residual <= tolerance && range_residual <= tolerance;
  }
};

/// A conditional expectation E of a source algebra M onto a target N, stored as a
/// D^2 x D^2 superoperator acting on column-major vectorized matrices. The stored
/// map is E composed with the trace-preserving projection onto M, so it is defined
/// on all D x D matrices.
class ConditionalExpectation {
 public:
  ConditionalExpectation(MatrixBlockAlgebra source, MatrixBlockAlgebra target, Mat superoperator);

  const MatrixBlockAlgebra& source() const { return source_; }
  const MatrixBlockAlgebra& target() const { return target_; }
  const Mat& superoperator() const { return map_; }
  Eigen::Index ambient_dim() const { return source_.ambient_dim(); }

  Mat operator()(const Mat& x) const;
  /// Hilbert-Schmidt adjoint, the map on densities: Tr(D E(x)) = Tr(E^dagger(D) x).
  Mat adjoint_apply(const Mat& d) const;
  Mat choi_matrix() const;

  ExpectationCheck validate(std::uint64_t seed = 11, int samples = 4) const;

 private:
  MatrixBlockAlgebra source_;
  MatrixBlockAlgebra target_;
  Mat map_;
};

ConditionalExpectation identity_ce(const MatrixBlockAlgebra& m);

/// The omega-preserving expectation onto N, built as the orthogonal projection onto N
/// in the GNS inner product <a, b> = omega(a^* b). Throws NoPreservingExpectation when
/// the projection is not an expectation (the modular flow of omega moves N).
ConditionalExpectation state_preserving_ce(const MatrixBlockAlgebra& m, const MatrixBlockAlgebra& n,
                                           const WeightDensity& omega);

/// E(x) = |G|^{-1} sum_g u_g x u_g^* onto the fixed-point algebra. The unitaries must
/// form a group up to phases and normalize M.
ConditionalExpectation group_average_ce(const MatrixBlockAlgebra& m, std::span<const Mat> unitaries);

/// x -> inner(outer(x)); requires target(outer) == source(inner).
ConditionalExpectation compose_ce(const ConditionalExpectation& outer, const ConditionalExpectation& inner);

/// psi o E as a weight on the source algebra, for psi on the target.
WeightDensity pullback(const WeightDensity& psi, const ConditionalExpectation& e);

/// The operator-valued weight E^{-1}: N' -> M' as an explicit linear map.
struct DualWeightMap {
  MatrixBlockAlgebra domain;    // N'
  MatrixBlockAlgebra codomain;  // M'
  Mat superoperator;            // acts on vec(y), y in N'
  Mat value_at_identity;        // E^{-1}(1) = Ind E, central in M
  Mat operator()(const Mat& y) const;
};

/// E^{-1} from the closed form obtained by solving
/// Delta(psi E / phi') = Delta(psi / phi' E^{-1}) for all phi'; psi is an auxiliary
/// faithful state on N (defaults to the trace state).
DualWeightMap operator_valued_weight(const ConditionalExpectation& e,
                                     const std::optional<WeightDensity>& psi = std::nullopt);

/// The weight phi' o E^{-1} on N', solved directly from the spatial-derivative relation
/// with one auxiliary faithful psi on N. Throws SingularExpectation when psi o E is singular.
WeightDensity dual_weight(const ConditionalExpectation& e, const WeightDensity& phi_prime,
                          const std::optional<WeightDensity>& psi = std::nullopt);

/// Kosaki index Ind E = E^{-1}(1), a positive central element of M.
Mat kosaki_index(const ConditionalExpectation& e);
/// The index as a number; throws NonFactor when Ind E is not a multiple of 1.
double kosaki_index_scalar(const ConditionalExpectation& e);

struct PimsnerPopaReport {
  double lambda = 0.0;
  double worst_eigenvalue = 0.0;  // min over samples of lambda_min(E(m) - lambda m) / ||m||
  int samples = 0;
  std::uint64_t seed = 0;
  bool passed = false;
};

/// Checks E(m) >= lambda m on random positive m in M with lambda = (Ind E)^{-1},
/// or a supplied lambda. Requires M a factor and a scalar index.
PimsnerPopaReport pimsner_popa_check(const ConditionalExpectation& e, int samples, std::uint64_t seed,
                                     std::optional<double> lambda = std::nullopt);

}  // namespace entropylab
