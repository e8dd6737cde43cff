#include "entropylab/expectation.hpp"

#include <cmath>

namespace entropylab {

ConditionalExpectation::ConditionalExpectation(MatrixBlockAlgebra source, MatrixBlockAlgebra target,
                                               Mat superoperator)
    : source_(std::move(source)), target_(std::move(target)), map_(std::move(superoperator)) {
  const Eigen::Index d2 = source_.ambient_dim() * source_.ambient_dim();
  if (target_.ambient_dim() != source_.ambient_dim() || map_.rows() != d2 || map_.cols() != d2)
    throw InvalidArgument("conditional expectation: dimension mismatch");
}

Mat ConditionalExpectation::operator()(const Mat& x) const { return unvec(map_ * vec(x), ambient_dim()); }

Mat ConditionalExpectation::adjoint_apply(const Mat& d) const {
  return hermitize(unvec(map_.adjoint() * vec(d), ambient_dim()));
}

Mat ConditionalExpectation::choi_matrix() const {
  const Eigen::Index dim = ambient_dim();
  Mat choi(dim * dim, dim * dim);
  for (Eigen::Index j = 0; j < dim; ++j)
    for (Eigen::Index i = 0; i < dim; ++i)
      choi.block(i * dim, j * dim, dim, dim) = unvec(map_.col(i + j * dim), dim);
  return choi;
}

ExpectationCheck ConditionalExpectation::validate(std::uint64_t seed, int samples) const {
  const Eigen::Index dim = ambient_dim();
  ExpectationCheck c;
  const Mat id = Mat::Identity(dim, dim);
  c.unit_residual = ((*this)(id) - id).norm();
  c.idempotence_residual = (map_ * map_ - map_).norm() / std::max(1.0, map_.norm());
  c.choi_min_eigenvalue = min_eigenvalue(choi_matrix());
  Rng rng(seed);
  for (int s = 0; s < samples; ++s) {
    const Mat x = source_.random_element(rng);
    const Mat n1 = target_.random_element(rng);
    const Mat n2 = target_.random_element(rng);
    const Mat ex = (*this)(x);
    c.range_residual = std::max(c.range_residual, target_.distance(ex) / x.norm());
    const Mat lhs = (*this)(n1 * x * n2);
    const Mat rhs = n1 * ex * n2;
    c.bimodule_residual = std::max(c.bimodule_residual, (lhs - rhs).norm() / (n1.norm() * x.norm() * n2.norm()));
  }
  return c;
}

ConditionalExpectation identity_ce(const MatrixBlockAlgebra& m) {
  return ConditionalExpectation(m, m, m.hs_projector());
}

namespace {

void require_subalgebra(const MatrixBlockAlgebra& m, const MatrixBlockAlgebra& n) {
  if (m.ambient_dim() != n.ambient_dim()) throw AlgebraMismatch("ambient dimensions differ");
  for (Eigen::Index i = 0; i < n.span_dim(); ++i)
    if (m.distance(n.basis_element(i)) > 1e-9) throw AlgebraMismatch("target is not a subalgebra of the source");
}

}  // namespace

ConditionalExpectation state_preserving_ce(const MatrixBlockAlgebra& m, const MatrixBlockAlgebra& n,
                                           const WeightDensity& omega) {
  require_subalgebra(m, n);
  if (!same_span(omega.algebra(), m, 1e-9)) throw AlgebraMismatch("omega must be a state on the source algebra");
  if (!omega.faithful()) throw NotFaithful("state_preserving_ce: omega is not faithful");
  const Eigen::Index dim = m.ambient_dim();
  const Mat& nb = n.basis_matrix();
  // r * vec(x) = vec(x D_omega); gram_ij = omega(n_i^* n_j).
  const Mat r = sandwich(Mat::Identity(dim, dim), omega.density());
  const Mat gram = nb.adjoint() * r * nb;
  const Mat coeffs = gram.ldlt().solve(nb.adjoint() * r.adjoint());
  const Mat map = nb * coeffs * m.hs_projector();
  ConditionalExpectation e(m, n, map);
  const auto check = e.validate();
  if (!check.ok(1e-8))
    throw NoPreservingExpectation("no omega-preserving conditional expectation onto N (modular flow moves N)");
  return e;
}

ConditionalExpectation group_average_ce(const MatrixBlockAlgebra& m, std::span<const Mat> unitaries) {
  if (unitaries.empty()) throw InvalidArgument("group_average_ce: empty group");
  const Eigen::Index dim = m.ambient_dim();
  const double d = static_cast<double>(dim);
  const Mat id = Mat::Identity(dim, dim);
  for (const auto& u : unitaries) {
    if (u.rows() != dim || (u.adjoint() * u - id).norm() > 1e-9) throw InvalidArgument("group_average_ce: not unitary");
  }
  auto in_group = [&](const Mat& g) {
    for (const auto& u : unitaries)
      if (std::abs((u.adjoint() * g).trace()) >= d * (1.0 - 1e-9)) return true;
    return false;
  };
  for (const auto& g : unitaries) {
    if (!in_group(g.adjoint())) throw InvalidArgument("group_average_ce: set not closed under inverse");
    for (const auto& h : unitaries)
      if (!in_group(g * h)) throw InvalidArgument("group_average_ce: set not closed under product");
  }
  Rng rng(13);
  for (const auto& u : unitaries)
    for (int s = 0; s < 2; ++s) {
      const Mat x = m.random_element(rng);
      if (m.distance(u * x * u.adjoint()) > 1e-9 * x.norm())
        throw InvalidArgument("group_average_ce: unitaries do not normalize M");
    }
  Mat avg = Mat::Zero(dim * dim, dim * dim);
  for (const auto& u : unitaries) avg += kron(u.conjugate(), u);
  avg /= static_cast<double>(unitaries.size());
  const Mat map = avg * m.hs_projector();
  auto target = MatrixBlockAlgebra::from_projector(dim, hermitize(map));
  return ConditionalExpectation(m, std::move(target), map);
}

ConditionalExpectation compose_ce(const ConditionalExpectation& outer, const ConditionalExpectation& inner) {
  if (!same_span(outer.target(), inner.source(), 1e-9))
    throw AlgebraMismatch("compose_ce: target of the outer expectation is not the source of the inner one");
  return ConditionalExpectation(outer.source(), inner.target(), inner.superoperator() * outer.superoperator());
}

WeightDensity pullback(const WeightDensity& psi, const ConditionalExpectation& e) {
  if (!same_span(psi.algebra(), e.target(), 1e-9)) throw AlgebraMismatch("pullback: psi is not on the target");
  return canonical_density(e.adjoint_apply(psi.density()), e.source());
}

Mat DualWeightMap::operator()(const Mat& y) const {
  return unvec(superoperator * vec(y), codomain.ambient_dim());
}

namespace {

struct RelationData {
  Mat d_psi;     // block density of psi on N
  Mat inv_d_pe;  // inverse block density of psi o E on M
};

RelationData relation_data(const ConditionalExpectation& e, const std::optional<WeightDensity>& psi_opt) {
  const WeightDensity psi = psi_opt ? *psi_opt : trace_state(e.target());
  if (!same_span(psi.algebra(), e.target(), 1e-9)) throw AlgebraMismatch("auxiliary psi must live on the target");
  if (!psi.faithful()) throw NotFaithful("auxiliary psi must be faithful");
  const WeightDensity pe = pullback(psi, e);
  const Mat d_pe = pe.block_density();
  if (min_eigenvalue(d_pe) <= tol::kClamp * std::max(1.0, d_pe.norm()))
    throw SingularExpectation("psi o E is singular (expectation not faithful)");
  return {psi.block_density(), hermitize(d_pe).inverse()};
}

}  // namespace

DualWeightMap operator_valued_weight(const ConditionalExpectation& e, const std::optional<WeightDensity>& psi) {
  const Eigen::Index dim = e.ambient_dim();
  const auto rel = relation_data(e, psi);
  const MatrixBlockAlgebra m_prime = e.source().commutant();
  const MatrixBlockAlgebra n_prime = e.target().commutant();
  const Mat k = rel.inv_d_pe * rel.d_psi;
  const Mat z = m_prime.coupling() * n_prime.coupling().inverse() * k;
  const Mat id = Mat::Identity(dim, dim);
  const Mat map = m_prime.hs_projector() * sandwich(z, id) * n_prime.hs_projector();
  DualWeightMap out{n_prime, m_prime, map, Mat()};
  out.value_at_identity = hermitize(out(id));
  return out;
}

WeightDensity dual_weight(const ConditionalExpectation& e, const WeightDensity& phi_prime,
                          const std::optional<WeightDensity>& psi) {
  const MatrixBlockAlgebra m_prime = e.source().commutant();
  if (!same_span(phi_prime.algebra(), m_prime, 1e-9)) throw AlgebraMismatch("phi' must live on M'");
  if (!phi_prime.faithful()) throw NotFaithful("dual_weight: phi' is not faithful");
  const auto rel = relation_data(e, psi);
  // Delta(psi E / phi') = d_{psi E} d'^{-1} must equal d_psi d_chi^{-1}.
  const Mat d_chi = hermitize(phi_prime.block_density() * rel.inv_d_pe * rel.d_psi);
  const MatrixBlockAlgebra n_prime = e.target().commutant();
  const Mat density = n_prime.coupling().inverse() * d_chi;
  if (n_prime.distance(density) > 1e-8 * std::max(1.0, density.norm()))
    throw SingularExpectation("dual_weight: solution left N' (relation not solvable)");
  return canonical_density(density, n_prime);
}

Mat kosaki_index(const ConditionalExpectation& e) { return operator_valued_weight(e).value_at_identity; }

double kosaki_index_scalar(const ConditionalExpectation& e) {
  const Mat ind = kosaki_index(e);
  const double s = ind.trace().real() / static_cast<double>(ind.rows());
  if ((ind - s * Mat::Identity(ind.rows(), ind.cols())).norm() > 1e-9 * std::max(1.0, s))
    throw NonFactor("index is not a scalar");
  return s;
}

PimsnerPopaReport pimsner_popa_check(const ConditionalExpectation& e, int samples, std::uint64_t seed,
                                     std::optional<double> lambda) {
  if (!e.source().is_factor()) throw NonFactor("pimsner_popa_check: source is not a factor");
  PimsnerPopaReport rep;
  rep.lambda = lambda ? *lambda : 1.0 / kosaki_index_scalar(e);
  rep.samples = samples;
  rep.seed = seed;
  rep.worst_eigenvalue = kInfinity;
  Rng rng(seed);
  const Eigen::Index dim = e.ambient_dim();
  for (int s = 0; s < samples; ++s) {
    // Mix full-rank and rank-one samples; rank-one ones sit on the Pimsner-Popa boundary.
    const Mat x = (s % 2 == 0) ? rng.gaussian(dim, dim) : Mat(rng.gaussian(dim, 1));
    const Mat pos = hermitize(e.source().project(x * x.adjoint()));
    const double scale = std::max(eigh(pos).values.maxCoeff(), 1e-300);
    const double worst = min_eigenvalue(e(pos) - rep.lambda * pos) / scale;
    rep.worst_eigenvalue = std::min(rep.worst_eigenvalue, worst);
  }
  rep.passed = rep.worst_eigenvalue >= -1e-9;
  return rep;
}

}  // namespace entropylab
