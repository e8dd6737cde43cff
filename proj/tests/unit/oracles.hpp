#pragma once

// Reference computations kept independent of the library code paths.

#include <Eigen/Eigenvalues>

#include "entropylab/linalg.hpp"

namespace oracle {

using LMat = Eigen::Matrix<std::complex<long double>, Eigen::Dynamic, Eigen::Dynamic>;

inline LMat widen(const entropylab::Mat& a) { return a.cast<std::complex<long double>>(); }

// Tr rho (ln rho - ln sigma) in long double, faithful sigma.
inline long double umegaki(const entropylab::Mat& rho, const entropylab::Mat& sigma) {
  Eigen::SelfAdjointEigenSolver<LMat> er(widen(rho)), es(widen(sigma));
  long double s = 0.0L;
  const auto& pr = er.eigenvalues();
  for (Eigen::Index i = 0; i < pr.size(); ++i)
    if (pr(i) > 1e-30L) s += pr(i) * std::log(pr(i));
  const LMat v = es.eigenvectors();
  const LMat rot = v.adjoint() * widen(rho) * v;
  for (Eigen::Index i = 0; i < rot.rows(); ++i) s -= rot(i, i).real() * std::log(es.eigenvalues()(i));
  return s;
}

// GNS modular operator of a cyclic and separating Omega for the algebra spanned by
// `basis`, from Tomita's S: x Omega -> x^* Omega. S v = T conj(v), Delta = S^* S = T^T conj(T).
inline entropylab::Mat gns_modular_operator(const std::vector<entropylab::Mat>& basis, const entropylab::Vec& omega) {
  const auto d = omega.size();
  entropylab::Mat a(d, basis.size()), b(d, basis.size());
  for (std::size_t k = 0; k < basis.size(); ++k) {
    a.col(k) = basis[k] * omega;
    b.col(k) = basis[k].adjoint() * omega;
  }
  // a is square and invertible when the algebra is M_n (x) 1_n and Omega is cyclic.
  const entropylab::Mat t = b * a.inverse().conjugate();
  return t.transpose() * t.conjugate();
}

// Ground-state correlations <c_i^* c_j> of a single-particle hopping matrix by
// numerical diagonalization: fill the negative-energy modes.
inline entropylab::RMat filled_correlations(const entropylab::RMat& h) {
  Eigen::SelfAdjointEigenSolver<entropylab::RMat> es(h);
  entropylab::RMat c = entropylab::RMat::Zero(h.rows(), h.cols());
  for (Eigen::Index k = 0; k < h.rows(); ++k)
    if (es.eigenvalues()(k) < 0.0) c += es.eigenvectors().col(k) * es.eigenvectors().col(k).transpose();
  return c;
}

}  // namespace oracle
