#include "entropylab/linalg.hpp"

#include <cmath>

namespace entropylab {

Mat hermitize(const Mat& a) { return 0.5 * (a + a.adjoint()); }

HermitianEigen eigh(const Mat& a) {
  Eigen::SelfAdjointEigenSolver<Mat> solver(hermitize(a));
  if (solver.info() != Eigen::Success) throw Error("Hermitian eigensolver failed");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

double min_eigenvalue(const Mat& a) {
  if (a.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Mat> solver(hermitize(a), Eigen::EigenvaluesOnly);
  return solver.eigenvalues()(0);
}

Mat apply_function(const Mat& a, const std::function<cplx(double)>& f) {
  const auto e = eigh(a);
  Vec fv(e.values.size());
  for (Eigen::Index i = 0; i < e.values.size(); ++i) fv(i) = f(e.values(i));
  return e.vectors * fv.asDiagonal() * e.vectors.adjoint();
}

namespace {

double spectral_threshold(const RVec& values, double cutoff) {
  const double top = values.size() ? std::max(values.maxCoeff(), 0.0) : 0.0;
  return cutoff * std::max(top, 1.0);
}

Mat apply_on_support(const Mat& a, double cutoff, const std::function<cplx(double)>& f) {
  const auto e = eigh(a);
  const double thr = spectral_threshold(e.values, cutoff);
  Vec fv(e.values.size());
  for (Eigen::Index i = 0; i < e.values.size(); ++i) {
    fv(i) = e.values(i) > thr ? f(e.values(i)) : cplx(0.0);
  }
  return e.vectors * fv.asDiagonal() * e.vectors.adjoint();
}

}  // namespace

Mat pinv_psd(const Mat& a, double cutoff) {
  return apply_on_support(a, cutoff, [](double x) { return cplx(1.0 / x); });
}

Mat support_projector(const Mat& a, double cutoff) {
  return apply_on_support(a, cutoff, [](double) { return cplx(1.0); });
}

Mat power_it(const Mat& a, double t, double cutoff) {
  return apply_on_support(a, cutoff, [t](double x) { return std::exp(cplx(0.0, t * std::log(x))); });
}

Mat log_on_support(const Mat& a, double cutoff) {
  return apply_on_support(a, cutoff, [](double x) { return cplx(std::log(x)); });
}

Vec vec(const Mat& x) { return Eigen::Map<const Vec>(x.data(), x.size()); }

Mat unvec(const Vec& v, Eigen::Index dim) { return Eigen::Map<const Mat>(v.data(), dim, dim); }

Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Mat sandwich(const Mat& a, const Mat& b) { return kron(b.transpose(), a); }

cplx hs_inner(const Mat& a, const Mat& b) { return (a.adjoint() * b).trace(); }

double von_neumann_kernel(double p) { return p > 0.0 ? -p * std::log(p) : 0.0; }

Mat Rng::gaussian(Eigen::Index rows, Eigen::Index cols) {
  Mat m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = cplx(normal(), normal());
  return m;
}

Vec Rng::gaussian_vector(Eigen::Index n) {
  Vec v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = cplx(normal(), normal());
  return v;
}

Mat Rng::random_density(Eigen::Index n) {
  const Mat x = gaussian(n, n);
  Mat rho = x * x.adjoint();
  rho /= rho.trace().real();
  return hermitize(rho);
}

Mat Rng::random_unitary(Eigen::Index n) {
  const Mat z = gaussian(n, n);
  Eigen::HouseholderQR<Mat> qr(z);
  Mat q = qr.householderQ() * Mat::Identity(n, n);
  const Mat r = qr.matrixQR();
  for (Eigen::Index i = 0; i < n; ++i) {
    const cplx d = r(i, i);
    q.col(i) *= std::abs(d) > 0 ? d / std::abs(d) : cplx(1.0);
  }
  return q;
}

Mat Rng::random_hermitian(Eigen::Index n) { return hermitize(gaussian(n, n)); }

}  // namespace entropylab
