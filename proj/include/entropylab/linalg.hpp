#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace entropylab {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;
using RMat = Eigen::MatrixXd;

/// Numerical tolerances shared across the finite-dimensional core.
namespace tol {
inline constexpr double kClamp = 1e-12;      // eigenvalue clamping / support cutoff
inline constexpr double kResidual = 1e-10;   // identity and PSD residuals
inline constexpr double kSpan = 1e-12;       // span comparisons
inline constexpr double kEntropy = 1e-6;     // accumulated logm error in identities
}  // namespace tol

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class NotFaithful : public Error {
 public:
  using Error::Error;
};

class NonPositiveFunctional : public Error {
 public:
  using Error::Error;
};

class NoPreservingExpectation : public Error {
 public:
  using Error::Error;
};

class AlgebraMismatch : public Error {
 public:
  using Error::Error;
};

class SingularExpectation : public Error {
 public:
  using Error::Error;
};

class NonFactor : public Error {
 public:
  using Error::Error;
};

class NotStandard : public Error {
 public:
  using Error::Error;
};

struct HermitianEigen {
  RVec values;  // ascending
  Mat vectors;
};

Mat hermitize(const Mat& a);
HermitianEigen eigh(const Mat& a);
double min_eigenvalue(const Mat& a);

/// f(A) for Hermitian A via its eigendecomposition.
Mat apply_function(const Mat& a, const std::function<cplx(double)>& f);

/// Moore-Penrose inverse of a PSD matrix, dropping eigenvalues below cutoff * max.
Mat pinv_psd(const Mat& a, double cutoff = tol::kClamp);
/// Projector onto the eigenvalues of a PSD matrix above cutoff * max.
Mat support_projector(const Mat& a, double cutoff = tol::kClamp);
/// A^{it} on the support of a PSD matrix; zero on its kernel.
Mat power_it(const Mat& a, double t, double cutoff = tol::kClamp);
/// ln A on the support of a PSD matrix; zero on its kernel.
Mat log_on_support(const Mat& a, double cutoff = tol::kClamp);

/// Column-major vectorization; the matrix of x -> a x b is kron(b^T, a).
Vec vec(const Mat& x);
Mat unvec(const Vec& v, Eigen::Index dim);
Mat kron(const Mat& a, const Mat& b);
/// Superoperator matrix of x -> a x b.
Mat sandwich(const Mat& a, const Mat& b);

cplx hs_inner(const Mat& a, const Mat& b);  // Tr(a^* b)

double von_neumann_kernel(double p);  // -p ln p with 0 ln 0 = 0

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  double normal() { return normal_(engine_); }
  double uniform() { return uniform_(engine_); }
  int uniform_int(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }
  Mat gaussian(Eigen::Index rows, Eigen::Index cols);
  Vec gaussian_vector(Eigen::Index n);
  /// rho = X X^* / Tr(X X^*) with Gaussian X.
  Mat random_density(Eigen::Index n);
  /// Haar-distributed unitary from the QR decomposition of a Gaussian matrix.
  Mat random_unitary(Eigen::Index n);
  Mat random_hermitian(Eigen::Index n);

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

}  // namespace entropylab
