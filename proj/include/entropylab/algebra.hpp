#pragma once

#include <memory>
#include <span>
#include <vector>

#include "entropylab/linalg.hpp"

namespace entropylab {

/// One summand M_{n} (x) 1_{m} of a finite-dimensional von Neumann algebra.
struct Block {
  int dim = 1;
  int multiplicity = 1;
  friend bool operator==(const Block&, const Block&) = default;
};

/// A unital *-subalgebra of the D x D matrices, isomorphic to (+)_k M_{n_k} (x) 1_{m_k}.
///
/// The algebra is stored as an orthonormal (Hilbert-Schmidt) basis of its span
/// together with its block structure: central projections p_k, block sizes n_k and
/// multiplicities m_k. The basis of the commutant is kept alongside, so commutants
/// of algebras built from explicit blocks or tensor legs are exact and cheap.
/// Values are immutable and cheap to copy.
class MatrixBlockAlgebra {
 public:
  /// The algebra whose span is the range of the given Hilbert-Schmidt projector
  /// (a D^2 x D^2 orthogonal projection). The range must be a unital *-algebra.
  static MatrixBlockAlgebra from_projector(Eigen::Index ambient_dim, const Mat& hs_projector);
  /// The algebra spanned by the given matrices. The span must already be closed.
  static MatrixBlockAlgebra from_spanning_set(Eigen::Index ambient_dim, std::span<const Mat> elements);
  /// The unital *-algebra generated by the given matrices.
  static MatrixBlockAlgebra generated_by(Eigen::Index ambient_dim, std::span<const Mat> generators);

  Eigen::Index ambient_dim() const;
  Eigen::Index span_dim() const;
  /// Orthonormal basis as columns of a D^2 x dim matrix (column-major vec).
  const Mat& basis_matrix() const;
  Mat basis_element(Eigen::Index i) const;
  std::vector<Mat> basis() const;

  const std::vector<Block>& blocks() const;
  const std::vector<Mat>& central_projections() const;
  bool is_factor() const { return blocks().size() == 1; }

  /// (+)_k m_k p_k. Multiplying an ambient trace density by it gives the block-trace density.
  const Mat& coupling() const;

  /// Hilbert-Schmidt orthogonal projection onto the span (the trace-preserving expectation).
  Mat project(const Mat& x) const;
  double distance(const Mat& x) const;
  bool contains(const Mat& x, double tolerance = tol::kResidual) const;
  Mat hs_projector() const;

  MatrixBlockAlgebra commutant() const;
  /// u A u^* for a unitary u.
  MatrixBlockAlgebra conjugated(const Mat& u) const;

  /// Worst residual of closure under product and adjoint on sampled elements.
  double closure_residual(std::uint64_t seed = 7) const;
  /// Random element of the algebra.
  Mat random_element(Rng& rng) const;

  struct Data;
  explicit MatrixBlockAlgebra(std::shared_ptr<const Data> data) : data_(std::move(data)) {}

 private:
  std::shared_ptr<const Data> data_;
};

struct MatrixBlockAlgebra::Data {
  Eigen::Index dim = 0;
  Mat basis;            // D^2 x k
  Mat commutant_basis;  // D^2 x k'
  std::vector<Block> blocks;
  std::vector<Mat> central;
  Mat coupling;    // (+) m_k p_k
  Mat cocoupling;  // (+) n_k p_k, the coupling of the commutant
};

/// (+)_k M_{n_k} (x) 1_{m_k} in its standard block-diagonal position.
MatrixBlockAlgebra build_algebra(std::span<const Block> blocks);
MatrixBlockAlgebra build_algebra(std::initializer_list<Block> blocks);

MatrixBlockAlgebra commutant(const MatrixBlockAlgebra& a);

/// On the tensor product of spaces with the given dimensions, the algebra acting as
/// the full matrix algebra on legs flagged true and trivially elsewhere.
MatrixBlockAlgebra tensor_leg_algebra(std::span<const int> leg_dims, std::span<const bool> active);
MatrixBlockAlgebra tensor_leg_algebra(std::initializer_list<int> leg_dims, std::initializer_list<bool> active);

/// Largest deviation between the span projectors; 0 means identical spans.
double span_distance(const MatrixBlockAlgebra& a, const MatrixBlockAlgebra& b);
bool same_span(const MatrixBlockAlgebra& a, const MatrixBlockAlgebra& b, double tolerance = 1e-10);

}  // namespace entropylab
