#include "entropylab/algebra.hpp"

#include <algorithm>
#include <cmath>

namespace entropylab {

namespace {

using Data = MatrixBlockAlgebra::Data;

// Orthonormal basis (columns) of the column span of `spanning`.
Mat orthonormal_span(const Mat& spanning) {
  if (spanning.cols() == 0) return Mat(spanning.rows(), 0);
  const auto e = eigh(spanning * spanning.adjoint());
  const double thr = 1e-10 * std::max(e.values.maxCoeff(), 1e-300);
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = e.values.size() - 1; i >= 0; --i)
    if (e.values(i) > thr) keep.push_back(i);
  Mat out(spanning.rows(), static_cast<Eigen::Index>(keep.size()));
  for (std::size_t j = 0; j < keep.size(); ++j) out.col(static_cast<Eigen::Index>(j)) = e.vectors.col(keep[j]);
  return out;
}

Mat stack(std::span<const Mat> elements, Eigen::Index dim) {
  Mat s(dim * dim, static_cast<Eigen::Index>(elements.size()));
  for (std::size_t i = 0; i < elements.size(); ++i) {
    if (elements[i].rows() != dim || elements[i].cols() != dim) throw InvalidArgument("element has wrong dimension");
    s.col(static_cast<Eigen::Index>(i)) = vec(elements[i]);
  }
  return s;
}

// Null space of x -> ([x, b_i])_i over the basis columns.
Mat commutant_basis_of(const Mat& basis, Eigen::Index dim) {
  const Eigen::Index d2 = dim * dim;
  const Mat id = Mat::Identity(dim, dim);
  Mat gram = Mat::Zero(d2, d2);
  Mat bb = Mat::Zero(dim, dim);
  Mat cc = Mat::Zero(dim, dim);
  for (Eigen::Index i = 0; i < basis.cols(); ++i) {
    const Mat b = unvec(basis.col(i), dim);
    bb += b.adjoint() * b;
    cc += b.conjugate() * b.transpose();
    gram -= kron(b.transpose(), b.adjoint()) + kron(b.conjugate(), b);
  }
  gram += kron(id, bb) + kron(cc, id);
  const auto e = eigh(gram);
  const double thr = 1e-8 * std::max(1.0, e.values.maxCoeff());
  Eigen::Index count = 0;
  while (count < e.values.size() && e.values(count) < thr) ++count;
  return e.vectors.leftCols(count);
}

std::shared_ptr<const Data> analyze(Eigen::Index dim, Mat basis, Mat commutant_basis) {
  auto data = std::make_shared<Data>();
  data->dim = dim;
  const Eigen::Index d2 = dim * dim;
  if (basis.cols() == 0) throw InvalidArgument("empty algebra");

  // Center: vectors of the span lying in the commutant span.
  const Mat overlap = basis.adjoint() * commutant_basis;
  const auto ce = eigh(overlap * overlap.adjoint());
  std::vector<Mat> center;
  for (Eigen::Index i = 0; i < ce.values.size(); ++i)
    if (ce.values(i) > 1.0 - 1e-8) center.push_back(unvec(basis * ce.vectors.col(i), dim));
  if (center.empty()) throw InvalidArgument("span is not a unital *-algebra (empty center)");

  Rng rng(0x5eedULL);
  Mat generic = Mat::Zero(dim, dim);
  for (const auto& z : center) generic += cplx(rng.normal(), rng.normal()) * z;
  const auto ge = eigh(generic);
  const double spread = std::max(1.0, ge.values.maxCoeff() - ge.values.minCoeff());
  std::vector<Mat> projections;
  Mat current = Mat::Zero(dim, dim);
  for (Eigen::Index i = 0; i < ge.values.size(); ++i) {
    if (i > 0 && ge.values(i) - ge.values(i - 1) > 1e-6 * spread) {
      projections.push_back(current);
      current.setZero();
    }
    current += ge.vectors.col(i) * ge.vectors.col(i).adjoint();
  }
  projections.push_back(current);

  data->coupling = Mat::Zero(dim, dim);
  data->cocoupling = Mat::Zero(dim, dim);
  const Mat id = Mat::Identity(dim, dim);
  for (const auto& p : projections) {
    const double block_span = (basis.adjoint() * kron(id, p) * basis).trace().real();
    const double rank = p.trace().real();
    const int n = static_cast<int>(std::lround(std::sqrt(block_span)));
    const int r = static_cast<int>(std::lround(rank));
    if (n < 1 || std::abs(n * n - block_span) > 1e-6 || r % n != 0)
      throw InvalidArgument("span is not a *-algebra (inconsistent block structure)");
    data->blocks.push_back({n, r / n});
    data->coupling += static_cast<double>(r / n) * p;
    data->cocoupling += static_cast<double>(n) * p;
  }
  data->central = std::move(projections);
  data->basis = std::move(basis);
  data->commutant_basis = std::move(commutant_basis);
  (void)d2;
  return data;
}

std::shared_ptr<const Data> from_basis(Eigen::Index dim, Mat basis) {
  Mat com = commutant_basis_of(basis, dim);
  return analyze(dim, std::move(basis), std::move(com));
}

}  // namespace

MatrixBlockAlgebra MatrixBlockAlgebra::from_projector(Eigen::Index ambient_dim, const Mat& hs_projector) {
  if (hs_projector.rows() != ambient_dim * ambient_dim) throw InvalidArgument("projector has wrong size");
  const auto e = eigh(hs_projector);
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = e.values.size() - 1; i >= 0; --i)
    if (e.values(i) > 0.5) keep.push_back(i);
  Mat basis(hs_projector.rows(), static_cast<Eigen::Index>(keep.size()));
  for (std::size_t j = 0; j < keep.size(); ++j) basis.col(static_cast<Eigen::Index>(j)) = e.vectors.col(keep[j]);
  return MatrixBlockAlgebra(from_basis(ambient_dim, std::move(basis)));
}

MatrixBlockAlgebra MatrixBlockAlgebra::from_spanning_set(Eigen::Index ambient_dim, std::span<const Mat> elements) {
  return MatrixBlockAlgebra(from_basis(ambient_dim, orthonormal_span(stack(elements, ambient_dim))));
}

MatrixBlockAlgebra MatrixBlockAlgebra::generated_by(Eigen::Index ambient_dim, std::span<const Mat> generators) {
  std::vector<Mat> gens;
  for (const auto& g : generators) {
    gens.push_back(g);
    gens.push_back(g.adjoint());
  }
  std::vector<Mat> seed = gens;
  seed.push_back(Mat::Identity(ambient_dim, ambient_dim));
  Mat basis = orthonormal_span(stack(seed, ambient_dim));
  for (;;) {
    std::vector<Mat> grown;
    for (Eigen::Index i = 0; i < basis.cols(); ++i) {
      const Mat b = unvec(basis.col(i), ambient_dim);
      grown.push_back(b);
      for (const auto& g : gens) grown.push_back(b * g);
    }
    Mat next = orthonormal_span(stack(grown, ambient_dim));
    if (next.cols() == basis.cols()) break;
    basis = std::move(next);
  }
  return MatrixBlockAlgebra(from_basis(ambient_dim, std::move(basis)));
}

Eigen::Index MatrixBlockAlgebra::ambient_dim() const { return data_->dim; }
Eigen::Index MatrixBlockAlgebra::span_dim() const { return data_->basis.cols(); }
const Mat& MatrixBlockAlgebra::basis_matrix() const { return data_->basis; }
Mat MatrixBlockAlgebra::basis_element(Eigen::Index i) const { return unvec(data_->basis.col(i), data_->dim); }

std::vector<Mat> MatrixBlockAlgebra::basis() const {
  std::vector<Mat> out;
  for (Eigen::Index i = 0; i < span_dim(); ++i) out.push_back(basis_element(i));
  return out;
}

const std::vector<Block>& MatrixBlockAlgebra::blocks() const { return data_->blocks; }
const std::vector<Mat>& MatrixBlockAlgebra::central_projections() const { return data_->central; }
const Mat& MatrixBlockAlgebra::coupling() const { return data_->coupling; }

Mat MatrixBlockAlgebra::project(const Mat& x) const {
  const Vec coeffs = data_->basis.adjoint() * vec(x);
  return unvec(data_->basis * coeffs, data_->dim);
}

double MatrixBlockAlgebra::distance(const Mat& x) const { return (x - project(x)).norm(); }

bool MatrixBlockAlgebra::contains(const Mat& x, double tolerance) const {
  return distance(x) <= tolerance * std::max(1.0, x.norm());
}

Mat MatrixBlockAlgebra::hs_projector() const { return data_->basis * data_->basis.adjoint(); }

MatrixBlockAlgebra MatrixBlockAlgebra::commutant() const {
  auto data = std::make_shared<Data>();
  data->dim = data_->dim;
  data->basis = data_->commutant_basis;
  data->commutant_basis = data_->basis;
  for (const auto& b : data_->blocks) data->blocks.push_back({b.multiplicity, b.dim});
  data->central = data_->central;
  data->coupling = data_->cocoupling;
  data->cocoupling = data_->coupling;
  return MatrixBlockAlgebra(std::move(data));
}

MatrixBlockAlgebra MatrixBlockAlgebra::conjugated(const Mat& u) const {
  const Mat s = kron(u.conjugate(), u);
  auto data = std::make_shared<Data>(*data_);
  data->basis = s * data_->basis;
  data->commutant_basis = s * data_->commutant_basis;
  for (auto& p : data->central) p = u * p * u.adjoint();
  data->coupling = u * data_->coupling * u.adjoint();
  data->cocoupling = u * data_->cocoupling * u.adjoint();
  return MatrixBlockAlgebra(std::move(data));
}

Mat MatrixBlockAlgebra::random_element(Rng& rng) const {
  const Vec c = rng.gaussian_vector(span_dim());
  return unvec(data_->basis * c, data_->dim);
}

double MatrixBlockAlgebra::closure_residual(std::uint64_t seed) const {
  Rng rng(seed);
  double worst = 0.0;
  for (int s = 0; s < 4; ++s) {
    const Mat x = random_element(rng);
    const Mat y = random_element(rng);
    const Mat xy = x * y;
    worst = std::max(worst, distance(xy) / (x.norm() * y.norm()));
    worst = std::max(worst, distance(x.adjoint()) / x.norm());
  }
  worst = std::max(worst, distance(Mat::Identity(data_->dim, data_->dim)));
  return worst;
}

MatrixBlockAlgebra build_algebra(std::span<const Block> blocks) {
  if (blocks.empty()) throw InvalidArgument("build_algebra: empty block list");
  Eigen::Index dim = 0;
  for (const auto& b : blocks) {
    if (b.dim < 1 || b.multiplicity < 1) throw InvalidArgument("build_algebra: block sizes must be >= 1");
    dim += static_cast<Eigen::Index>(b.dim) * b.multiplicity;
  }
  Eigen::Index span = 0;
  Eigen::Index cospan = 0;
  for (const auto& b : blocks) {
    span += static_cast<Eigen::Index>(b.dim) * b.dim;
    cospan += static_cast<Eigen::Index>(b.multiplicity) * b.multiplicity;
  }
  auto data = std::make_shared<Data>();
  data->dim = dim;
  data->basis = Mat::Zero(dim * dim, span);
  data->commutant_basis = Mat::Zero(dim * dim, cospan);
  data->coupling = Mat::Zero(dim, dim);
  data->cocoupling = Mat::Zero(dim, dim);
  Eigen::Index offset = 0;
  Eigen::Index col = 0;
  Eigen::Index cocol = 0;
  for (const auto& b : blocks) {
    const int n = b.dim;
    const int m = b.multiplicity;
    const double sn = 1.0 / std::sqrt(static_cast<double>(n));
    const double sm = 1.0 / std::sqrt(static_cast<double>(m));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j, ++col)
        for (int a = 0; a < m; ++a) {
          const Eigen::Index r = offset + i * m + a;
          const Eigen::Index c = offset + j * m + a;
          data->basis(r + c * dim, col) = sm;
        }
    for (int a = 0; a < m; ++a)
      for (int c2 = 0; c2 < m; ++c2, ++cocol)
        for (int i = 0; i < n; ++i) {
          const Eigen::Index r = offset + i * m + a;
          const Eigen::Index c = offset + i * m + c2;
          data->commutant_basis(r + c * dim, cocol) = sn;
        }
    Mat p = Mat::Zero(dim, dim);
    p.block(offset, offset, n * m, n * m).setIdentity();
    data->coupling += static_cast<double>(m) * p;
    data->cocoupling += static_cast<double>(n) * p;
    data->central.push_back(std::move(p));
    data->blocks.push_back(b);
    offset += static_cast<Eigen::Index>(n) * m;
  }
  return MatrixBlockAlgebra(std::move(data));
}

MatrixBlockAlgebra build_algebra(std::initializer_list<Block> blocks) {
  return build_algebra(std::span<const Block>(blocks.begin(), blocks.size()));
}

MatrixBlockAlgebra commutant(const MatrixBlockAlgebra& a) { return a.commutant(); }

namespace {

// Orthonormal basis of the tensor product of full/trivial leg algebras, per flag.
Mat leg_basis(std::span<const int> dims, std::span<const bool> full) {
  Mat basis = Mat::Ones(1, 1);
  for (std::size_t l = 0; l < dims.size(); ++l) {
    const int d = dims[l];
    std::vector<Mat> local;
    if (full[l]) {
      for (int j = 0; j < d; ++j)
        for (int i = 0; i < d; ++i) {
          Mat e = Mat::Zero(d, d);
          e(i, j) = 1.0;
          local.push_back(e);
        }
    } else {
      local.push_back(Mat::Identity(d, d) / std::sqrt(static_cast<double>(d)));
    }
    const Eigen::Index prev_dim = static_cast<Eigen::Index>(std::lround(std::sqrt(static_cast<double>(basis.rows()))));
    Mat next(basis.rows() * d * d, basis.cols() * static_cast<Eigen::Index>(local.size()));
    Eigen::Index col = 0;
    for (Eigen::Index c = 0; c < basis.cols(); ++c) {
      const Mat prev = unvec(basis.col(c), prev_dim);
      for (const auto& e : local) next.col(col++) = vec(kron(prev, e));
    }
    basis = std::move(next);
  }
  return basis;
}

}  // namespace

MatrixBlockAlgebra tensor_leg_algebra(std::span<const int> leg_dims, std::span<const bool> active) {
  if (leg_dims.size() != active.size() || leg_dims.empty()) throw InvalidArgument("tensor_leg_algebra: bad legs");
  Eigen::Index dim = 1;
  int n = 1;
  int m = 1;
  for (std::size_t l = 0; l < leg_dims.size(); ++l) {
    if (leg_dims[l] < 1) throw InvalidArgument("tensor_leg_algebra: leg dimension must be >= 1");
    dim *= leg_dims[l];
    (active[l] ? n : m) *= leg_dims[l];
  }
  std::vector<bool> inverse(active.begin(), active.end());
  inverse.flip();
  // std::vector<bool> is not contiguous; copy into a plain array for the span.
  std::unique_ptr<bool[]> inv(new bool[inverse.size()]);
  for (std::size_t l = 0; l < inverse.size(); ++l) inv[l] = inverse[l];

  auto data = std::make_shared<Data>();
  data->dim = dim;
  data->basis = leg_basis(leg_dims, active);
  data->commutant_basis = leg_basis(leg_dims, std::span<const bool>(inv.get(), inverse.size()));
  data->blocks = {{n, m}};
  data->central = {Mat::Identity(dim, dim)};
  data->coupling = static_cast<double>(m) * Mat::Identity(dim, dim);
  data->cocoupling = static_cast<double>(n) * Mat::Identity(dim, dim);
  return MatrixBlockAlgebra(std::move(data));
}

MatrixBlockAlgebra tensor_leg_algebra(std::initializer_list<int> leg_dims, std::initializer_list<bool> active) {
  std::vector<int> d(leg_dims);
  std::unique_ptr<bool[]> a(new bool[active.size()]);
  std::size_t i = 0;
  for (bool b : active) a[i++] = b;
  return tensor_leg_algebra(std::span<const int>(d), std::span<const bool>(a.get(), active.size()));
}

double span_distance(const MatrixBlockAlgebra& a, const MatrixBlockAlgebra& b) {
  if (a.ambient_dim() != b.ambient_dim() || a.span_dim() != b.span_dim()) return kInfinity;
  const Mat& ba = a.basis_matrix();
  const Mat& bb = b.basis_matrix();
  return (bb - ba * (ba.adjoint() * bb)).norm();
}

bool same_span(const MatrixBlockAlgebra& a, const MatrixBlockAlgebra& b, double tolerance) {
  return span_distance(a, b) <= tolerance;
}

}  // namespace entropylab
