#include "entropylab/instances.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace entropylab {

std::vector<Mat> weyl_group(int d) {
  if (d < 1) throw InvalidArgument("weyl_group: d must be positive");
  Mat x = Mat::Zero(d, d);
  Mat z = Mat::Zero(d, d);
  for (int j = 0; j < d; ++j) {
    x((j + 1) % d, j) = 1.0;
    z(j, j) = std::polar(1.0, 2.0 * std::numbers::pi * j / d);
  }
  std::vector<Mat> out;
  Mat xa = Mat::Identity(d, d);
  for (int a = 0; a < d; ++a) {
    Mat zb = Mat::Identity(d, d);
    for (int b = 0; b < d; ++b) {
      out.push_back(xa * zb);
      zb = zb * z;
    }
    xa = xa * x;
  }
  return out;
}

std::vector<Mat> clock_group(int d) {
  std::vector<Mat> out;
  for (int k = 0; k < d; ++k) {
    Mat z = Mat::Zero(d, d);
    for (int j = 0; j < d; ++j) z(j, j) = std::polar(1.0, 2.0 * std::numbers::pi * j * k / d);
    out.push_back(z);
  }
  return out;
}

Mat embed_on_leg(const Mat& u, std::span<const int> leg_dims, int leg) {
  if (leg < 0 || leg >= static_cast<int>(leg_dims.size()) || u.rows() != leg_dims[leg])
    throw InvalidArgument("embed_on_leg: leg does not match the operator");
  Mat out = Mat::Identity(1, 1);
  for (int i = 0; i < static_cast<int>(leg_dims.size()); ++i)
    out = kron(out, i == leg ? u : Mat(Mat::Identity(leg_dims[i], leg_dims[i])));
  return out;
}

std::vector<Mat> embed_group_on_leg(std::span<const Mat> group, std::span<const int> leg_dims, int leg) {
  std::vector<Mat> out;
  out.reserve(group.size());
  for (const auto& g : group) out.push_back(embed_on_leg(g, leg_dims, leg));
  return out;
}

GroupTable cyclic_group_table(int n) {
  GroupTable t(n, std::vector<int>(n));
  for (int g = 0; g < n; ++g)
    for (int h = 0; h < n; ++h) t[g][h] = (g + h) % n;
  return t;
}

GroupTable symmetric_group_table(int n) {
  std::vector<std::vector<int>> perms;
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  const int size = static_cast<int>(perms.size());
  GroupTable t(size, std::vector<int>(size));
  for (int g = 0; g < size; ++g)
    for (int h = 0; h < size; ++h) {
      std::vector<int> gh(n);
      for (int i = 0; i < n; ++i) gh[i] = perms[g][perms[h][i]];
      t[g][h] = static_cast<int>(std::find(perms.begin(), perms.end(), gh) - perms.begin());
    }
  return t;
}

std::vector<Mat> regular_representation(const GroupTable& table, int k) {
  const int n = static_cast<int>(table.size());
  std::vector<Mat> out;
  for (int g = 0; g < n; ++g) {
    Mat p = Mat::Zero(n, n);
    for (int h = 0; h < n; ++h) p(table[g][h], h) = 1.0;
    out.push_back(kron(p, Mat::Identity(k, k)));
  }
  return out;
}

TranslationAction translation_action(const GroupTable& table, int k) {
  std::vector<Block> blocks(table.size(), Block{k, 1});
  return {build_algebra(blocks), regular_representation(table, k)};
}

Vec random_unit_vector(Eigen::Index dim, Rng& rng) {
  Vec v = rng.gaussian_vector(dim);
  return v / v.norm();
}

ConditionalExpectation slice_ce(const MatrixBlockAlgebra& m, const MatrixBlockAlgebra& n, const Mat& density) {
  return state_preserving_ce(m, n, canonical_density(density, m));
}

namespace {

Mat maximally_mixed(int d) { return Mat::Identity(d, d) / static_cast<double>(d); }

}  // namespace

FactorInstance make_factor_instance(std::uint64_t seed, int max_dim) {
  Rng rng(seed);
  std::vector<Block> shapes;
  for (int n = 2; n <= 4; ++n)
    for (int m = 1; n * m <= max_dim; ++m) shapes.push_back({n, m});
  if (shapes.empty()) throw InvalidArgument("make_factor_instance: max_dim too small");
  const Block b = shapes[rng.uniform_int(0, static_cast<int>(shapes.size()) - 1)];
  const auto m = build_algebra({b});
  VectorState omega(random_unit_vector(b.dim * b.multiplicity, rng));
  auto phi = random_state(m, rng);
  return {m, std::move(omega), std::move(phi)};
}

Prop1Instance make_prop1_instance(int a, std::uint64_t seed) {
  if (a < 2 || a > 4) throw InvalidArgument("make_prop1_instance: a must be 2, 3 or 4");
  Rng rng(seed);
  const MatrixBlockAlgebra m = tensor_leg_algebra({a, a}, {true, false});
  const MatrixBlockAlgebra mp = m.commutant();
  VectorState omega(random_unit_vector(a * a, rng));
  if (a < 4) {
    const MatrixBlockAlgebra trivial = tensor_leg_algebra({a, a}, {false, false});
    auto e1 = slice_ce(m, trivial, kron(rng.random_density(a), maximally_mixed(a)));
    auto e2 = slice_ce(mp, trivial, kron(maximally_mixed(a), rng.random_density(a)));
    return {m, omega, std::move(e1), std::move(e2)};
  }
  // M_4 = M_2 (x) M_2 rotated by a random unitary of the leg, so M1 sits in general position.
  const Mat u1 = rng.random_unitary(4);
  const Mat u2 = rng.random_unitary(4);
  const Mat id4 = Mat::Identity(4, 4);
  const auto m1 = tensor_leg_algebra({2, 2, 4}, {true, false, false}).conjugated(kron(u1, id4));
  const auto m2 = tensor_leg_algebra({4, 2, 2}, {false, true, false}).conjugated(kron(id4, u2));
  const Mat rho1 = u1 * kron(rng.random_density(2), rng.random_density(2)) * u1.adjoint();
  const Mat rho2 = u2 * kron(rng.random_density(2), rng.random_density(2)) * u2.adjoint();
  auto e1 = slice_ce(m, m1, kron(rho1, maximally_mixed(4)));
  auto e2 = slice_ce(mp, m2, kron(maximally_mixed(4), rho2));
  return {m, omega, std::move(e1), std::move(e2)};
}

CorInstance make_cor_product_instance(std::uint64_t seed, int k, int l) {
  Rng rng(seed);
  const std::vector<int> legs{k, k, l, l};
  const auto n1 = tensor_leg_algebra({k, k, l, l}, {true, true, true, false});
  const auto n2 = tensor_leg_algebra({k, k, l, l}, {true, false, true, false});
  const auto n3 = tensor_leg_algebra({k, k, l, l}, {true, false, false, false});
  const Vec vk = random_unit_vector(k * k, rng);
  const Vec vl = random_unit_vector(l * l, rng);
  VectorState omega(kron(vk, vl));
  const Mat d1 = kron(kron(rng.random_density(k), rng.random_density(k)),
                      kron(rng.random_density(l), maximally_mixed(l)));
  const Mat d2 = kron(kron(rng.random_density(k), maximally_mixed(k)),
                      kron(rng.random_density(l), maximally_mixed(l)));
  auto f1 = slice_ce(n1, n2, d1);
  auto f2 = slice_ce(n2, n3, d2);
  return {n1, n2, n3, omega, std::move(f1), std::move(f2)};
}

CorInstance make_cor_entangled_instance(std::uint64_t seed, int d) {
  Rng rng(seed);
  const std::vector<int> legs{d, d};
  const auto n1 = tensor_leg_algebra({d, d}, {true, true});
  const auto n2 = tensor_leg_algebra({d, d}, {true, false});
  VectorState omega(random_unit_vector(d * d, rng));
  const auto twirl = weyl_group(d);
  const auto g1 = embed_group_on_leg(twirl, legs, 1);
  auto f1 = group_average_ce(n1, g1);
  const Mat v = rng.random_unitary(d);
  std::vector<Mat> clock;
  for (const auto& z : clock_group(d)) clock.push_back(v * z * v.adjoint());
  const auto g2 = embed_group_on_leg(clock, legs, 0);
  auto f2 = group_average_ce(n2, g2);
  const MatrixBlockAlgebra n3 = f2.target();
  return {n1, n2, n3, omega, std::move(f1), std::move(f2)};
}

}  // namespace entropylab
