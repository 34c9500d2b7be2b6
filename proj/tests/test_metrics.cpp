#include <doctest.h>

#include <cmath>
#include <vector>

#include "shore/errors.hpp"
#include "shore/metrics.hpp"
#include "shore/pgd.hpp"
#include "shore/rng.hpp"
#include "test_helpers.hpp"

using namespace shore;

namespace {

SparseVec random_sparse(std::size_t dim, std::size_t max_nnz, Rng& rng) {
  std::vector<std::size_t> pool(dim);
  for (std::size_t i = 0; i < dim; ++i) pool[i] = i;
  const std::size_t nnz = rng.next_below(max_nnz + 1);
  for (std::size_t i = 0; i < nnz; ++i) {
    std::swap(pool[i], pool[i + rng.next_below(dim - i)]);
  }
  std::vector<std::size_t> support(pool.begin(), pool.begin() + nnz);
  std::sort(support.begin(), support.end());
  SparseVec out;
  out.dim = dim;
  for (std::size_t idx : support) {
    double g = rng.next_gaussian();
    while (g == 0.0) g = rng.next_gaussian();
    out.entries.emplace_back(idx, g);
  }
  return out;
}

}  // namespace

TEST_CASE("precision_at_s: documented cases") {
  SparseVec y;
  y.dim = 10;
  y.entries = {{1, 1.0}, {4, 2.0}, {7, 0.5}};
  CHECK(precision_at_s(y, y, 3) == 1.0);

  SparseVec disjoint;
  disjoint.dim = 10;
  disjoint.entries = {{0, 1.0}, {2, 1.0}, {3, 1.0}};
  CHECK(precision_at_s(disjoint, y, 3) == 0.0);

  SparseVec v;
  v.dim = 10;
  v.entries = {{1, 9.0}, {2, 9.0}, {3, 9.0}};
  SparseVec truth;
  truth.dim = 10;
  truth.entries = {{2, 1.0}, {3, 1.0}, {9, 1.0}};
  CHECK(precision_at_s(v, truth, 3) == doctest::Approx(2.0 / 3.0));
  CHECK_THROWS_AS(precision_at_s(v, truth, 0), DomainError);
}

TEST_CASE("output_diff: documented cases and dense oracle") {
  SparseVec a;
  a.dim = 5;
  a.entries = {{0, 1.0}};
  SparseVec b;
  b.dim = 5;
  b.entries = {{1, 1.0}};
  CHECK(output_diff(a, a) == 0.0);
  CHECK(output_diff(a, b) == doctest::Approx(2.0));

  Rng rng(61);
  for (int rep = 0; rep < 100; ++rep) {
    const SparseVec u = random_sparse(12, 4, rng);
    const SparseVec w = random_sparse(12, 4, rng);
    const auto du = u.densify();
    const auto dw = w.densify();
    double want = 0.0;
    for (std::size_t i = 0; i < du.size(); ++i) {
      want += (du[i] - dw[i]) * (du[i] - dw[i]);
    }
    CHECK(output_diff(u, w) == doctest::Approx(want).epsilon(1e-12));
  }

  SparseVec mismatched;
  mismatched.dim = 6;
  CHECK_THROWS_AS(output_diff(a, mismatched), ShapeError);
}

TEST_CASE("prediction_loss: exact cases and recomputation oracle") {
  const CompressionMatrix phi = generate_phi(6, 15, Rng(62));
  Rng rng(63);

  // v with Phi v = W x exactly: set W x := Phi v.
  SparseVec v = random_sparse(15, 3, rng);
  std::vector<double> image(6, 0.0);
  for (const auto& [idx, val] : v.entries) {
    for (std::size_t i = 0; i < 6; ++i) image[i] += val * phi.mat(i, idx);
  }
  DenseMatrix w(6, 1);
  for (std::size_t i = 0; i < 6; ++i) w(i, 0) = image[i];
  const Regressor reg{std::move(w), true, 0.0};
  const std::vector<double> x{1.0};
  CHECK(prediction_loss(phi, reg, x, v) == doctest::Approx(0.0).epsilon(1e-20));

  // v = 0 gives ||W x||^2.
  SparseVec zero;
  zero.dim = 15;
  double wx_sq = 0.0;
  for (double e : image) wx_sq += e * e;
  CHECK(prediction_loss(phi, reg, x, zero) == doctest::Approx(wx_sq));

  // Random pairs against a fresh dense recomputation.
  for (int rep = 0; rep < 50; ++rep) {
    const SparseVec u = random_sparse(15, 4, rng);
    const auto dense = u.densify();
    std::vector<double> diff(6, 0.0);
    for (std::size_t j = 0; j < 15; ++j) {
      for (std::size_t i = 0; i < 6; ++i) diff[i] += dense[j] * phi.mat(i, j);
    }
    for (std::size_t i = 0; i < 6; ++i) diff[i] -= image[i];
    double want = 0.0;
    for (double e : diff) want += e * e;
    CHECK(prediction_loss(phi, reg, x, u) ==
          doctest::Approx(want).epsilon(1e-12));
  }
}

TEST_CASE("prediction_loss: PGD output beats the zero vector") {
  // Comfortable JL regime so eta = 0.9 sits in the descent window.
  const std::size_t m = 160, K = 200;
  const CompressionMatrix phi = generate_phi(m, K, Rng(64));
  Rng rng(65);
  for (int rep = 0; rep < 10; ++rep) {
    DenseMatrix w(m, 1);
    for (std::size_t i = 0; i < m; ++i) w(i, 0) = rng.next_gaussian();
    const Regressor reg{std::move(w), true, 0.0};
    const std::vector<double> x{1.0};
    PgdConfig cfg;
    cfg.feasible = FeasibleSet::Reals;
    const auto [v, trace] = pgd_predict(phi, reg, x, 3, cfg);
    SparseVec zero;
    zero.dim = K;
    CHECK(prediction_loss(phi, reg, x, v) <=
          prediction_loss(phi, reg, x, zero) + 1e-12);
  }
}
