#include "shore/compression.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "shore/errors.hpp"
#include "shore/parallel.hpp"

namespace shore {

CompressionMatrix generate_phi(std::size_t m, std::size_t K, Rng rng) {
  if (m < 1 || K < 1) {
    throw DomainError("generate_phi: m and K must be >= 1");
  }
  if (m > K) {
    throw DomainError("generate_phi: m = " + std::to_string(m) + " > K = " +
                      std::to_string(K) + "; compression must reduce dimension");
  }
  CompressionMatrix phi;
  phi.m = m;
  phi.K = K;
  phi.seed = rng.seed();
  phi.mat = DenseMatrix(m, K);
  const double scale = 1.0 / std::sqrt(static_cast<double>(m));
  for (std::size_t j = 0; j < K; ++j) {
    double* col = phi.mat.col(j);
    for (std::size_t i = 0; i < m; ++i) col[i] = rng.next_gaussian() * scale;
  }
  return phi;
}

CompressionMatrix compression_from_matrix(DenseMatrix mat, std::uint64_t seed) {
  if (mat.rows() < 1 || mat.cols() < 1 || mat.rows() > mat.cols()) {
    throw DomainError("compression_from_matrix: need 1 <= m <= K");
  }
  mat.check_finite("compression_from_matrix");
  CompressionMatrix phi;
  phi.m = mat.rows();
  phi.K = mat.cols();
  phi.seed = seed;
  phi.mat = std::move(mat);
  return phi;
}

double rip_distortion(const CompressionMatrix& phi, const SparseVec& v) {
  if (v.dim != phi.K) {
    throw ShapeError("rip_distortion: vector dim " + std::to_string(v.dim) +
                     " vs K = " + std::to_string(phi.K));
  }
  std::vector<double> image(phi.m, 0.0);
  for (const auto& [idx, val] : v.entries) {
    const double* col = phi.mat.col(idx);
    for (std::size_t i = 0; i < phi.m; ++i) image[i] += val * col[i];
  }
  double image_sq = 0.0;
  for (double x : image) image_sq += x * x;
  return std::fabs(image_sq - sparse_norm_sq(v));
}

namespace {

// One unit s-sparse probe: support by partial Fisher-Yates over [0, K),
// Gaussian values drawn in ascending index order, then l2-normalized.
SparseVec random_unit_sparse(std::size_t K, std::size_t s, Rng& rng) {
  std::vector<std::size_t> pool(K);
  for (std::size_t i = 0; i < K; ++i) pool[i] = i;
  for (std::size_t i = 0; i < s; ++i) {
    const std::size_t j = i + rng.next_below(K - i);
    std::swap(pool[i], pool[j]);
  }
  std::vector<std::size_t> support(pool.begin(), pool.begin() + s);
  std::sort(support.begin(), support.end());
  SparseVec v;
  v.dim = K;
  double norm_sq = 0.0;
  for (std::size_t idx : support) {
    double g = rng.next_gaussian();
    while (g == 0.0) g = rng.next_gaussian();
    v.entries.emplace_back(idx, g);
    norm_sq += g * g;
  }
  const double inv = 1.0 / std::sqrt(norm_sq);
  for (auto& [idx, val] : v.entries) val *= inv;
  return v;
}

}  // namespace

RipEstimate estimate_rip(const CompressionMatrix& phi, std::size_t s,
                         std::size_t probes, double delta, const Rng& rng) {
  if (s < 1 || s > phi.K) {
    throw DomainError("estimate_rip: need 1 <= s <= K");
  }
  if (probes < 1) throw DomainError("estimate_rip: probes must be >= 1");
  if (!(delta > 0.0 && delta < 1.0)) {
    throw DomainError("estimate_rip: delta must lie in (0,1)");
  }
  std::vector<double> distortions(probes, 0.0);
  parallel_for(probes, [&](std::size_t p) {
    Rng probe_rng = rng.derive(p, 0, "rip-probe");
    const SparseVec v = random_unit_sparse(phi.K, s, probe_rng);
    distortions[p] = rip_distortion(phi, v);
  });
  RipEstimate est;
  est.s = s;
  est.probes = probes;
  std::size_t passed = 0;
  for (double d : distortions) {
    est.delta_hat = std::max(est.delta_hat, d);
    if (d <= delta) ++passed;
  }
  est.pass_fraction =
      static_cast<double>(passed) / static_cast<double>(probes);
  return est;
}

}  // namespace shore
