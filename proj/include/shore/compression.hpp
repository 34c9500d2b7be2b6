#pragma once

#include <cstddef>
#include <cstdint>

#include "shore/dense_matrix.hpp"
#include "shore/rng.hpp"
#include "shore/sparse_vec.hpp"

namespace shore {

// Random output-space compression matrix Phi (m x K) with entries drawn
// i.i.d. from N(0, 1/m).
struct CompressionMatrix {
  DenseMatrix mat;  // m x K, column-major
  std::size_t m = 0;
  std::size_t K = 0;
  std::uint64_t seed = 0;
};

// Empirical restricted-isometry probe result at sparsity level s.
struct RipEstimate {
  std::size_t s = 0;
  double delta_hat = 0.0;     // max observed |  ||Phi v||^2 - 1  | over unit probes
  std::size_t probes = 0;
  double pass_fraction = 0.0;  // fraction of probes with distortion <= delta
};

// Draws Phi entry by entry in column-major order from the given stream.
// Requires 1 <= m <= K; deterministic for a fixed rng seed.
CompressionMatrix generate_phi(std::size_t m, std::size_t K, Rng rng);

// Wraps an externally supplied matrix (test hook for deterministic Phi,
// e.g. an orthonormal basis); validates 1 <= m <= K.
CompressionMatrix compression_from_matrix(DenseMatrix mat, std::uint64_t seed);

// |  ||Phi v||^2 - ||v||^2  | for a sparse direction; exact in the sign of v.
double rip_distortion(const CompressionMatrix& phi, const SparseVec& v);

// Monte-Carlo probe of the RIP constant: `probes` random unit s-sparse
// vectors (uniform support, Gaussian values, l2-normalized). Probing is
// parallel over probe vectors with per-probe derived streams, so results
// do not depend on the worker count.
RipEstimate estimate_rip(const CompressionMatrix& phi, std::size_t s,
                         std::size_t probes, double delta, const Rng& rng);

}  // namespace shore
