#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>

#include "shore/compression.hpp"
#include "shore/dense_matrix.hpp"
#include "shore/sparse_vec.hpp"

namespace shore {

// Learned linear regressor: K x d when uncompressed, m x d when compressed.
struct Regressor {
  DenseMatrix weights;
  bool compressed = false;
  double ridge_lambda = 0.0;
};

struct TrainReport {
  double loss = 0.0;                    // ||residual||_F^2 / n
  double gram_min_eig_estimate = 0.0;   // of X X^T (+ ridge I)
  bool ridge_applied = false;
};

// Least squares of Y (K x n dense, or n sparse columns) on X (d x n):
// weights solve (X X^T + ridge I) Z^T = (Y X^T)^T. Ridge 0 with a singular
// Gram raises SingularityError advising a positive ridge.
std::pair<Regressor, TrainReport> train_uncompressed(const DenseMatrix& x,
                                                     const DenseMatrix& y,
                                                     double ridge);
std::pair<Regressor, TrainReport> train_uncompressed(
    const DenseMatrix& x, std::span<const SparseVec> y, double ridge);

// Same problem on compressed outputs Phi Y; the solution equals Phi times
// the uncompressed weights whenever the same ridge is used.
std::pair<Regressor, TrainReport> train_compressed(const DenseMatrix& x,
                                                   const DenseMatrix& y,
                                                   const CompressionMatrix& phi,
                                                   double ridge);
std::pair<Regressor, TrainReport> train_compressed(
    const DenseMatrix& x, std::span<const SparseVec> y,
    const CompressionMatrix& phi, double ridge);

// Compressed over uncompressed optimal training loss. Empty when the
// uncompressed loss is below 1e-14 (interpolating regime).
std::optional<double> training_loss_ratio(const DenseMatrix& x,
                                          const DenseMatrix& y,
                                          const CompressionMatrix& phi,
                                          double ridge);
std::optional<double> training_loss_ratio(const DenseMatrix& x,
                                          std::span<const SparseVec> y,
                                          const CompressionMatrix& phi,
                                          double ridge);

}  // namespace shore
