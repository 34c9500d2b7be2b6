#include "shore/training.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "shore/errors.hpp"
#include "shore/linalg.hpp"

namespace shore {

namespace {

constexpr double kInterpolationFloor = 1e-14;

Cholesky factor_gram(const DenseMatrix& x, double ridge) {
  if (ridge < 0.0) throw DomainError("train: ridge must be >= 0");
  if (x.cols() < 1) throw DomainError("train: need n >= 1 samples");
  DenseMatrix g = gram(x);
  for (std::size_t i = 0; i < g.rows(); ++i) g(i, i) += ridge;
  try {
    return Cholesky(g);
  } catch (const SingularityError& e) {
    if (ridge == 0.0) {
      throw SingularityError(
          std::string("train: X X^T is singular (") + e.what() +
              "); supply a positive ridge",
          e.pivot_index);
    }
    throw;
  }
}

// Weights = C G^{-1} given the K_out x d cross matrix C = Y_out X^T.
DenseMatrix solve_weights(const Cholesky& chol, const DenseMatrix& cross) {
  return transpose(chol.solve_matrix(transpose(cross)));
}

// ||Y - W X||_F^2 / n against dense outputs.
double residual_loss(const DenseMatrix& w, const DenseMatrix& x,
                     const DenseMatrix& y) {
  const DenseMatrix fit = matmul(w, x);
  double s = 0.0;
  for (std::size_t i = 0; i < fit.size(); ++i) {
    const double d = y.data()[i] - fit.data()[i];
    s += d * d;
  }
  return s / static_cast<double>(x.cols());
}

// Same against sparse output columns, one column of W X at a time.
double residual_loss(const DenseMatrix& w, const DenseMatrix& x,
                     std::span<const SparseVec> y) {
  const std::size_t n = x.cols();
  const std::size_t rows = w.rows();
  std::vector<double> fit(rows);
  double s = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double* xk = x.col(k);
    for (std::size_t i = 0; i < rows; ++i) fit[i] = 0.0;
    for (std::size_t j = 0; j < x.rows(); ++j) {
      const double xj = xk[j];
      if (xj == 0.0) continue;
      const double* wc = w.col(j);
      for (std::size_t i = 0; i < rows; ++i) fit[i] += wc[i] * xj;
    }
    for (const auto& [idx, val] : y[k].entries) fit[idx] -= val;
    for (std::size_t i = 0; i < rows; ++i) s += fit[i] * fit[i];
  }
  return s / static_cast<double>(n);
}

// Y X^T from sparse output columns: rank-1 accumulation per sample.
DenseMatrix cross_from_sparse(std::span<const SparseVec> y,
                              const DenseMatrix& x, std::size_t K) {
  DenseMatrix cross(K, x.rows());
  for (std::size_t k = 0; k < x.cols(); ++k) {
    const double* xk = x.col(k);
    for (const auto& [idx, val] : y[k].entries) {
      for (std::size_t j = 0; j < x.rows(); ++j) cross(idx, j) += val * xk[j];
    }
  }
  return cross;
}

// Phi Y as a dense m x n matrix from sparse output columns.
DenseMatrix compress_outputs(const CompressionMatrix& phi,
                             std::span<const SparseVec> y, std::size_t n) {
  DenseMatrix out(phi.m, n);
  for (std::size_t k = 0; k < n; ++k) {
    double* ok = out.col(k);
    for (const auto& [idx, val] : y[k].entries) {
      const double* pc = phi.mat.col(idx);
      for (std::size_t i = 0; i < phi.m; ++i) ok[i] += val * pc[i];
    }
  }
  return out;
}

void check_output_count(std::size_t n_x, std::size_t n_y) {
  if (n_x != n_y) {
    throw ShapeError("train: X has " + std::to_string(n_x) +
                     " columns but Y has " + std::to_string(n_y));
  }
}

}  // namespace

std::pair<Regressor, TrainReport> train_uncompressed(const DenseMatrix& x,
                                                     const DenseMatrix& y,
                                                     double ridge) {
  check_output_count(x.cols(), y.cols());
  Cholesky chol = factor_gram(x, ridge);
  Regressor reg{solve_weights(chol, matmul_abt(y, x)), false, ridge};
  TrainReport report{residual_loss(reg.weights, x, y),
                     chol.min_eigenvalue_estimate(), ridge > 0.0};
  return {std::move(reg), report};
}

std::pair<Regressor, TrainReport> train_uncompressed(
    const DenseMatrix& x, std::span<const SparseVec> y, double ridge) {
  check_output_count(x.cols(), y.size());
  const std::size_t K = y.empty() ? 0 : y.front().dim;
  Cholesky chol = factor_gram(x, ridge);
  Regressor reg{solve_weights(chol, cross_from_sparse(y, x, K)), false, ridge};
  TrainReport report{residual_loss(reg.weights, x, y),
                     chol.min_eigenvalue_estimate(), ridge > 0.0};
  return {std::move(reg), report};
}

std::pair<Regressor, TrainReport> train_compressed(const DenseMatrix& x,
                                                   const DenseMatrix& y,
                                                   const CompressionMatrix& phi,
                                                   double ridge) {
  check_output_count(x.cols(), y.cols());
  if (phi.K != y.rows()) {
    throw ShapeError("train_compressed: phi.K = " + std::to_string(phi.K) +
                     " but Y has " + std::to_string(y.rows()) + " rows");
  }
  const DenseMatrix compressed_y = matmul(phi.mat, y);
  Cholesky chol = factor_gram(x, ridge);
  Regressor reg{solve_weights(chol, matmul_abt(compressed_y, x)), true, ridge};
  TrainReport report{residual_loss(reg.weights, x, compressed_y),
                     chol.min_eigenvalue_estimate(), ridge > 0.0};
  return {std::move(reg), report};
}

std::pair<Regressor, TrainReport> train_compressed(
    const DenseMatrix& x, std::span<const SparseVec> y,
    const CompressionMatrix& phi, double ridge) {
  check_output_count(x.cols(), y.size());
  if (!y.empty() && phi.K != y.front().dim) {
    throw ShapeError("train_compressed: phi.K = " + std::to_string(phi.K) +
                     " but outputs have dim " + std::to_string(y.front().dim));
  }
  const DenseMatrix compressed_y = compress_outputs(phi, y, x.cols());
  Cholesky chol = factor_gram(x, ridge);
  Regressor reg{solve_weights(chol, matmul_abt(compressed_y, x)), true, ridge};
  TrainReport report{residual_loss(reg.weights, x, compressed_y),
                     chol.min_eigenvalue_estimate(), ridge > 0.0};
  return {std::move(reg), report};
}

namespace {

std::optional<double> ratio_from_losses(double compressed, double uncompressed) {
  if (uncompressed < kInterpolationFloor) return std::nullopt;
  return compressed / uncompressed;
}

}  // namespace

std::optional<double> training_loss_ratio(const DenseMatrix& x,
                                          const DenseMatrix& y,
                                          const CompressionMatrix& phi,
                                          double ridge) {
  const auto [reg_u, rep_u] = train_uncompressed(x, y, ridge);
  const auto [reg_c, rep_c] = train_compressed(x, y, phi, ridge);
  return ratio_from_losses(rep_c.loss, rep_u.loss);
}

std::optional<double> training_loss_ratio(const DenseMatrix& x,
                                          std::span<const SparseVec> y,
                                          const CompressionMatrix& phi,
                                          double ridge) {
  const auto [reg_u, rep_u] = train_uncompressed(x, y, ridge);
  const auto [reg_c, rep_c] = train_compressed(x, y, phi, ridge);
  return ratio_from_losses(rep_c.loss, rep_u.loss);
}

}  // namespace shore
