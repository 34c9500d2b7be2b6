#include "shore/metrics.hpp"

#include <string>
#include <vector>

#include "shore/errors.hpp"

namespace shore {

double precision_at_s(const SparseVec& v, const SparseVec& y, std::size_t s) {
  if (s < 1) throw DomainError("precision_at_s: s must be >= 1");
  std::size_t overlap = 0;
  std::size_t i = 0, j = 0;
  while (i < v.entries.size() && j < y.entries.size()) {
    const std::size_t a = v.entries[i].first, b = y.entries[j].first;
    if (a == b) {
      ++overlap;
      ++i;
      ++j;
    } else if (a < b) {
      ++i;
    } else {
      ++j;
    }
  }
  return static_cast<double>(overlap) / static_cast<double>(s);
}

double output_diff(const SparseVec& v, const SparseVec& y) {
  return sparse_dist_sq(v, y);
}

double prediction_loss(const CompressionMatrix& phi, const Regressor& regressor,
                       std::span<const double> x, const SparseVec& v) {
  if (!regressor.compressed || regressor.weights.rows() != phi.m) {
    throw ShapeError("prediction_loss: regressor does not match phi");
  }
  if (x.size() != regressor.weights.cols()) {
    throw ShapeError("prediction_loss: input dim " + std::to_string(x.size()) +
                     ", expected " + std::to_string(regressor.weights.cols()));
  }
  if (v.dim != phi.K) {
    throw ShapeError("prediction_loss: v has dim " + std::to_string(v.dim) +
                     ", expected K = " + std::to_string(phi.K));
  }
  std::vector<double> diff(phi.m, 0.0);
  for (const auto& [idx, val] : v.entries) {
    const double* pc = phi.mat.col(idx);
    for (std::size_t i = 0; i < phi.m; ++i) diff[i] += val * pc[i];
  }
  for (std::size_t j = 0; j < x.size(); ++j) {
    const double xj = x[j];
    if (xj == 0.0) continue;
    const double* wc = regressor.weights.col(j);
    for (std::size_t i = 0; i < phi.m; ++i) diff[i] -= wc[i] * xj;
  }
  double loss = 0.0;
  for (double e : diff) loss += e * e;
  return loss;
}

}  // namespace shore
