#include "shore/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "shore/errors.hpp"
#include "shore/linalg.hpp"

namespace shore {

namespace {

void check_inputs(const CompressionMatrix& phi, const Regressor& regressor,
                  std::span<const double> x, std::size_t s) {
  if (!regressor.compressed) {
    throw DomainError("baseline predict: regressor must be compressed");
  }
  if (regressor.weights.rows() != phi.m) {
    throw ShapeError("baseline predict: regressor rows " +
                     std::to_string(regressor.weights.rows()) + " vs phi.m " +
                     std::to_string(phi.m));
  }
  if (x.size() != regressor.weights.cols()) {
    throw ShapeError("baseline predict: input dim " + std::to_string(x.size()) +
                     " vs regressor cols " +
                     std::to_string(regressor.weights.cols()));
  }
  if (s > phi.K) {
    throw DomainError("baseline predict: s = " + std::to_string(s) + " > K = " +
                      std::to_string(phi.K));
  }
}

std::vector<double> compute_target(const Regressor& regressor,
                                   std::span<const double> x) {
  const std::size_t m = regressor.weights.rows();
  std::vector<double> target(m, 0.0);
  for (std::size_t j = 0; j < x.size(); ++j) {
    const double xj = x[j];
    if (xj == 0.0) continue;
    const double* wc = regressor.weights.col(j);
    for (std::size_t i = 0; i < m; ++i) target[i] += wc[i] * xj;
  }
  return target;
}

std::vector<double> pull_back(const CompressionMatrix& phi,
                              const std::vector<double>& vec) {
  std::vector<double> out(phi.K, 0.0);
  for (std::size_t j = 0; j < phi.K; ++j) {
    const double* pc = phi.mat.col(j);
    double s = 0.0;
    for (std::size_t i = 0; i < phi.m; ++i) s += pc[i] * vec[i];
    out[j] = s;
  }
  return out;
}

// Least squares of target on the Phi columns in `support`; throws
// SingularityError naming the support when the Gram submatrix is singular.
std::vector<double> refit_on_support(const CompressionMatrix& phi,
                                     const std::vector<std::size_t>& support,
                                     const std::vector<double>& target) {
  const std::size_t k = support.size();
  DenseMatrix sub_gram(k, k);
  for (std::size_t a = 0; a < k; ++a) {
    const double* ca = phi.mat.col(support[a]);
    for (std::size_t b = a; b < k; ++b) {
      const double* cb = phi.mat.col(support[b]);
      double dot = 0.0;
      for (std::size_t i = 0; i < phi.m; ++i) dot += ca[i] * cb[i];
      sub_gram(a, b) = dot;
      sub_gram(b, a) = dot;
    }
  }
  std::vector<double> rhs(k, 0.0);
  for (std::size_t a = 0; a < k; ++a) {
    const double* ca = phi.mat.col(support[a]);
    for (std::size_t i = 0; i < phi.m; ++i) rhs[a] += ca[i] * target[i];
  }
  try {
    Cholesky chol(sub_gram);
    return chol.solve(rhs);
  } catch (const SingularityError& e) {
    std::string names;
    for (std::size_t idx : support) {
      if (!names.empty()) names += ",";
      names += std::to_string(idx);
    }
    throw SingularityError(
        "refit: singular Gram submatrix on support {" + names + "}",
        e.pivot_index);
  }
}

SparseVec project_refit(const CompressionMatrix& phi,
                        const std::vector<std::size_t>& support,
                        const std::vector<double>& coef, std::size_t s,
                        FeasibleSet feasible) {
  std::vector<double> dense(phi.K, 0.0);
  for (std::size_t a = 0; a < support.size(); ++a) dense[support[a]] = coef[a];
  return project_sparse(dense, s, feasible);
}

double soft_threshold(double z, double t) {
  if (z > t) return z - t;
  if (z < -t) return z + t;
  return 0.0;
}

}  // namespace

SparseVec omp_predict(const CompressionMatrix& phi, const Regressor& regressor,
                      std::span<const double> x, std::size_t s,
                      FeasibleSet feasible) {
  check_inputs(phi, regressor, x, s);
  const std::vector<double> target = compute_target(regressor, x);
  std::vector<double> residual = target;
  std::vector<std::size_t> support;
  std::vector<double> coef;
  std::vector<bool> used(phi.K, false);
  for (std::size_t round = 0; round < s; ++round) {
    // argmax |Phi_j^T residual| over unused columns, first index wins ties.
    std::size_t best = phi.K;
    double best_score = -1.0;
    for (std::size_t j = 0; j < phi.K; ++j) {
      if (used[j]) continue;
      const double* pc = phi.mat.col(j);
      double dot = 0.0;
      for (std::size_t i = 0; i < phi.m; ++i) dot += pc[i] * residual[i];
      const double score = std::fabs(dot);
      if (score > best_score) {
        best_score = score;
        best = j;
      }
    }
    if (best == phi.K) break;
    used[best] = true;
    support.push_back(best);
    coef = refit_on_support(phi, support, target);
    residual = target;
    for (std::size_t a = 0; a < support.size(); ++a) {
      const double* pc = phi.mat.col(support[a]);
      for (std::size_t i = 0; i < phi.m; ++i) residual[i] -= coef[a] * pc[i];
    }
  }
  return project_refit(phi, support, coef, s, feasible);
}

SparseVec cd_predict(const CompressionMatrix& phi, const Regressor& regressor,
                     std::span<const double> x, std::size_t s,
                     FeasibleSet feasible) {
  check_inputs(phi, regressor, x, s);
  const std::vector<double> target = compute_target(regressor, x);
  const std::vector<double> score = pull_back(phi, target);
  const std::vector<std::size_t> support =
      top_s_indices(score, s, TopSKey::Magnitude);
  const std::vector<double> coef = refit_on_support(phi, support, target);
  return project_refit(phi, support, coef, s, feasible);
}

SparseVec fista_predict(const CompressionMatrix& phi,
                        const Regressor& regressor, std::span<const double> x,
                        std::size_t s, FeasibleSet feasible, double lambda,
                        std::size_t iterations) {
  check_inputs(phi, regressor, x, s);
  if (iterations < 1) throw DomainError("fista_predict: T must be >= 1");
  const std::size_t K = phi.K, m = phi.m;
  const std::vector<double> target = compute_target(regressor, x);
  if (lambda < 0.0) {
    const std::vector<double> back = pull_back(phi, target);
    double inf_norm = 0.0;
    for (double v : back) inf_norm = std::max(inf_norm, std::fabs(v));
    lambda = 0.01 * inf_norm;
  }

  // Lipschitz constant: 50 power-method iterations on Phi^T Phi.
  std::vector<double> z(K, 1.0 / std::sqrt(static_cast<double>(K)));
  std::vector<double> image(m);
  double lip = 1.0;
  for (std::size_t it = 0; it < 50; ++it) {
    std::fill(image.begin(), image.end(), 0.0);
    for (std::size_t j = 0; j < K; ++j) {
      const double* pc = phi.mat.col(j);
      const double zj = z[j];
      if (zj == 0.0) continue;
      for (std::size_t i = 0; i < m; ++i) image[i] += zj * pc[i];
    }
    std::vector<double> w = pull_back(phi, image);
    double norm = 0.0;
    for (double v : w) norm += v * v;
    norm = std::sqrt(norm);
    if (norm == 0.0) break;
    lip = norm;  // Rayleigh-quotient estimate of lambda_max(Phi^T Phi)
    for (std::size_t j = 0; j < K; ++j) z[j] = w[j] / norm;
  }
  if (!(lip > 0.0)) lip = 1.0;
  const double step = 1.0 / lip;

  std::vector<double> v(K, 0.0), v_prev(K, 0.0), y(K, 0.0);
  double momentum = 1.0;
  for (std::size_t it = 0; it < iterations; ++it) {
    std::fill(image.begin(), image.end(), 0.0);
    for (std::size_t j = 0; j < K; ++j) {
      const double yj = y[j];
      if (yj == 0.0) continue;
      const double* pc = phi.mat.col(j);
      for (std::size_t i = 0; i < m; ++i) image[i] += yj * pc[i];
    }
    for (std::size_t i = 0; i < m; ++i) image[i] -= target[i];
    const std::vector<double> grad = pull_back(phi, image);
    v_prev.swap(v);
    for (std::size_t j = 0; j < K; ++j) {
      v[j] = soft_threshold(y[j] - step * grad[j], lambda * step);
    }
    const double momentum_next =
        0.5 * (1.0 + std::sqrt(1.0 + 4.0 * momentum * momentum));
    const double beta = (momentum - 1.0) / momentum_next;
    for (std::size_t j = 0; j < K; ++j) {
      y[j] = v[j] + beta * (v[j] - v_prev[j]);
    }
    momentum = momentum_next;
  }
  return project_sparse(v, s, feasible);
}

SparseVec elasticnet_predict(const CompressionMatrix& phi,
                             const Regressor& regressor,
                             std::span<const double> x, std::size_t s,
                             FeasibleSet feasible, double lambda1,
                             double lambda2, std::size_t sweeps) {
  check_inputs(phi, regressor, x, s);
  if (lambda1 < 0.0 || lambda2 < 0.0) {
    throw DomainError("elasticnet_predict: penalties must be >= 0");
  }
  if (sweeps < 1) throw DomainError("elasticnet_predict: T must be >= 1");
  const std::size_t K = phi.K, m = phi.m;
  const std::vector<double> target = compute_target(regressor, x);

  std::vector<double> col_sq(K, 0.0);
  for (std::size_t j = 0; j < K; ++j) {
    const double* pc = phi.mat.col(j);
    for (std::size_t i = 0; i < m; ++i) col_sq[j] += pc[i] * pc[i];
  }

  std::vector<double> v(K, 0.0);
  std::vector<double> residual = target;  // target - Phi v
  for (std::size_t sweep = 0; sweep < sweeps; ++sweep) {
    double change_sq = 0.0, norm_sq = 0.0;
    for (std::size_t j = 0; j < K; ++j) {
      const double* pc = phi.mat.col(j);
      double rho = 0.0;
      for (std::size_t i = 0; i < m; ++i) rho += pc[i] * residual[i];
      rho += col_sq[j] * v[j];
      const double denom = col_sq[j] + lambda2;
      const double next = denom > 0.0 ? soft_threshold(rho, lambda1) / denom : 0.0;
      const double delta = next - v[j];
      if (delta != 0.0) {
        for (std::size_t i = 0; i < m; ++i) residual[i] -= delta * pc[i];
        v[j] = next;
      }
      change_sq += delta * delta;
      norm_sq += next * next;
    }
    if (std::sqrt(change_sq) < 1e-6 * (1.0 + std::sqrt(norm_sq))) break;
  }
  return project_sparse(v, s, feasible);
}

}  // namespace shore
