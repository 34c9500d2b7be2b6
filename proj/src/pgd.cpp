#include "shore/pgd.hpp"

#include <cmath>
#include <string>

#include "shore/errors.hpp"

namespace shore {

namespace {

void check_pgd_inputs(const CompressionMatrix& phi, const Regressor& regressor,
                      std::span<const double> x, std::size_t s,
                      const PgdConfig& cfg) {
  if (!regressor.compressed) {
    throw DomainError("pgd_predict: regressor must be compressed");
  }
  if (regressor.weights.rows() != phi.m) {
    throw ShapeError("pgd_predict: regressor has " +
                     std::to_string(regressor.weights.rows()) +
                     " rows but phi.m = " + std::to_string(phi.m));
  }
  if (x.size() != regressor.weights.cols()) {
    throw ShapeError("pgd_predict: input has dim " + std::to_string(x.size()) +
                     ", regressor expects " +
                     std::to_string(regressor.weights.cols()));
  }
  if (s > phi.K) {
    throw DomainError("pgd_predict: s = " + std::to_string(s) + " > K = " +
                      std::to_string(phi.K));
  }
  if (!(cfg.eta > 0.0 && cfg.eta < 1.0)) {
    throw DomainError("pgd_predict: eta must lie in (0,1)");
  }
  if (cfg.max_iters < 1) throw DomainError("pgd_predict: T must be >= 1");
  if (!(cfg.early_stop_tol > 0.0)) {
    throw DomainError("pgd_predict: early_stop_tol must be > 0");
  }
  for (double xi : x) {
    if (!std::isfinite(xi)) throw DomainError("pgd_predict: non-finite input");
  }
  if (cfg.warm_start) {
    cfg.warm_start->validate();
    if (cfg.warm_start->dim != phi.K) {
      throw ShapeError("pgd_predict: warm start has dim " +
                       std::to_string(cfg.warm_start->dim) + ", expected " +
                       std::to_string(phi.K));
    }
  }
}

}  // namespace

std::pair<SparseVec, PgdTrace> pgd_predict(const CompressionMatrix& phi,
                                           const Regressor& regressor,
                                           std::span<const double> x,
                                           std::size_t s,
                                           const PgdConfig& cfg) {
  check_pgd_inputs(phi, regressor, x, s, cfg);
  const std::size_t m = phi.m, K = phi.K;

  // target = W x, pulled back once as back_target = Phi^T (W x).
  std::vector<double> target(m, 0.0);
  for (std::size_t j = 0; j < x.size(); ++j) {
    const double xj = x[j];
    if (xj == 0.0) continue;
    const double* wc = regressor.weights.col(j);
    for (std::size_t i = 0; i < m; ++i) target[i] += wc[i] * xj;
  }
  std::vector<double> back_target(K, 0.0);
  for (std::size_t j = 0; j < K; ++j) {
    const double* pc = phi.mat.col(j);
    double s_acc = 0.0;
    for (std::size_t i = 0; i < m; ++i) s_acc += pc[i] * target[i];
    back_target[j] = s_acc;
  }

  std::vector<double> image(m);  // Phi v
  const auto objective = [&](const SparseVec& v) {
    for (std::size_t i = 0; i < m; ++i) image[i] = -target[i];
    for (const auto& [idx, val] : v.entries) {
      const double* pc = phi.mat.col(idx);
      for (std::size_t i = 0; i < m; ++i) image[i] += val * pc[i];
    }
    double obj = 0.0;
    for (double e : image) obj += e * e;
    return obj;
  };

  SparseVec v = cfg.warm_start ? *cfg.warm_start : SparseVec{K, {}};
  PgdTrace trace;
  trace.iterates.push_back(v);
  trace.objective_per_iter.push_back(objective(v));

  std::vector<double> tilde(K);
  for (std::size_t t = 1; t <= cfg.max_iters; ++t) {
    // Phi v, then the pulled-back gradient Phi^T Phi v - Phi^T W x.
    std::fill(image.begin(), image.end(), 0.0);
    for (const auto& [idx, val] : v.entries) {
      const double* pc = phi.mat.col(idx);
      for (std::size_t i = 0; i < m; ++i) image[i] += val * pc[i];
    }
    for (std::size_t j = 0; j < K; ++j) {
      const double* pc = phi.mat.col(j);
      double s_acc = 0.0;
      for (std::size_t i = 0; i < m; ++i) s_acc += pc[i] * image[i];
      tilde[j] = -cfg.eta * (s_acc - back_target[j]);
    }
    for (const auto& [idx, val] : v.entries) tilde[idx] += val;

    v = project_sparse(tilde, s, cfg.feasible);
    trace.iterates.push_back(v);
    trace.objective_per_iter.push_back(objective(v));
    trace.iterates_used = t;

    if (t >= 2) {
      const SparseVec& two_back = trace.iterates[t - 2];
      const double rel = std::sqrt(sparse_dist_sq(v, two_back)) /
                         (0.01 + std::sqrt(sparse_norm_sq(v)));
      if (rel <= cfg.early_stop_tol) {
        trace.stopped_early = true;
        break;
      }
    }
  }
  return {v, trace};
}

CertReport convergence_certificate(const PgdTrace& trace, double delta_hat,
                                   double eta) {
  if (trace.iterates.empty() || trace.objective_per_iter.empty()) {
    throw DomainError("convergence_certificate: empty trace");
  }
  CertReport report;
  report.c1 = 2.0 - 2.0 * eta + 2.0 * eta * delta_hat;

  const double final_obj = trace.objective_per_iter.back();
  const std::size_t last = trace.objective_per_iter.size() - 1;
  report.plateau_index = last;
  for (std::size_t t = 0; t <= last; ++t) {
    if (trace.objective_per_iter[t] <= 1.1 * final_obj + 1e-300) {
      report.plateau_index = t;
      break;
    }
  }

  const SparseVec& final_iter = trace.iterates.back();
  report.max_contraction = 0.0;
  bool any = false;
  for (std::size_t t = 0; t + 1 <= report.plateau_index; ++t) {
    const double d0 = std::sqrt(sparse_dist_sq(trace.iterates[t], final_iter));
    const double d1 =
        std::sqrt(sparse_dist_sq(trace.iterates[t + 1], final_iter));
    if (d0 > 1e-300) {
      report.max_contraction = std::max(report.max_contraction, d1 / d0);
      any = true;
    }
  }
  report.contraction_ok = !any || report.max_contraction <= report.c1 + 0.05;
  return report;
}

}  // namespace shore
