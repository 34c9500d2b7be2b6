#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "shore/compression.hpp"
#include "shore/projection.hpp"
#include "shore/sparse_vec.hpp"
#include "shore/training.hpp"

namespace shore {

// Projected gradient descent settings. Defaults follow the experiment
// protocol: eta = 0.9, T = 60, early-stop tolerance 1e-3, nonnegative
// feasible set, zero initialization.
struct PgdConfig {
  double eta = 0.9;
  std::size_t max_iters = 60;
  double early_stop_tol = 1e-3;
  FeasibleSet feasible = FeasibleSet::NonnegReals;
  std::optional<SparseVec> warm_start;  // empty = zero vector
};

struct PgdTrace {
  std::size_t iterates_used = 0;           // update steps performed
  std::vector<double> objective_per_iter;  // ||Phi v^t - W x||^2, t = 0..used
  bool stopped_early = false;
  std::vector<SparseVec> iterates;         // v^0 .. v^used
};

// Minimizes ||Phi v - W x||^2 over s-sparse feasible v by iterating
//   v <- project(v - eta * (Phi^T Phi v - Phi^T W x)).
// W x and Phi^T(W x) are computed once and reused. Stops after max_iters
// updates or, from t >= 2 on, when
//   ||v^t - v^(t-2)|| / (0.01 + ||v^t||) <= early_stop_tol.
std::pair<SparseVec, PgdTrace> pgd_predict(const CompressionMatrix& phi,
                                           const Regressor& regressor,
                                           std::span<const double> x,
                                           std::size_t s,
                                           const PgdConfig& cfg);

// Diagnostic check of the geometric-contraction bound on a finished trace.
struct CertReport {
  double c1 = 0.0;               // 2 - 2 eta + 2 eta delta
  std::size_t plateau_index = 0; // first t with objective within 10% of final
  double max_contraction = 0.0;  // worst dist ratio before the plateau
  bool contraction_ok = false;   // max_contraction <= c1 + 0.05 (or no steps)
};

CertReport convergence_certificate(const PgdTrace& trace, double delta_hat,
                                   double eta);

}  // namespace shore
