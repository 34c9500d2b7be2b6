#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>

#include "shore/compression.hpp"
#include "shore/projection.hpp"
#include "shore/sparse_vec.hpp"
#include "shore/training.hpp"

namespace shore {

// Comparison predictors sharing the prediction problem min ||Phi v - W x||^2
// over s-sparse feasible v.

enum class BaselineVariant { Omp, Cd, Fista, ElasticNet };

struct BaselineKind {
  BaselineVariant variant = BaselineVariant::Cd;
  std::map<std::string, double> params;  // lambda for fista; lambda1/lambda2 for en
};

// Greedy pursuit: s rounds of pick-max-|correlation| (ties toward the lowest
// index), least-squares refit on the selected Phi columns, residual update.
// Final values are projected onto the feasible set.
SparseVec omp_predict(const CompressionMatrix& phi, const Regressor& regressor,
                      std::span<const double> x, std::size_t s,
                      FeasibleSet feasible);

// Correlation decoding: support = top-s of |Phi^T W x|, then the same
// least-squares refit and projection as OMP.
SparseVec cd_predict(const CompressionMatrix& phi, const Regressor& regressor,
                     std::span<const double> x, std::size_t s,
                     FeasibleSet feasible);

// FISTA on 0.5 ||Phi v - W x||^2 + lambda ||v||_1 with step 1/L, L from 50
// power-method iterations on Phi^T Phi; the final iterate is projected onto
// the s-sparse feasible set. lambda < 0 selects 0.01 * ||Phi^T W x||_inf.
SparseVec fista_predict(const CompressionMatrix& phi,
                        const Regressor& regressor, std::span<const double> x,
                        std::size_t s, FeasibleSet feasible, double lambda,
                        std::size_t iterations);

// Cyclic coordinate descent on
//   0.5 ||Phi v - W x||^2 + lambda1 ||v||_1 + 0.5 lambda2 ||v||^2,
// up to `sweeps` full passes or relative change < 1e-6, then the top-s
// projection.
SparseVec elasticnet_predict(const CompressionMatrix& phi,
                             const Regressor& regressor,
                             std::span<const double> x, std::size_t s,
                             FeasibleSet feasible, double lambda1,
                             double lambda2, std::size_t sweeps);

}  // namespace shore
