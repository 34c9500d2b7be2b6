#pragma once

#include <cstddef>
#include <span>
#include <string>

#include "shore/compression.hpp"
#include "shore/config.hpp"
#include "shore/sparse_vec.hpp"
#include "shore/training.hpp"

namespace shore {

struct PredictOutcome {
  SparseVec v;
  std::size_t iterations = 0;
  double final_objective = 0.0;  // ||Phi v - W x||^2
};

struct MethodParams {
  PgdConfig pgd;
  double fista_lambda = -1.0;
  std::size_t fista_iters = 200;
  double en_lambda1 = 0.1;
  double en_lambda2 = 0.1;
  std::size_t en_sweeps = 100;
};

// Runs one predictor on one sample; shared by the harness and the CLI.
PredictOutcome predict_with_method(Method method, const CompressionMatrix& phi,
                                   const Regressor& regressor,
                                   std::span<const double> x, std::size_t s,
                                   FeasibleSet feasible,
                                   const MethodParams& params);

struct ExperimentSummary {
  std::size_t cells_run = 0;
  std::size_t error_count = 0;
  bool ok() const { return error_count == 0; }
};

// The sweep protocol: materialize (or load) the dataset, split it, train the
// uncompressed regressor once, then for every (m, trial) derive a seed, draw
// Phi, train compressed, run every method on the test split and record the
// loss ratio, the per-sample metric means and the predict wall times.
//
// Writes ratio.csv, metrics.csv, runtime.csv, errors.csv plus *_agg.csv
// aggregates into plan.out_dir. Every file except the runtime ones is
// byte-identical for a fixed master seed, for any worker count. A failing
// stage voids only its own (m, trial) cell and lands in errors.csv.
ExperimentSummary run_experiment(const ExperimentPlan& plan);

// Seed for (m, trial, stage); pure function of its inputs.
std::uint64_t derive_cell_seed(std::uint64_t master_seed, std::size_t m,
                               std::size_t trial, std::string_view stage);

}  // namespace shore
