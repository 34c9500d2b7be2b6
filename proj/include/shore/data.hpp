#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "shore/dense_matrix.hpp"
#include "shore/projection.hpp"
#include "shore/rng.hpp"
#include "shore/sparse_vec.hpp"

namespace shore {

struct SyntheticSpec {
  std::size_t d = 0;
  std::size_t K = 0;
  std::size_t n = 0;
  std::size_t s = 0;
  double snr_inv = 0.0;  // SNR^-1; 0 means noiseless
  FeasibleSet feasible = FeasibleSet::NonnegReals;
  std::uint64_t seed = 0;
  double train_fraction = 0.8;
};

struct DatasetMeta {
  std::string source;  // "synthetic" or a file path
  std::string split;   // "full", "train" or "test"
};

struct Dataset {
  DenseMatrix X;              // d x n, sample columns
  std::vector<SparseVec> Y;   // n outputs of dim K
  std::size_t K = 0;
  DatasetMeta meta;

  std::size_t n() const { return X.cols(); }
  std::size_t d() const { return X.rows(); }
};

// Synthetic generating model: responses Z* x + noise, projected.
struct GroundTruth {
  DenseMatrix Z_star;           // K x d, entries N(0, 1/d)
  std::vector<double> mu_x;     // |N(0, I_d)|
  DenseMatrix Sigma_xx;         // (1/d) A^T A + 0.5 I
  DenseMatrix sigma_factor;     // lower Cholesky factor of Sigma_xx, reused
};

// dB = 10 log10(SNR^2)  =>  SNR^-1 = 10^(-dB/20).
double snr_inv_from_db(double db);

GroundTruth make_ground_truth(std::size_t d, std::size_t K, Rng rng);

// x^i ~ N(mu_x, Sigma_xx); y^i = project(Z* x^i + eps^i) with per-coordinate
// noise variance snr_inv^2 * ||Z* x^i||_inf. Samples draw from per-index
// derived streams, so generation is identical for every worker count.
Dataset sample_synthetic(const SyntheticSpec& spec, const GroundTruth& gt,
                         const Rng& rng);

// Plain-text extreme-multi-label format:
//   line 1:  "<n> <d> <K>"
//   records: "<l1>,<l2>,...<space><f1>:<v1> <f2>:<v2> ..."  (0-based indices;
//            an empty label list is a leading space)
// Labels load with value 1. Malformed lines raise ParseError with the line
// number; a record/header mismatch raises FormatError.
Dataset load_xmc(const std::filesystem::path& path);

// Serializes in the same format (labels = output support, features = nonzero
// entries of X, shortest round-trip number formatting). load_xmc of a saved
// file re-serializes byte-identically.
void save_xmc(const Dataset& dataset, const std::filesystem::path& path);
std::string xmc_to_string(const Dataset& dataset);

// Disjoint uniform split; deterministic per rng seed.
std::pair<Dataset, Dataset> split(const Dataset& dataset,
                                  double train_fraction, Rng rng);

struct DatasetStats {
  std::size_t n = 0, d = 0, K = 0;
  double avg_features = 0.0;  // mean nonzero inputs per sample
  double avg_labels = 0.0;    // mean nonzero outputs per sample
};

DatasetStats dataset_stats(const Dataset& dataset);

}  // namespace shore
