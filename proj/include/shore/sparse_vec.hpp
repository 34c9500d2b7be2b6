#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace shore {

// An s-sparse output vector: (index, value) pairs with strictly increasing
// 0-based indices, all below dim, and no stored zero values.
struct SparseVec {
  std::size_t dim = 0;
  std::vector<std::pair<std::size_t, double>> entries;

  std::size_t nnz() const { return entries.size(); }

  double get(std::size_t i) const;

  std::vector<double> densify() const;

  // Throws if the invariants above do not hold.
  void validate() const;

  bool operator==(const SparseVec& other) const = default;
};

// Builds a SparseVec from a dense vector, dropping exact zeros.
SparseVec sparse_from_dense(const std::vector<double>& v);

// Squared l2 distance between two sparse vectors of equal dim.
double sparse_dist_sq(const SparseVec& a, const SparseVec& b);

double sparse_norm_sq(const SparseVec& a);

}  // namespace shore
