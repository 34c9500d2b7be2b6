#include "shore/sparse_vec.hpp"

#include <cmath>
#include <string>

#include "shore/errors.hpp"

namespace shore {

double SparseVec::get(std::size_t i) const {
  for (const auto& [idx, val] : entries) {
    if (idx == i) return val;
    if (idx > i) break;
  }
  return 0.0;
}

std::vector<double> SparseVec::densify() const {
  std::vector<double> out(dim, 0.0);
  for (const auto& [idx, val] : entries) out[idx] = val;
  return out;
}

void SparseVec::validate() const {
  if (entries.size() > dim) {
    throw DomainError("SparseVec: more entries than dim");
  }
  std::size_t prev = 0;
  bool first = true;
  for (const auto& [idx, val] : entries) {
    if (idx >= dim) throw DomainError("SparseVec: index out of range");
    if (!first && idx <= prev) {
      throw DomainError("SparseVec: indices not strictly increasing");
    }
    if (val == 0.0) throw DomainError("SparseVec: stored zero value");
    if (!std::isfinite(val)) throw DomainError("SparseVec: non-finite value");
    prev = idx;
    first = false;
  }
}

SparseVec sparse_from_dense(const std::vector<double>& v) {
  SparseVec out;
  out.dim = v.size();
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] != 0.0) out.entries.emplace_back(i, v[i]);
  }
  return out;
}

double sparse_dist_sq(const SparseVec& a, const SparseVec& b) {
  if (a.dim != b.dim) {
    throw ShapeError("sparse_dist_sq: dims " + std::to_string(a.dim) + " vs " +
                     std::to_string(b.dim));
  }
  double s = 0.0;
  std::size_t i = 0, j = 0;
  while (i < a.entries.size() || j < b.entries.size()) {
    if (j == b.entries.size() ||
        (i < a.entries.size() && a.entries[i].first < b.entries[j].first)) {
      s += a.entries[i].second * a.entries[i].second;
      ++i;
    } else if (i == a.entries.size() ||
               b.entries[j].first < a.entries[i].first) {
      s += b.entries[j].second * b.entries[j].second;
      ++j;
    } else {
      const double d = a.entries[i].second - b.entries[j].second;
      s += d * d;
      ++i;
      ++j;
    }
  }
  return s;
}

double sparse_norm_sq(const SparseVec& a) {
  double s = 0.0;
  for (const auto& [idx, val] : a.entries) s += val * val;
  return s;
}

}  // namespace shore
