#include "shore/projection.hpp"

#include "shore/errors.hpp"
#include "shore/linalg.hpp"

namespace shore {

std::string to_string(FeasibleSet f) {
  switch (f) {
    case FeasibleSet::Reals:
      return "reals";
    case FeasibleSet::NonnegReals:
      return "nonneg";
    case FeasibleSet::Binary:
      return "binary";
  }
  return "unknown";
}

FeasibleSet feasible_from_string(const std::string& name) {
  if (name == "reals") return FeasibleSet::Reals;
  if (name == "nonneg") return FeasibleSet::NonnegReals;
  if (name == "binary") return FeasibleSet::Binary;
  throw DomainError("unknown feasible set '" + name +
                    "' (expected reals, nonneg or binary)");
}

SparseVec project_sparse(std::span<const double> v_tilde, std::size_t s,
                         FeasibleSet feasible) {
  const std::size_t K = v_tilde.size();
  if (s > K) {
    throw DomainError("project_sparse: s = " + std::to_string(s) +
                      " exceeds dimension " + std::to_string(K));
  }
  SparseVec out;
  out.dim = K;
  if (s == 0) return out;
  switch (feasible) {
    case FeasibleSet::Reals: {
      for (std::size_t i : top_s_indices(v_tilde, s, TopSKey::Magnitude)) {
        if (v_tilde[i] != 0.0) out.entries.emplace_back(i, v_tilde[i]);
      }
      break;
    }
    case FeasibleSet::NonnegReals: {
      for (std::size_t i : top_s_indices(v_tilde, s, TopSKey::SignedValue)) {
        if (v_tilde[i] > 0.0) out.entries.emplace_back(i, v_tilde[i]);
      }
      break;
    }
    case FeasibleSet::Binary: {
      // Ordering by 2v-1 equals ordering by v; the keep rule is 2v-1 > 0.
      for (std::size_t i : top_s_indices(v_tilde, s, TopSKey::SignedValue)) {
        if (2.0 * v_tilde[i] - 1.0 > 0.0) out.entries.emplace_back(i, 1.0);
      }
      break;
    }
  }
  return out;
}

}  // namespace shore
