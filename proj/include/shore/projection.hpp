#pragma once

#include <cstddef>
#include <span>
#include <string>

#include "shore/sparse_vec.hpp"

namespace shore {

// Additional output constraint intersected with the s-sparse set.
enum class FeasibleSet { Reals, NonnegReals, Binary };

std::string to_string(FeasibleSet f);
FeasibleSet feasible_from_string(const std::string& name);

// Exact Euclidean projection onto { v : ||v||_0 <= s } intersected with the
// feasible set, by the closed forms:
//   Reals:   keep the s entries of largest magnitude;
//   Nonneg:  among the s largest signed entries, keep only positive values;
//   Binary:  set 1 on the s largest entries of (2 v - 1) where 2 v - 1 > 0.
// Ties break toward the smallest index. DomainError when s > K.
SparseVec project_sparse(std::span<const double> v_tilde, std::size_t s,
                         FeasibleSet feasible);

}  // namespace shore
