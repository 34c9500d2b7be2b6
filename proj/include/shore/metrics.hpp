#pragma once

#include <cstddef>
#include <span>

#include "shore/compression.hpp"
#include "shore/sparse_vec.hpp"
#include "shore/training.hpp"

namespace shore {

// |supp(v) intersect supp(y)| / s. Divides by the configured s even when
// y has fewer than s nonzeros.
double precision_at_s(const SparseVec& v, const SparseVec& y, std::size_t s);

// ||v - y||^2 over the union of supports.
double output_diff(const SparseVec& v, const SparseVec& y);

// ||Phi v - W x||^2.
double prediction_loss(const CompressionMatrix& phi, const Regressor& regressor,
                       std::span<const double> x, const SparseVec& v);

}  // namespace shore
