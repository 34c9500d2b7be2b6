#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "shore/dense_matrix.hpp"

namespace shore {

// a (p x q) times b (q x r); ShapeError on mismatch.
DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b);

// a (p x q) times b-transpose, with b (r x q). Avoids materializing b^T.
DenseMatrix matmul_abt(const DenseMatrix& a, const DenseMatrix& b);

// a * a^T for a (p x q); symmetric p x p result.
DenseMatrix gram(const DenseMatrix& a);

DenseMatrix transpose(const DenseMatrix& a);

double frobenius_norm_sq(const DenseMatrix& a);

// Lower-triangular Cholesky factorization of a symmetric positive-definite
// matrix, reusable across right-hand sides. Throws SingularityError with the
// offending pivot index when a pivot is not strictly positive.
class Cholesky {
 public:
  explicit Cholesky(const DenseMatrix& a);

  std::vector<double> solve(std::span<const double> b) const;
  DenseMatrix solve_matrix(const DenseMatrix& b) const;

  // Smallest eigenvalue of the factored matrix via inverse power iteration.
  double min_eigenvalue_estimate(std::size_t iterations = 40) const;

  const DenseMatrix& lower() const { return lower_; }

  std::size_t dim() const { return n_; }

 private:
  std::size_t n_ = 0;
  DenseMatrix lower_;
};

// Solves A * S = B for S with A symmetric positive definite.
// Preconditions: A square and symmetric to 1e-10 relative; ShapeError /
// DomainError / SingularityError otherwise.
DenseMatrix solve_spd(const DenseMatrix& a, const DenseMatrix& b);

enum class TopSKey { Magnitude, SignedValue };

// Indices of the s largest entries of v under the key, ties broken toward
// the smallest index; result sorted ascending. DomainError when s > |v|.
std::vector<std::size_t> top_s_indices(std::span<const double> v,
                                       std::size_t s, TopSKey key);

}  // namespace shore
