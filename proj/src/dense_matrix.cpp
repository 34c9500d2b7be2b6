#include "shore/dense_matrix.hpp"

#include <cmath>
#include <string>

#include "shore/errors.hpp"

namespace shore {

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols,
                         std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows_ * cols_) {
    throw ShapeError("DenseMatrix: data length " + std::to_string(data_.size()) +
                     " does not equal rows*cols = " +
                     std::to_string(rows_ * cols_));
  }
  check_finite("DenseMatrix constructor");
}

DenseMatrix DenseMatrix::identity(std::size_t n) {
  DenseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

void DenseMatrix::check_finite(const char* context) const {
  for (double v : data_) {
    if (!std::isfinite(v)) {
      throw DomainError(std::string(context) + ": non-finite entry");
    }
  }
}

}  // namespace shore
