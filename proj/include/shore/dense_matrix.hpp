#pragma once

#include <cstddef>
#include <vector>

namespace shore {

// Column-major dense matrix of doubles. Columns are contiguous so that
// per-sample columns of X and Y, and the columns of Phi, stream well.
// Every public constructor and every operation in linalg.hpp leaves only
// finite entries behind; non-finite input data is rejected.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols);  // zero-filled
  DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> data);

  static DenseMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return data_.size(); }

  double& operator()(std::size_t r, std::size_t c) {
    return data_[c * rows_ + r];
  }
  double operator()(std::size_t r, std::size_t c) const {
    return data_[c * rows_ + r];
  }

  double* col(std::size_t c) { return data_.data() + c * rows_; }
  const double* col(std::size_t c) const { return data_.data() + c * rows_; }

  std::vector<double>& data() { return data_; }
  const std::vector<double>& data() const { return data_; }

  bool same_shape(const DenseMatrix& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_;
  }

  // Throws DomainError if any entry is NaN or infinite.
  void check_finite(const char* context) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

}  // namespace shore
