#include "shore/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "shore/errors.hpp"

namespace shore {

DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.cols() != b.rows()) {
    throw ShapeError("matmul: " + std::to_string(a.rows()) + "x" +
                     std::to_string(a.cols()) + " times " +
                     std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  }
  DenseMatrix out(a.rows(), b.cols());
  const std::size_t p = a.rows(), q = a.cols(), r = b.cols();
  for (std::size_t j = 0; j < r; ++j) {
    double* oj = out.col(j);
    const double* bj = b.col(j);
    for (std::size_t k = 0; k < q; ++k) {
      const double bkj = bj[k];
      if (bkj == 0.0) continue;
      const double* ak = a.col(k);
      for (std::size_t i = 0; i < p; ++i) oj[i] += ak[i] * bkj;
    }
  }
  out.check_finite("matmul");
  return out;
}

DenseMatrix matmul_abt(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.cols() != b.cols()) {
    throw ShapeError("matmul_abt: inner dimensions " + std::to_string(a.cols()) +
                     " vs " + std::to_string(b.cols()));
  }
  DenseMatrix out(a.rows(), b.rows());
  const std::size_t p = a.rows(), q = a.cols(), r = b.rows();
  for (std::size_t k = 0; k < q; ++k) {
    const double* ak = a.col(k);
    const double* bk = b.col(k);
    for (std::size_t j = 0; j < r; ++j) {
      const double bjk = bk[j];
      if (bjk == 0.0) continue;
      double* oj = out.col(j);
      for (std::size_t i = 0; i < p; ++i) oj[i] += ak[i] * bjk;
    }
  }
  out.check_finite("matmul_abt");
  return out;
}

DenseMatrix gram(const DenseMatrix& a) {
  const std::size_t p = a.rows(), q = a.cols();
  DenseMatrix out(p, p);
  for (std::size_t k = 0; k < q; ++k) {
    const double* ak = a.col(k);
    for (std::size_t j = 0; j < p; ++j) {
      const double ajk = ak[j];
      if (ajk == 0.0) continue;
      double* oj = out.col(j);
      for (std::size_t i = 0; i <= j; ++i) oj[i] += ak[i] * ajk;
    }
  }
  for (std::size_t j = 0; j < p; ++j)
    for (std::size_t i = j + 1; i < p; ++i) out(i, j) = out(j, i);
  out.check_finite("gram");
  return out;
}

DenseMatrix transpose(const DenseMatrix& a) {
  DenseMatrix out(a.cols(), a.rows());
  for (std::size_t j = 0; j < a.cols(); ++j)
    for (std::size_t i = 0; i < a.rows(); ++i) out(j, i) = a(i, j);
  return out;
}

double frobenius_norm_sq(const DenseMatrix& a) {
  double s = 0.0;
  for (double v : a.data()) s += v * v;
  return s;
}

Cholesky::Cholesky(const DenseMatrix& a) : n_(a.rows()) {
  if (a.rows() != a.cols()) {
    throw ShapeError("Cholesky: matrix is " + std::to_string(a.rows()) + "x" +
                     std::to_string(a.cols()) + ", expected square");
  }
  double max_abs = 0.0;
  for (double v : a.data()) max_abs = std::max(max_abs, std::fabs(v));
  for (std::size_t j = 0; j < n_; ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      if (std::fabs(a(i, j) - a(j, i)) > 1e-10 * std::max(max_abs, 1.0)) {
        throw DomainError("Cholesky: matrix is not symmetric at (" +
                          std::to_string(i) + "," + std::to_string(j) + ")");
      }
    }
  }
  lower_ = a;
  for (std::size_t j = 0; j < n_; ++j) {
    double d = lower_(j, j);
    for (std::size_t k = 0; k < j; ++k) d -= lower_(j, k) * lower_(j, k);
    if (!(d > 0.0) || !std::isfinite(d)) {
      throw SingularityError(
          "Cholesky: non-positive pivot " + std::to_string(d) + " at index " +
              std::to_string(j),
          j);
    }
    const double ljj = std::sqrt(d);
    lower_(j, j) = ljj;
    for (std::size_t i = j + 1; i < n_; ++i) {
      double s = lower_(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= lower_(i, k) * lower_(j, k);
      lower_(i, j) = s / ljj;
    }
    for (std::size_t i = 0; i < j; ++i) lower_(i, j) = 0.0;
  }
}

std::vector<double> Cholesky::solve(std::span<const double> b) const {
  if (b.size() != n_) {
    throw ShapeError("Cholesky::solve: rhs length " + std::to_string(b.size()) +
                     ", expected " + std::to_string(n_));
  }
  std::vector<double> y(b.begin(), b.end());
  for (std::size_t i = 0; i < n_; ++i) {
    double s = y[i];
    for (std::size_t k = 0; k < i; ++k) s -= lower_(i, k) * y[k];
    y[i] = s / lower_(i, i);
  }
  for (std::size_t ii = n_; ii-- > 0;) {
    double s = y[ii];
    for (std::size_t k = ii + 1; k < n_; ++k) s -= lower_(k, ii) * y[k];
    y[ii] = s / lower_(ii, ii);
  }
  return y;
}

DenseMatrix Cholesky::solve_matrix(const DenseMatrix& b) const {
  if (b.rows() != n_) {
    throw ShapeError("Cholesky::solve_matrix: rhs has " +
                     std::to_string(b.rows()) + " rows, expected " +
                     std::to_string(n_));
  }
  DenseMatrix out(n_, b.cols());
  for (std::size_t j = 0; j < b.cols(); ++j) {
    auto x = solve(std::span<const double>(b.col(j), n_));
    std::copy(x.begin(), x.end(), out.col(j));
  }
  out.check_finite("Cholesky::solve_matrix");
  return out;
}

double Cholesky::min_eigenvalue_estimate(std::size_t iterations) const {
  if (n_ == 0) return 0.0;
  std::vector<double> z(n_, 1.0 / std::sqrt(static_cast<double>(n_)));
  for (std::size_t it = 0; it < iterations; ++it) {
    auto w = solve(z);
    double norm = 0.0;
    for (double v : w) norm += v * v;
    norm = std::sqrt(norm);
    if (norm == 0.0) break;
    for (std::size_t i = 0; i < n_; ++i) z[i] = w[i] / norm;
  }
  // Rayleigh quotient of the converged direction: z^T A z = ||L^T z||^2.
  double quad = 0.0;
  for (std::size_t i = 0; i < n_; ++i) {
    double row = 0.0;
    for (std::size_t k = i; k < n_; ++k) row += lower_(k, i) * z[k];
    quad += row * row;
  }
  return quad;
}

DenseMatrix solve_spd(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.rows() != b.rows()) {
    throw ShapeError("solve_spd: A has " + std::to_string(a.rows()) +
                     " rows but B has " + std::to_string(b.rows()));
  }
  Cholesky chol(a);
  return chol.solve_matrix(b);
}

std::vector<std::size_t> top_s_indices(std::span<const double> v,
                                       std::size_t s, TopSKey key) {
  if (s > v.size()) {
    throw DomainError("top_s_indices: s = " + std::to_string(s) +
                      " exceeds length " + std::to_string(v.size()));
  }
  std::vector<std::size_t> idx(v.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  const auto keyed = [&](std::size_t i) {
    return key == TopSKey::Magnitude ? std::fabs(v[i]) : v[i];
  };
  std::partial_sort(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(s),
                    idx.end(), [&](std::size_t a, std::size_t b) {
                      const double ka = keyed(a), kb = keyed(b);
                      if (ka != kb) return ka > kb;
                      return a < b;
                    });
  idx.resize(s);
  std::sort(idx.begin(), idx.end());
  return idx;
}

}  // namespace shore
