#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace shore::oracle {

DenseMatrix matmul_naive(const DenseMatrix& a, const DenseMatrix& b) {
  DenseMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < b.cols(); ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < a.cols(); ++k) s += a(i, k) * b(k, j);
      out(i, j) = s;
    }
  }
  return out;
}

namespace {

std::vector<double> gaussian_solve_vec(DenseMatrix a, std::vector<double> b) {
  const std::size_t n = a.rows();
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (std::fabs(a(i, k)) > std::fabs(a(pivot, k))) pivot = i;
    }
    if (a(pivot, k) == 0.0) throw std::runtime_error("oracle: singular");
    if (pivot != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(pivot, j));
      std::swap(b[k], b[pivot]);
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      const double f = a(i, k) / a(k, k);
      for (std::size_t j = k; j < n; ++j) a(i, j) -= f * a(k, j);
      b[i] -= f * b[k];
    }
  }
  std::vector<double> x(n, 0.0);
  for (std::size_t ii = n; ii-- > 0;) {
    double s = b[ii];
    for (std::size_t j = ii + 1; j < n; ++j) s -= a(ii, j) * x[j];
    x[ii] = s / a(ii, ii);
  }
  return x;
}

}  // namespace

DenseMatrix solve_gaussian(const DenseMatrix& a, const DenseMatrix& b) {
  DenseMatrix out(a.rows(), b.cols());
  for (std::size_t j = 0; j < b.cols(); ++j) {
    std::vector<double> col(b.col(j), b.col(j) + b.rows());
    const auto x = gaussian_solve_vec(a, col);
    std::copy(x.begin(), x.end(), out.col(j));
  }
  return out;
}

std::vector<std::size_t> top_s_full_sort(const std::vector<double>& v,
                                         std::size_t s, bool magnitude) {
  std::vector<std::size_t> idx(v.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    const double ka = magnitude ? std::fabs(v[a]) : v[a];
    const double kb = magnitude ? std::fabs(v[b]) : v[b];
    if (ka != kb) return ka > kb;
    return a < b;
  });
  idx.resize(s);
  std::sort(idx.begin(), idx.end());
  return idx;
}

double dist_sq(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

namespace {

// Visits every size-s subset of [0, K) in lexicographic order.
template <typename Fn>
void for_each_support(std::size_t K, std::size_t s, Fn&& fn) {
  std::vector<std::size_t> support(s);
  std::iota(support.begin(), support.end(), std::size_t{0});
  if (s == 0) {
    fn(support);
    return;
  }
  if (s > K) return;
  while (true) {
    fn(support);
    std::size_t i = s;
    while (i-- > 0) {
      if (support[i] != i + K - s) break;
      if (i == 0) return;
    }
    if (support[i] == i + K - s) return;
    ++support[i];
    for (std::size_t j = i + 1; j < s; ++j) support[j] = support[j - 1] + 1;
  }
}

}  // namespace

std::vector<double> project_enumerate(const std::vector<double>& v_tilde,
                                      std::size_t s, FeasibleSet feasible) {
  const std::size_t K = v_tilde.size();
  std::vector<double> best(K, 0.0);
  double best_obj = dist_sq(best, v_tilde);
  for_each_support(K, std::min(s, K), [&](const std::vector<std::size_t>& sup) {
    if (feasible == FeasibleSet::Binary) {
      // All 0/1 assignments over the support = all <= s-sparse binary vectors.
      const std::size_t combos = std::size_t{1} << sup.size();
      for (std::size_t mask = 0; mask < combos; ++mask) {
        std::vector<double> cand(K, 0.0);
        for (std::size_t b = 0; b < sup.size(); ++b) {
          if (mask & (std::size_t{1} << b)) cand[sup[b]] = 1.0;
        }
        const double obj = dist_sq(cand, v_tilde);
        if (obj < best_obj - 1e-15) {
          best_obj = obj;
          best = cand;
        }
      }
    } else {
      std::vector<double> cand(K, 0.0);
      for (std::size_t idx : sup) {
        const double v = v_tilde[idx];
        cand[idx] = feasible == FeasibleSet::NonnegReals ? std::max(v, 0.0) : v;
      }
      const double obj = dist_sq(cand, v_tilde);
      if (obj < best_obj - 1e-15) {
        best_obj = obj;
        best = cand;
      }
    }
  });
  return best;
}

std::vector<double> sparse_ls_enumerate(const CompressionMatrix& phi,
                                        const std::vector<double>& target,
                                        std::size_t s) {
  const std::size_t K = phi.K, m = phi.m;
  std::vector<double> best(K, 0.0);
  double best_obj = 0.0;
  for (double t : target) best_obj += t * t;  // v = 0 candidate
  for_each_support(K, std::min(s, K), [&](const std::vector<std::size_t>& sup) {
    if (sup.empty()) return;
    const std::size_t k = sup.size();
    DenseMatrix gram_s(k, k);
    std::vector<double> rhs(k, 0.0);
    for (std::size_t a = 0; a < k; ++a) {
      for (std::size_t b = 0; b < k; ++b) {
        double dot = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
          dot += phi.mat(i, sup[a]) * phi.mat(i, sup[b]);
        }
        gram_s(a, b) = dot;
      }
      for (std::size_t i = 0; i < m; ++i) {
        rhs[a] += phi.mat(i, sup[a]) * target[i];
      }
    }
    std::vector<double> coef;
    try {
      coef = gaussian_solve_vec(gram_s, rhs);
    } catch (const std::runtime_error&) {
      return;  // degenerate support; skip
    }
    std::vector<double> fit(m, 0.0);
    for (std::size_t a = 0; a < k; ++a) {
      for (std::size_t i = 0; i < m; ++i) {
        fit[i] += coef[a] * phi.mat(i, sup[a]);
      }
    }
    const double obj = dist_sq(fit, target);
    if (obj < best_obj - 1e-15) {
      best_obj = obj;
      std::fill(best.begin(), best.end(), 0.0);
      for (std::size_t a = 0; a < k; ++a) best[sup[a]] = coef[a];
    }
  });
  return best;
}

}  // namespace shore::oracle
