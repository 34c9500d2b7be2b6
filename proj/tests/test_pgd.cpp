#include <doctest.h>

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "shore/errors.hpp"
#include "shore/pgd.hpp"
#include "test_helpers.hpp"

using namespace shore;

namespace {

// Regressor/input pair with W x equal to a prescribed target (d = 1, x = 1).
std::pair<Regressor, std::vector<double>> regressor_for_target(
    const std::vector<double>& target) {
  DenseMatrix w(target.size(), 1);
  for (std::size_t i = 0; i < target.size(); ++i) w(i, 0) = target[i];
  return {Regressor{std::move(w), true, 0.0}, std::vector<double>{1.0}};
}

std::vector<double> apply_phi(const CompressionMatrix& phi,
                              const SparseVec& v) {
  std::vector<double> out(phi.m, 0.0);
  for (const auto& [idx, val] : v.entries) {
    for (std::size_t i = 0; i < phi.m; ++i) out[i] += val * phi.mat(i, idx);
  }
  return out;
}

SparseVec planted_sparse(std::size_t K, std::size_t s, Rng& rng,
                         bool nonneg) {
  std::vector<std::size_t> pool(K);
  for (std::size_t i = 0; i < K; ++i) pool[i] = i;
  for (std::size_t i = 0; i < s; ++i) {
    std::swap(pool[i], pool[i + rng.next_below(K - i)]);
  }
  std::vector<std::size_t> support(pool.begin(), pool.begin() + s);
  std::sort(support.begin(), support.end());
  SparseVec y;
  y.dim = K;
  for (std::size_t idx : support) {
    const double mag = 0.5 + std::fabs(rng.next_gaussian());
    y.entries.emplace_back(idx, nonneg || rng.next_double() < 0.5 ? mag : -mag);
  }
  return y;
}

}  // namespace

TEST_CASE("pgd config: defaults follow the experiment protocol") {
  const PgdConfig cfg;
  CHECK(cfg.eta == 0.9);
  CHECK(cfg.max_iters == 60);
  CHECK(cfg.early_stop_tol == 1e-3);
  CHECK(cfg.feasible == FeasibleSet::NonnegReals);
  CHECK_FALSE(cfg.warm_start.has_value());
}

TEST_CASE("pgd_predict: warm start at a solution is a fixed point") {
  Rng rng(81);
  const std::size_t K = 12, m = 8, s = 2;
  const CompressionMatrix phi = generate_phi(m, K, Rng(5));
  SparseVec v_star;
  v_star.dim = K;
  v_star.entries = {{3, 1.25}, {9, 0.5}};
  const auto [reg, x] = regressor_for_target(apply_phi(phi, v_star));

  PgdConfig cfg;
  cfg.feasible = FeasibleSet::NonnegReals;
  cfg.warm_start = v_star;
  const auto [out, trace] = pgd_predict(phi, reg, x, s, cfg);
  CHECK(out == v_star);
  for (const auto& it : trace.iterates) CHECK(it == v_star);
  for (double obj : trace.objective_per_iter) {
    CHECK(obj == doctest::Approx(0.0).epsilon(1e-24));
  }
  CHECK(trace.stopped_early);
}

TEST_CASE("pgd_predict: noiseless recovery matches the exhaustive oracle") {
  // Comfortable geometry (m/K = 0.75 at concentration scale): the oracle and
  // PGD agree and find the planted vector. The stop tolerance is tightened so
  // the run is effectively the fixed-iteration scheme.
  const std::size_t K = 64, m = 48, s = 2;
  int recovered = 0;
  for (int seed = 0; seed < 10; ++seed) {
    Rng rng(3000 + seed);
    const CompressionMatrix phi = generate_phi(m, K, Rng(4000 + seed));
    const SparseVec y_star = planted_sparse(K, s, rng, false);
    const std::vector<double> target = apply_phi(phi, y_star);
    const auto [reg, x] = regressor_for_target(target);

    const auto oracle_best = oracle::sparse_ls_enumerate(phi, target, s);
    CHECK(oracle::dist_sq(oracle_best, y_star.densify()) < 1e-12);

    PgdConfig cfg;
    cfg.feasible = FeasibleSet::Reals;
    cfg.early_stop_tol = 1e-12;
    const auto [out, trace] = pgd_predict(phi, reg, x, s, cfg);
    double err = oracle::dist_sq(out.densify(), y_star.densify());
    recovered += err < 1e-12;
  }
  CHECK(recovered >= 9);
}

TEST_CASE("pgd_predict: output always lies in the feasible sparse set") {
  Rng rng(91);
  const std::size_t K = 30, m = 20, s = 4;
  const CompressionMatrix phi = generate_phi(m, K, Rng(7));
  for (const FeasibleSet f :
       {FeasibleSet::Reals, FeasibleSet::NonnegReals, FeasibleSet::Binary}) {
    for (int rep = 0; rep < 5; ++rep) {
      std::vector<double> target(m);
      for (auto& t : target) t = rng.next_gaussian();
      const auto [reg, x] = regressor_for_target(target);
      PgdConfig cfg;
      cfg.feasible = f;
      const auto [out, trace] = pgd_predict(phi, reg, x, s, cfg);
      out.validate();
      CHECK(out.nnz() <= s);
      for (const auto& [idx, val] : out.entries) {
        if (f == FeasibleSet::NonnegReals) CHECK(val > 0.0);
        if (f == FeasibleSet::Binary) CHECK(val == 1.0);
      }
    }
  }
}

TEST_CASE("pgd_predict: deterministic and respects the iteration budget") {
  Rng rng(101);
  const std::size_t K = 24, m = 18, s = 3;
  const CompressionMatrix phi = generate_phi(m, K, Rng(11));
  std::vector<double> target(m);
  for (auto& t : target) t = rng.next_gaussian();
  const auto [reg, x] = regressor_for_target(target);
  PgdConfig cfg;
  cfg.max_iters = 17;
  cfg.early_stop_tol = 1e-12;
  const auto [a, ta] = pgd_predict(phi, reg, x, s, cfg);
  const auto [b, tb] = pgd_predict(phi, reg, x, s, cfg);
  CHECK(a == b);
  CHECK(ta.objective_per_iter == tb.objective_per_iter);
  CHECK(ta.iterates_used <= 17);
  CHECK(ta.objective_per_iter.size() == ta.iterates_used + 1);
}

TEST_CASE("pgd_predict: objective descends within the stepsize window") {
  // Comfortable RIP regime: delta_hat(3s) small enough that eta = 0.9 sits
  // inside the contraction window.
  const std::size_t K = 256, m = 200, s = 2;
  const CompressionMatrix phi = generate_phi(m, K, Rng(13));
  Rng rng(111);
  const SparseVec y_star = planted_sparse(K, s, rng, false);
  const auto [reg, x] = regressor_for_target(apply_phi(phi, y_star));
  PgdConfig cfg;
  cfg.feasible = FeasibleSet::Reals;
  cfg.early_stop_tol = 1e-12;
  const auto [out, trace] = pgd_predict(phi, reg, x, s, cfg);
  for (std::size_t t = 1; t < trace.objective_per_iter.size(); ++t) {
    CHECK(trace.objective_per_iter[t] <=
          trace.objective_per_iter[t - 1] + 1e-9);
  }
  CHECK(oracle::dist_sq(out.densify(), y_star.densify()) < 1e-12);
}

TEST_CASE("pgd_predict: validates inputs") {
  const CompressionMatrix phi = generate_phi(4, 10, Rng(1));
  Regressor reg{DenseMatrix(4, 2), true, 0.0};
  const std::vector<double> x{1.0, 2.0};
  PgdConfig cfg;
  cfg.eta = 1.5;
  CHECK_THROWS_AS(pgd_predict(phi, reg, x, 2, cfg), DomainError);
  cfg = PgdConfig{};
  Regressor uncompressed{DenseMatrix(10, 2), false, 0.0};
  CHECK_THROWS_AS(pgd_predict(phi, uncompressed, x, 2, cfg), DomainError);
  Regressor wrong{DenseMatrix(5, 2), true, 0.0};
  CHECK_THROWS_AS(pgd_predict(phi, wrong, x, 2, cfg), ShapeError);
}

TEST_CASE("convergence_certificate: c1 formula and fixed-point trace") {
  PgdTrace trace;
  trace.iterates = {SparseVec{4, {}}, SparseVec{4, {}}};
  trace.objective_per_iter = {0.0, 0.0};
  trace.iterates_used = 1;
  const CertReport report = convergence_certificate(trace, 0.1, 0.9);
  CHECK(report.c1 == doctest::Approx(0.38));
  CHECK(report.plateau_index == 0);
  CHECK(report.contraction_ok);
}

TEST_CASE("convergence_certificate: geometric rate on a noiseless instance") {
  const std::size_t K = 256, m = 200, s = 2;
  const CompressionMatrix phi = generate_phi(m, K, Rng(17));
  Rng rng(121);
  const SparseVec y_star = planted_sparse(K, s, rng, false);
  const auto [reg, x] = regressor_for_target(apply_phi(phi, y_star));
  PgdConfig cfg;
  cfg.feasible = FeasibleSet::Reals;
  cfg.early_stop_tol = 1e-9;
  const auto [out, trace] = pgd_predict(phi, reg, x, s, cfg);
  REQUIRE(oracle::dist_sq(out.densify(), y_star.densify()) < 1e-12);

  const RipEstimate rip = estimate_rip(phi, 3 * s, 400, 0.5, Rng(23));
  const CertReport report = convergence_certificate(trace, rip.delta_hat, 0.9);
  CHECK(report.c1 < 1.0);  // the window check is meaningful at this size
  CHECK(report.contraction_ok);
}

TEST_CASE("convergence_certificate: empty trace is rejected") {
  CHECK_THROWS_AS(convergence_certificate(PgdTrace{}, 0.1, 0.9), DomainError);
}

TEST_CASE("pgd_predict: distance bound with the noise floor term") {
  // Noisy instance: distances to the constrained optimum stay below
  // c1^t * dist0 + c2/(1-c1) * ||Phi y_hat - W x||, the displayed bound.
  const std::size_t K = 256, m = 200, s = 2;
  const CompressionMatrix phi = generate_phi(m, K, Rng(19));
  Rng rng(131);
  const SparseVec y_star = planted_sparse(K, s, rng, false);
  std::vector<double> target = apply_phi(phi, y_star);
  double target_norm = 0.0;
  for (double t : target) target_norm += t * t;
  target_norm = std::sqrt(target_norm);
  for (auto& t : target) t += 0.03 * target_norm * rng.next_gaussian();
  const auto [reg, x] = regressor_for_target(target);

  // Constrained optimum from the exhaustive oracle.
  const auto y_hat = oracle::sparse_ls_enumerate(phi, target, s);
  std::vector<double> fit(m, 0.0);
  for (std::size_t j = 0; j < K; ++j) {
    if (y_hat[j] == 0.0) continue;
    for (std::size_t i = 0; i < m; ++i) fit[i] += y_hat[j] * phi.mat(i, j);
  }
  double floor = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    floor += (fit[i] - target[i]) * (fit[i] - target[i]);
  }
  floor = std::sqrt(floor);

  const RipEstimate rip = estimate_rip(phi, 3 * s, 400, 0.5, Rng(29));
  const double eta = 0.9;
  const double c1 = 2.0 - 2.0 * eta + 2.0 * eta * rip.delta_hat;
  const double c2 = 2.0 * eta * std::sqrt(1.0 + rip.delta_hat);
  REQUIRE(c1 < 1.0);

  PgdConfig cfg;
  cfg.feasible = FeasibleSet::Reals;
  cfg.early_stop_tol = 1e-12;
  const auto [out, trace] = pgd_predict(phi, reg, x, s, cfg);

  const auto dist_to_opt = [&](const SparseVec& v) {
    double d = 0.0;
    const auto dense = v.densify();
    for (std::size_t j = 0; j < K; ++j) {
      d += (dense[j] - y_hat[j]) * (dense[j] - y_hat[j]);
    }
    return std::sqrt(d);
  };
  const double dist0 = dist_to_opt(trace.iterates.front());
  double geometric = dist0;
  for (const SparseVec& it : trace.iterates) {
    CHECK(dist_to_opt(it) <= geometric + c2 / (1.0 - c1) * floor + 1e-9);
    geometric *= c1;
  }
}
