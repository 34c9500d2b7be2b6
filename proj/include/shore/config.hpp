#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <variant>
#include <vector>

#include "shore/data.hpp"
#include "shore/pgd.hpp"

namespace shore {

enum class Method { Pgd, Omp, Cd, Fista, En };

std::string to_string(Method m);
Method method_from_string(const std::string& name);

// Everything the sweep harness needs for one experiment: the dataset (a
// synthetic spec or a file path), the m grid, the prediction methods, the
// trial count and seeds, and solver parameters.
struct ExperimentPlan {
  std::variant<SyntheticSpec, std::filesystem::path> data;
  std::vector<std::size_t> m_grid;  // strictly increasing
  std::vector<Method> methods;
  std::size_t trials = 10;
  std::uint64_t master_seed = 1;
  PgdConfig pgd;
  double ridge = 0.0;
  double train_fraction = 0.8;
  std::size_t s = 3;
  std::filesystem::path out_dir = "results";

  double fista_lambda = -1.0;  // < 0 means 0.01 * ||Phi^T W x||_inf per sample
  std::size_t fista_iters = 200;
  double en_lambda1 = 0.1;
  double en_lambda2 = 0.1;
  std::size_t en_sweeps = 100;
};

// Strict flat key/value parser ("key = value", '#' comments). Unknown or
// duplicate keys raise ConfigError naming the key and line. Defaults follow
// the experiment protocol (eta 0.9, T 60, tol 1e-3, ridge 0, feasible
// nonneg, 80/20 split, d 10000, K 20000, n 30000, s 3, dB 30, 10 trials).
ExperimentPlan parse_config(const std::filesystem::path& path);
ExperimentPlan parse_config_text(const std::string& text);

// Canonical text form; parse_config_text(serialize_plan(p)) reproduces p.
std::string serialize_plan(const ExperimentPlan& plan);

}  // namespace shore
