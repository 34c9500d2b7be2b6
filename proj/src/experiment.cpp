#include "shore/experiment.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <optional>
#include <vector>

#include "shore/baselines.hpp"
#include "shore/csv.hpp"
#include "shore/errors.hpp"
#include "shore/metrics.hpp"
#include "shore/parallel.hpp"
#include "shore/pgd.hpp"

namespace shore {

std::string format_number(double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, r.ptr);
}

namespace {

// The algorithm call alone, so wall-clock timing wraps nothing else.
PredictOutcome run_method(Method method, const CompressionMatrix& phi,
                          const Regressor& regressor, std::span<const double> x,
                          std::size_t s, FeasibleSet feasible,
                          const MethodParams& params) {
  PredictOutcome out;
  switch (method) {
    case Method::Pgd: {
      PgdConfig cfg = params.pgd;
      cfg.feasible = feasible;
      auto [v, trace] = pgd_predict(phi, regressor, x, s, cfg);
      out.v = std::move(v);
      out.iterations = trace.iterates_used;
      break;
    }
    case Method::Omp:
      out.v = omp_predict(phi, regressor, x, s, feasible);
      out.iterations = s;
      break;
    case Method::Cd:
      out.v = cd_predict(phi, regressor, x, s, feasible);
      out.iterations = 1;
      break;
    case Method::Fista:
      out.v = fista_predict(phi, regressor, x, s, feasible,
                            params.fista_lambda, params.fista_iters);
      out.iterations = params.fista_iters;
      break;
    case Method::En:
      out.v = elasticnet_predict(phi, regressor, x, s, feasible,
                                 params.en_lambda1, params.en_lambda2,
                                 params.en_sweeps);
      out.iterations = params.en_sweeps;
      break;
  }
  return out;
}

}  // namespace

PredictOutcome predict_with_method(Method method, const CompressionMatrix& phi,
                                   const Regressor& regressor,
                                   std::span<const double> x, std::size_t s,
                                   FeasibleSet feasible,
                                   const MethodParams& params) {
  PredictOutcome out = run_method(method, phi, regressor, x, s, feasible, params);
  out.final_objective = prediction_loss(phi, regressor, x, out.v);
  return out;
}

std::uint64_t derive_cell_seed(std::uint64_t master_seed, std::size_t m,
                               std::size_t trial, std::string_view stage) {
  return Rng(master_seed).derive(m, trial, stage).seed();
}

namespace {

constexpr const char* kSchemaLine = "# schema: shore-sweep-v1\n";

struct MetricRowOut {
  std::size_t m, trial;
  std::string method, metric;
  double value;
};

struct RatioRowOut {
  std::size_t m, trial;
  std::optional<double> ratio;
};

struct ErrorRowOut {
  std::size_t m, trial;
  std::string stage, message;
};

void write_file(const std::filesystem::path& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot write '" + path.string() + "'");
  out << body;
}

struct MeanStd {
  double mean = 0.0, std_dev = 0.0;
  std::size_t count = 0;
};

MeanStd mean_std(const std::vector<double>& values) {
  MeanStd out;
  out.count = values.size();
  if (values.empty()) return out;
  double sum = 0.0;
  for (double v : values) sum += v;
  out.mean = sum / static_cast<double>(values.size());
  if (values.size() > 1) {
    double sq = 0.0;
    for (double v : values) sq += (v - out.mean) * (v - out.mean);
    out.std_dev = std::sqrt(sq / static_cast<double>(values.size() - 1));
  }
  return out;
}

}  // namespace

ExperimentSummary run_experiment(const ExperimentPlan& plan) {
  std::filesystem::create_directories(plan.out_dir);

  const Rng master(plan.master_seed);
  Dataset full;
  if (std::holds_alternative<SyntheticSpec>(plan.data)) {
    const auto& spec = std::get<SyntheticSpec>(plan.data);
    const GroundTruth gt =
        make_ground_truth(spec.d, spec.K, master.derive(0, 0, "ground-truth"));
    full = sample_synthetic(spec, gt, master.derive(0, 0, "samples"));
  } else {
    full = load_xmc(std::get<std::filesystem::path>(plan.data));
  }
  auto [train_set, test_set] =
      split(full, plan.train_fraction, master.derive(0, 0, "split"));

  std::vector<MetricRowOut> metric_rows;
  std::vector<MetricRowOut> runtime_rows;
  std::vector<RatioRowOut> ratio_rows;
  std::vector<ErrorRowOut> error_rows;

  std::optional<double> uncompressed_loss;
  try {
    const auto [reg_u, rep_u] =
        train_uncompressed(train_set.X, std::span<const SparseVec>(train_set.Y),
                           plan.ridge);
    uncompressed_loss = rep_u.loss;
  } catch (const Error& e) {
    error_rows.push_back({0, 0, "train-uncompressed", e.what()});
  }

  MethodParams params;
  params.pgd = plan.pgd;
  params.fista_lambda = plan.fista_lambda;
  params.fista_iters = plan.fista_iters;
  params.en_lambda1 = plan.en_lambda1;
  params.en_lambda2 = plan.en_lambda2;
  params.en_sweeps = plan.en_sweeps;

  ExperimentSummary summary;
  const std::size_t n_test = test_set.n();

  for (std::size_t m : plan.m_grid) {
    for (std::size_t trial = 0; trial < plan.trials; ++trial) {
      ++summary.cells_run;
      try {
        const Rng phi_rng(derive_cell_seed(plan.master_seed, m, trial, "phi"));
        const CompressionMatrix phi = generate_phi(m, full.K, phi_rng);
        const auto [reg_c, rep_c] = train_compressed(
            train_set.X, std::span<const SparseVec>(train_set.Y), phi,
            plan.ridge);

        if (uncompressed_loss && *uncompressed_loss >= 1e-14) {
          ratio_rows.push_back({m, trial, rep_c.loss / *uncompressed_loss});
        } else {
          ratio_rows.push_back({m, trial, std::nullopt});
        }

        for (Method method : plan.methods) {
          std::vector<double> precision(n_test), diff(n_test), ploss(n_test);
          std::vector<double> elapsed_ms(n_test);
          parallel_for(n_test, [&](std::size_t i) {
            const std::span<const double> xi(test_set.X.col(i), test_set.d());
            const auto t0 = std::chrono::steady_clock::now();
            const PredictOutcome outcome = run_method(
                method, phi, reg_c, xi, plan.s, plan.pgd.feasible, params);
            const auto t1 = std::chrono::steady_clock::now();
            elapsed_ms[i] =
                std::chrono::duration<double, std::milli>(t1 - t0).count();
            precision[i] = precision_at_s(outcome.v, test_set.Y[i], plan.s);
            diff[i] = output_diff(outcome.v, test_set.Y[i]);
            ploss[i] = prediction_loss(phi, reg_c, xi, outcome.v);
          });
          const std::string name = to_string(method);
          metric_rows.push_back(
              {m, trial, name, "precision_at_s", mean_std(precision).mean});
          metric_rows.push_back(
              {m, trial, name, "output_diff", mean_std(diff).mean});
          metric_rows.push_back(
              {m, trial, name, "prediction_loss", mean_std(ploss).mean});
          double total_ms = 0.0;
          for (double v : elapsed_ms) total_ms += v;
          // Mean wall time per prediction, plus the batch total.
          runtime_rows.push_back(
              {m, trial, name, "runtime_ms",
               n_test > 0 ? total_ms / static_cast<double>(n_test) : 0.0});
          runtime_rows.push_back({m, trial, name, "runtime_ms_total", total_ms});
        }
      } catch (const Error& e) {
        error_rows.push_back({m, trial, "cell", e.what()});
      }
    }
  }
  summary.error_count = error_rows.size();

  // ratio.csv and its aggregate
  {
    std::string body = kSchemaLine;
    body += "m,trial,method,metric,value,undefined\n";
    for (const auto& row : ratio_rows) {
      body += std::to_string(row.m) + "," + std::to_string(row.trial) +
              ",train,train_loss_ratio,";
      body += row.ratio ? format_number(*row.ratio) : "";
      body += row.ratio ? ",0\n" : ",1\n";
    }
    write_file(plan.out_dir / "ratio.csv", body);

    std::string agg = kSchemaLine;
    agg += "m,metric,mean,std,defined_trials,undefined_trials\n";
    for (std::size_t m : plan.m_grid) {
      std::vector<double> defined;
      std::size_t undefined = 0;
      for (const auto& row : ratio_rows) {
        if (row.m != m) continue;
        if (row.ratio) {
          defined.push_back(*row.ratio);
        } else {
          ++undefined;
        }
      }
      const MeanStd st = mean_std(defined);
      agg += std::to_string(m) + ",train_loss_ratio," +
             (defined.empty() ? "" : format_number(st.mean)) + "," +
             (defined.empty() ? "" : format_number(st.std_dev)) + "," +
             std::to_string(defined.size()) + "," + std::to_string(undefined) +
             "\n";
    }
    write_file(plan.out_dir / "ratio_agg.csv", agg);
  }

  const auto write_rows_and_agg = [&](const std::vector<MetricRowOut>& rows,
                                      const char* rows_name,
                                      const char* agg_name) {
    std::string body = kSchemaLine;
    body += "m,trial,method,metric,value\n";
    for (const auto& row : rows) {
      body += std::to_string(row.m) + "," + std::to_string(row.trial) + "," +
              row.method + "," + row.metric + "," + format_number(row.value) +
              "\n";
    }
    write_file(plan.out_dir / rows_name, body);

    std::string agg = kSchemaLine;
    agg += "m,method,metric,mean,std,trials\n";
    for (std::size_t m : plan.m_grid) {
      for (Method method : plan.methods) {
        const std::string name = to_string(method);
        std::vector<std::string> metrics;
        for (const auto& row : rows) {
          if (row.m == m && row.method == name) {
            bool seen = false;
            for (const auto& known : metrics) seen |= known == row.metric;
            if (!seen) metrics.push_back(row.metric);
          }
        }
        for (const auto& metric : metrics) {
          std::vector<double> values;
          for (const auto& row : rows) {
            if (row.m == m && row.method == name && row.metric == metric) {
              values.push_back(row.value);
            }
          }
          const MeanStd st = mean_std(values);
          agg += std::to_string(m) + "," + name + "," + metric + "," +
                 format_number(st.mean) + "," + format_number(st.std_dev) +
                 "," + std::to_string(st.count) + "\n";
        }
      }
    }
    write_file(plan.out_dir / agg_name, agg);
  };
  write_rows_and_agg(metric_rows, "metrics.csv", "metrics_agg.csv");
  write_rows_and_agg(runtime_rows, "runtime.csv", "runtime_agg.csv");

  {
    std::string body = kSchemaLine;
    body += "m,trial,stage,message\n";
    for (const auto& row : error_rows) {
      std::string msg = row.message;
      for (char& c : msg) {
        if (c == ',' || c == '\n') c = ';';
      }
      body += std::to_string(row.m) + "," + std::to_string(row.trial) + "," +
              row.stage + "," + msg + "\n";
    }
    write_file(plan.out_dir / "errors.csv", body);
  }
  return summary;
}

}  // namespace shore
