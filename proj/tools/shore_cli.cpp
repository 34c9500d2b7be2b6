// Command-line front end: data generation, training, prediction, evaluation,
// RIP probing and the experiment sweep harness.

#include <charconv>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "shore/baselines.hpp"
#include "shore/compression.hpp"
#include "shore/csv.hpp"
#include "shore/data.hpp"
#include "shore/errors.hpp"
#include "shore/experiment.hpp"
#include "shore/metrics.hpp"
#include "shore/model_io.hpp"
#include "shore/parallel.hpp"
#include "shore/pgd.hpp"
#include "shore/training.hpp"

namespace {

using namespace shore;

int cmd_generate(std::size_t d, std::size_t K, std::size_t n, std::size_t s,
                 double db, const std::string& feasible, std::uint64_t seed,
                 const std::string& out) {
  SyntheticSpec spec;
  spec.d = d;
  spec.K = K;
  spec.n = n;
  spec.s = s;
  spec.snr_inv = snr_inv_from_db(db);
  spec.feasible = feasible_from_string(feasible);
  spec.seed = seed;
  const Rng rng(seed);
  const GroundTruth gt = make_ground_truth(d, K, rng.derive(0, 0, "ground-truth"));
  const Dataset ds = sample_synthetic(spec, gt, rng.derive(0, 0, "samples"));
  save_xmc(ds, out);
  const DatasetStats stats = dataset_stats(ds);
  std::cout << "wrote " << out << ": n=" << stats.n << " d=" << stats.d
            << " K=" << stats.K << " avg_labels=" << stats.avg_labels << "\n";
  return 0;
}

int cmd_inspect(const std::string& path) {
  const Dataset ds = load_xmc(path);
  const DatasetStats stats = dataset_stats(ds);
  std::cout << "n=" << stats.n << "\n"
            << "d=" << stats.d << "\n"
            << "K=" << stats.K << "\n"
            << "avg_features=" << format_number(stats.avg_features) << "\n"
            << "avg_labels=" << format_number(stats.avg_labels) << "\n";
  return 0;
}

int cmd_train(const std::string& input, std::size_t m,
              const std::string& ridge_arg, std::uint64_t seed,
              const std::string& model_out) {
  const Dataset ds = load_xmc(input);
  double ridge = 0.0;
  if (ridge_arg == "auto") {
    // Default for file datasets: 1e-3 * trace(X X^T) / d.
    double trace = 0.0;
    for (double v : ds.X.data()) trace += v * v;
    ridge = 1e-3 * trace / static_cast<double>(ds.d());
  } else {
    ridge = std::stod(ridge_arg);
    if (ridge < 0.0) throw DomainError("--ridge must be >= 0 or 'auto'");
  }
  Model model;
  if (m == 0) {
    auto [reg, report] =
        train_uncompressed(ds.X, std::span<const SparseVec>(ds.Y), ridge);
    model.regressor = std::move(reg);
    std::cout << "uncompressed loss=" << format_number(report.loss)
              << " ridge=" << format_number(ridge) << "\n";
  } else {
    const CompressionMatrix phi = generate_phi(m, ds.K, Rng(seed));
    auto [reg, report] = train_compressed(
        ds.X, std::span<const SparseVec>(ds.Y), phi, ridge);
    model.phi = phi;
    model.regressor = std::move(reg);
    std::cout << "compressed m=" << m << " loss=" << format_number(report.loss)
              << " ridge=" << format_number(ridge) << "\n";
  }
  save_model(model, model_out);
  return 0;
}

int cmd_predict(const std::string& model_path, const std::string& input,
                std::size_t s, const std::string& feasible,
                const std::string& method_name, const MethodParams& params,
                const std::string& out) {
  const Model model = load_model(model_path);
  if (!model.phi) {
    throw DomainError(
        "predict: model is uncompressed; prediction needs a compressed model");
  }
  const Dataset ds = load_xmc(input);
  if (ds.K != model.phi->K) {
    throw ShapeError("predict: dataset K=" + std::to_string(ds.K) +
                     " but model K=" + std::to_string(model.phi->K));
  }
  const Method method = method_from_string(method_name);
  const FeasibleSet f = feasible_from_string(feasible);

  const std::size_t n = ds.n();
  std::vector<PredictOutcome> outcomes(n);
  parallel_for(n, [&](std::size_t i) {
    const std::span<const double> xi(ds.X.col(i), ds.d());
    outcomes[i] = predict_with_method(method, *model.phi, model.regressor, xi,
                                      s, f, params);
  });

  std::ofstream file(out, std::ios::binary);
  if (!file) throw FormatError("cannot write '" + out + "'");
  file << "sample_id,support,values,iterations,final_objective\n";
  for (std::size_t i = 0; i < n; ++i) {
    std::string support, values;
    for (const auto& [idx, val] : outcomes[i].v.entries) {
      if (!support.empty()) {
        support += ';';
        values += ';';
      }
      support += std::to_string(idx);
      values += format_number(val);
    }
    file << i << ',' << support << ',' << values << ','
         << outcomes[i].iterations << ','
         << format_number(outcomes[i].final_objective) << "\n";
  }
  return 0;
}

std::vector<std::string> split_on(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    const std::size_t pos = s.find(sep, start);
    out.push_back(s.substr(
        start, pos == std::string::npos ? std::string::npos : pos - start));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return out;
}

int cmd_evaluate(const std::string& pred_path, const std::string& truth_path,
                 const std::string& model_path, std::size_t s,
                 const std::string& out) {
  const Model model = load_model(model_path);
  if (!model.phi) {
    throw DomainError("evaluate: model is uncompressed");
  }
  const Dataset truth = load_xmc(truth_path);

  std::ifstream pred(pred_path);
  if (!pred) throw FormatError("cannot open '" + pred_path + "'");
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(pred, line)) throw ParseError("empty prediction file", 1);
  ++line_no;

  struct Row {
    std::size_t sample_id;
    SparseVec v;
  };
  std::vector<Row> rows;
  while (std::getline(pred, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto fields = split_on(line, ',');
    if (fields.size() != 5) {
      throw ParseError("expected 5 comma-separated fields", line_no);
    }
    Row row;
    row.sample_id = std::stoull(fields[0]);
    row.v.dim = truth.K;
    if (!fields[1].empty()) {
      const auto idx_toks = split_on(fields[1], ';');
      const auto val_toks = split_on(fields[2], ';');
      if (idx_toks.size() != val_toks.size()) {
        throw ParseError("support/values length mismatch", line_no);
      }
      for (std::size_t k = 0; k < idx_toks.size(); ++k) {
        row.v.entries.emplace_back(std::stoull(idx_toks[k]),
                                   std::stod(val_toks[k]));
      }
    }
    row.v.validate();
    if (row.sample_id >= truth.n()) {
      throw ParseError("sample_id out of range", line_no);
    }
    rows.push_back(std::move(row));
  }

  std::ofstream file(out, std::ios::binary);
  if (!file) throw FormatError("cannot write '" + out + "'");
  file << "scope,id,metric,value\n";
  std::vector<double> precisions, diffs, plosses;
  for (const auto& row : rows) {
    const std::span<const double> xi(truth.X.col(row.sample_id), truth.d());
    const double prec = precision_at_s(row.v, truth.Y[row.sample_id], s);
    const double diff = output_diff(row.v, truth.Y[row.sample_id]);
    const double ploss = prediction_loss(*model.phi, model.regressor, xi, row.v);
    precisions.push_back(prec);
    diffs.push_back(diff);
    plosses.push_back(ploss);
    file << "sample," << row.sample_id << ",precision_at_s,"
         << format_number(prec) << "\n";
    file << "sample," << row.sample_id << ",output_diff," << format_number(diff)
         << "\n";
    file << "sample," << row.sample_id << ",prediction_loss,"
         << format_number(ploss) << "\n";
  }
  const auto emit_agg = [&](const char* metric, std::vector<double> values) {
    double mean = 0.0;
    for (double v : values) mean += v;
    mean = values.empty() ? 0.0 : mean / static_cast<double>(values.size());
    double sq = 0.0;
    for (double v : values) sq += (v - mean) * (v - mean);
    const double stddev =
        values.size() > 1
            ? std::sqrt(sq / static_cast<double>(values.size() - 1))
            : 0.0;
    file << "aggregate,mean," << metric << ',' << format_number(mean) << "\n";
    file << "aggregate,std," << metric << ',' << format_number(stddev) << "\n";
  };
  emit_agg("precision_at_s", precisions);
  emit_agg("output_diff", diffs);
  emit_agg("prediction_loss", plosses);
  return 0;
}

int cmd_rip_check(std::size_t m, std::size_t K, std::size_t s,
                  std::size_t probes, double delta, std::uint64_t seed) {
  const CompressionMatrix phi = generate_phi(m, K, Rng(seed));
  const RipEstimate est =
      estimate_rip(phi, s, probes, delta, Rng(seed).derive(0, 0, "rip"));
  std::cout << m << ',' << K << ',' << s << ',' << probes << ','
            << format_number(delta) << ',' << format_number(est.delta_hat)
            << ',' << format_number(est.pass_fraction) << "\n";
  return 0;
}

int cmd_run_experiment(const std::string& config_path) {
  const ExperimentPlan plan = parse_config(config_path);
  const ExperimentSummary summary = run_experiment(plan);
  std::cout << "cells=" << summary.cells_run
            << " errors=" << summary.error_count << " out="
            << plan.out_dir.string() << "\n";
  return summary.ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SHORE: sparse high-dimensional-output regression"};
  app.require_subcommand(1);

  // generate
  auto* gen = app.add_subcommand("generate", "write a synthetic dataset");
  std::size_t g_d = 50, g_K = 200, g_n = 500, g_s = 3;
  double g_db = 30.0;
  std::string g_feasible = "nonneg", g_out;
  std::uint64_t g_seed = 1;
  gen->add_option("--d", g_d, "input dimension");
  gen->add_option("--K", g_K, "output dimension");
  gen->add_option("--n", g_n, "sample count");
  gen->add_option("--s", g_s, "sparsity level");
  gen->add_option("--db", g_db, "signal-to-noise decibels");
  gen->add_option("--feasible", g_feasible, "reals|nonneg|binary");
  gen->add_option("--seed", g_seed, "master seed");
  gen->add_option("--out", g_out, "output path")->required();

  // inspect
  auto* ins = app.add_subcommand("inspect", "print dataset statistics");
  std::string i_path;
  ins->add_option("path", i_path, "dataset path")->required();

  // train
  auto* tr = app.add_subcommand("train", "fit the linear regressor");
  std::string t_input, t_ridge = "auto", t_model_out;
  std::size_t t_m = 0;
  std::uint64_t t_seed = 1;
  tr->add_option("--input", t_input, "dataset path")->required();
  tr->add_option("--m", t_m, "compressed rows; 0 = uncompressed");
  tr->add_option("--ridge", t_ridge, "ridge value or 'auto'");
  tr->add_option("--seed", t_seed, "phi seed");
  tr->add_option("--model-out", t_model_out, "model output path")->required();

  // predict
  auto* pr = app.add_subcommand("predict", "predict sparse outputs");
  std::string p_model, p_input, p_feasible = "nonneg", p_method = "pgd", p_out;
  std::size_t p_s = 3;
  MethodParams p_params;
  pr->add_option("--model", p_model, "model path")->required();
  pr->add_option("--input", p_input, "dataset path")->required();
  pr->add_option("--s", p_s, "sparsity level");
  pr->add_option("--feasible", p_feasible, "reals|nonneg|binary");
  pr->add_option("--eta", p_params.pgd.eta, "PGD stepsize");
  pr->add_option("--T", p_params.pgd.max_iters, "PGD max iterations");
  pr->add_option("--tol", p_params.pgd.early_stop_tol, "PGD early-stop tolerance");
  pr->add_option("--method", p_method, "pgd|omp|cd|fista|en");
  pr->add_option("--fista-lambda", p_params.fista_lambda,
                 "l1 penalty; negative = 0.01*||Phi^T Wx||_inf");
  pr->add_option("--fista-iters", p_params.fista_iters, "FISTA iterations");
  pr->add_option("--en-lambda1", p_params.en_lambda1, "elastic net l1 penalty");
  pr->add_option("--en-lambda2", p_params.en_lambda2, "elastic net l2 penalty");
  pr->add_option("--en-sweeps", p_params.en_sweeps, "elastic net sweeps");
  pr->add_option("--out", p_out, "output CSV path")->required();

  // evaluate
  auto* ev = app.add_subcommand("evaluate", "score predictions against truth");
  std::string e_pred, e_truth, e_model, e_out;
  std::size_t e_s = 3;
  ev->add_option("--pred", e_pred, "prediction CSV")->required();
  ev->add_option("--truth", e_truth, "dataset path")->required();
  ev->add_option("--model", e_model, "model path")->required();
  ev->add_option("--s", e_s, "sparsity level for precision@s");
  ev->add_option("--out", e_out, "output CSV path")->required();

  // rip-check
  auto* rip = app.add_subcommand("rip-check", "probe the RIP constant");
  std::size_t r_m = 0, r_K = 0, r_s = 3, r_probes = 500;
  double r_delta = 0.5;
  std::uint64_t r_seed = 1;
  rip->add_option("--m", r_m, "rows")->required();
  rip->add_option("--K", r_K, "columns")->required();
  rip->add_option("--s", r_s, "probe sparsity");
  rip->add_option("--probes", r_probes, "probe count");
  rip->add_option("--delta", r_delta, "distortion threshold");
  rip->add_option("--seed", r_seed, "seed");

  // run-experiment
  auto* run = app.add_subcommand("run-experiment", "execute a sweep plan");
  std::string x_config;
  run->add_option("--config", x_config, "plan file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) {
      return cmd_generate(g_d, g_K, g_n, g_s, g_db, g_feasible, g_seed, g_out);
    }
    if (ins->parsed()) return cmd_inspect(i_path);
    if (tr->parsed()) return cmd_train(t_input, t_m, t_ridge, t_seed, t_model_out);
    if (pr->parsed()) {
      return cmd_predict(p_model, p_input, p_s, p_feasible, p_method, p_params,
                         p_out);
    }
    if (ev->parsed()) return cmd_evaluate(e_pred, e_truth, e_model, e_s, e_out);
    if (rip->parsed()) {
      return cmd_rip_check(r_m, r_K, r_s, r_probes, r_delta, r_seed);
    }
    if (run->parsed()) return cmd_run_experiment(x_config);
  } catch (const shore::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
