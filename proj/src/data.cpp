#include "shore/data.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <string_view>

#include "shore/errors.hpp"
#include "shore/linalg.hpp"
#include "shore/parallel.hpp"

namespace shore {

double snr_inv_from_db(double db) { return std::pow(10.0, -db / 20.0); }

GroundTruth make_ground_truth(std::size_t d, std::size_t K, Rng rng) {
  if (d < 1 || K < 1) throw DomainError("make_ground_truth: d, K must be >= 1");
  GroundTruth gt;
  gt.mu_x.resize(d);
  for (std::size_t i = 0; i < d; ++i) gt.mu_x[i] = std::fabs(rng.next_gaussian());

  DenseMatrix a(d, d);
  for (std::size_t j = 0; j < d; ++j) {
    double* col = a.col(j);
    for (std::size_t i = 0; i < d; ++i) col[i] = rng.next_gaussian();
  }
  gt.Sigma_xx = gram(transpose(a));  // A^T A
  const double inv_d = 1.0 / static_cast<double>(d);
  for (auto& v : gt.Sigma_xx.data()) v *= inv_d;
  for (std::size_t i = 0; i < d; ++i) gt.Sigma_xx(i, i) += 0.5;

  gt.Z_star = DenseMatrix(K, d);
  const double scale = 1.0 / std::sqrt(static_cast<double>(d));
  for (std::size_t j = 0; j < d; ++j) {
    double* col = gt.Z_star.col(j);
    for (std::size_t i = 0; i < K; ++i) col[i] = rng.next_gaussian() * scale;
  }

  // Factor Sigma_xx once; every sample draw reuses it.
  gt.sigma_factor = Cholesky(gt.Sigma_xx).lower();
  return gt;
}

Dataset sample_synthetic(const SyntheticSpec& spec, const GroundTruth& gt,
                         const Rng& rng) {
  const std::size_t d = spec.d, K = spec.K, n = spec.n;
  if (gt.Z_star.rows() != K || gt.Z_star.cols() != d) {
    throw ShapeError("sample_synthetic: ground truth is " +
                     std::to_string(gt.Z_star.rows()) + "x" +
                     std::to_string(gt.Z_star.cols()) + ", spec wants " +
                     std::to_string(K) + "x" + std::to_string(d));
  }
  if (spec.s > K) throw DomainError("sample_synthetic: s > K");
  if (spec.snr_inv < 0.0) throw DomainError("sample_synthetic: snr_inv < 0");

  Dataset ds;
  ds.X = DenseMatrix(d, n);
  ds.Y.resize(n);
  ds.K = K;
  ds.meta = {"synthetic", "full"};

  parallel_for(n, [&](std::size_t i) {
    Rng sample_rng = rng.derive(i, 0, "sample");
    std::vector<double> z(d);
    for (std::size_t j = 0; j < d; ++j) z[j] = sample_rng.next_gaussian();
    double* xi = ds.X.col(i);
    for (std::size_t r = 0; r < d; ++r) {
      double acc = gt.mu_x[r];
      for (std::size_t c = 0; c <= r; ++c) acc += gt.sigma_factor(r, c) * z[c];
      xi[r] = acc;
    }
    std::vector<double> response(K, 0.0);
    for (std::size_t j = 0; j < d; ++j) {
      const double xj = xi[j];
      const double* zc = gt.Z_star.col(j);
      for (std::size_t r = 0; r < K; ++r) response[r] += zc[r] * xj;
    }
    if (spec.snr_inv > 0.0) {
      double inf_norm = 0.0;
      for (double v : response) inf_norm = std::max(inf_norm, std::fabs(v));
      const double noise_std = spec.snr_inv * std::sqrt(inf_norm);
      for (std::size_t r = 0; r < K; ++r) {
        response[r] += noise_std * sample_rng.next_gaussian();
      }
    }
    ds.Y[i] = project_sparse(response, spec.s, spec.feasible);
  });
  return ds;
}

namespace {

std::string_view strip_cr(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  return line;
}

std::size_t parse_count(std::string_view token, std::size_t line_no,
                        const char* what) {
  std::size_t value = 0;
  const auto [ptr, ec] =
      std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size()) {
    throw ParseError(std::string("expected ") + what + ", got '" +
                         std::string(token) + "'",
                     line_no);
  }
  return value;
}

double parse_value(std::string_view token, std::size_t line_no) {
  double value = 0.0;
  const auto [ptr, ec] =
      std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size() ||
      !std::isfinite(value)) {
    throw ParseError("expected a finite number, got '" + std::string(token) +
                         "'",
                     line_no);
  }
  return value;
}

void append_number(std::string& out, double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof(buf), v);
  out.append(buf, r.ptr);
}

}  // namespace

Dataset load_xmc(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open '" + path.string() + "'");

  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) throw ParseError("missing header", 1);
  ++line_no;
  {
    std::string_view header = strip_cr(line);
    std::istringstream hs{std::string(header)};
    std::string a, b, c, extra;
    if (!(hs >> a >> b >> c) || (hs >> extra)) {
      throw ParseError("header must be '<n> <d> <K>'", line_no);
    }
    const std::size_t n = parse_count(a, line_no, "sample count");
    const std::size_t d = parse_count(b, line_no, "input dim");
    const std::size_t K = parse_count(c, line_no, "output dim");
    if (d < 1 || K < 1) throw ParseError("dims must be >= 1", line_no);

    Dataset ds;
    ds.X = DenseMatrix(d, n);
    ds.Y.assign(n, SparseVec{K, {}});
    ds.K = K;
    ds.meta = {path.string(), "full"};

    std::size_t record = 0;
    while (std::getline(in, line)) {
      ++line_no;
      std::string_view body = strip_cr(line);
      if (record >= n) {
        if (body.empty()) continue;  // tolerate one trailing newline
        throw FormatError("file has more records than the declared n = " +
                          std::to_string(n));
      }
      const std::size_t space = body.find(' ');
      const std::string_view label_part =
          space == std::string_view::npos ? body : body.substr(0, space);
      std::string_view feature_part =
          space == std::string_view::npos ? std::string_view{}
                                          : body.substr(space + 1);

      std::vector<std::size_t> labels;
      if (!label_part.empty()) {
        std::size_t start = 0;
        while (start <= label_part.size()) {
          const std::size_t comma = label_part.find(',', start);
          const std::string_view tok =
              label_part.substr(start, comma == std::string_view::npos
                                           ? std::string_view::npos
                                           : comma - start);
          const std::size_t idx = parse_count(tok, line_no, "label index");
          if (idx >= K) {
            throw ParseError("label index " + std::to_string(idx) +
                                 " out of range (K = " + std::to_string(K) + ")",
                             line_no);
          }
          labels.push_back(idx);
          if (comma == std::string_view::npos) break;
          start = comma + 1;
        }
      }
      std::sort(labels.begin(), labels.end());
      for (std::size_t i = 1; i < labels.size(); ++i) {
        if (labels[i] == labels[i - 1]) {
          throw ParseError("duplicate label index " + std::to_string(labels[i]),
                           line_no);
        }
      }
      for (std::size_t idx : labels) ds.Y[record].entries.emplace_back(idx, 1.0);

      std::size_t prev_feature = 0;
      bool first_feature = true;
      while (!feature_part.empty()) {
        const std::size_t next_space = feature_part.find(' ');
        const std::string_view tok = feature_part.substr(0, next_space);
        feature_part = next_space == std::string_view::npos
                           ? std::string_view{}
                           : feature_part.substr(next_space + 1);
        if (tok.empty()) {
          throw ParseError("empty feature token", line_no);
        }
        const std::size_t colon = tok.find(':');
        if (colon == std::string_view::npos) {
          throw ParseError("feature token '" + std::string(tok) +
                               "' lacks ':'",
                           line_no);
        }
        const std::size_t fidx =
            parse_count(tok.substr(0, colon), line_no, "feature index");
        if (fidx >= d) {
          throw ParseError("feature index " + std::to_string(fidx) +
                               " out of range (d = " + std::to_string(d) + ")",
                           line_no);
        }
        if (!first_feature && fidx <= prev_feature) {
          throw ParseError("feature indices must be strictly increasing",
                           line_no);
        }
        ds.X(fidx, record) = parse_value(tok.substr(colon + 1), line_no);
        prev_feature = fidx;
        first_feature = false;
      }
      ++record;
    }
    if (record != n) {
      throw FormatError("file has " + std::to_string(record) +
                        " records but the header declares n = " +
                        std::to_string(n));
    }
    ds.X.check_finite("load_xmc");
    return ds;
  }
}

namespace {

void write_xmc_stream(const Dataset& dataset, std::ostream& out) {
  std::string line;
  line += std::to_string(dataset.n());
  line += ' ';
  line += std::to_string(dataset.d());
  line += ' ';
  line += std::to_string(dataset.K);
  line += '\n';
  out << line;
  for (std::size_t i = 0; i < dataset.n(); ++i) {
    line.clear();
    bool first = true;
    for (const auto& [idx, val] : dataset.Y[i].entries) {
      if (!first) line += ',';
      line += std::to_string(idx);
      first = false;
    }
    const double* xi = dataset.X.col(i);
    for (std::size_t j = 0; j < dataset.d(); ++j) {
      if (xi[j] == 0.0) continue;
      line += ' ';
      line += std::to_string(j);
      line += ':';
      append_number(line, xi[j]);
    }
    line += '\n';
    out << line;
  }
}

}  // namespace

std::string xmc_to_string(const Dataset& dataset) {
  std::ostringstream out;
  write_xmc_stream(dataset, out);
  return out.str();
}

void save_xmc(const Dataset& dataset, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot write '" + path.string() + "'");
  write_xmc_stream(dataset, out);
  if (!out) throw FormatError("write to '" + path.string() + "' failed");
}

std::pair<Dataset, Dataset> split(const Dataset& dataset, double train_fraction,
                                  Rng rng) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw DomainError("split: train_fraction must lie in (0,1)");
  }
  const std::size_t n = dataset.n();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const std::size_t j = i + rng.next_below(n - i);
    std::swap(perm[i], perm[j]);
  }
  const auto n_train = static_cast<std::size_t>(
      std::llround(train_fraction * static_cast<double>(n)));
  std::vector<std::size_t> train_idx(perm.begin(), perm.begin() + n_train);
  std::vector<std::size_t> test_idx(perm.begin() + n_train, perm.end());
  std::sort(train_idx.begin(), train_idx.end());
  std::sort(test_idx.begin(), test_idx.end());

  const auto take = [&](const std::vector<std::size_t>& idx,
                        const char* tag) {
    Dataset out;
    out.X = DenseMatrix(dataset.d(), idx.size());
    out.Y.reserve(idx.size());
    out.K = dataset.K;
    out.meta = {dataset.meta.source, tag};
    for (std::size_t k = 0; k < idx.size(); ++k) {
      std::copy(dataset.X.col(idx[k]), dataset.X.col(idx[k]) + dataset.d(),
                out.X.col(k));
      out.Y.push_back(dataset.Y[idx[k]]);
    }
    return out;
  };
  return {take(train_idx, "train"), take(test_idx, "test")};
}

DatasetStats dataset_stats(const Dataset& dataset) {
  DatasetStats stats;
  stats.n = dataset.n();
  stats.d = dataset.d();
  stats.K = dataset.K;
  if (stats.n == 0) return stats;
  std::size_t features = 0, labels = 0;
  for (std::size_t i = 0; i < stats.n; ++i) {
    const double* xi = dataset.X.col(i);
    for (std::size_t j = 0; j < stats.d; ++j) features += xi[j] != 0.0;
    labels += dataset.Y[i].nnz();
  }
  stats.avg_features = static_cast<double>(features) / stats.n;
  stats.avg_labels = static_cast<double>(labels) / stats.n;
  return stats;
}

}  // namespace shore
