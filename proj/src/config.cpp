#include "shore/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "shore/errors.hpp"

namespace shore {

std::string to_string(Method m) {
  switch (m) {
    case Method::Pgd:
      return "pgd";
    case Method::Omp:
      return "omp";
    case Method::Cd:
      return "cd";
    case Method::Fista:
      return "fista";
    case Method::En:
      return "en";
  }
  return "unknown";
}

Method method_from_string(const std::string& name) {
  if (name == "pgd") return Method::Pgd;
  if (name == "omp") return Method::Omp;
  if (name == "cd") return Method::Cd;
  if (name == "fista") return Method::Fista;
  if (name == "en") return Method::En;
  throw ConfigError("unknown method '" + name +
                    "' (expected pgd, omp, cd, fista or en)");
}

namespace {

const std::set<std::string> kKnownKeys = {
    "data",       "d",          "K",           "n",
    "s",          "db",         "feasible",    "train_fraction",
    "m_grid",     "methods",    "trials",      "master_seed",
    "eta",        "T",          "tol",         "ridge",
    "out_dir",    "fista_lambda", "fista_iters", "en_lambda1",
    "en_lambda2", "en_sweeps"};

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

struct RawConfig {
  std::map<std::string, std::string> values;
  std::map<std::string, std::size_t> lines;
};

RawConfig read_pairs(const std::string& text) {
  RawConfig raw;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string body = trim(line);
    if (body.empty()) continue;
    const std::size_t eq = body.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(line_no) +
                        ": expected 'key = value', got '" + body + "'");
    }
    const std::string key = trim(body.substr(0, eq));
    const std::string value = trim(body.substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw ConfigError("line " + std::to_string(line_no) +
                        ": empty key or value");
    }
    if (!kKnownKeys.count(key)) {
      throw ConfigError("line " + std::to_string(line_no) + ": unknown key '" +
                        key + "'");
    }
    if (raw.values.count(key)) {
      throw ConfigError("line " + std::to_string(line_no) + ": duplicate key '" +
                        key + "'");
    }
    raw.values[key] = value;
    raw.lines[key] = line_no;
  }
  return raw;
}

double to_real(const std::string& key, const std::string& value) {
  double out = 0.0;
  const auto [ptr, ec] =
      std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc{} || ptr != value.data() + value.size() ||
      !std::isfinite(out)) {
    throw ConfigError("key '" + key + "': expected a number, got '" + value +
                      "'");
  }
  return out;
}

std::uint64_t to_count(const std::string& key, const std::string& value) {
  std::uint64_t out = 0;
  const auto [ptr, ec] =
      std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc{} || ptr != value.data() + value.size()) {
    throw ConfigError("key '" + key + "': expected a nonnegative integer, got '" +
                      value + "'");
  }
  return out;
}

std::vector<std::string> split_commas(const std::string& value) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= value.size()) {
    const std::size_t comma = value.find(',', start);
    out.push_back(trim(value.substr(
        start, comma == std::string::npos ? std::string::npos : comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace

ExperimentPlan parse_config_text(const std::string& text) {
  const RawConfig raw = read_pairs(text);
  const auto has = [&](const char* k) { return raw.values.count(k) > 0; };
  const auto get = [&](const char* k) { return raw.values.at(k); };

  if (!has("data")) throw ConfigError("missing required key 'data'");
  if (!has("m_grid")) throw ConfigError("missing required key 'm_grid'");

  ExperimentPlan plan;
  plan.s = has("s") ? to_count("s", get("s")) : 3;
  plan.train_fraction =
      has("train_fraction") ? to_real("train_fraction", get("train_fraction")) : 0.8;
  if (!(plan.train_fraction > 0.0 && plan.train_fraction < 1.0)) {
    throw ConfigError("train_fraction must lie in (0,1)");
  }

  const std::string data_value = get("data");
  if (data_value == "synthetic") {
    SyntheticSpec spec;
    spec.d = has("d") ? to_count("d", get("d")) : 10000;
    spec.K = has("K") ? to_count("K", get("K")) : 20000;
    spec.n = has("n") ? to_count("n", get("n")) : 30000;
    spec.s = plan.s;
    // "db = inf" denotes the noiseless limit snr_inv = 0.
    if (has("db") && get("db") == "inf") {
      spec.snr_inv = 0.0;
    } else {
      spec.snr_inv = snr_inv_from_db(has("db") ? to_real("db", get("db")) : 30.0);
    }
    spec.feasible = has("feasible") ? feasible_from_string(get("feasible"))
                                    : FeasibleSet::NonnegReals;
    spec.train_fraction = plan.train_fraction;
    plan.data = spec;
  } else {
    for (const char* k : {"d", "K", "n", "db"}) {
      if (has(k)) {
        throw ConfigError(std::string("key '") + k +
                          "' applies only to data = synthetic");
      }
    }
    plan.data = std::filesystem::path(data_value);
  }

  for (const std::string& tok : split_commas(get("m_grid"))) {
    plan.m_grid.push_back(to_count("m_grid", tok));
  }
  for (std::size_t i = 1; i < plan.m_grid.size(); ++i) {
    if (plan.m_grid[i] <= plan.m_grid[i - 1]) {
      throw ConfigError("m_grid must be strictly increasing");
    }
  }

  if (has("methods")) {
    for (const std::string& tok : split_commas(get("methods"))) {
      plan.methods.push_back(method_from_string(tok));
    }
  } else {
    plan.methods = {Method::Pgd, Method::Cd, Method::Fista};
  }

  plan.trials = has("trials") ? to_count("trials", get("trials")) : 10;
  if (plan.trials < 1) throw ConfigError("trials must be >= 1");
  plan.master_seed =
      has("master_seed") ? to_count("master_seed", get("master_seed")) : 1;

  plan.pgd.eta = has("eta") ? to_real("eta", get("eta")) : 0.9;
  plan.pgd.max_iters = has("T") ? to_count("T", get("T")) : 60;
  plan.pgd.early_stop_tol = has("tol") ? to_real("tol", get("tol")) : 1e-3;
  plan.pgd.feasible = std::holds_alternative<SyntheticSpec>(plan.data)
                          ? std::get<SyntheticSpec>(plan.data).feasible
                          : (has("feasible") ? feasible_from_string(get("feasible"))
                                             : FeasibleSet::NonnegReals);
  plan.ridge = has("ridge") ? to_real("ridge", get("ridge")) : 0.0;
  if (plan.ridge < 0.0) throw ConfigError("ridge must be >= 0");
  plan.out_dir = has("out_dir") ? std::filesystem::path(get("out_dir"))
                                : std::filesystem::path("results");

  if (has("fista_lambda")) {
    const std::string v = get("fista_lambda");
    plan.fista_lambda = v == "auto" ? -1.0 : to_real("fista_lambda", v);
  }
  plan.fista_iters =
      has("fista_iters") ? to_count("fista_iters", get("fista_iters")) : 200;
  plan.en_lambda1 =
      has("en_lambda1") ? to_real("en_lambda1", get("en_lambda1")) : 0.1;
  plan.en_lambda2 =
      has("en_lambda2") ? to_real("en_lambda2", get("en_lambda2")) : 0.1;
  plan.en_sweeps =
      has("en_sweeps") ? to_count("en_sweeps", get("en_sweeps")) : 100;
  return plan;
}

ExperimentPlan parse_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

namespace {

std::string format_real(double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, r.ptr);
}

}  // namespace

std::string serialize_plan(const ExperimentPlan& plan) {
  std::string out;
  const auto put = [&](const std::string& key, const std::string& value) {
    out += key;
    out += " = ";
    out += value;
    out += '\n';
  };
  if (std::holds_alternative<SyntheticSpec>(plan.data)) {
    const auto& spec = std::get<SyntheticSpec>(plan.data);
    put("data", "synthetic");
    put("d", std::to_string(spec.d));
    put("K", std::to_string(spec.K));
    put("n", std::to_string(spec.n));
    // snr_inv = 10^(-db/20)  =>  db = -20 log10(snr_inv)
    put("db", spec.snr_inv > 0.0
                  ? format_real(-20.0 * std::log10(spec.snr_inv))
                  : "inf");
    put("feasible", to_string(spec.feasible));
  } else {
    put("data", std::get<std::filesystem::path>(plan.data).string());
    put("feasible", to_string(plan.pgd.feasible));
  }
  put("s", std::to_string(plan.s));
  put("train_fraction", format_real(plan.train_fraction));
  {
    std::string grid;
    for (std::size_t m : plan.m_grid) {
      if (!grid.empty()) grid += ',';
      grid += std::to_string(m);
    }
    put("m_grid", grid);
  }
  {
    std::string methods;
    for (Method m : plan.methods) {
      if (!methods.empty()) methods += ',';
      methods += to_string(m);
    }
    put("methods", methods);
  }
  put("trials", std::to_string(plan.trials));
  put("master_seed", std::to_string(plan.master_seed));
  put("eta", format_real(plan.pgd.eta));
  put("T", std::to_string(plan.pgd.max_iters));
  put("tol", format_real(plan.pgd.early_stop_tol));
  put("ridge", format_real(plan.ridge));
  put("fista_lambda",
      plan.fista_lambda < 0.0 ? "auto" : format_real(plan.fista_lambda));
  put("fista_iters", std::to_string(plan.fista_iters));
  put("en_lambda1", format_real(plan.en_lambda1));
  put("en_lambda2", format_real(plan.en_lambda2));
  put("en_sweeps", std::to_string(plan.en_sweeps));
  put("out_dir", plan.out_dir.string());
  return out;
}

}  // namespace shore
