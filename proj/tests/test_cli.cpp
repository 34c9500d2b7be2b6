// End-to-end checks of the command-line surface: each subcommand is spawned
// as a real process against temp files.

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <sys/wait.h>
#include <vector>

namespace {

int failures = 0;

void check(bool ok, const std::string& what) {
  if (!ok) {
    ++failures;
    std::cerr << "FAIL: " << what << "\n";
  }
}

struct RunResult {
  int exit_code;
  std::string output;
};

RunResult run(const std::string& args) {
  const std::string cmd = std::string(SHORE_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return {127, ""};
  std::string output;
  char buf[4096];
  while (std::size_t got = fread(buf, 1, sizeof(buf), pipe)) {
    output.append(buf, got);
  }
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : 128, output};
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  return std::string((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
}

}  // namespace

int main() {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "shore_cli_test";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const std::string data = (dir / "data.txt").string();
  const std::string model = (dir / "model.bin").string();
  const std::string pred = (dir / "pred.csv").string();
  const std::string eval = (dir / "eval.csv").string();

  // generate + inspect
  auto r = run("generate --d 10 --K 40 --n 60 --s 3 --db 30 --feasible nonneg"
               " --seed 7 --out " + data);
  check(r.exit_code == 0, "generate exits 0: " + r.output);
  r = run("inspect " + data);
  check(r.exit_code == 0, "inspect exits 0");
  check(r.output.find("n=60") != std::string::npos, "inspect reports n");
  check(r.output.find("K=40") != std::string::npos, "inspect reports K");

  // train (compressed) + predict + evaluate
  r = run("train --input " + data + " --m 32 --ridge 0 --seed 3 --model-out " +
          model);
  check(r.exit_code == 0, "train exits 0: " + r.output);
  r = run("predict --model " + model + " --input " + data +
          " --s 3 --feasible nonneg --method pgd --eta 0.9 --T 60 --tol 1e-3"
          " --out " + pred);
  check(r.exit_code == 0, "predict exits 0: " + r.output);
  {
    const std::string head = read_text(pred);
    check(head.rfind("sample_id,support,values,iterations,final_objective",
                     0) == 0,
          "predict CSV header");
    check(std::count(head.begin(), head.end(), '\n') == 61,
          "predict CSV has one row per sample");
  }
  r = run("evaluate --pred " + pred + " --truth " + data + " --model " + model +
          " --s 3 --out " + eval);
  check(r.exit_code == 0, "evaluate exits 0: " + r.output);
  check(read_text(eval).find("aggregate,mean,precision_at_s,") !=
            std::string::npos,
        "evaluate emits aggregates");

  // predict is deterministic across runs
  const std::string pred2 = (dir / "pred2.csv").string();
  r = run("predict --model " + model + " --input " + data +
          " --s 3 --feasible nonneg --method cd --out " + pred);
  check(r.exit_code == 0, "cd predict exits 0");
  r = run("predict --model " + model + " --input " + data +
          " --s 3 --feasible nonneg --method cd --out " + pred2);
  check(read_text(pred) == read_text(pred2), "predict output deterministic");

  // every prediction method dispatches through the same CLI surface
  for (const char* method : {"omp", "fista", "en"}) {
    r = run("predict --model " + model + " --input " + data +
            " --s 3 --feasible nonneg --method " + method +
            " --fista-lambda 0.05 --fista-iters 40 --en-lambda1 0.1"
            " --en-lambda2 0.1 --en-sweeps 40 --out " + pred2);
    check(r.exit_code == 0,
          std::string("predict --method ") + method + " exits 0: " + r.output);
  }

  // uncompressed train supports the ratio path and rejects predict
  const std::string umodel = (dir / "umodel.bin").string();
  r = run("train --input " + data + " --m 0 --ridge 0 --model-out " + umodel);
  check(r.exit_code == 0, "uncompressed train exits 0: " + r.output);
  r = run("predict --model " + umodel + " --input " + data + " --s 3 --out " +
          (dir / "nope.csv").string());
  check(r.exit_code != 0, "predict on uncompressed model fails");

  // rip-check emits exactly one CSV row
  r = run("rip-check --m 100 --K 400 --s 3 --probes 200 --delta 0.5 --seed 1");
  check(r.exit_code == 0, "rip-check exits 0");
  check(std::count(r.output.begin(), r.output.end(), '\n') == 1,
        "rip-check emits one row");
  check(r.output.rfind("100,400,3,200,0.5,", 0) == 0,
        "rip-check row echoes its parameters");

  // run-experiment over a config; exit code reflects errors.csv
  const fs::path results = dir / "results";
  {
    std::ofstream cfg(dir / "plan.cfg");
    cfg << "data = synthetic\nd = 8\nK = 30\nn = 60\ns = 2\ndb = 30\n"
        << "m_grid = 20,24\nmethods = pgd,cd\ntrials = 2\nmaster_seed = 7\n"
        << "out_dir = " << results.string() << "\n";
  }
  r = run("run-experiment --config " + (dir / "plan.cfg").string());
  check(r.exit_code == 0, "run-experiment exits 0: " + r.output);
  check(fs::exists(results / "ratio.csv"), "ratio.csv written");
  check(fs::exists(results / "errors.csv"), "errors.csv written");

  {
    std::ofstream cfg(dir / "bad.cfg");
    cfg << "data = synthetic\nd = 8\nK = 30\nn = 60\ns = 2\n"
        << "m_grid = 20,40\nmethods = cd\ntrials = 1\nmaster_seed = 7\n"
        << "out_dir = " << (dir / "results_bad").string() << "\n";
  }
  r = run("run-experiment --config " + (dir / "bad.cfg").string());
  check(r.exit_code != 0, "run-experiment reports cell errors via exit code");

  // malformed dataset rejected with a parse diagnostic
  {
    std::ofstream bad(dir / "bad.txt");
    bad << "1 3 4\n9 0:1\n";
  }
  r = run("inspect " + (dir / "bad.txt").string());
  check(r.exit_code != 0, "inspect rejects malformed file");
  check(r.output.find("line") != std::string::npos,
        "parse error names the line");

  if (failures == 0) {
    std::cout << "cli tests passed\n";
    return 0;
  }
  std::cerr << failures << " cli check(s) failed\n";
  return 1;
}
