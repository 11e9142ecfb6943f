#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <unistd.h>
#include <fstream>
#include <sstream>

#include "dscofs/cli.hpp"
#include "dscofs/clustering.hpp"
#include "dscofs/core_model.hpp"
#include "dscofs/data_io.hpp"
#include "dscofs/solver.hpp"

using namespace dscofs;
namespace fs = std::filesystem;

TEST_SUITE_BEGIN("cli");

namespace {

std::string cli_path() {
  const char* env = std::getenv("DSCOFS_CLI");
  REQUIRE_MESSAGE(env != nullptr, "DSCOFS_CLI must point at the binary");
  return env;
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("dscofs_cli_" + std::to_string(::getpid()) + "_" +
            std::to_string(reinterpret_cast<std::uintptr_t>(this)));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

int run(const std::string& args) {
  const std::string cmd = cli_path() + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE_MESSAGE(in.good(), "missing file: " << path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("synth produces the dataset and its sidecar") {
  TempDir tmp;
  const std::string out = tmp.file("sp");
  REQUIRE(run("synth 2spiral --n 200 --seed 7 --out " + out) == 0);
  const LoadedDataset ds = load_csv({out + ".csv", true, "label"});
  CHECK(ds.data.d() == 9);
  CHECK(ds.data.n() == 200);
  const Json sidecar = load_json(out + ".informative.json");
  CHECK(sidecar["informative"] == Json::array({3, 4}));
}

TEST_CASE("unknown dataset name is a usage error") {
  TempDir tmp;
  CHECK(run("synth pretzel --out " + tmp.file("x")) == 2);
}

TEST_CASE("select on a missing file exits with the input-error code") {
  TempDir tmp;
  CHECK(run("select --data " + tmp.file("absent.csv") + " --m 2 --out " +
            tmp.file("y")) == 2);
}

TEST_CASE("overflowing data exits with the numerical-failure code") {
  TempDir tmp;
  const std::string path = tmp.file("huge.csv");
  {
    std::ofstream out(path);
    out << "f1,f2\n";
    out << "1e200,-1e200\n-1e200,1e200\n1e200,1e200\n";
  }
  CHECK(run("select --data " + path + " --m 1 --r 1 --out " + tmp.file("z")) ==
        3);
}

TEST_CASE("select recovers the planted features of a small spiral") {
  TempDir tmp;
  const std::string data = tmp.file("sp");
  REQUIRE(run("synth 2spiral --n 1000 --seed 22 --out " + data) == 0);
  const std::string out = tmp.file("run");
  REQUIRE(run("select --data " + data + ".csv --labels --r 2 --seed 3 --out " +
              out) == 0);
  const Json result = load_json(out + ".result.json");
  CHECK(result["result"]["selected"] == Json::array({3, 4}));
  CHECK(result["config"]["m"] == 2);  // class count from the labels
  const Json ranking = load_json(out + ".ranking.json");
  CHECK(ranking["order"].size() == 9);
  // ranked scores are nonincreasing
  for (std::size_t i = 1; i < ranking["scores"].size(); ++i) {
    CHECK(ranking["scores"][i].get<double>() <=
          ranking["scores"][i - 1].get<double>());
  }
}

TEST_CASE("r defaults to the full ranking when large") {
  TempDir tmp;
  const std::string data = tmp.file("sp");
  REQUIRE(run("synth banana --n 200 --seed 4 --out " + data) == 0);
  const std::string out = tmp.file("full");
  REQUIRE(run("select --data " + data + ".csv --labels --r 9 --seed 5 --out " +
              out) == 0);
  const Json result = load_json(out + ".result.json");
  CHECK(result["result"]["selected"].size() == 9);
}

TEST_CASE("every command is byte-deterministic under a fixed seed") {
  TempDir tmp;
  for (int round = 0; round < 2; ++round) {
    const std::string prefix = tmp.file("rep" + std::to_string(round));
    REQUIRE(run("synth dartboard --n 200 --seed 99 --out " + prefix) == 0);
    REQUIRE(run("select --data " + prefix + ".csv --labels --r 2 --seed 5 " +
                "--max-outer 20 --out " + prefix) == 0);
  }
  CHECK(slurp(tmp.file("rep0.csv")) == slurp(tmp.file("rep1.csv")));
  CHECK(slurp(tmp.file("rep0.informative.json")) ==
        slurp(tmp.file("rep1.informative.json")));
  CHECK(slurp(tmp.file("rep0.result.json")) == slurp(tmp.file("rep1.result.json")));
  CHECK(slurp(tmp.file("rep0.ranking.json")) == slurp(tmp.file("rep1.ranking.json")));
}

TEST_CASE("stats command reproduces the reference ranking") {
  TempDir tmp;
  const std::string scores = tmp.file("scores.csv");
  {
    std::ofstream out(scores);
    out << "dataset,A,B,C,D,E,F,G,H\n"
        << "coil,54.82,58.71,49.66,55.84,50.15,54.39,56.57,60.51\n"
        << "usps,62.02,59.52,55.58,46.04,67.38,67.34,65.38,69.67\n"
        << "lung,59.29,68.58,65.12,64.05,60.19,71.37,72.22,73.12\n"
        << "glioma,58.88,56.80,57.44,58.32,47.92,50.60,59.28,60.88\n"
        << "umist,40.13,47.12,41.70,40.35,46.70,46.78,47.98,48.10\n"
        << "warp,28.94,41.42,46.90,29.57,28.01,48.76,43.74,49.00\n"
        << "isolet,52.21,41.95,49.31,47.12,53.62,53.04,51.91,59.67\n"
        << "mstar,67.87,78.15,73.74,69.16,75.52,80.80,79.70,82.59\n";
  }
  const std::string out = tmp.file("friedman");
  REQUIRE(run("stats --scores " + scores + " --out " + out) == 0);
  const Json report = load_json(out + ".stats.json");
  CHECK(report["avg_ranks"] ==
        Json::array({6.0, 4.75, 5.75, 6.125, 5.5, 3.75, 3.125, 1.0}));
  CHECK(report["p_value"].get<double>() <= 0.001);
  CHECK(report["critical_difference"].get<double>() ==
        doctest::Approx(3.712).epsilon(0.003));
}

TEST_CASE("stats rejects an unsupported significance level") {
  TempDir tmp;
  const std::string scores = tmp.file("scores.csv");
  {
    std::ofstream out(scores);
    out << "A,B\n1,2\n2,1\n";
  }
  CHECK(run("stats --scores " + scores + " --alpha 0.5 --out " +
            tmp.file("x")) == 2);
}

TEST_CASE("plot writes one circle per sample") {
  TempDir tmp;
  const std::string data = tmp.file("sp");
  REQUIRE(run("synth banana --n 100 --seed 8 --out " + data) == 0);
  const std::string svg = tmp.file("view.svg");
  REQUIRE(run("plot --data " + data + ".csv --labels --features 3 4 --out " +
              svg) == 0);
  const std::string body = slurp(svg);
  CHECK(body.find("<svg") != std::string::npos);
  std::size_t circles = 0, pos = 0;
  while ((pos = body.find("<circle", pos)) != std::string::npos) {
    ++circles;
    pos += 7;
  }
  CHECK(circles == 100);
  CHECK(body.find("feature 3") != std::string::npos);
  CHECK(run("plot --data " + data + ".csv --features 3 99 --out " + svg) == 2);
}

TEST_CASE("ablation with the element budget disabled twice is an exact match") {
  TempDir tmp;
  const std::string data = tmp.file("ban");
  REQUIRE(run("synth banana --n 300 --seed 31 --out " + data) == 0);
  const std::string out = tmp.file("abl");
  REQUIRE(run("ablate --data " + data + ".csv --alpha 1.0 --r 2 --fsr-count 9 "
              "--eval-runs 5 --seed 11 --out " + out) == 0);
  const Json report = load_json(out + ".ablation.json");
  CHECK(report["fsr"].get<double>() == 1.0);
  CHECK(report.contains("l20_only"));
  CHECK(report.contains("double_sparsity"));
  CHECK(report["l20_only"]["evaluation"].contains("acc_mean"));
  // identical configurations: traces coincide
  CHECK(report["l20_only"]["objective_trace"] ==
        report["double_sparsity"]["objective_trace"]);
}

TEST_CASE("decoupled ablation init changes the trace but stays valid") {
  TempDir tmp;
  const std::string data = tmp.file("ban");
  REQUIRE(run("synth banana --n 300 --seed 31 --out " + data) == 0);
  const std::string out = tmp.file("abl");
  REQUIRE(run("ablate --data " + data + ".csv --alpha 1.0 --r 2 --fsr-count 9 "
              "--eval-runs 3 --seed 11 --decouple-init --out " + out) == 0);
  const Json report = load_json(out + ".ablation.json");
  const double fsr_value = report["fsr"].get<double>();
  CHECK(fsr_value >= 0.0);
  CHECK(fsr_value <= 1.0);
  // same budgets, different init draw: the traces start from different values
  CHECK(report["l20_only"]["objective_trace"][0] !=
        report["double_sparsity"]["objective_trace"][0]);
}

TEST_CASE("a one-cell grid equals the select-plus-evaluate composition") {
  TempDir tmp;
  const std::string data = tmp.file("ban");
  REQUIRE(run("synth banana --n 300 --seed 13 --out " + data) == 0);
  const std::string out = tmp.file("grid");
  REQUIRE(run("grid --data " + data + ".csv --mu-candidates 50 "
              "--alpha-candidates 0.5 --counts 2 --eval-runs 5 --seed 17 "
              "--out " + out) == 0);
  const Json report = load_json(out + ".grid.json");
  REQUIRE(report["cells"].size() == 1);
  const Json& cell = report["cells"][0];
  CHECK(report["best_overall"] == cell);
  CHECK(report["best_per_count"]["2"] == cell);

  // compose the same cell by hand through the library
  const LoadedDataset ds = load_csv({data + ".csv", true, "label"});
  const DataMatrix centered = center_columns(ds.data.values);
  SolverConfig config;
  config.mu1 = 50;
  config.mu2 = 50;
  config.alpha = 0.5;
  config.r = 2;
  config.m = 2;
  config.rng_seed = cli::grid_cell_seed(17, 0);
  const SolveResult res = run(centered, config);
  std::vector<int> selected;
  for (int i = 0; i < 9; ++i) {
    if (res.Z.row(i).squaredNorm() > 0) selected.push_back(i);
  }
  const Rng eval_rng(cli::eval_seed(config.rng_seed));
  const EvaluationReport rep =
      evaluate(centered, selected, *ds.labels, 5, eval_rng);
  CHECK(cell["evaluation"]["acc_mean"].get<double>() == rep.acc_mean);
  CHECK(cell["evaluation"]["nmi_mean"].get<double>() == rep.nmi_mean);
  CHECK(cell["selected"].get<std::vector<int>>() == selected);
}

TEST_CASE("grid settings load from a JSON config file") {
  TempDir tmp;
  const std::string data = tmp.file("ban");
  REQUIRE(run("synth banana --n 240 --seed 41 --out " + data) == 0);
  const std::string config = tmp.file("config.json");
  {
    std::ofstream out(config);
    out << R"({"mu_candidates": [50], "alpha_candidates": [0.5],)"
        << R"( "feature_counts": [2], "max_outer_iter": 15})";
  }
  const std::string out = tmp.file("grid");
  REQUIRE(run("grid --data " + data + ".csv --config " + config +
              " --eval-runs 3 --seed 43 --out " + out) == 0);
  const Json report = load_json(out + ".grid.json");
  CHECK(report["cells"].size() == 1);
  CHECK(report["grid"]["mu_candidates"] == Json::array({50.0}));
  CHECK(report["cells"][0]["outer_iters"].get<int>() <= 15);
}

TEST_CASE("interrupted grids resume from the checkpoint") {
  TempDir tmp;
  const std::string data = tmp.file("ban");
  REQUIRE(run("synth banana --n 240 --seed 23 --out " + data) == 0);
  const std::string out = tmp.file("grid");
  const std::string args = "grid --data " + data +
                           ".csv --mu-candidates 1 50 --alpha-candidates 0.5 "
                           "--counts 2 --eval-runs 3 --seed 29 --out " + out;
  REQUIRE(run(args) == 0);
  const std::string full_report = slurp(out + ".grid.json");

  // keep only the first checkpoint line and drop the report, then re-run
  {
    std::ifstream in(out + ".cells.jsonl");
    std::string first;
    std::getline(in, first);
    in.close();
    std::ofstream trunc(out + ".cells.jsonl", std::ios::trunc);
    trunc << first << '\n';
  }
  fs::remove(out + ".grid.json");
  REQUIRE(run(args) == 0);
  CHECK(slurp(out + ".grid.json") == full_report);

  // the emitted best cell is the argmax over the emitted cells
  const Json report = load_json(out + ".grid.json");
  double best = -1.0;
  for (const auto& cell : report["cells"]) {
    best = std::max(best, cell["evaluation"]["acc_mean"].get<double>());
  }
  CHECK(report["best_overall"]["evaluation"]["acc_mean"].get<double>() == best);
}

TEST_CASE("the grid report does not depend on the worker pool width") {
  TempDir tmp;
  const std::string data = tmp.file("ban");
  REQUIRE(run("synth banana --n 240 --seed 37 --out " + data) == 0);
  for (int threads : {1, 3}) {
    REQUIRE(run("grid --data " + data +
                ".csv --mu-candidates 1 50 --alpha-candidates 0.3 0.6 "
                "--counts 2 --eval-runs 3 --seed 39 --threads " +
                std::to_string(threads) + " --out " + tmp.file("t") +
                std::to_string(threads)) == 0);
  }
  CHECK(slurp(tmp.file("t1.grid.json")) == slurp(tmp.file("t3.grid.json")));
}

TEST_SUITE_END();
