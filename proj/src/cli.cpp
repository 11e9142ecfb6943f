#include "dscofs/cli.hpp"

#include <CLI11.hpp>

#include <atomic>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <thread>

#include "dscofs/clustering.hpp"
#include "dscofs/core_model.hpp"
#include "dscofs/data_io.hpp"
#include "dscofs/feature_selection.hpp"
#include "dscofs/prox_ops.hpp"
#include "dscofs/solver.hpp"
#include "dscofs/stats_tests.hpp"
#include "dscofs/svg_plot.hpp"
#include "dscofs/synth_data.hpp"
#include "dscofs/version.hpp"

namespace dscofs::cli {

std::uint64_t grid_cell_seed(std::uint64_t base_seed, std::uint64_t cell_index) {
  return mix_seed(base_seed, 0x6772696441ULL + cell_index);
}

std::uint64_t eval_seed(std::uint64_t solve_seed) {
  return mix_seed(solve_seed, 0x6576616cULL);
}

namespace {

struct CommonOpts {
  std::uint64_t seed = 0;
  int threads = 1;
  std::string out;
  bool timings = false;
};

void add_common(CLI::App* cmd, CommonOpts& opts, const std::string& out_default) {
  opts.out = out_default;
  cmd->add_option("--seed", opts.seed, "base RNG seed");
  cmd->add_option("--threads", opts.threads, "worker pool width")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--out", opts.out, "output path prefix");
  cmd->add_flag("--timings", opts.timings,
                "include wall-clock times in reports (non-deterministic)");
}

struct SolverOpts {
  std::string config_path;
  SolverConfig config;
  CLI::Option *o_mu1, *o_mu2, *o_tau1, *o_tau2, *o_tau3, *o_beta, *o_rho, *o_m,
      *o_s, *o_r, *o_alpha, *o_outer, *o_otol, *o_inner, *o_itol, *o_restarts;
  SolverConfig staged;  // values written by CLI11

  void add(CLI::App* cmd) {
    cmd->add_option("--config", config_path, "JSON config file")
        ->check(CLI::ExistingFile);
    o_mu1 = cmd->add_option("--mu1", staged.mu1, "element coupling (auto if unset)");
    o_mu2 = cmd->add_option("--mu2", staged.mu2, "row coupling (auto if unset)");
    o_tau1 = cmd->add_option("--tau1", staged.tau1, "proximal weight, X block");
    o_tau2 = cmd->add_option("--tau2", staged.tau2, "proximal weight, Y block");
    o_tau3 = cmd->add_option("--tau3", staged.tau3, "proximal weight, Z block");
    o_beta = cmd->add_option("--beta", staged.beta, "orthogonality penalty (auto if unset)");
    o_rho = cmd->add_option("--rho", staged.rho, "ball radius (default 1.5*sqrt(m))");
    o_m = cmd->add_option("--m", staged.m, "projection dimension");
    o_s = cmd->add_option("--s", staged.s, "element budget (overrides alpha)");
    o_r = cmd->add_option("--r", staged.r, "row budget / selected feature count");
    o_alpha = cmd->add_option("--alpha", staged.alpha, "element fraction in (0,1]");
    o_outer = cmd->add_option("--max-outer", staged.max_outer_iter, "outer iteration cap");
    o_otol = cmd->add_option("--outer-tol", staged.outer_tol, "outer stop tolerance");
    o_inner = cmd->add_option("--inner-max", staged.inner_max_iter, "inner iteration cap");
    o_itol = cmd->add_option("--inner-tol", staged.inner_tol, "inner stop tolerance");
    o_restarts = cmd->add_option("--restarts", staged.restarts, "init draws");
  }

  SolverConfig resolve() const {
    SolverConfig c;
    if (!config_path.empty()) c = config_from_json(load_json(config_path), c);
    if (*o_mu1) c.mu1 = staged.mu1;
    if (*o_mu2) c.mu2 = staged.mu2;
    if (*o_tau1) c.tau1 = staged.tau1;
    if (*o_tau2) c.tau2 = staged.tau2;
    if (*o_tau3) c.tau3 = staged.tau3;
    if (*o_beta) c.beta = staged.beta;
    if (*o_rho) c.rho = staged.rho;
    if (*o_m) c.m = staged.m;
    if (*o_s) c.s = staged.s;
    if (*o_r) c.r = staged.r;
    if (*o_alpha) c.alpha = staged.alpha;
    if (*o_outer) c.max_outer_iter = staged.max_outer_iter;
    if (*o_otol) c.outer_tol = staged.outer_tol;
    if (*o_inner) c.inner_max_iter = staged.inner_max_iter;
    if (*o_itol) c.inner_tol = staged.inner_tol;
    if (*o_restarts) c.restarts = staged.restarts;
    return c;
  }
};

std::vector<int> nonzero_row_indices(const Matrix& Z) {
  std::vector<int> rows;
  for (Eigen::Index i = 0; i < Z.rows(); ++i) {
    if (Z.row(i).squaredNorm() > 0.0) rows.push_back(static_cast<int>(i));
  }
  return rows;
}

Json solve_summary(const SolveResult& res, bool timings) {
  Json j;
  j["converged"] = res.converged;
  j["outer_iters"] = res.outer_iters;
  j["objective_trace"] = res.objective_trace;
  j["iterate_gap_trace"] = res.iterate_gap_trace;
  double max_slack = 0.0;
  for (double v : res.decrease_slack_trace) max_slack = std::max(max_slack, v);
  j["decrease_slack_max"] = max_slack;
  double max_resid = 0.0;
  for (double v : res.retraction_residual) max_resid = std::max(max_resid, v);
  j["retraction_residual_max"] = max_resid;
  const ConvergenceDiagnostics diag = convergence_diagnostics(res, res.resolved);
  j["diagnostics"] = {{"max_decrease_violation", diag.max_decrease_violation},
                      {"final_gap", diag.final_gap},
                      {"subgradient_bound", diag.subgradient_bound}};
  j["selected"] = nonzero_row_indices(res.Z);
  const FeatureRanking rank = rank_features(res.Z);
  j["ranking"] = {{"order", rank.order}, {"scores", rank.scores}};
  if (timings) j["wall_time_seconds"] = res.wall_time_seconds;
  return j;
}

Json evaluation_json(const EvaluationReport& rep) {
  Json j;
  j["acc_mean"] = rep.acc_mean;
  j["acc_std"] = rep.acc_std;
  j["nmi_mean"] = rep.nmi_mean;
  j["nmi_std"] = rep.nmi_std;
  j["runs"] = rep.runs;
  j["selected_count"] = rep.selected_count;
  j["acc_per_run"] = rep.acc_per_run;
  j["nmi_per_run"] = rep.nmi_per_run;
  return j;
}

// ---------------------------------------------------------------- synth

int cmd_synth(const std::string& name, int n, double noise_sd,
              const CommonOpts& opts) {
  Rng rng(opts.seed);
  Geometry geom;
  double rotation = 0.0;
  if (name == "2spiral") {
    geom = gen_2spiral(n, noise_sd, rng, &rotation);
  } else if (name == "banana") {
    geom = gen_banana(n, noise_sd, rng, &rotation);
  } else if (name == "dartboard") {
    geom = gen_dartboard(n, noise_sd, rng, &rotation);
  } else {
    throw CLI::ValidationError("synth", "unknown dataset name: " + name);
  }
  PlantedDataset planted = embed_with_noise(geom.first, geom.second, rng);
  save_dataset_csv(opts.out + ".csv", planted.data, &planted.labels);

  Json sidecar;
  sidecar["version"] = DSCOFS_VERSION;
  sidecar["seed"] = opts.seed;
  sidecar["name"] = name;
  sidecar["informative"] = planted.informative;
  sidecar["rotation"] = rotation;
  sidecar["n"] = n;
  sidecar["noise_sd"] = noise_sd;
  save_report(sidecar, opts.out + ".informative.json");
  std::cout << opts.out << ".csv\n" << opts.out << ".informative.json\n";
  return 0;
}

// ---------------------------------------------------------------- select

struct SelectInputs {
  DataMatrix centered;
  std::optional<LabelVector> labels;
};

SelectInputs load_and_center(const std::string& data_path, bool want_labels,
                             const std::string& label_column) {
  DatasetFile file;
  file.path = data_path;
  file.want_labels = want_labels;
  file.label_column = label_column;
  LoadedDataset loaded = load_csv(file);
  SelectInputs in;
  in.centered = center_columns(loaded.data.values);
  in.labels = loaded.labels;
  return in;
}

int label_classes(const LabelVector& labels) {
  int c = 0;
  for (int v : labels) c = std::max(c, v + 1);
  return c;
}

int cmd_select(const std::string& data_path, bool use_labels,
               const std::string& label_column, const SolverOpts& sopts,
               const CommonOpts& opts) {
  SelectInputs in = load_and_center(data_path, use_labels, label_column);
  SolverConfig config = sopts.resolve();
  config.rng_seed = opts.seed;
  if (config.m <= 0) {
    if (in.labels) {
      config.m = label_classes(*in.labels);
    } else {
      throw CLI::ValidationError("select", "--m required without labels");
    }
  }
  if (config.r <= 0) config.r = static_cast<int>(std::min<Eigen::Index>(in.centered.d(), 100));

  const SolveResult res = run(in.centered, config);
  const Json report = report_envelope(solve_summary(res, opts.timings),
                                      opts.seed, config_to_json(res.resolved));
  save_report(report, opts.out + ".result.json");

  Json ranking;
  ranking["version"] = DSCOFS_VERSION;
  ranking["seed"] = opts.seed;
  const FeatureRanking rank = rank_features(res.Z);
  ranking["order"] = rank.order;
  ranking["scores"] = rank.scores;
  ranking["selected"] = nonzero_row_indices(res.Z);
  save_report(ranking, opts.out + ".ranking.json");
  std::cout << opts.out << ".result.json\n" << opts.out << ".ranking.json\n";
  return 0;
}

// ---------------------------------------------------------------- grid

struct GridCell {
  double mu1, mu2, alpha;
  int count;
  std::uint64_t index;
};

// The key pins everything that determines a cell's result, so stale
// checkpoint lines from a different sweep are never reused.
Json cell_key(const GridCell& cell, std::uint64_t base_seed, int eval_runs) {
  Json key;
  key["mu1"] = cell.mu1;
  key["mu2"] = cell.mu2;
  key["alpha"] = cell.alpha;
  key["count"] = cell.count;
  key["seed"] = base_seed;
  key["eval_runs"] = eval_runs;
  return key;
}

// GridSpec fields may come from the same JSON config file as the solver
// fields; explicit CLI options win.
GridSpec grid_from_config(const std::string& config_path, GridSpec grid) {
  if (config_path.empty()) return grid;
  const Json j = load_json(config_path);
  if (j.contains("mu_candidates")) {
    grid.mu_candidates = j.at("mu_candidates").get<std::vector<double>>();
  }
  if (j.contains("alpha_candidates")) {
    grid.alpha_candidates = j.at("alpha_candidates").get<std::vector<double>>();
  }
  if (j.contains("feature_counts")) {
    grid.feature_counts = j.at("feature_counts").get<std::vector<int>>();
  }
  return grid;
}

int cmd_grid(const std::string& data_path, const std::string& label_column,
             const GridSpec& grid, bool decouple_mu, int eval_runs,
             const SolverOpts& sopts, const CommonOpts& opts) {
  SelectInputs in = load_and_center(data_path, true, label_column);
  const LabelVector& labels = *in.labels;
  const int classes = label_classes(labels);
  const Eigen::Index d = in.centered.d();

  for (int count : grid.feature_counts) {
    if (count < 1 || count > d) {
      throw CLI::ValidationError(
          "grid", "feature count " + std::to_string(count) +
                      " outside 1.." + std::to_string(d));
    }
  }

  std::vector<GridCell> cells;
  std::uint64_t index = 0;
  for (double mu_a : grid.mu_candidates) {
    const std::vector<double> mu_b_list =
        decouple_mu ? grid.mu_candidates : std::vector<double>{mu_a};
    for (double mu_b : mu_b_list) {
      for (double alpha : grid.alpha_candidates) {
        for (int count : grid.feature_counts) {
          cells.push_back({mu_a, mu_b, alpha, count, index++});
        }
      }
    }
  }

  // resume from any checkpointed cells
  const std::string ckpt_path = opts.out + ".cells.jsonl";
  std::map<std::string, Json> done;
  {
    std::ifstream ck(ckpt_path);
    std::string line;
    while (std::getline(ck, line)) {
      if (line.empty()) continue;
      Json j = Json::parse(line, nullptr, false);
      if (j.is_discarded() || !j.contains("key")) continue;  // torn tail line
      done[j["key"].dump()] = j;
    }
  }

  std::vector<Json> results(cells.size());
  std::vector<char> computed(cells.size(), 0);
  for (std::size_t i = 0; i < cells.size(); ++i) {
    auto it = done.find(cell_key(cells[i], opts.seed, eval_runs).dump());
    if (it != done.end()) {
      results[i] = it->second;
      computed[i] = 1;
    }
  }

  std::ofstream ckpt(ckpt_path, std::ios::app);
  std::mutex ckpt_mutex;
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::string failure_message;

  auto worker = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= cells.size() || failed.load()) return;
      if (computed[i]) continue;
      const GridCell& cell = cells[i];
      try {
        SolverConfig config = sopts.resolve();
        config.mu1 = cell.mu1;
        config.mu2 = cell.mu2;
        config.alpha = cell.alpha;
        config.s = 0;  // derive from alpha
        config.r = cell.count;
        config.m = config.m > 0 ? config.m : classes;
        config.rng_seed = grid_cell_seed(opts.seed, cell.index);
        const SolveResult res = run(in.centered, config);
        const std::vector<int> selected = nonzero_row_indices(res.Z);
        const Rng eval_rng(eval_seed(config.rng_seed));
        const EvaluationReport rep =
            evaluate(in.centered, selected, labels, eval_runs, eval_rng);

        Json cell_json;
        cell_json["key"] = cell_key(cell, opts.seed, eval_runs);
        cell_json["seed"] = config.rng_seed;
        cell_json["selected"] = selected;
        cell_json["converged"] = res.converged;
        cell_json["outer_iters"] = res.outer_iters;
        cell_json["objective_final"] = res.objective_trace.back();
        cell_json["evaluation"] = evaluation_json(rep);
        {
          std::lock_guard<std::mutex> lock(ckpt_mutex);
          ckpt << cell_json.dump() << '\n';
          ckpt.flush();
          results[i] = std::move(cell_json);
          computed[i] = 1;
        }
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(ckpt_mutex);
        failed.store(true);
        failure_message = e.what();
        return;
      }
    }
  };

  const int width = std::max(1, opts.threads);
  std::vector<std::thread> pool;
  for (int t = 0; t < width - 1; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  if (failed.load()) throw std::runtime_error("grid cell failed: " + failure_message);

  Json report;
  report["version"] = DSCOFS_VERSION;
  report["seed"] = opts.seed;
  report["grid"] = {{"mu_candidates", grid.mu_candidates},
                    {"alpha_candidates", grid.alpha_candidates},
                    {"feature_counts", grid.feature_counts},
                    {"decouple_mu", decouple_mu},
                    {"eval_runs", eval_runs}};
  report["cells"] = Json::array();
  for (const auto& r : results) report["cells"].push_back(r);

  // per-count argmax of mean accuracy; ties resolved by enumeration order
  Json best_per_count = Json::object();
  Json best_overall;
  double best_overall_acc = -1.0;
  for (int count : grid.feature_counts) {
    double best_acc = -1.0;
    Json best;
    for (const auto& r : results) {
      if (r["key"]["count"].get<int>() != count) continue;
      const double acc_mean = r["evaluation"]["acc_mean"].get<double>();
      if (acc_mean > best_acc) {
        best_acc = acc_mean;
        best = r;
      }
    }
    best_per_count[std::to_string(count)] = best;
    if (best_acc > best_overall_acc) {
      best_overall_acc = best_acc;
      best_overall = best;
    }
  }
  report["best_per_count"] = best_per_count;
  report["best_overall"] = best_overall;
  save_report(report, opts.out + ".grid.json");
  std::cout << opts.out << ".grid.json\n";
  return 0;
}

// ---------------------------------------------------------------- ablate

int cmd_ablate(const std::string& data_path, const std::string& label_column,
               int fsr_count, bool decouple_init, int eval_runs,
               const SolverOpts& sopts, const CommonOpts& opts) {
  SelectInputs in = load_and_center(data_path, true, label_column);
  const LabelVector& labels = *in.labels;
  const Eigen::Index d = in.centered.d();

  SolverConfig base = sopts.resolve();
  base.rng_seed = opts.seed;
  if (base.m <= 0) base.m = label_classes(labels);
  if (base.r <= 0) base.r = static_cast<int>(std::min<Eigen::Index>(d, 100));

  SolverConfig cfg_l20 = base;  // element constraint disabled
  cfg_l20.s = static_cast<long>(d) * base.m;
  SolverConfig cfg_both = base;
  if (decouple_init) cfg_both.rng_seed = mix_seed(opts.seed, 0xab1a7eULL);

  const SolveResult res_l20 = run(in.centered, cfg_l20);
  const SolveResult res_both = run(in.centered, cfg_both);

  const int n_rank = std::min<int>(fsr_count, static_cast<int>(d));
  const FeatureRanking rank_l20 = rank_features(res_l20.Z);
  const FeatureRanking rank_both = rank_features(res_both.Z);
  const std::vector<int> top_l20(rank_l20.order.begin(),
                                 rank_l20.order.begin() + n_rank);
  const std::vector<int> top_both(rank_both.order.begin(),
                                  rank_both.order.begin() + n_rank);
  const double similarity = fsr(top_both, top_l20, n_rank);

  auto run_json = [&](const SolveResult& res) {
    Json j = solve_summary(res, opts.timings);
    const Rng eval_rng(eval_seed(res.resolved.rng_seed));
    const EvaluationReport rep = evaluate(
        in.centered, nonzero_row_indices(res.Z), labels, eval_runs, eval_rng);
    j["evaluation"] = evaluation_json(rep);
    j["config"] = config_to_json(res.resolved);
    return j;
  };

  Json report;
  report["version"] = DSCOFS_VERSION;
  report["seed"] = opts.seed;
  report["fsr"] = similarity;
  report["fsr_count"] = n_rank;
  report["l20_only"] = run_json(res_l20);
  report["double_sparsity"] = run_json(res_both);
  save_report(report, opts.out + ".ablation.json");
  std::cout << opts.out << ".ablation.json\n";
  return 0;
}

// ---------------------------------------------------------------- stats

int cmd_stats(const std::string& scores_path, double alpha,
              const CommonOpts& opts) {
  const ScoreTable table = load_score_table(scores_path);
  const FriedmanResult fr = friedman(table);
  const double cd =
      nemenyi_cd(static_cast<int>(table.scores.cols()),
                 static_cast<int>(table.scores.rows()), alpha);
  const auto sig = pairwise_significance(fr.avg_ranks, cd);

  Json report;
  report["version"] = DSCOFS_VERSION;
  report["methods"] = table.method_names;
  report["datasets"] = table.dataset_names;
  report["avg_ranks"] = fr.avg_ranks;
  report["statistic"] = fr.statistic;
  report["p_value"] = fr.p_value;
  report["iman_davenport"] = fr.iman_davenport;
  report["iman_davenport_p"] = fr.iman_davenport_p;
  report["alpha"] = alpha;
  report["critical_difference"] = cd;
  Json sig_json = Json::array();
  for (const auto& row : sig) {
    Json r = Json::array();
    for (bool v : row) r.push_back(v);
    sig_json.push_back(r);
  }
  report["significant"] = sig_json;
  save_report(report, opts.out + ".stats.json");
  std::cout << opts.out + ".stats.json\n";
  return 0;
}

// ---------------------------------------------------------------- plot

int cmd_plot(const std::string& data_path, int fx, int fy, bool use_labels,
             const std::string& label_column, const CommonOpts& opts) {
  SelectInputs in = load_and_center(data_path, use_labels, label_column);
  LabelVector labels = in.labels ? *in.labels : LabelVector{};
  write_scatter_svg(opts.out, in.centered, fx, fy, labels);
  std::cout << opts.out << '\n';
  return 0;
}

}  // namespace

int run_cli(int argc, char** argv) {
  CLI::App app{"DSCOFS: PCA feature selection with joint row and element sparsity"};
  app.set_version_flag("--version", DSCOFS_VERSION);
  app.require_subcommand(1);

  // synth
  auto* synth = app.add_subcommand("synth", "generate a synthetic benchmark");
  std::string synth_name;
  int synth_n = 1000;
  double synth_noise = 0.05;
  CommonOpts synth_opts;
  synth->add_option("name", synth_name, "2spiral | banana | dartboard")
      ->required();
  synth->add_option("--n", synth_n, "sample count");
  synth->add_option("--noise-sd", synth_noise, "additive jitter sd");
  add_common(synth, synth_opts, "");

  // select
  auto* select = app.add_subcommand("select", "run the solver and rank features");
  std::string select_data, select_label_col = "label";
  bool select_labels = false;
  CommonOpts select_opts;
  SolverOpts select_solver;
  select->add_option("--data", select_data, "input CSV")->required();
  select->add_flag("--labels", select_labels, "read the label column");
  select->add_option("--label-column", select_label_col, "label column name");
  select_solver.add(select);
  add_common(select, select_opts, "select");

  // grid
  auto* gridcmd = app.add_subcommand("grid", "grid search over mu, alpha, count");
  std::string grid_data, grid_label_col = "label";
  GridSpec grid_spec;
  bool grid_decouple = false;
  int grid_eval_runs = 50;
  CommonOpts grid_opts;
  SolverOpts grid_solver;
  gridcmd->add_option("--data", grid_data, "labeled input CSV")->required();
  gridcmd->add_option("--label-column", grid_label_col, "label column name");
  auto* o_mu_cand =
      gridcmd->add_option("--mu-candidates", grid_spec.mu_candidates, "mu grid values");
  auto* o_alpha_cand = gridcmd->add_option(
      "--alpha-candidates", grid_spec.alpha_candidates, "alpha grid values");
  auto* o_counts =
      gridcmd->add_option("--counts", grid_spec.feature_counts, "feature counts (r)");
  gridcmd->add_flag("--decouple-mu", grid_decouple, "cross mu1 x mu2 candidates");
  gridcmd->add_option("--eval-runs", grid_eval_runs, "K-means repetitions per cell");
  grid_solver.add(gridcmd);
  add_common(gridcmd, grid_opts, "grid");

  // ablate
  auto* ablate = app.add_subcommand(
      "ablate", "compare row-only sparsity against double sparsity");
  std::string ablate_data, ablate_label_col = "label";
  int ablate_fsr_count = 100;
  bool ablate_decouple = false;
  int ablate_eval_runs = 50;
  CommonOpts ablate_opts;
  SolverOpts ablate_solver;
  ablate->add_option("--data", ablate_data, "labeled input CSV")->required();
  ablate->add_option("--label-column", ablate_label_col, "label column name");
  ablate->add_option("--fsr-count", ablate_fsr_count,
                     "ranking depth for the overlap metric");
  ablate->add_flag("--decouple-init", ablate_decouple,
                   "use an independent init for the second run");
  ablate->add_option("--eval-runs", ablate_eval_runs, "K-means repetitions");
  ablate_solver.add(ablate);
  add_common(ablate, ablate_opts, "ablate");

  // stats
  auto* stats = app.add_subcommand("stats", "Friedman test and Nemenyi critical difference");
  std::string stats_scores;
  double stats_alpha = 0.05;
  CommonOpts stats_opts;
  stats->add_option("--scores", stats_scores, "CSV of datasets x methods scores")
      ->required();
  stats->add_option("--alpha", stats_alpha, "significance level (0.05 or 0.10)");
  add_common(stats, stats_opts, "stats");

  // plot
  auto* plot = app.add_subcommand("plot", "SVG scatter of two features");
  std::string plot_data, plot_label_col = "label";
  std::vector<int> plot_features;
  bool plot_labels = false;
  CommonOpts plot_opts;
  plot->add_option("--data", plot_data, "input CSV")->required();
  plot->add_option("--features", plot_features, "two 0-based feature indices")
      ->expected(2)
      ->required();
  plot->add_flag("--labels", plot_labels, "color by the label column");
  plot->add_option("--label-column", plot_label_col, "label column name");
  add_common(plot, plot_opts, "plot.svg");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (synth->parsed()) {
      if (synth_opts.out.empty()) synth_opts.out = synth_name;
      return cmd_synth(synth_name, synth_n, synth_noise, synth_opts);
    }
    if (select->parsed()) {
      return cmd_select(select_data, select_labels, select_label_col,
                        select_solver, select_opts);
    }
    if (gridcmd->parsed()) {
      GridSpec effective = grid_from_config(grid_solver.config_path, GridSpec{});
      if (*o_mu_cand) effective.mu_candidates = grid_spec.mu_candidates;
      if (*o_alpha_cand) effective.alpha_candidates = grid_spec.alpha_candidates;
      if (*o_counts) effective.feature_counts = grid_spec.feature_counts;
      return cmd_grid(grid_data, grid_label_col, effective, grid_decouple,
                      grid_eval_runs, grid_solver, grid_opts);
    }
    if (ablate->parsed()) {
      return cmd_ablate(ablate_data, ablate_label_col, ablate_fsr_count,
                        ablate_decouple, ablate_eval_runs, ablate_solver,
                        ablate_opts);
    }
    if (stats->parsed()) {
      return cmd_stats(stats_scores, stats_alpha, stats_opts);
    }
    if (plot->parsed()) {
      return cmd_plot(plot_data, plot_features[0], plot_features[1],
                      plot_labels, plot_label_col, plot_opts);
    }
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}

}  // namespace dscofs::cli
