#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace dscofs {

// Raised when an iteration produces non-finite values; mapped to its own
// process exit code by the CLI.
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Cluster/class ids, contiguous from 0.
using LabelVector = std::vector<int>;

// Feature-by-sample data matrix (d features x n samples).
struct DataMatrix {
  Matrix values;

  Eigen::Index d() const { return values.rows(); }
  Eigen::Index n() const { return values.cols(); }
};

// All scalar hyperparameters of the solver. Non-positive mu/beta fields mean
// "derive from the data at solve time" (see solver.cpp for the formulas).
struct SolverConfig {
  double mu1 = 0.0;             // element-sparsity coupling; <=0 -> auto
  double mu2 = 0.0;             // row-sparsity coupling; <=0 -> auto
  double tau1 = 1e-2;           // proximal weight, X block
  double tau2 = 1e-2;           // proximal weight, Y block
  double tau3 = 0.3;            // proximal weight, Z block
  double beta = 0.0;            // orthogonality penalty; <=0 -> auto
  double rho = 0.0;             // ball radius; <=0 -> 1.5*sqrt(m)
  int m = 0;                    // projection dimension
  long s = 0;                   // element budget; 0 -> derive from alpha
  int r = 0;                    // row budget
  double alpha = 0.5;           // element-sparsity fraction, s = round(alpha*d*m)
  int max_outer_iter = 100;
  double outer_tol = 1e-3;
  int inner_max_iter = 1000;
  double inner_tol = 1e-6;
  int restarts = 10;
  std::uint64_t rng_seed = 0;
};

// Upper bounds for the penalty-parameter analysis.
struct PenaltyBound {
  double lambda0 = 1.0;
  double lambda1 = 1.0;
  double lambda2 = 1.0;
  double beta_min = 0.0;
};

// Outcome of one full solve.
struct SolveResult {
  Matrix X, Y, Z;
  std::vector<double> objective_trace;      // f at init, then one entry per outer iter
  std::vector<double> iterate_gap_trace;    // ||(dX,dY,dZ)||_F per outer iter
  std::vector<double> decrease_slack_trace; // f_next + sum tau*||d.||^2 - f_prev
  std::vector<double> retraction_residual;  // ||X'X - I||_F before polar retraction
  int outer_iters = 0;
  bool converged = false;
  double wall_time_seconds = 0.0;
  // the configuration actually used after auto-derivation
  SolverConfig resolved;
};

struct ConvergenceDiagnostics {
  double max_decrease_violation = 0.0;
  double final_gap = 0.0;
  double subgradient_bound = 0.0;  // tau * final_gap, tau = 2*max(tau1,tau2,tau3)
};

// Feature indices sorted by score, descending.
struct FeatureRanking {
  std::vector<int> order;
  std::vector<double> scores;  // aligned with order
};

struct EvaluationReport {
  double acc_mean = 0.0, acc_std = 0.0;  // percent
  double nmi_mean = 0.0, nmi_std = 0.0;  // percent
  int runs = 0;
  int selected_count = 0;
  std::vector<double> acc_per_run;  // fractions in [0,1]
  std::vector<double> nmi_per_run;
};

// N datasets x k methods score table.
struct ScoreTable {
  Matrix scores;
  std::vector<std::string> method_names;
  std::vector<std::string> dataset_names;
};

struct FriedmanResult {
  std::vector<double> avg_ranks;
  double statistic = 0.0;        // chi-square variant
  double p_value = 1.0;
  double iman_davenport = 0.0;   // auxiliary F statistic
  double iman_davenport_p = 1.0;
};

// Synthetic benchmark: 9 features, geometry planted at rows 3 and 4 (0-based).
struct PlantedDataset {
  DataMatrix data;
  LabelVector labels;
  std::vector<int> informative;  // {3, 4}
};

struct GridSpec {
  std::vector<double> mu_candidates = {1e-6, 1e-4, 1e-2, 1.0, 1e2, 1e4, 1e6};
  std::vector<double> alpha_candidates = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
  std::vector<int> feature_counts = {10, 20, 30, 40, 50, 60, 70, 80, 90, 100};
};

}  // namespace dscofs
