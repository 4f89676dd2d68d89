#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "acsbm/graph.hpp"
#include "acsbm/search.hpp"

namespace acsbm {

enum class ExperimentKind { ppm_sweep, sbm_ensemble, real_network };

struct ExperimentPlan {
  ExperimentKind kind = ExperimentKind::ppm_sweep;
  std::vector<Model> models{Model::dc_sbm, Model::ac_dc_sbm};
  AssortativityMode ac_mode = AssortativityMode::strong;
  int runs = 20;
  // Instance i is generated with instance_seed + i; run r on instance i uses
  // fit seed fit_seed + i * runs + r for every model, so models are compared
  // on identical graphs and initializations.
  std::uint64_t instance_seed = 1000;
  std::uint64_t fit_seed = 1;
  NodeId n = 100;
  BlockId k = 4;
  // ppm sweep
  double avg_degree = 16.0;
  std::vector<double> ratios{0.05, 0.10, 0.15, 0.20, 0.25, 0.30, 0.35,
                             0.40, 0.45, 0.50, 0.55, 0.60, 0.65};
  // sbm ensemble
  int datasets = 10;
  std::pair<double, double> diag_range{0.45, 0.55};
  std::pair<double, double> offdiag_range{0.0, 0.4};
  double quantile = 0.10;
  // real network
  std::filesystem::path graph;
  NodeId id_offset = 0;
  SolverConfig solver;
  int threads = 0;
};

// Keys match the field names above (kind: "ppm" | "sbm" | "real", models by
// CLI name, pairs as two-element arrays). Missing keys keep their defaults.
ExperimentPlan plan_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ExperimentPlan& plan);
ExperimentKind parse_experiment_kind(const std::string& name);
std::string to_string(ExperimentKind kind);

// One fit on one generated instance.
struct RunRecord {
  int instance = 0;
  double ratio = 0.0;  // ppm sweep only
  Model model = Model::dc_sbm;
  int run = 0;
  std::uint64_t fit_seed = 0;
  double nmi = 0.0;
  double log_likelihood = 0.0;
  double modularity = 0.0;
  double objective = 0.0;
  int assortative_count = 0;
  AssortativityMode level = AssortativityMode::none;
  int sweeps = 0;
  int constrained_solves = 0;
  std::vector<BlockId> partition;
};

// Ordered by (instance, model position in plan, run), independent of
// scheduling.
std::vector<RunRecord> run_ppm_sweep(const ExperimentPlan& plan);
std::vector<RunRecord> run_sbm_ensemble(const ExperimentPlan& plan);

struct GroupSummary {
  int instance = 0;
  double ratio = 0.0;
  Model model = Model::dc_sbm;
  int runs = 0;
  double mean_nmi = 0.0;
  double median_nmi = 0.0;
  // Share of runs with NMI >= 0.9.
  double near_perfect = 0.0;
  // Mean NMI of the best ceil(quantile * runs) runs by objective.
  double top_mean_nmi = 0.0;
  double mean_assortative = 0.0;
};

std::vector<GroupSummary> summarize(const std::vector<RunRecord>& rows,
                                    const std::vector<Model>& models,
                                    double quantile);

double median(std::vector<double> values);

// CSV header: instance,ratio,model,run,fit_seed,nmi,loglik,modularity,
// objective,assortative_count,level,sweeps,constrained_solves,partition
// with the partition as space-separated labels.
void write_runs_csv(std::ostream& out, const std::vector<RunRecord>& rows);
void write_summary_csv(std::ostream& out,
                       const std::vector<GroupSummary>& groups);

struct RealReport {
  Model model = Model::dc_sbm;
  FitResult best;
  double diag_min = 0.0;
  double offdiag_max = 0.0;
  AssortativityMode level = AssortativityMode::none;
  std::vector<NodeId> block_sizes;
  int nonempty_blocks = 0;
};

// Multi-start per model on a fixed graph; keeps each model's best run.
std::vector<RealReport> run_real(const ExperimentPlan& plan, const Graph& g);
nlohmann::json to_json(const RealReport& report);

// Runs the plan and writes runs.csv, summary.csv (or real.json) and
// manifest.json into `out_dir`.
void run_plan(const ExperimentPlan& plan, const std::filesystem::path& out_dir);

}  // namespace acsbm
