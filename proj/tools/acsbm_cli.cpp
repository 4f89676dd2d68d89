// acsbm: fit assortative-constrained degree-corrected block models.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "acsbm/benchmark.hpp"
#include "acsbm/generators.hpp"
#include "acsbm/io.hpp"
#include "acsbm/metrics.hpp"
#include "acsbm/search.hpp"

namespace {

using namespace acsbm;
using nlohmann::json;

std::pair<double, double> parse_range(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) {
    throw CLI::ValidationError("range", "expected 'lo,hi', got '" + text + "'");
  }
  return {std::stod(text.substr(0, comma)), std::stod(text.substr(comma + 1))};
}

json omega_json(const OmegaMatrix& w) {
  json rows = json::array();
  for (BlockId r = 0; r < w.size(); ++r) {
    json row = json::array();
    for (BlockId s = 0; s < w.size(); ++s) row.push_back(w(r, s));
    rows.push_back(row);
  }
  return rows;
}

void write_planted(const std::string& base, const PlantedGraph& planted,
                   json spec) {
  write_edge_list(base + ".edgelist", planted.graph);
  write_labels(base + ".labels", planted.truth);
  spec["planted_omega"] = omega_json(planted.omega);
  spec["nodes"] = planted.graph.num_nodes();
  spec["total_weight"] = planted.graph.total_weight();
  std::ofstream(base + ".json") << spec.dump(2) << '\n';
  std::cout << "wrote " << base << ".edgelist, " << base << ".labels, " << base
            << ".json (m = " << planted.graph.total_weight() << ")\n";
}

json fit_json(const FitResult& best, const std::vector<FitResult>& all,
              Model model, const std::string& graph_path) {
  json runs = json::array();
  for (const FitResult& r : all) {
    runs.push_back({{"seed", r.seed},
                    {"log_likelihood", r.log_likelihood},
                    {"modularity", r.modularity},
                    {"sweeps", r.sweeps}});
  }
  return {
      {"graph", graph_path},
      {"model", std::string(to_string(model))},
      {"mode", std::string(to_string(best.mode))},
      {"k", best.partition.num_blocks()},
      {"seed", best.seed},
      {"partition", best.partition.assignment()},
      {"block_sizes", best.partition.block_sizes()},
      {"omega", omega_json(best.omega)},
      {"lambda", best.lambda},
      {"log_likelihood", best.log_likelihood},
      {"modularity", best.modularity},
      {"assortativity", std::string(to_string(assortativity_level(best.omega, 1e-6)))},
      {"assortative_communities", count_assortative_communities(best.omega, 1e-6)},
      {"diagnostics",
       {{"sweeps", best.sweeps},
        {"accepted_moves", best.accepted_moves},
        {"constrained_solves", best.constrained_solves},
        {"filtered_moves", best.filtered_moves},
        {"hit_sweep_limit", best.hit_sweep_limit},
        {"trace_length", best.trace.size()}}},
      {"runs", runs},
  };
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Degree-corrected block models with assortativity constraints"};
  app.require_subcommand(1);

  // generate-ppm
  PpmSpec ppm;
  std::string ppm_out;
  auto* gen_ppm = app.add_subcommand("generate-ppm", "Planted partition graph");
  gen_ppm->add_option("--n", ppm.n, "Nodes")->check(CLI::PositiveNumber);
  gen_ppm->add_option("--k", ppm.k, "Blocks")->check(CLI::PositiveNumber);
  gen_ppm->add_option("--avg-degree", ppm.avg_degree, "Expected degree")->check(CLI::NonNegativeNumber);
  gen_ppm->add_option("--ratio", ppm.ratio, "omega_out / omega_in")->check(CLI::Range(0.0, 1.0));
  gen_ppm->add_option("--seed", ppm.seed, "RNG seed");
  gen_ppm->add_option("--out", ppm_out, "Output path prefix")->required();

  // generate-sbm
  SbmSpec sbm;
  std::string sbm_out, diag_range, offdiag_range;
  auto* gen_sbm = app.add_subcommand("generate-sbm", "General SBM graph with random planted omega");
  gen_sbm->add_option("--n", sbm.n, "Nodes")->check(CLI::PositiveNumber);
  gen_sbm->add_option("--k", sbm.k, "Blocks")->check(CLI::PositiveNumber);
  gen_sbm->add_option("--seed", sbm.seed, "RNG seed");
  gen_sbm->add_option("--diag-range", diag_range, "lo,hi for diagonal rates");
  gen_sbm->add_option("--offdiag-range", offdiag_range, "lo,hi for off-diagonal rates");
  gen_sbm->add_option("--out", sbm_out, "Output path prefix")->required();

  // fit
  std::string graph_path, fit_out, model_name = "ac-dc-sbm", mode_name = "strong",
                                   labels_out;
  BlockId k = 2;
  int runs = 1;
  int threads = 0;
  std::uint64_t seed = 0;
  double tol = 1e-8;
  bool one_based = false;
  auto* fit_cmd = app.add_subcommand("fit", "Fit a model by multi-start local search");
  fit_cmd->add_option("--graph", graph_path, "Edge list")->required()->check(CLI::ExistingFile);
  fit_cmd->add_option("--k", k, "Blocks")->required()->check(CLI::PositiveNumber);
  fit_cmd->add_option("--model", model_name, "dc-sbm | ac-dc-sbm | modularity")
      ->check(CLI::IsMember({"dc-sbm", "ac-dc-sbm", "modularity"}));
  fit_cmd->add_option("--mode", mode_name, "Constraint for ac-dc-sbm")
      ->check(CLI::IsMember({"strong", "weak"}));
  fit_cmd->add_option("--runs", runs, "Independent starts")->check(CLI::PositiveNumber);
  fit_cmd->add_option("--seed", seed, "Seed of the first run");
  fit_cmd->add_option("--tol", tol, "Solver tolerance")->check(CLI::PositiveNumber);
  fit_cmd->add_option("--threads", threads, "Worker threads (default: ACSBM_THREADS or all cores)");
  fit_cmd->add_flag("--one-based", one_based, "Node ids in the file start at 1");
  fit_cmd->add_option("--out", fit_out, "Result JSON (stdout when omitted)");
  fit_cmd->add_option("--labels-out", labels_out, "Write best partition as a label file");

  // eval
  std::string pred_path, truth_path;
  auto* eval_cmd = app.add_subcommand("eval", "NMI between two label files");
  eval_cmd->add_option("--pred", pred_path, "Predicted labels")->required()->check(CLI::ExistingFile);
  eval_cmd->add_option("--truth", truth_path, "Reference labels")->required()->check(CLI::ExistingFile);

  // bench
  std::string bench_kind, plan_path, bench_out;
  auto* bench_cmd = app.add_subcommand("bench", "Run an experiment plan");
  bench_cmd->add_option("kind", bench_kind, "ppm | sbm | real")
      ->required()
      ->check(CLI::IsMember({"ppm", "sbm", "real"}));
  bench_cmd->add_option("--plan", plan_path, "Plan JSON")->check(CLI::ExistingFile);
  bench_cmd->add_option("--out", bench_out, "Output directory")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen_ppm) {
      const PlantedGraph planted = generate_ppm(ppm);
      const PpmRates rates = ppm_rates(ppm);
      write_planted(ppm_out, planted,
                    {{"generator", "ppm"},
                     {"n", ppm.n},
                     {"k", ppm.k},
                     {"avg_degree", ppm.avg_degree},
                     {"ratio", ppm.ratio},
                     {"seed", ppm.seed},
                     {"p_in", rates.p_in},
                     {"p_out", rates.p_out}});
    } else if (*gen_sbm) {
      if (!diag_range.empty()) sbm.diag_range = parse_range(diag_range);
      if (!offdiag_range.empty()) sbm.offdiag_range = parse_range(offdiag_range);
      const PlantedGraph planted = generate_sbm(sbm);
      write_planted(sbm_out, planted,
                    {{"generator", "sbm"},
                     {"n", sbm.n},
                     {"k", sbm.k},
                     {"seed", sbm.seed},
                     {"diag_range", {sbm.diag_range.first, sbm.diag_range.second}},
                     {"offdiag_range", {sbm.offdiag_range.first, sbm.offdiag_range.second}}});
    } else if (*fit_cmd) {
      const Graph g = read_edge_list(graph_path, {one_based ? 1 : 0});
      const Model model = parse_model(model_name);
      FitConfig cfg = config_for(model, k, seed, parse_assortativity_mode(mode_name));
      cfg.solver.tol = tol;
      const auto results = multi_start(g, cfg, runs, threads);
      const json out = fit_json(results.front(), results, model, graph_path);
      if (fit_out.empty()) {
        std::cout << out.dump(2) << '\n';
      } else {
        std::ofstream f(fit_out);
        if (!f) throw std::runtime_error("cannot write " + fit_out);
        f << out.dump(2) << '\n';
        std::cout << "log_likelihood " << results.front().log_likelihood
                  << "\nassortativity " << out["assortativity"].get<std::string>()
                  << "\nblock_sizes " << out["block_sizes"].dump() << '\n';
      }
      if (!labels_out.empty()) write_labels(labels_out, results.front().partition);
    } else if (*eval_cmd) {
      const auto pred = read_labels(pred_path);
      const auto truth = read_labels(truth_path);
      std::printf("%.6f\n", nmi(pred, truth));
    } else if (*bench_cmd) {
      json plan_json = json::object();
      if (!plan_path.empty()) {
        std::ifstream in(plan_path);
        plan_json = json::parse(in);
      }
      plan_json["kind"] = bench_kind;
      const ExperimentPlan plan = plan_from_json(plan_json);
      if (plan.kind == ExperimentKind::real_network && plan.graph.empty()) {
        throw std::invalid_argument("real-network plans need a \"graph\" path");
      }
      run_plan(plan, bench_out);
      std::cout << "results in " << bench_out << '\n';
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
