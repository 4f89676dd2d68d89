#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"

#include "acsbm/benchmark.hpp"
#include "acsbm/generators.hpp"
#include "acsbm/io.hpp"
#include "acsbm/metrics.hpp"
#include "test_support.hpp"

using namespace acsbm;

namespace {

ExperimentPlan small_plan(ExperimentKind kind) {
  ExperimentPlan plan;
  plan.kind = kind;
  plan.models = {Model::dc_sbm, Model::ac_dc_sbm, Model::modularity};
  plan.runs = 2;
  plan.n = 40;
  plan.k = 2;
  plan.avg_degree = 8.0;
  plan.ratios = {0.1, 0.5};
  plan.datasets = 2;
  plan.threads = 2;
  return plan;
}

std::string csv(const std::vector<RunRecord>& rows) {
  std::ostringstream out;
  write_runs_csv(out, rows);
  return out.str();
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

}  // namespace

TEST_SUITE("benchmark") {

TEST_CASE("one dataset with one run yields one row per model") {
  ExperimentPlan plan = small_plan(ExperimentKind::sbm_ensemble);
  plan.runs = 1;
  plan.datasets = 1;
  const auto rows = run_sbm_ensemble(plan);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].model == Model::dc_sbm);
  CHECK(rows[1].model == Model::ac_dc_sbm);
  CHECK(rows[2].model == Model::modularity);
  CHECK(rows[0].fit_seed == rows[1].fit_seed);
}

TEST_CASE("ppm sweep rows are ordered and reproducible") {
  const ExperimentPlan plan = small_plan(ExperimentKind::ppm_sweep);
  const auto a = run_ppm_sweep(plan);
  REQUIRE(a.size() == 2 * 3 * 2);
  CHECK(a.front().ratio == 0.1);
  CHECK(a.back().ratio == 0.5);
  ExperimentPlan serial = plan;
  serial.threads = 1;
  CHECK(csv(a) == csv(run_ppm_sweep(serial)));
}

TEST_CASE("persisted log-likelihoods re-verify from the partitions") {
  ExperimentPlan plan = small_plan(ExperimentKind::sbm_ensemble);
  const auto rows = run_sbm_ensemble(plan);
  std::istringstream in(csv(rows));
  std::string line;
  std::getline(in, line);
  CHECK(line.rfind("instance,ratio,model,run,fit_seed,nmi,loglik", 0) == 0);
  std::vector<PlantedGraph> graphs;
  for (int d = 0; d < plan.datasets; ++d) {
    SbmSpec spec;
    spec.n = plan.n;
    spec.k = plan.k;
    spec.seed = plan.instance_seed + d;
    graphs.push_back(generate_sbm(spec));
  }
  int checked = 0;
  while (std::getline(in, line)) {
    const auto fields = split(line, ',');
    REQUIRE(fields.size() == 14);
    const int instance = std::stoi(fields[0]);
    const Model model = parse_model(fields[2]);
    const double loglik = std::stod(fields[6]);
    std::vector<BlockId> labels;
    for (const auto& tok : split(fields[13], ' ')) labels.push_back(std::stoi(tok));
    const Partition p(plan.k, labels);
    const BlockStats s = block_stats(graphs[instance].graph, p);
    const AssortativityMode mode =
        model == Model::ac_dc_sbm ? AssortativityMode::strong : AssortativityMode::none;
    const double recomputed = solve_constrained(s, mode).objective;
    CHECK(std::abs(recomputed - loglik) <= 1e-9 * (1.0 + std::abs(loglik)));
    CHECK(std::stod(fields[5]) == doctest::Approx(nmi(p, graphs[instance].truth)));
    ++checked;
  }
  CHECK(checked == 2 * 3 * 2);
}

TEST_CASE("summaries") {
  CHECK(median({3.0, 1.0, 2.0}) == 2.0);
  CHECK(median({4.0, 1.0, 2.0, 3.0}) == 2.5);
  std::vector<RunRecord> rows(4);
  const double nmis[] = {0.2, 0.9, 0.5, 1.0};
  const double objectives[] = {-10.0, -5.0, -7.0, -1.0};
  for (int i = 0; i < 4; ++i) {
    rows[i].model = Model::ac_dc_sbm;
    rows[i].run = i;
    rows[i].nmi = nmis[i];
    rows[i].objective = objectives[i];
    rows[i].assortative_count = i;
  }
  const auto groups = summarize(rows, {Model::ac_dc_sbm}, 0.5);
  REQUIRE(groups.size() == 1);
  CHECK(groups[0].runs == 4);
  CHECK(groups[0].mean_nmi == doctest::Approx(0.65));
  CHECK(groups[0].median_nmi == doctest::Approx(0.7));
  CHECK(groups[0].near_perfect == doctest::Approx(0.5));
  CHECK(groups[0].top_mean_nmi == doctest::Approx(0.95));
  CHECK(groups[0].mean_assortative == doctest::Approx(1.5));
}

TEST_CASE("plan JSON") {
  const auto plan = plan_from_json(nlohmann::json::parse(R"({
    "kind": "sbm", "models": ["ac-dc-sbm", "modularity"], "runs": 3,
    "datasets": 4, "diag_range": [0.4, 0.6], "quantile": 0.2, "k": 3
  })"));
  CHECK(plan.kind == ExperimentKind::sbm_ensemble);
  CHECK(plan.models.size() == 2);
  CHECK(plan.runs == 3);
  CHECK(plan.k == 3);
  CHECK(plan.diag_range.second == 0.6);
  CHECK(plan.offdiag_range.second == 0.4);
  const auto again = plan_from_json(to_json(plan));
  CHECK(again.models == plan.models);
  CHECK(again.quantile == plan.quantile);
  CHECK_THROWS(plan_from_json(nlohmann::json::parse(R"({"runs": 0})")));
  CHECK_THROWS(plan_from_json(nlohmann::json::parse(R"({"kind": "lfr"})")));
  CHECK_THROWS(plan_from_json(nlohmann::json::parse(R"({"models": []})")));
}

TEST_CASE("run_plan writes byte-identical outputs for identical plans") {
  const auto dir = std::filesystem::temp_directory_path() / "acsbm_bench_test";
  std::filesystem::remove_all(dir);
  ExperimentPlan plan = small_plan(ExperimentKind::sbm_ensemble);
  run_plan(plan, dir / "a");
  run_plan(plan, dir / "b");
  auto slurp = [](const std::filesystem::path& p) {
    std::ifstream in(p);
    return std::string(std::istreambuf_iterator<char>(in), {});
  };
  for (const char* name : {"runs.csv", "summary.csv", "manifest.json"}) {
    CHECK(std::filesystem::exists(dir / "a" / name));
    CHECK(slurp(dir / "a" / name) == slurp(dir / "b" / name));
  }
  std::filesystem::remove_all(dir);
}

TEST_CASE("real-network report") {
  const auto dir = std::filesystem::temp_directory_path() / "acsbm_real_test";
  std::filesystem::create_directories(dir);
  write_edge_list(dir / "g.txt", generate_ppm({60, 3, 10.0, 0.3, 2}).graph);
  ExperimentPlan plan = small_plan(ExperimentKind::real_network);
  plan.k = 3;
  plan.runs = 4;
  plan.graph = dir / "g.txt";
  const auto reports = run_real(plan, read_edge_list(plan.graph));
  REQUIRE(reports.size() == 3);
  const RealReport& ac = reports[1];
  CHECK(ac.model == Model::ac_dc_sbm);
  CHECK(ac.level == AssortativityMode::strong);
  CHECK(ac.diag_min >= ac.offdiag_max - 1e-6);
  CHECK(ac.nonempty_blocks == 3);
  const auto j = to_json(ac);
  CHECK(j["assortativity"] == "strong");
  CHECK(j["block_sizes"].size() == 3);
  run_plan(plan, dir / "out");
  CHECK(std::filesystem::exists(dir / "out" / "real.json"));
  std::filesystem::remove_all(dir);
}

}  // TEST_SUITE
