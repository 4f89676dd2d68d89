#include "acsbm/benchmark.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include "acsbm/generators.hpp"
#include "acsbm/io.hpp"
#include "acsbm/metrics.hpp"
#include "acsbm/parallel.hpp"

namespace acsbm {
namespace {

constexpr double kAssortativeTol = 1e-6;

std::string fmt_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void require_valid(const ExperimentPlan& plan) {
  if (plan.runs < 1) throw std::invalid_argument("plan.runs must be >= 1");
  if (plan.models.empty()) throw std::invalid_argument("plan has no models");
  if (plan.k < 1) throw std::invalid_argument("plan.k must be >= 1");
}

struct Instance {
  PlantedGraph planted;
  double ratio = 0.0;
};

std::vector<RunRecord> fit_instances(const ExperimentPlan& plan,
                                     const std::vector<Instance>& instances) {
  const std::size_t per_instance = plan.models.size() * plan.runs;
  std::vector<RunRecord> rows(instances.size() * per_instance);
  const int threads = plan.threads > 0 ? plan.threads : default_thread_count();
  parallel_for(rows.size(), threads, [&](std::size_t task) {
    const auto inst = static_cast<int>(task / per_instance);
    const std::size_t rest = task % per_instance;
    const Model model = plan.models[rest / plan.runs];
    const auto run = static_cast<int>(rest % plan.runs);
    const Instance& instance = instances[inst];

    FitConfig cfg = config_for(
        model, plan.k,
        plan.fit_seed + static_cast<std::uint64_t>(inst) * plan.runs + run,
        plan.ac_mode);
    cfg.solver = plan.solver;
    const FitResult res = fit(instance.planted.graph, cfg);

    RunRecord& row = rows[task];
    row.instance = inst;
    row.ratio = instance.ratio;
    row.model = model;
    row.run = run;
    row.fit_seed = cfg.seed;
    row.nmi = nmi(res.partition, instance.planted.truth);
    row.log_likelihood = res.log_likelihood;
    row.modularity = res.modularity;
    row.objective = res.objective;
    row.assortative_count =
        count_assortative_communities(res.omega, kAssortativeTol);
    row.level = assortativity_level(res.omega, kAssortativeTol);
    row.sweeps = res.sweeps;
    row.constrained_solves = res.constrained_solves;
    row.partition = res.partition.assignment();
  });
  return rows;
}

std::pair<double, double> pair_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 2) {
    throw std::invalid_argument("expected a two-element range");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

}  // namespace

ExperimentKind parse_experiment_kind(const std::string& name) {
  if (name == "ppm") return ExperimentKind::ppm_sweep;
  if (name == "sbm") return ExperimentKind::sbm_ensemble;
  if (name == "real") return ExperimentKind::real_network;
  throw std::invalid_argument("unknown experiment kind '" + name + "'");
}

std::string to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::ppm_sweep:
      return "ppm";
    case ExperimentKind::sbm_ensemble:
      return "sbm";
    case ExperimentKind::real_network:
      return "real";
  }
  return "ppm";
}

ExperimentPlan plan_from_json(const nlohmann::json& j) {
  ExperimentPlan plan;
  if (j.contains("kind")) plan.kind = parse_experiment_kind(j["kind"].get<std::string>());
  if (j.contains("models")) {
    plan.models.clear();
    for (const auto& m : j["models"]) plan.models.push_back(parse_model(m.get<std::string>()));
  }
  if (j.contains("ac_mode")) {
    plan.ac_mode = parse_assortativity_mode(j["ac_mode"].get<std::string>());
  }
  plan.runs = j.value("runs", plan.runs);
  plan.instance_seed = j.value("instance_seed", plan.instance_seed);
  plan.fit_seed = j.value("fit_seed", plan.fit_seed);
  plan.n = j.value("n", plan.n);
  plan.k = j.value("k", plan.k);
  plan.avg_degree = j.value("avg_degree", plan.avg_degree);
  if (j.contains("ratios")) plan.ratios = j["ratios"].get<std::vector<double>>();
  plan.datasets = j.value("datasets", plan.datasets);
  if (j.contains("diag_range")) plan.diag_range = pair_from_json(j["diag_range"]);
  if (j.contains("offdiag_range")) plan.offdiag_range = pair_from_json(j["offdiag_range"]);
  plan.quantile = j.value("quantile", plan.quantile);
  if (j.contains("graph")) plan.graph = j["graph"].get<std::string>();
  plan.id_offset = j.value("id_offset", plan.id_offset);
  plan.solver.tol = j.value("tol", plan.solver.tol);
  plan.threads = j.value("threads", plan.threads);
  require_valid(plan);
  return plan;
}

nlohmann::json to_json(const ExperimentPlan& plan) {
  nlohmann::json models = nlohmann::json::array();
  for (Model m : plan.models) models.push_back(std::string(to_string(m)));
  return {
      {"kind", to_string(plan.kind)},
      {"models", models},
      {"ac_mode", std::string(to_string(plan.ac_mode))},
      {"runs", plan.runs},
      {"instance_seed", plan.instance_seed},
      {"fit_seed", plan.fit_seed},
      {"n", plan.n},
      {"k", plan.k},
      {"avg_degree", plan.avg_degree},
      {"ratios", plan.ratios},
      {"datasets", plan.datasets},
      {"diag_range", {plan.diag_range.first, plan.diag_range.second}},
      {"offdiag_range", {plan.offdiag_range.first, plan.offdiag_range.second}},
      {"quantile", plan.quantile},
      {"graph", plan.graph.string()},
      {"id_offset", plan.id_offset},
      {"tol", plan.solver.tol},
  };
}

std::vector<RunRecord> run_ppm_sweep(const ExperimentPlan& plan) {
  require_valid(plan);
  std::vector<Instance> instances;
  for (std::size_t i = 0; i < plan.ratios.size(); ++i) {
    PpmSpec spec;
    spec.n = plan.n;
    spec.k = plan.k;
    spec.avg_degree = plan.avg_degree;
    spec.ratio = plan.ratios[i];
    spec.seed = plan.instance_seed + i;
    instances.push_back({generate_ppm(spec), plan.ratios[i]});
  }
  return fit_instances(plan, instances);
}

std::vector<RunRecord> run_sbm_ensemble(const ExperimentPlan& plan) {
  require_valid(plan);
  std::vector<Instance> instances;
  for (int d = 0; d < plan.datasets; ++d) {
    SbmSpec spec;
    spec.n = plan.n;
    spec.k = plan.k;
    spec.diag_range = plan.diag_range;
    spec.offdiag_range = plan.offdiag_range;
    spec.seed = plan.instance_seed + d;
    instances.push_back({generate_sbm(spec), 0.0});
  }
  return fit_instances(plan, instances);
}

double median(std::vector<double> values) {
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  return values.size() % 2 == 1 ? values[mid]
                                 : 0.5 * (values[mid - 1] + values[mid]);
}

std::vector<GroupSummary> summarize(const std::vector<RunRecord>& rows,
                                    const std::vector<Model>& models,
                                    double quantile) {
  int instances = 0;
  for (const auto& r : rows) instances = std::max(instances, r.instance + 1);
  std::vector<GroupSummary> out;
  for (int inst = 0; inst < instances; ++inst) {
    for (Model model : models) {
      std::vector<const RunRecord*> group;
      for (const auto& r : rows) {
        if (r.instance == inst && r.model == model) group.push_back(&r);
      }
      if (group.empty()) continue;
      GroupSummary s;
      s.instance = inst;
      s.ratio = group.front()->ratio;
      s.model = model;
      s.runs = static_cast<int>(group.size());
      std::vector<double> nmis;
      for (const RunRecord* r : group) {
        nmis.push_back(r->nmi);
        s.mean_nmi += r->nmi;
        s.mean_assortative += r->assortative_count;
        if (r->nmi >= 0.9) s.near_perfect += 1.0;
      }
      s.mean_nmi /= s.runs;
      s.mean_assortative /= s.runs;
      s.near_perfect /= s.runs;
      s.median_nmi = median(nmis);

      std::stable_sort(group.begin(), group.end(),
                       [](const RunRecord* a, const RunRecord* b) {
                         return a->objective > b->objective;
                       });
      const auto top = std::clamp<std::size_t>(
          static_cast<std::size_t>(std::ceil(quantile * s.runs)), 1, group.size());
      for (std::size_t t = 0; t < top; ++t) s.top_mean_nmi += group[t]->nmi;
      s.top_mean_nmi /= static_cast<double>(top);
      out.push_back(s);
    }
  }
  return out;
}

void write_runs_csv(std::ostream& out, const std::vector<RunRecord>& rows) {
  out << "instance,ratio,model,run,fit_seed,nmi,loglik,modularity,objective,"
         "assortative_count,level,sweeps,constrained_solves,partition\n";
  for (const RunRecord& r : rows) {
    out << r.instance << ',' << fmt_double(r.ratio) << ',' << to_string(r.model)
        << ',' << r.run << ',' << r.fit_seed << ',' << fmt_double(r.nmi) << ','
        << fmt_double(r.log_likelihood) << ',' << fmt_double(r.modularity)
        << ',' << fmt_double(r.objective) << ',' << r.assortative_count << ','
        << to_string(r.level) << ',' << r.sweeps << ',' << r.constrained_solves
        << ',';
    for (std::size_t i = 0; i < r.partition.size(); ++i) {
      if (i) out << ' ';
      out << r.partition[i];
    }
    out << '\n';
  }
}

void write_summary_csv(std::ostream& out,
                       const std::vector<GroupSummary>& groups) {
  out << "instance,ratio,model,runs,mean_nmi,median_nmi,near_perfect,"
         "top_mean_nmi,mean_assortative\n";
  for (const GroupSummary& s : groups) {
    out << s.instance << ',' << fmt_double(s.ratio) << ',' << to_string(s.model)
        << ',' << s.runs << ',' << fmt_double(s.mean_nmi) << ','
        << fmt_double(s.median_nmi) << ',' << fmt_double(s.near_perfect) << ','
        << fmt_double(s.top_mean_nmi) << ',' << fmt_double(s.mean_assortative)
        << '\n';
  }
}

std::vector<RealReport> run_real(const ExperimentPlan& plan, const Graph& g) {
  require_valid(plan);
  std::vector<RealReport> reports;
  for (Model model : plan.models) {
    FitConfig cfg = config_for(model, plan.k, plan.fit_seed, plan.ac_mode);
    cfg.solver = plan.solver;
    auto results = multi_start(g, cfg, plan.runs, plan.threads);
    RealReport rep;
    rep.model = model;
    rep.best = std::move(results.front());
    rep.diag_min = rep.best.omega.min_diagonal();
    rep.offdiag_max = rep.best.omega.max_off_diagonal();
    rep.level = assortativity_level(rep.best.omega, kAssortativeTol);
    rep.block_sizes = rep.best.partition.block_sizes();
    rep.nonempty_blocks = rep.best.partition.num_nonempty_blocks();
    reports.push_back(std::move(rep));
  }
  return reports;
}

nlohmann::json to_json(const RealReport& report) {
  const FitResult& best = report.best;
  std::vector<std::vector<double>> omega(best.omega.size());
  for (BlockId r = 0; r < best.omega.size(); ++r) {
    for (BlockId s = 0; s < best.omega.size(); ++s) {
      omega[r].push_back(best.omega(r, s));
    }
  }
  return {
      {"model", std::string(to_string(report.model))},
      {"seed", best.seed},
      {"log_likelihood", best.log_likelihood},
      {"modularity", best.modularity},
      {"omega", omega},
      {"lambda", best.lambda},
      {"diag_min", report.diag_min},
      {"offdiag_max", report.offdiag_max},
      {"assortativity", std::string(to_string(report.level))},
      {"block_sizes", report.block_sizes},
      {"nonempty_blocks", report.nonempty_blocks},
      {"partition", best.partition.assignment()},
  };
}

void run_plan(const ExperimentPlan& plan, const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  auto open = [&](const char* name) {
    std::ofstream out(out_dir / name);
    if (!out) throw std::runtime_error("cannot write " + (out_dir / name).string());
    return out;
  };
  nlohmann::json manifest = {{"plan", to_json(plan)}};
  if (plan.kind == ExperimentKind::real_network) {
    const Graph g = read_edge_list(plan.graph, {plan.id_offset});
    nlohmann::json reports = nlohmann::json::array();
    for (const auto& rep : run_real(plan, g)) reports.push_back(to_json(rep));
    open("real.json") << reports.dump(2) << '\n';
    manifest["outputs"] = {"real.json"};
  } else {
    const auto rows = plan.kind == ExperimentKind::ppm_sweep
                          ? run_ppm_sweep(plan)
                          : run_sbm_ensemble(plan);
    auto runs = open("runs.csv");
    write_runs_csv(runs, rows);
    auto summary = open("summary.csv");
    write_summary_csv(summary, summarize(rows, plan.models, plan.quantile));
    manifest["outputs"] = {"runs.csv", "summary.csv"};
    manifest["rows"] = rows.size();
  }
  open("manifest.json") << manifest.dump(2) << '\n';
}

}  // namespace acsbm
