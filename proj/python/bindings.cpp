#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "acsbm/benchmark.hpp"
#include "acsbm/block_stats.hpp"
#include "acsbm/generators.hpp"
#include "acsbm/io.hpp"
#include "acsbm/likelihood.hpp"
#include "acsbm/metrics.hpp"
#include "acsbm/search.hpp"
#include "acsbm/solver.hpp"

namespace py = pybind11;
using namespace acsbm;

namespace {

std::vector<std::vector<double>> rows(const OmegaMatrix& w) {
  std::vector<std::vector<double>> out(w.size(), std::vector<double>(w.size()));
  for (BlockId r = 0; r < w.size(); ++r) {
    for (BlockId s = 0; s < w.size(); ++s) out[r][s] = w(r, s);
  }
  return out;
}

Graph make_graph(NodeId n, const std::vector<std::tuple<NodeId, NodeId, Weight>>& edges) {
  std::vector<Edge> es;
  es.reserve(edges.size());
  for (const auto& [u, v, w] : edges) es.push_back({u, v, w});
  return Graph(n, std::move(es));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Assortative-constrained degree-corrected block models";

  py::enum_<AssortativityMode>(m, "AssortativityMode")
      .value("none", AssortativityMode::none)
      .value("weak", AssortativityMode::weak)
      .value("strong", AssortativityMode::strong);
  py::enum_<Model>(m, "Model")
      .value("dc_sbm", Model::dc_sbm)
      .value("ac_dc_sbm", Model::ac_dc_sbm)
      .value("modularity", Model::modularity);

  py::class_<Graph>(m, "Graph")
      .def(py::init(&make_graph), py::arg("n"), py::arg("edges"),
           "Edges are (u, v) or (u, v, weight) tuples; duplicates are merged.")
      .def(py::init([](NodeId n, const std::vector<std::pair<NodeId, NodeId>>& edges) {
             std::vector<Edge> es;
             for (const auto& [u, v] : edges) es.push_back({u, v, 1});
             return Graph(n, std::move(es));
           }),
           py::arg("n"), py::arg("edges"))
      .def_property_readonly("num_nodes", &Graph::num_nodes)
      .def_property_readonly("total_weight", &Graph::total_weight)
      .def_property_readonly("two_m", &Graph::two_m)
      .def_property_readonly("degrees", [](const Graph& g) {
        return std::vector<Weight>(g.degrees().begin(), g.degrees().end());
      })
      .def_property_readonly("edges", [](const Graph& g) {
        std::vector<std::tuple<NodeId, NodeId, Weight>> out;
        for (const Edge& e : g.edges()) out.emplace_back(e.u, e.v, e.w);
        return out;
      });

  m.def("read_edge_list", [](const std::filesystem::path& p, NodeId offset) {
    return read_edge_list(p, {offset});
  }, py::arg("path"), py::arg("id_offset") = 0);
  m.def("write_edge_list", [](const std::filesystem::path& p, const Graph& g) {
    write_edge_list(p, g);
  }, py::arg("path"), py::arg("graph"));

  py::class_<OmegaSolution>(m, "OmegaSolution")
      .def_property_readonly("omega", [](const OmegaSolution& s) { return rows(s.omega); })
      .def_readonly("lambda_", &OmegaSolution::lambda)
      .def_readonly("objective", &OmegaSolution::objective)
      .def_readonly("kkt_residual", &OmegaSolution::kkt_residual)
      .def_readonly("iterations", &OmegaSolution::iterations)
      .def_readonly("converged", &OmegaSolution::converged);

  auto stats_of = [](const Graph& g, const std::vector<BlockId>& labels, BlockId k) {
    return block_stats(g, partition_from_labels(labels, k));
  };
  m.def("block_counts", [=](const Graph& g, const std::vector<BlockId>& labels, BlockId k) {
    const BlockStats s = stats_of(g, labels, k);
    const BlockId kk = s.num_blocks();
    std::vector<std::vector<Weight>> out(kk, std::vector<Weight>(kk));
    for (BlockId r = 0; r < kk; ++r) {
      for (BlockId c = 0; c < kk; ++c) out[r][c] = s.m(r, c);
    }
    return out;
  }, py::arg("graph"), py::arg("labels"), py::arg("k") = 0);
  m.def("log_likelihood", [=](const Graph& g, const std::vector<BlockId>& labels, BlockId k) {
    const BlockStats s = stats_of(g, labels, k);
    return log_likelihood(s, omega_mle(s));
  }, py::arg("graph"), py::arg("labels"), py::arg("k") = 0,
     "Log-likelihood at the unconstrained maximum-likelihood omega.");
  m.def("modularity", [=](const Graph& g, const std::vector<BlockId>& labels, BlockId k) {
    return modularity(stats_of(g, labels, k));
  }, py::arg("graph"), py::arg("labels"), py::arg("k") = 0);
  m.def("solve_constrained",
        [=](const Graph& g, const std::vector<BlockId>& labels, AssortativityMode mode,
            BlockId k, double tol) {
          SolverConfig cfg;
          cfg.tol = tol;
          return solve_constrained(stats_of(g, labels, k), mode, cfg);
        },
        py::arg("graph"), py::arg("labels"), py::arg("mode") = AssortativityMode::strong,
        py::arg("k") = 0, py::arg("tol") = 1e-8);
  m.def("lambda_profile_oracle",
        [=](const Graph& g, const std::vector<BlockId>& labels, BlockId k) {
          return lambda_profile_oracle(stats_of(g, labels, k));
        },
        py::arg("graph"), py::arg("labels"), py::arg("k") = 0);

  py::class_<FitResult>(m, "FitResult")
      .def_property_readonly("labels", [](const FitResult& r) { return r.partition.assignment(); })
      .def_property_readonly("block_sizes", [](const FitResult& r) { return r.partition.block_sizes(); })
      .def_property_readonly("omega", [](const FitResult& r) { return rows(r.omega); })
      .def_readonly("lambda_", &FitResult::lambda)
      .def_readonly("log_likelihood", &FitResult::log_likelihood)
      .def_readonly("modularity", &FitResult::modularity)
      .def_readonly("objective", &FitResult::objective)
      .def_readonly("trace", &FitResult::trace)
      .def_readonly("sweeps", &FitResult::sweeps)
      .def_readonly("accepted_moves", &FitResult::accepted_moves)
      .def_readonly("constrained_solves", &FitResult::constrained_solves)
      .def_readonly("filtered_moves", &FitResult::filtered_moves)
      .def_readonly("seed", &FitResult::seed)
      .def_readonly("mode", &FitResult::mode);

  auto config = [](BlockId k, Model model, AssortativityMode mode, std::uint64_t seed,
                   int max_sweeps) {
    FitConfig cfg = config_for(model, k, seed, mode);
    cfg.max_sweeps = max_sweeps;
    return cfg;
  };
  m.def("fit",
        [=](const Graph& g, BlockId k, Model model, AssortativityMode mode, std::uint64_t seed,
            int max_sweeps) {
          const FitConfig cfg = config(k, model, mode, seed, max_sweeps);
          py::gil_scoped_release release;
          return fit(g, cfg);
        },
        py::arg("graph"), py::arg("k"), py::arg("model") = Model::ac_dc_sbm,
        py::arg("mode") = AssortativityMode::strong, py::arg("seed") = 0,
        py::arg("max_sweeps") = 1000);
  m.def("multi_start",
        [=](const Graph& g, BlockId k, int runs, Model model, AssortativityMode mode,
            std::uint64_t seed, int threads) {
          const FitConfig cfg = config(k, model, mode, seed, 1000);
          py::gil_scoped_release release;
          return multi_start(g, cfg, runs, threads);
        },
        py::arg("graph"), py::arg("k"), py::arg("runs"), py::arg("model") = Model::ac_dc_sbm,
        py::arg("mode") = AssortativityMode::strong, py::arg("seed") = 0, py::arg("threads") = 0,
        "Independent fits with seeds seed..seed+runs-1, best first.");

  py::class_<PlantedGraph>(m, "PlantedGraph")
      .def_readonly("graph", &PlantedGraph::graph)
      .def_property_readonly("truth", [](const PlantedGraph& p) { return p.truth.assignment(); })
      .def_property_readonly("omega", [](const PlantedGraph& p) { return rows(p.omega); });
  m.def("generate_ppm",
        [](NodeId n, BlockId k, double avg_degree, double ratio, std::uint64_t seed) {
          return generate_ppm({n, k, avg_degree, ratio, seed});
        },
        py::arg("n") = 100, py::arg("k") = 4, py::arg("avg_degree") = 16.0,
        py::arg("ratio") = 0.25, py::arg("seed") = 0);
  m.def("generate_sbm",
        [](NodeId n, BlockId k, std::pair<double, double> diag_range,
           std::pair<double, double> offdiag_range, std::uint64_t seed) {
          return generate_sbm({n, k, diag_range, offdiag_range, seed});
        },
        py::arg("n") = 100, py::arg("k") = 4, py::arg("diag_range") = std::pair{0.45, 0.55},
        py::arg("offdiag_range") = std::pair{0.0, 0.4}, py::arg("seed") = 0);

  m.def("nmi", [](const std::vector<BlockId>& a, const std::vector<BlockId>& b) {
    return nmi(a, b);
  }, py::arg("pred"), py::arg("truth"));
  m.def("count_assortative_communities", [](const std::vector<std::vector<double>>& w, double tol) {
    return count_assortative_communities(OmegaMatrix::from_rows(w), tol);
  }, py::arg("omega"), py::arg("tol") = 1e-6);
  m.def("is_feasible", [](const std::vector<std::vector<double>>& w, AssortativityMode mode,
                          double tol) {
    return is_feasible(OmegaMatrix::from_rows(w), mode, tol);
  }, py::arg("omega"), py::arg("mode"), py::arg("tol") = 1e-6);

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
}
