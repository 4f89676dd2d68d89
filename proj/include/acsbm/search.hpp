#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "acsbm/block_stats.hpp"
#include "acsbm/graph.hpp"
#include "acsbm/likelihood.hpp"
#include "acsbm/solver.hpp"

namespace acsbm {

enum class Objective { likelihood, modularity };
enum class ScanOrder { ascending, shuffled };

// The three fitted models of the experiments.
enum class Model { dc_sbm, ac_dc_sbm, modularity };

std::string_view to_string(Model model);
// Accepts "dc-sbm", "ac-dc-sbm", "modularity".
Model parse_model(std::string_view name);

struct FitConfig {
  BlockId k = 2;
  Objective objective = Objective::likelihood;
  AssortativityMode mode = AssortativityMode::none;
  std::uint64_t seed = 0;
  int max_sweeps = 1000;
  SolverConfig solver;
  ScanOrder scan = ScanOrder::shuffled;
};

// dc-sbm: unconstrained likelihood. ac-dc-sbm: likelihood under `mode`
// (strong unless overridden). modularity: fixed-K modularity search.
FitConfig config_for(Model model, BlockId k, std::uint64_t seed,
                     AssortativityMode ac_mode = AssortativityMode::strong);

struct FitResult {
  Partition partition;
  OmegaMatrix omega;
  double lambda = 0.0;
  // DC-SBM log-likelihood at (omega, partition), full Poisson form.
  double log_likelihood = 0.0;
  double modularity = 0.0;
  // Value the search maximized: log_likelihood or modularity.
  double objective = 0.0;
  // Objective after initialization and after every accepted move.
  std::vector<double> trace;
  int sweeps = 0;
  int accepted_moves = 0;
  int constrained_solves = 0;
  int filtered_moves = 0;
  bool hit_sweep_limit = false;
  std::uint64_t seed = 0;
  AssortativityMode mode = AssortativityMode::none;
  Objective fitted_objective = Objective::likelihood;
};

// Change of profile_log_likelihood when node i moves to block b, in
// O(K + deg(i)). std::nullopt when the move would empty i's block.
std::optional<double> delta_relocation(const BlockStats& stats, const Graph& g,
                                       const Partition& p, NodeId i, BlockId b);

// Uniform random labels; empty blocks are then filled by moving random nodes
// out of blocks holding at least two. Requires 1 <= k <= n.
template <class Rng>
Partition random_partition(NodeId n, BlockId k, Rng& rng);

// Relocation local search: visits every (node, block) pair each sweep and
// applies a move as soon as it strictly improves the objective. Under an
// assortativity mode the unconstrained profile value screens candidates
// first; only candidates that improve on it but violate the constraints pay
// for a constrained solve. Stops after a sweep without improvement.
FitResult fit(const Graph& g, const FitConfig& cfg);

// Independent fits with seeds cfg.seed + 0 .. runs - 1, sorted by objective
// (descending, ties by seed). threads = 0 uses default_thread_count().
std::vector<FitResult> multi_start(const Graph& g, const FitConfig& cfg,
                                   int runs, int threads = 0);

// Leading ceil(fraction * size) results (at least one) of a sorted list.
std::span<const FitResult> top_fraction(std::span<const FitResult> sorted,
                                        double fraction);

// ACSBM_THREADS if set and positive, otherwise hardware concurrency.
int default_thread_count();

}  // namespace acsbm

#include <random>

namespace acsbm {

template <class Rng>
Partition random_partition(NodeId n, BlockId k, Rng& rng) {
  std::uniform_int_distribution<BlockId> label(0, k - 1);
  std::vector<BlockId> assign(n);
  for (auto& r : assign) r = label(rng);
  Partition p(k, std::move(assign));
  std::uniform_int_distribution<NodeId> node(0, n - 1);
  for (BlockId r = 0; r < k; ++r) {
    while (p.block_size(r) == 0) {
      const NodeId i = node(rng);
      if (p.block_size(p[i]) >= 2) p.move(i, r);
    }
  }
  return p;
}

}  // namespace acsbm
