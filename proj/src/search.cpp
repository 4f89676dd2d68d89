#include "acsbm/search.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>

#include "acsbm/parallel.hpp"

namespace acsbm {

std::string_view to_string(Model model) {
  switch (model) {
    case Model::dc_sbm:
      return "dc-sbm";
    case Model::ac_dc_sbm:
      return "ac-dc-sbm";
    case Model::modularity:
      return "modularity";
  }
  return "dc-sbm";
}

Model parse_model(std::string_view name) {
  if (name == "dc-sbm") return Model::dc_sbm;
  if (name == "ac-dc-sbm") return Model::ac_dc_sbm;
  if (name == "modularity") return Model::modularity;
  throw std::invalid_argument("unknown model '" + std::string(name) + "'");
}

FitConfig config_for(Model model, BlockId k, std::uint64_t seed,
                     AssortativityMode ac_mode) {
  FitConfig cfg;
  cfg.k = k;
  cfg.seed = seed;
  switch (model) {
    case Model::dc_sbm:
      break;
    case Model::ac_dc_sbm:
      cfg.mode = ac_mode;
      break;
    case Model::modularity:
      cfg.objective = Objective::modularity;
      break;
  }
  return cfg;
}

namespace {

// Post-move values of the block counts touched by relocating a node with
// links `d` from block a to block b.
struct MovedCounts {
  Weight aa, bb, ab;
};

MovedCounts moved_counts(const BlockStats& stats, const NodeLinks& links,
                         BlockId a, BlockId b) {
  const auto& d = links.to_block;
  return {stats.m(a, a) - 2 * d[a] - links.self,
          stats.m(b, b) + 2 * d[b] + links.self,
          stats.m(a, b) - d[b] + d[a]};
}

double profile_delta(const BlockStats& stats, const NodeLinks& links,
                     Weight degree, BlockId a, BlockId b) {
  const auto& d = links.to_block;
  const auto f = [](Weight x) { return xlogx(static_cast<double>(x)); };
  double before = 0.0;
  double after = 0.0;
  for (BlockId s = 0; s < stats.num_blocks(); ++s) {
    if (s == a || s == b) continue;
    before += 2.0 * (f(stats.m(a, s)) + f(stats.m(b, s)));
    after += 2.0 * (f(stats.m(a, s) - d[s]) + f(stats.m(b, s) + d[s]));
  }
  const MovedCounts moved = moved_counts(stats, links, a, b);
  before += f(stats.m(a, a)) + f(stats.m(b, b)) + 2.0 * f(stats.m(a, b));
  after += f(moved.aa) + f(moved.bb) + 2.0 * f(moved.ab);
  const double kappa_term = f(stats.kappa(a) - degree) +
                            f(stats.kappa(b) + degree) - f(stats.kappa(a)) -
                            f(stats.kappa(b));
  return 0.5 * (after - before) - kappa_term;
}

double modularity_delta(const BlockStats& stats, const NodeLinks& links,
                        Weight degree, BlockId a, BlockId b) {
  const double two_m = static_cast<double>(stats.two_m());
  const MovedCounts moved = moved_counts(stats, links, a, b);
  const double internal =
      static_cast<double>((moved.aa + moved.bb) - (stats.m(a, a) + stats.m(b, b)));
  const auto sq = [](Weight x) {
    return static_cast<double>(x) * static_cast<double>(x);
  };
  const double null_model = sq(stats.kappa(a) - degree) +
                            sq(stats.kappa(b) + degree) - sq(stats.kappa(a)) -
                            sq(stats.kappa(b));
  return internal / two_m - null_model / (two_m * two_m);
}

// Minimum gain for a move to count as an improvement; absorbs rounding in the
// incremental evaluation so that ties never cycle.
double improvement_margin(double value) {
  return 1e-11 * (1.0 + std::abs(value));
}

}  // namespace

std::optional<double> delta_relocation(const BlockStats& stats, const Graph& g,
                                       const Partition& p, NodeId i,
                                       BlockId b) {
  const BlockId a = p[i];
  if (a == b) throw std::invalid_argument("relocation target equals source");
  if (p.block_size(a) <= 1) return std::nullopt;
  NodeLinks links;
  node_links(g, p, i, links);
  return profile_delta(stats, links, g.degree(i), a, b);
}

FitResult fit(const Graph& g, const FitConfig& cfg) {
  const NodeId n = g.num_nodes();
  if (cfg.k < 1) throw std::invalid_argument("k must be >= 1");
  if (cfg.k > n) throw std::invalid_argument("k exceeds the number of nodes");
  if (g.total_weight() <= 0) throw std::invalid_argument("graph has no edges");

  const bool by_likelihood = cfg.objective == Objective::likelihood;
  const AssortativityMode mode =
      by_likelihood ? cfg.mode : AssortativityMode::none;

  std::mt19937_64 rng(cfg.seed);
  FitResult res;
  res.seed = cfg.seed;
  res.mode = mode;
  res.fitted_objective = cfg.objective;
  res.partition = random_partition(n, cfg.k, rng);
  Partition& p = res.partition;
  BlockStats stats = block_stats(g, p);

  const double offset = profile_offset(g.two_m());
  double profile = profile_log_likelihood(stats);
  double value = 0.0;
  if (by_likelihood) {
    OmegaSolution sol = solve_constrained(stats, mode, cfg.solver);
    if (mode != AssortativityMode::none) ++res.constrained_solves;
    res.omega = std::move(sol.omega);
    res.lambda = sol.lambda;
    value = sol.objective;
  } else {
    value = modularity(stats);
  }
  res.trace.push_back(value);

  std::vector<NodeId> order(n);
  std::iota(order.begin(), order.end(), 0);
  NodeLinks links;
  BlockStats candidate;

  for (res.sweeps = 0; res.sweeps < cfg.max_sweeps;) {
    ++res.sweeps;
    if (cfg.scan == ScanOrder::shuffled) {
      std::shuffle(order.begin(), order.end(), rng);
    }
    bool improved = false;
    for (const NodeId i : order) {
      // A node's links depend only on its neighbors' blocks, so they stay
      // valid while i itself moves.
      node_links(g, p, i, links);
      const Weight k_i = g.degree(i);
      for (BlockId r = 0; r < cfg.k; ++r) {
        const BlockId a = p[i];
        if (r == a) continue;
        if (by_likelihood && p.block_size(a) <= 1) break;

        const double margin = improvement_margin(value);
        if (!by_likelihood) {
          const double gain = modularity_delta(stats, links, k_i, a, r);
          if (!(gain > margin)) continue;
          stats.relocate(links, k_i, a, r);
          p.move(i, r);
          value = modularity(stats);
          res.trace.push_back(value);
          ++res.accepted_moves;
          improved = true;
          continue;
        }

        const double unconstrained =
            profile + profile_delta(stats, links, k_i, a, r) + offset;
        if (!(unconstrained > value + margin)) {
          ++res.filtered_moves;
          continue;
        }
        candidate = stats;
        candidate.relocate(links, k_i, a, r);
        OmegaMatrix mle = omega_mle(candidate);
        double new_value = 0.0;
        double new_lambda = 0.0;
        if (is_feasible(mle, mode, 0.0)) {
          new_value = profile_log_likelihood(candidate) + offset;
          if (mode == AssortativityMode::strong) {
            new_lambda = cfg.k > 1 ? std::max(0.0, mle.max_off_diagonal())
                                   : mle.min_diagonal();
          }
        } else {
          OmegaSolution sol = solve_constrained(candidate, mode, cfg.solver);
          ++res.constrained_solves;
          new_value = sol.objective;
          new_lambda = sol.lambda;
          mle = std::move(sol.omega);
        }
        if (!(new_value > value + margin)) continue;

        stats = candidate;
        p.move(i, r);
        profile = profile_log_likelihood(stats);
        res.omega = std::move(mle);
        res.lambda = new_lambda;
        value = new_value;
        res.trace.push_back(value);
        ++res.accepted_moves;
        improved = true;
      }
    }
    if (!improved) break;
    if (res.sweeps == cfg.max_sweeps) res.hit_sweep_limit = true;
  }

  res.modularity = modularity(stats);
  if (by_likelihood) {
    res.log_likelihood = log_likelihood(stats, res.omega);
    res.objective = res.log_likelihood;
  } else {
    res.omega = omega_mle(stats);
    res.log_likelihood = log_likelihood(stats, res.omega);
    res.objective = res.modularity;
  }
  return res;
}

std::vector<FitResult> multi_start(const Graph& g, const FitConfig& cfg,
                                   int runs, int threads) {
  if (runs < 1) throw std::invalid_argument("runs must be >= 1");
  std::vector<FitResult> results(runs);
  parallel_for(results.size(), threads > 0 ? threads : default_thread_count(),
               [&](std::size_t r) {
                 FitConfig run_cfg = cfg;
                 run_cfg.seed = cfg.seed + r;
                 results[r] = fit(g, run_cfg);
               });
  std::stable_sort(results.begin(), results.end(),
                   [](const FitResult& x, const FitResult& y) {
                     return x.objective > y.objective;
                   });
  return results;
}

std::span<const FitResult> top_fraction(std::span<const FitResult> sorted,
                                        double fraction) {
  if (sorted.empty()) return sorted;
  const auto count = static_cast<std::size_t>(
      std::ceil(std::clamp(fraction, 0.0, 1.0) * static_cast<double>(sorted.size())));
  return sorted.first(std::clamp<std::size_t>(count, 1, sorted.size()));
}

int default_thread_count() {
  if (const char* env = std::getenv("ACSBM_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace acsbm
