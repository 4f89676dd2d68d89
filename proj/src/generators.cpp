#include "acsbm/generators.hpp"

#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace acsbm {
namespace {

std::vector<Edge> poisson_pairs(const Partition& truth, const OmegaMatrix& rate,
                                std::mt19937_64& rng) {
  std::vector<Edge> edges;
  const NodeId n = truth.num_nodes();
  for (NodeId i = 0; i < n; ++i) {
    for (NodeId j = i + 1; j < n; ++j) {
      const double mean = rate(truth[i], truth[j]);
      if (mean <= 0.0) continue;
      std::poisson_distribution<Weight> draw(mean);
      const Weight w = draw(rng);
      if (w > 0) edges.push_back({i, j, w});
    }
  }
  return edges;
}

void check_range(std::pair<double, double> range, const char* name) {
  if (range.first < 0.0 || range.second < range.first) {
    throw std::invalid_argument(std::string(name) +
                                " must satisfy 0 <= lo <= hi");
  }
}

}  // namespace

PpmRates ppm_rates(const PpmSpec& spec) {
  const double n = spec.n;
  const double k = spec.k;
  const double denom = (n / k - 1.0) + spec.ratio * n * (k - 1.0) / k;
  if (!(denom > 0.0)) throw std::invalid_argument("degenerate PPM rates");
  const double p_in = spec.avg_degree / denom;
  return {p_in, spec.ratio * p_in};
}

PlantedGraph generate_ppm(const PpmSpec& spec) {
  if (spec.k < 1 || spec.n < spec.k) {
    throw std::invalid_argument("PPM needs 1 <= k <= n");
  }
  if (spec.avg_degree < 0.0) throw std::invalid_argument("negative degree");
  if (spec.ratio < 0.0 || spec.ratio > 1.0) {
    throw std::invalid_argument("PPM ratio must lie in [0, 1]");
  }
  const PpmRates rates = ppm_rates(spec);

  std::vector<BlockId> assign;
  assign.reserve(spec.n);
  const NodeId base = spec.n / spec.k;
  const NodeId extra = spec.n % spec.k;
  for (BlockId r = 0; r < spec.k; ++r) {
    assign.insert(assign.end(), base + (r < extra ? 1 : 0), r);
  }
  Partition truth(spec.k, std::move(assign));
  OmegaMatrix rate(spec.k, rates.p_out);
  for (BlockId r = 0; r < spec.k; ++r) rate.set(r, r, rates.p_in);

  std::mt19937_64 rng(spec.seed);
  Graph g(spec.n, poisson_pairs(truth, rate, rng));
  return {std::move(g), std::move(truth), std::move(rate)};
}

PlantedGraph generate_sbm(const SbmSpec& spec) {
  if (spec.k < 1 || spec.n < 1) {
    throw std::invalid_argument("SBM needs k >= 1 and n >= 1");
  }
  check_range(spec.diag_range, "diag_range");
  check_range(spec.offdiag_range, "offdiag_range");

  std::mt19937_64 rng(spec.seed);
  auto uniform = [&rng](std::pair<double, double> range) {
    if (range.first == range.second) return range.first;
    return std::uniform_real_distribution<double>(range.first, range.second)(rng);
  };
  OmegaMatrix rate(spec.k);
  for (BlockId r = 0; r < spec.k; ++r) rate.set(r, r, uniform(spec.diag_range));
  for (BlockId r = 0; r < spec.k; ++r) {
    for (BlockId s = r + 1; s < spec.k; ++s) {
      rate.set(r, s, uniform(spec.offdiag_range));
    }
  }

  std::uniform_int_distribution<BlockId> label(0, spec.k - 1);
  std::vector<BlockId> assign(spec.n);
  for (auto& r : assign) r = label(rng);
  Partition truth(spec.k, std::move(assign));

  Graph g(spec.n, poisson_pairs(truth, rate, rng));
  return {std::move(g), std::move(truth), std::move(rate)};
}

}  // namespace acsbm
