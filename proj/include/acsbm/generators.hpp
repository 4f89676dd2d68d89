#pragma once

#include <cstdint>
#include <utility>

#include "acsbm/graph.hpp"
#include "acsbm/likelihood.hpp"

namespace acsbm {

// Planted partition model parameterized by expected degree and the ratio
// omega_out / omega_in.
struct PpmSpec {
  NodeId n = 100;
  BlockId k = 4;
  double avg_degree = 16.0;
  double ratio = 0.25;
  std::uint64_t seed = 0;
};

struct PpmRates {
  double p_in;
  double p_out;
};

// p_in = c / ((N/K - 1) + ratio * N (K - 1) / K), p_out = ratio * p_in, so
// that the expected degree of every node is c for equal block sizes.
PpmRates ppm_rates(const PpmSpec& spec);

struct PlantedGraph {
  Graph graph;
  Partition truth;
  OmegaMatrix omega;  // planted per-pair Poisson rates
};

// K consecutive blocks of equal size (the first N mod K blocks get one extra
// node); every unordered pair i < j receives Poisson(p_in) or Poisson(p_out)
// edges. No self-loops. Throws std::invalid_argument on negative inputs,
// k < 1, k > n, or a ratio outside [0, 1].
PlantedGraph generate_ppm(const PpmSpec& spec);

// General SBM with a random planted Omega: diagonal entries uniform in
// diag_range, off-diagonal entries uniform in offdiag_range.
struct SbmSpec {
  NodeId n = 100;
  BlockId k = 4;
  std::pair<double, double> diag_range{0.45, 0.55};
  std::pair<double, double> offdiag_range{0.0, 0.4};
  std::uint64_t seed = 0;
};

// Samples Omega (diagonal first, then the upper triangle row by row), then a
// uniform block for each node, then Poisson(omega_{b(i) b(j)}) edges for every
// pair i < j. No self-loops.
PlantedGraph generate_sbm(const SbmSpec& spec);

}  // namespace acsbm
