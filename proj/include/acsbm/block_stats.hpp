#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "acsbm/graph.hpp"

namespace acsbm {

// Edge weight between node i and every block, excluding i's own self-loop,
// plus the self-loop term A_ii.
struct NodeLinks {
  std::vector<Weight> to_block;  // d_ir = sum_{j != i} A_ij z_jr
  Weight self = 0;               // A_ii (twice the self-loop weight)
};

// Fills `links` in O(K + deg(i)); `links.to_block` is resized to K.
void node_links(const Graph& g, const Partition& p, NodeId i, NodeLinks& links);

// Sufficient statistics of a (graph, partition) pair.
//
//   m_rs  = sum_ij A_ij z_ir z_js     (m_rr counts internal edges twice)
//   kappa = sum_i k_i z_ir
//   T_rs  = kappa_r kappa_s / 2m
class BlockStats {
 public:
  BlockStats() = default;
  // Builds statistics directly from a symmetric block count matrix given in
  // row-major order; kappa and 2m follow from the row sums.
  static BlockStats from_block_counts(BlockId k, std::span<const Weight> m);

  BlockId num_blocks() const { return k_; }
  Weight two_m() const { return two_m_; }
  Weight m(BlockId r, BlockId s) const { return m_[r * k_ + s]; }
  Weight kappa(BlockId r) const { return kappa_[r]; }
  std::span<const Weight> kappas() const { return kappa_; }
  std::span<const Weight> block_counts() const { return m_; }
  double t(BlockId r, BlockId s) const {
    return two_m_ == 0 ? 0.0
                       : static_cast<double>(kappa_[r]) *
                             static_cast<double>(kappa_[s]) /
                             static_cast<double>(two_m_);
  }

  // Moves node i (currently in `from`) to block `to`. `links` must describe
  // node i under the partition before the move.
  void relocate(const NodeLinks& links, Weight degree_i, BlockId from,
                BlockId to);

  friend bool operator==(const BlockStats&, const BlockStats&) = default;

 private:
  friend BlockStats block_stats(const Graph& g, const Partition& p);

  BlockId k_ = 0;
  Weight two_m_ = 0;
  std::vector<Weight> m_;
  std::vector<Weight> kappa_;
};

BlockStats block_stats(const Graph& g, const Partition& p);

// Statistics after relocating node i to block b, computed in O(K + deg(i))
// plus one copy. Returns std::nullopt when the move would leave i's current
// block empty. Requires b != p[i].
std::optional<BlockStats> apply_relocation(const BlockStats& stats,
                                           const Graph& g, const Partition& p,
                                           NodeId i, BlockId b);

}  // namespace acsbm
