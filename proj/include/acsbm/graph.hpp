#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace acsbm {

using NodeId = std::int32_t;
using BlockId = std::int32_t;
using Weight = std::int64_t;

struct Edge {
  NodeId u = 0;
  NodeId v = 0;
  Weight w = 1;

  friend bool operator==(const Edge&, const Edge&) = default;
};

// Adjacency entry A_ij as seen from node i. A self-loop of weight w is
// stored once with value 2w.
struct Neighbor {
  NodeId node;
  Weight a;
};

// Immutable undirected multigraph with integer edge multiplicities.
//
// Edges are canonicalized to u <= v and merged. A self-loop of weight w adds
// 2w to the degree of its node and w to the total weight m, so that
// sum_i k_i == 2m holds exactly.
class Graph {
 public:
  Graph() = default;
  // Throws std::invalid_argument on ids outside [0, n) or weights < 1.
  Graph(NodeId n, std::vector<Edge> edges);

  NodeId num_nodes() const { return n_; }
  const std::vector<Edge>& edges() const { return edges_; }
  Weight degree(NodeId i) const { return degree_[i]; }
  std::span<const Weight> degrees() const { return degree_; }
  // m = (1/2) sum_i k_i.
  Weight total_weight() const { return total_weight_; }
  Weight two_m() const { return 2 * total_weight_; }

  std::span<const Neighbor> neighbors(NodeId i) const {
    return {adjacency_.data() + offsets_[i],
            adjacency_.data() + offsets_[i + 1]};
  }

 private:
  NodeId n_ = 0;
  std::vector<Edge> edges_;
  std::vector<Weight> degree_;
  Weight total_weight_ = 0;
  std::vector<std::size_t> offsets_{0};
  std::vector<Neighbor> adjacency_;
};

// Hard assignment of every node to one of k blocks.
class Partition {
 public:
  Partition() = default;
  // Throws std::invalid_argument when a label is outside [0, k).
  Partition(BlockId k, std::vector<BlockId> assign);

  BlockId num_blocks() const { return k_; }
  NodeId num_nodes() const { return static_cast<NodeId>(assign_.size()); }
  BlockId operator[](NodeId i) const { return assign_[i]; }
  const std::vector<BlockId>& assignment() const { return assign_; }
  NodeId block_size(BlockId r) const { return sizes_[r]; }
  const std::vector<NodeId>& block_sizes() const { return sizes_; }
  BlockId num_nonempty_blocks() const;

  void move(NodeId i, BlockId b);

  friend bool operator==(const Partition& a, const Partition& b) {
    return a.k_ == b.k_ && a.assign_ == b.assign_;
  }

 private:
  BlockId k_ = 0;
  std::vector<BlockId> assign_;
  std::vector<NodeId> sizes_;
};

}  // namespace acsbm
