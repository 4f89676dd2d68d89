#include "acsbm/graph.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace acsbm {

Graph::Graph(NodeId n, std::vector<Edge> edges) : n_(n) {
  if (n < 0) throw std::invalid_argument("negative node count");
  for (Edge& e : edges) {
    if (e.u < 0 || e.v < 0 || e.u >= n || e.v >= n) {
      throw std::invalid_argument("edge (" + std::to_string(e.u) + ", " +
                                  std::to_string(e.v) +
                                  ") references a node outside [0, " +
                                  std::to_string(n) + ")");
    }
    if (e.w < 1) throw std::invalid_argument("edge weight must be >= 1");
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
    return a.u != b.u ? a.u < b.u : a.v < b.v;
  });
  for (const Edge& e : edges) {
    if (!edges_.empty() && edges_.back().u == e.u && edges_.back().v == e.v) {
      edges_.back().w += e.w;
    } else {
      edges_.push_back(e);
    }
  }

  degree_.assign(n, 0);
  std::vector<std::size_t> count(n, 0);
  for (const Edge& e : edges_) {
    degree_[e.u] += e.w;
    degree_[e.v] += e.w;
    total_weight_ += e.w;
    ++count[e.u];
    if (e.u != e.v) ++count[e.v];
  }

  offsets_.assign(n + 1, 0);
  for (NodeId i = 0; i < n; ++i) offsets_[i + 1] = offsets_[i] + count[i];
  adjacency_.resize(offsets_[n]);
  std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
  for (const Edge& e : edges_) {
    if (e.u == e.v) {
      adjacency_[cursor[e.u]++] = {e.u, 2 * e.w};
    } else {
      adjacency_[cursor[e.u]++] = {e.v, e.w};
      adjacency_[cursor[e.v]++] = {e.u, e.w};
    }
  }
}

Partition::Partition(BlockId k, std::vector<BlockId> assign)
    : k_(k), assign_(std::move(assign)) {
  if (k < 1) throw std::invalid_argument("block count must be >= 1");
  sizes_.assign(k, 0);
  for (BlockId r : assign_) {
    if (r < 0 || r >= k) {
      throw std::invalid_argument("block label " + std::to_string(r) +
                                  " outside [0, " + std::to_string(k) + ")");
    }
    ++sizes_[r];
  }
}

BlockId Partition::num_nonempty_blocks() const {
  return static_cast<BlockId>(
      std::count_if(sizes_.begin(), sizes_.end(), [](NodeId s) { return s > 0; }));
}

void Partition::move(NodeId i, BlockId b) {
  --sizes_[assign_[i]];
  ++sizes_[b];
  assign_[i] = b;
}

}  // namespace acsbm
