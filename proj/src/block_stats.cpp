#include "acsbm/block_stats.hpp"

#include <numeric>
#include <stdexcept>

namespace acsbm {

void node_links(const Graph& g, const Partition& p, NodeId i,
                NodeLinks& links) {
  links.to_block.assign(p.num_blocks(), 0);
  links.self = 0;
  for (const Neighbor& nb : g.neighbors(i)) {
    if (nb.node == i) {
      links.self += nb.a;
    } else {
      links.to_block[p[nb.node]] += nb.a;
    }
  }
}

BlockStats BlockStats::from_block_counts(BlockId k, std::span<const Weight> m) {
  if (k < 1 || m.size() != static_cast<std::size_t>(k) * k) {
    throw std::invalid_argument("block count matrix must be k x k");
  }
  BlockStats s;
  s.k_ = k;
  s.m_.assign(m.begin(), m.end());
  s.kappa_.assign(k, 0);
  for (BlockId r = 0; r < k; ++r) {
    for (BlockId c = 0; c < k; ++c) {
      if (m[r * k + c] < 0) throw std::invalid_argument("negative m_rs");
      if (m[r * k + c] != m[c * k + r]) {
        throw std::invalid_argument("block count matrix must be symmetric");
      }
      s.kappa_[r] += m[r * k + c];
    }
  }
  s.two_m_ = std::accumulate(s.kappa_.begin(), s.kappa_.end(), Weight{0});
  return s;
}

BlockStats block_stats(const Graph& g, const Partition& p) {
  if (g.num_nodes() != p.num_nodes()) {
    throw std::invalid_argument("partition size does not match graph");
  }
  const BlockId k = p.num_blocks();
  BlockStats s;
  s.k_ = k;
  s.two_m_ = g.two_m();
  s.m_.assign(static_cast<std::size_t>(k) * k, 0);
  s.kappa_.assign(k, 0);
  for (const Edge& e : g.edges()) {
    const BlockId r = p[e.u];
    const BlockId c = p[e.v];
    if (e.u == e.v) {
      s.m_[r * k + r] += 2 * e.w;
    } else {
      s.m_[r * k + c] += e.w;
      s.m_[c * k + r] += e.w;
    }
  }
  for (NodeId i = 0; i < g.num_nodes(); ++i) s.kappa_[p[i]] += g.degree(i);
  return s;
}

void BlockStats::relocate(const NodeLinks& links, Weight degree_i,
                          BlockId from, BlockId to) {
  const auto& d = links.to_block;
  for (BlockId s = 0; s < k_; ++s) {
    m_[from * k_ + s] -= d[s];
    m_[s * k_ + from] -= d[s];
  }
  m_[from * k_ + from] -= links.self;
  for (BlockId s = 0; s < k_; ++s) {
    m_[to * k_ + s] += d[s];
    m_[s * k_ + to] += d[s];
  }
  m_[to * k_ + to] += links.self;
  kappa_[from] -= degree_i;
  kappa_[to] += degree_i;
}

std::optional<BlockStats> apply_relocation(const BlockStats& stats,
                                           const Graph& g, const Partition& p,
                                           NodeId i, BlockId b) {
  const BlockId a = p[i];
  if (a == b) throw std::invalid_argument("relocation target equals source");
  if (p.block_size(a) <= 1) return std::nullopt;
  NodeLinks links;
  node_links(g, p, i, links);
  BlockStats out = stats;
  out.relocate(links, g.degree(i), a, b);
  return out;
}

}  // namespace acsbm
