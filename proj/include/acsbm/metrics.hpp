#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "acsbm/graph.hpp"
#include "acsbm/likelihood.hpp"
#include "acsbm/solver.hpp"

namespace acsbm {

class ContingencyTable {
 public:
  // Labels may be any non-negative integers; they are compacted internally.
  // Throws std::invalid_argument on length mismatch or negative labels.
  ContingencyTable(std::span<const BlockId> truth,
                   std::span<const BlockId> predicted);

  std::size_t rows() const { return row_sum_.size(); }
  std::size_t cols() const { return col_sum_.size(); }
  std::int64_t count(std::size_t a, std::size_t b) const {
    return counts_[a * cols() + b];
  }
  std::int64_t row_sum(std::size_t a) const { return row_sum_[a]; }
  std::int64_t col_sum(std::size_t b) const { return col_sum_[b]; }
  std::int64_t total() const { return total_; }

  double mutual_information() const;
  double row_entropy() const;
  double col_entropy() const;

 private:
  std::vector<std::int64_t> counts_;
  std::vector<std::int64_t> row_sum_;
  std::vector<std::int64_t> col_sum_;
  std::int64_t total_ = 0;
};

// 2 I(P;Q) / (H(P) + H(Q)) with natural logs; 1 when both entropies vanish.
double nmi(std::span<const BlockId> p, std::span<const BlockId> q);
double nmi(const Partition& p, const Partition& q);

// Blocks q with omega_qq >= omega_qs - tol for every s != q.
int count_assortative_communities(const OmegaMatrix& omega, double tol);

// Strongest of strong / weak / none that omega satisfies.
AssortativityMode assortativity_level(const OmegaMatrix& omega, double tol);

}  // namespace acsbm
