#include "acsbm/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

namespace acsbm {
namespace {

std::vector<std::size_t> compact(std::span<const BlockId> labels,
                                 std::size_t& distinct) {
  std::unordered_map<BlockId, std::size_t> ids;
  std::vector<std::size_t> out;
  out.reserve(labels.size());
  for (BlockId l : labels) {
    if (l < 0) throw std::invalid_argument("negative label");
    out.push_back(ids.try_emplace(l, ids.size()).first->second);
  }
  distinct = ids.size();
  return out;
}

double entropy(const std::vector<std::int64_t>& sums, std::int64_t total) {
  double h = 0.0;
  for (std::int64_t s : sums) {
    if (s > 0) {
      const double f = static_cast<double>(s) / static_cast<double>(total);
      h -= f * std::log(f);
    }
  }
  return h;
}

}  // namespace

ContingencyTable::ContingencyTable(std::span<const BlockId> truth,
                                   std::span<const BlockId> predicted) {
  if (truth.size() != predicted.size()) {
    throw std::invalid_argument("partitions have different lengths");
  }
  std::size_t n_rows = 0;
  std::size_t n_cols = 0;
  const auto a = compact(truth, n_rows);
  const auto b = compact(predicted, n_cols);
  counts_.assign(n_rows * n_cols, 0);
  row_sum_.assign(n_rows, 0);
  col_sum_.assign(n_cols, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    ++counts_[a[i] * n_cols + b[i]];
    ++row_sum_[a[i]];
    ++col_sum_[b[i]];
  }
  total_ = static_cast<std::int64_t>(a.size());
}

double ContingencyTable::mutual_information() const {
  const auto n = static_cast<double>(total_);
  double mi = 0.0;
  for (std::size_t a = 0; a < rows(); ++a) {
    for (std::size_t b = 0; b < cols(); ++b) {
      const auto c = static_cast<double>(count(a, b));
      if (c == 0.0) continue;
      mi += c / n *
            std::log(c * n / (static_cast<double>(row_sum_[a]) *
                              static_cast<double>(col_sum_[b])));
    }
  }
  return std::max(0.0, mi);
}

double ContingencyTable::row_entropy() const { return entropy(row_sum_, total_); }
double ContingencyTable::col_entropy() const { return entropy(col_sum_, total_); }

double nmi(std::span<const BlockId> p, std::span<const BlockId> q) {
  const ContingencyTable table(p, q);
  const double h = table.row_entropy() + table.col_entropy();
  if (h <= 0.0) return 1.0;
  return std::clamp(2.0 * table.mutual_information() / h, 0.0, 1.0);
}

double nmi(const Partition& p, const Partition& q) {
  return nmi(std::span<const BlockId>(p.assignment()),
             std::span<const BlockId>(q.assignment()));
}

int count_assortative_communities(const OmegaMatrix& omega, double tol) {
  int count = 0;
  for (BlockId q = 0; q < omega.size(); ++q) {
    bool dominant = true;
    for (BlockId s = 0; s < omega.size() && dominant; ++s) {
      if (s != q && omega(q, q) < omega(q, s) - tol) dominant = false;
    }
    if (dominant) ++count;
  }
  return count;
}

AssortativityMode assortativity_level(const OmegaMatrix& omega, double tol) {
  if (is_feasible(omega, AssortativityMode::strong, tol)) {
    return AssortativityMode::strong;
  }
  if (is_feasible(omega, AssortativityMode::weak, tol)) {
    return AssortativityMode::weak;
  }
  return AssortativityMode::none;
}

}  // namespace acsbm
