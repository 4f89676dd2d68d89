#pragma once

#include <cmath>
#include <vector>

#include "acsbm/block_stats.hpp"

namespace acsbm {

// Symmetric K x K matrix of block parameters omega_rs >= 0. Writes through
// set() keep both triangles in sync.
class OmegaMatrix {
 public:
  OmegaMatrix() = default;
  explicit OmegaMatrix(BlockId k, double fill = 0.0)
      : k_(k), w_(static_cast<std::size_t>(k) * k, fill) {}
  // Row-major values; throws std::invalid_argument unless square and
  // symmetric.
  static OmegaMatrix from_rows(const std::vector<std::vector<double>>& rows);

  BlockId size() const { return k_; }
  double operator()(BlockId r, BlockId s) const { return w_[r * k_ + s]; }
  void set(BlockId r, BlockId s, double v) {
    w_[r * k_ + s] = v;
    w_[s * k_ + r] = v;
  }
  const std::vector<double>& values() const { return w_; }

  double min_diagonal() const;
  // -inf when K == 1.
  double max_off_diagonal() const;

  friend bool operator==(const OmegaMatrix&, const OmegaMatrix&) = default;

 private:
  BlockId k_ = 0;
  std::vector<double> w_;
};

// (1/2) sum_rs (m_rs log w_rs - T_rs w_rs) with 0 log 0 = 0. Returns -inf if
// some w_rs = 0 while m_rs > 0.
double log_likelihood(const BlockStats& stats, const OmegaMatrix& omega);

// Unconstrained maximizer w_rs = m_rs / T_rs, with w_rs = 0 where T_rs = 0.
OmegaMatrix omega_mle(const BlockStats& stats);

// (1/2) sum_rs m_rs log(m_rs / (kappa_r kappa_s)), i.e. the log-likelihood at
// omega_mle minus the partition-independent constant m log 2m - m.
double profile_log_likelihood(const BlockStats& stats);

// m log 2m - m: log_likelihood(s, omega_mle(s)) == profile_log_likelihood(s)
// + profile_offset(s.two_m()).
double profile_offset(Weight two_m);

// Newman-Girvan modularity sum_r (m_rr / 2m - (kappa_r / 2m)^2).
double modularity(const BlockStats& stats);

// x log x with 0 log 0 = 0.
inline double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

}  // namespace acsbm
