#include "acsbm/likelihood.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace acsbm {

OmegaMatrix OmegaMatrix::from_rows(
    const std::vector<std::vector<double>>& rows) {
  const auto k = static_cast<BlockId>(rows.size());
  OmegaMatrix w(k);
  for (BlockId r = 0; r < k; ++r) {
    if (rows[r].size() != rows.size()) {
      throw std::invalid_argument("omega must be square");
    }
    for (BlockId s = 0; s < k; ++s) {
      if (rows[r][s] != rows[s][r]) {
        throw std::invalid_argument("omega must be symmetric");
      }
      w.w_[r * k + s] = rows[r][s];
    }
  }
  return w;
}

double OmegaMatrix::min_diagonal() const {
  double v = std::numeric_limits<double>::infinity();
  for (BlockId q = 0; q < k_; ++q) v = std::min(v, (*this)(q, q));
  return v;
}

double OmegaMatrix::max_off_diagonal() const {
  double v = -std::numeric_limits<double>::infinity();
  for (BlockId r = 0; r < k_; ++r) {
    for (BlockId s = r + 1; s < k_; ++s) v = std::max(v, (*this)(r, s));
  }
  return v;
}

double log_likelihood(const BlockStats& stats, const OmegaMatrix& omega) {
  const BlockId k = stats.num_blocks();
  if (omega.size() != k) throw std::invalid_argument("omega size mismatch");
  double total = 0.0;
  for (BlockId r = 0; r < k; ++r) {
    for (BlockId s = 0; s < k; ++s) {
      const double m = static_cast<double>(stats.m(r, s));
      const double w = omega(r, s);
      if (m > 0.0) {
        if (w <= 0.0) return -std::numeric_limits<double>::infinity();
        total += m * std::log(w);
      }
      total -= stats.t(r, s) * w;
    }
  }
  return 0.5 * total;
}

OmegaMatrix omega_mle(const BlockStats& stats) {
  const BlockId k = stats.num_blocks();
  OmegaMatrix w(k);
  for (BlockId r = 0; r < k; ++r) {
    for (BlockId s = r; s < k; ++s) {
      const double t = stats.t(r, s);
      w.set(r, s, t > 0.0 ? static_cast<double>(stats.m(r, s)) / t : 0.0);
    }
  }
  return w;
}

double profile_log_likelihood(const BlockStats& stats) {
  // (1/2) sum_rs m_rs log m_rs - sum_r kappa_r log kappa_r, using
  // sum_s m_rs = kappa_r.
  const BlockId k = stats.num_blocks();
  double total = 0.0;
  for (BlockId r = 0; r < k; ++r) {
    for (BlockId s = 0; s < k; ++s) {
      total += 0.5 * xlogx(static_cast<double>(stats.m(r, s)));
    }
    total -= xlogx(static_cast<double>(stats.kappa(r)));
  }
  return total;
}

double profile_offset(Weight two_m) {
  const double m = 0.5 * static_cast<double>(two_m);
  return two_m > 0 ? m * std::log(static_cast<double>(two_m)) - m : 0.0;
}

double modularity(const BlockStats& stats) {
  const double two_m = static_cast<double>(stats.two_m());
  if (two_m <= 0.0) return 0.0;
  double q = 0.0;
  for (BlockId r = 0; r < stats.num_blocks(); ++r) {
    const double frac = static_cast<double>(stats.kappa(r)) / two_m;
    q += static_cast<double>(stats.m(r, r)) / two_m - frac * frac;
  }
  return q;
}

}  // namespace acsbm
