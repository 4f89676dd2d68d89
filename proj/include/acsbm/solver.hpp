#pragma once

#include <string>
#include <string_view>

#include "acsbm/block_stats.hpp"
#include "acsbm/likelihood.hpp"

namespace acsbm {

// Assortativity constraint placed on Omega.
//   strong: every diagonal entry >= every off-diagonal entry
//   weak:   every diagonal entry >= the other entries of its row
enum class AssortativityMode { none, weak, strong };

std::string_view to_string(AssortativityMode mode);
// Accepts "none", "weak", "strong"; throws std::invalid_argument otherwise.
AssortativityMode parse_assortativity_mode(std::string_view name);

struct SolverConfig {
  double tol = 1e-8;
  int max_newton_iters = 200;
  // Initial barrier weight, scaled by the problem size internally.
  double barrier_init = 1.0;
  double barrier_reduction = 0.1;
};

struct OmegaSolution {
  OmegaMatrix omega;
  // Strong mode threshold separating diagonal from off-diagonal entries.
  // Zero for the other modes.
  double lambda = 0.0;
  double objective = 0.0;
  // Duality gap bound of the final barrier iterate (constraints x weight);
  // zero when the unconstrained maximizer was returned.
  double kkt_residual = 0.0;
  int iterations = 0;
  bool converged = true;
};

// Maximizes (1/2) sum_rs (m_rs log w_rs - T_rs w_rs) over symmetric Omega
// subject to the mode's constraints and w_rs >= 0.
//
// Returns omega_mle directly for mode none or when it already satisfies the
// constraints. Otherwise runs a primal log-barrier method with damped Newton
// steps. Entries with m_rs = 0 are fixed analytically: off-diagonal ones at
// 0, diagonal ones at lambda (strong) or at their row maximum (weak).
// Throws std::invalid_argument if every m_rs is zero.
OmegaSolution solve_constrained(const BlockStats& stats,
                                AssortativityMode mode,
                                const SolverConfig& cfg = {});

// Strong-mode reference solver. For fixed lambda the problem separates per
// entry (diagonal: max(m/T, lambda); off-diagonal: clamp(m/T, 0, lambda)),
// and the resulting objective is concave in lambda, so lambda is found by
// golden-section search on [0, max(omega_mle) + 1].
OmegaSolution lambda_profile_oracle(const BlockStats& stats,
                                    double lambda_tol = 1e-10);

bool is_feasible(const OmegaMatrix& omega, AssortativityMode mode,
                 double tol);

}  // namespace acsbm
