#include "acsbm/solver.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace acsbm {

std::string_view to_string(AssortativityMode mode) {
  switch (mode) {
    case AssortativityMode::none:
      return "none";
    case AssortativityMode::weak:
      return "weak";
    case AssortativityMode::strong:
      return "strong";
  }
  return "none";
}

AssortativityMode parse_assortativity_mode(std::string_view name) {
  if (name == "none") return AssortativityMode::none;
  if (name == "weak") return AssortativityMode::weak;
  if (name == "strong") return AssortativityMode::strong;
  throw std::invalid_argument("unknown assortativity mode '" +
                              std::string(name) + "'");
}

bool is_feasible(const OmegaMatrix& omega, AssortativityMode mode,
                 double tol) {
  const BlockId k = omega.size();
  for (double v : omega.values()) {
    if (v < -tol) return false;
  }
  switch (mode) {
    case AssortativityMode::none:
      return true;
    case AssortativityMode::strong:
      return k < 2 || omega.min_diagonal() >= omega.max_off_diagonal() - tol;
    case AssortativityMode::weak:
      for (BlockId q = 0; q < k; ++q) {
        for (BlockId s = 0; s < k; ++s) {
          if (omega(q, q) < omega(q, s) - tol) return false;
        }
      }
      return true;
  }
  return true;
}

namespace {

// Concave separable objective sum_i (a_i log x_i - c_i x_i) with linear
// constraints of the form x_p - x_q >= 0 (q < 0 for a plain bound x_p >= 0).
struct BarrierProblem {
  struct Constraint {
    int plus;
    int minus;  // -1 for a bound
  };

  std::vector<double> a;
  std::vector<double> c;
  std::vector<Constraint> constraints;

  int add_variable(double log_coef, double lin_coef) {
    a.push_back(log_coef);
    c.push_back(lin_coef);
    return static_cast<int>(a.size()) - 1;
  }
  int size() const { return static_cast<int>(a.size()); }

  double slack(const Eigen::VectorXd& x, const Constraint& g) const {
    return g.minus < 0 ? x[g.plus] : x[g.plus] - x[g.minus];
  }

  double objective(const Eigen::VectorXd& x) const {
    double f = 0.0;
    for (int i = 0; i < size(); ++i) {
      if (a[i] > 0.0) f += a[i] * std::log(x[i]);
      f -= c[i] * x[i];
    }
    return f;
  }

  // Objective plus mu * sum log(slack); -inf outside the domain.
  double barrier(const Eigen::VectorXd& x, double mu) const {
    for (int i = 0; i < size(); ++i) {
      if (a[i] > 0.0 && !(x[i] > 0.0)) {
        return -std::numeric_limits<double>::infinity();
      }
    }
    double f = objective(x);
    for (const Constraint& g : constraints) {
      const double s = slack(x, g);
      if (!(s > 0.0)) return -std::numeric_limits<double>::infinity();
      f += mu * std::log(s);
    }
    return f;
  }
};

struct BarrierResult {
  Eigen::VectorXd x;
  double gap = 0.0;
  int iterations = 0;
  bool converged = false;
};

BarrierResult maximize_with_barrier(const BarrierProblem& prob,
                                    Eigen::VectorXd x,
                                    const SolverConfig& cfg) {
  const int n = prob.size();
  const auto n_cons = static_cast<double>(prob.constraints.size());
  double total_a = 0.0;
  for (double ai : prob.a) total_a += ai;
  double mu = cfg.barrier_init * (1.0 + total_a) / std::max(1.0, n_cons);

  BarrierResult out;
  Eigen::VectorXd grad(n);
  Eigen::MatrixXd neg_hess(n, n);
  while (true) {
    // Centering.
    const double center_tol = 1e-3 * cfg.tol * (1.0 + std::abs(prob.objective(x)));
    while (true) {
      if (out.iterations >= cfg.max_newton_iters) {
        out.x = x;
        out.gap = mu * n_cons;
        return out;
      }
      grad.setZero();
      neg_hess.setZero();
      for (int i = 0; i < n; ++i) {
        grad[i] = -prob.c[i];
        if (prob.a[i] > 0.0) {
          grad[i] += prob.a[i] / x[i];
          neg_hess(i, i) += prob.a[i] / (x[i] * x[i]);
        }
      }
      for (const auto& g : prob.constraints) {
        const double s = prob.slack(x, g);
        const double inv = mu / s;
        const double inv2 = mu / (s * s);
        grad[g.plus] += inv;
        neg_hess(g.plus, g.plus) += inv2;
        if (g.minus >= 0) {
          grad[g.minus] -= inv;
          neg_hess(g.minus, g.minus) += inv2;
          neg_hess(g.plus, g.minus) -= inv2;
          neg_hess(g.minus, g.plus) -= inv2;
        }
      }
      const Eigen::VectorXd step = neg_hess.ldlt().solve(grad);
      const double decrement2 = grad.dot(step);
      ++out.iterations;
      if (!(decrement2 >= 0.0) || !step.allFinite()) {
        out.x = x;
        out.gap = mu * n_cons;
        return out;
      }
      if (0.5 * decrement2 <= center_tol) break;

      // Largest step keeping the iterate strictly inside the domain.
      double t = 1.0;
      for (int i = 0; i < n; ++i) {
        if (prob.a[i] > 0.0 && step[i] < 0.0) t = std::min(t, -0.99 * x[i] / step[i]);
      }
      for (const auto& g : prob.constraints) {
        const double ds = g.minus < 0 ? step[g.plus] : step[g.plus] - step[g.minus];
        if (ds < 0.0) t = std::min(t, -0.99 * prob.slack(x, g) / ds);
      }
      const double phi = prob.barrier(x, mu);
      Eigen::VectorXd trial = x + t * step;
      while (prob.barrier(trial, mu) < phi + 0.25 * t * decrement2 && t > 1e-14) {
        t *= 0.5;
        trial = x + t * step;
      }
      if (!(prob.barrier(trial, mu) >= phi)) break;
      x = trial;
    }
    const double gap = mu * n_cons;
    if (gap <= cfg.tol * (1.0 + std::abs(prob.objective(x)))) {
      out.x = x;
      out.gap = gap;
      out.converged = true;
      return out;
    }
    mu *= cfg.barrier_reduction;
  }
}

double max_entry(const OmegaMatrix& w) {
  double v = 0.0;
  for (double e : w.values()) v = std::max(v, e);
  return v;
}

double mean_entry(const OmegaMatrix& w) {
  double v = 0.0;
  for (double e : w.values()) v += e;
  return w.values().empty() ? 0.0 : v / static_cast<double>(w.values().size());
}

bool has_edges(const BlockStats& stats) {
  for (Weight m : stats.block_counts()) {
    if (m > 0) return true;
  }
  return false;
}

OmegaSolution unconstrained_solution(const BlockStats& stats,
                                     AssortativityMode mode) {
  OmegaSolution sol;
  sol.omega = omega_mle(stats);
  sol.objective = log_likelihood(stats, sol.omega);
  if (mode == AssortativityMode::strong) {
    sol.lambda = stats.num_blocks() > 1 ? std::max(0.0, sol.omega.max_off_diagonal())
                                        : sol.omega.min_diagonal();
  }
  return sol;
}

}  // namespace

OmegaSolution solve_constrained(const BlockStats& stats,
                                AssortativityMode mode,
                                const SolverConfig& cfg) {
  if (!has_edges(stats)) {
    throw std::invalid_argument("solve_constrained needs at least one m_rs > 0");
  }
  if (!(cfg.tol > 0.0)) throw std::invalid_argument("solver tol must be > 0");
  const OmegaMatrix mle = omega_mle(stats);
  if (mode == AssortativityMode::none || is_feasible(mle, mode, 0.0)) {
    return unconstrained_solution(stats, mode);
  }

  const BlockId k = stats.num_blocks();
  constexpr int kPinned = -1;
  // Variable index for each upper-triangle entry, or kPinned.
  std::vector<int> var(static_cast<std::size_t>(k) * k, kPinned);
  auto idx = [k](BlockId r, BlockId s) { return r * k + s; };

  BarrierProblem prob;
  for (BlockId r = 0; r < k; ++r) {
    for (BlockId s = r; s < k; ++s) {
      const auto m = static_cast<double>(stats.m(r, s));
      if (m <= 0.0) continue;
      // Off-diagonal pairs appear twice in the symmetric sum.
      const double scale = r == s ? 0.5 : 1.0;
      var[idx(r, s)] = prob.add_variable(scale * m, scale * stats.t(r, s));
    }
  }

  const double a0 = mean_entry(mle) + 1.0;
  const double d0 = 0.5 * a0;
  int lambda_var = kPinned;

  if (mode == AssortativityMode::strong) {
    double lambda_cost = 0.0;
    for (BlockId q = 0; q < k; ++q) {
      if (var[idx(q, q)] == kPinned) lambda_cost += 0.5 * stats.t(q, q);
    }
    lambda_var = prob.add_variable(0.0, lambda_cost);
    prob.constraints.push_back({lambda_var, -1});
    for (BlockId r = 0; r < k; ++r) {
      for (BlockId s = r; s < k; ++s) {
        const int v = var[idx(r, s)];
        if (v == kPinned) continue;
        if (r == s) {
          prob.constraints.push_back({v, lambda_var});
        } else {
          prob.constraints.push_back({lambda_var, v});
        }
      }
    }
  } else {
    // Weak: a diagonal with no internal edges but positive degree stays a
    // variable with a linear cost, bounded below by its row.
    for (BlockId q = 0; q < k; ++q) {
      if (var[idx(q, q)] == kPinned && stats.kappa(q) > 0) {
        var[idx(q, q)] = prob.add_variable(0.0, 0.5 * stats.t(q, q));
        prob.constraints.push_back({var[idx(q, q)], -1});
      }
    }
    for (BlockId q = 0; q < k; ++q) {
      for (BlockId s = 0; s < k; ++s) {
        if (s == q) continue;
        const int off = var[idx(std::min(q, s), std::max(q, s))];
        if (off == kPinned) continue;
        prob.constraints.push_back({var[idx(q, q)], off});
      }
    }
  }

  Eigen::VectorXd x0(prob.size());
  for (BlockId r = 0; r < k; ++r) {
    for (BlockId s = r; s < k; ++s) {
      const int v = var[idx(r, s)];
      if (v != kPinned) x0[v] = r == s ? a0 + d0 : a0 - d0;
    }
  }
  if (lambda_var != kPinned) x0[lambda_var] = a0;

  const BarrierResult res = maximize_with_barrier(prob, x0, cfg);

  OmegaSolution sol;
  sol.omega = OmegaMatrix(k);
  sol.iterations = res.iterations;
  sol.converged = res.converged;
  sol.kkt_residual = res.gap;
  if (lambda_var != kPinned) sol.lambda = res.x[lambda_var];
  for (BlockId r = 0; r < k; ++r) {
    for (BlockId s = r; s < k; ++s) {
      const int v = var[idx(r, s)];
      if (v != kPinned) {
        sol.omega.set(r, s, res.x[v]);
      } else if (r == s && mode == AssortativityMode::strong) {
        sol.omega.set(r, s, sol.lambda);
      }
    }
  }
  if (mode == AssortativityMode::weak) {
    // Diagonals without internal edges only pay a linear cost, so their
    // optimum sits exactly on the largest entry of the row.
    for (BlockId q = 0; q < k; ++q) {
      if (stats.m(q, q) > 0) continue;
      double row_max = 0.0;
      for (BlockId s = 0; s < k; ++s) {
        if (s != q) row_max = std::max(row_max, sol.omega(q, s));
      }
      sol.omega.set(q, q, row_max);
    }
  }
  sol.objective = log_likelihood(stats, sol.omega);
  return sol;
}

OmegaSolution lambda_profile_oracle(const BlockStats& stats,
                                    double lambda_tol) {
  const BlockId k = stats.num_blocks();
  const OmegaMatrix mle = omega_mle(stats);

  auto induced = [&](double lambda) {
    OmegaMatrix w(k);
    for (BlockId r = 0; r < k; ++r) {
      for (BlockId s = r; s < k; ++s) {
        const double free_opt = mle(r, s);
        if (r == s) {
          w.set(r, s, std::max(free_opt, lambda));
        } else {
          w.set(r, s, std::clamp(free_opt, 0.0, lambda));
        }
      }
    }
    return w;
  };
  auto value = [&](double lambda) {
    return log_likelihood(stats, induced(lambda));
  };

  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = 0.0;
  double hi = max_entry(mle) + 1.0;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = value(x1);
  double f2 = value(x2);
  int iterations = 0;
  while (hi - lo > lambda_tol) {
    ++iterations;
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = value(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = value(x1);
    }
  }
  OmegaSolution sol;
  sol.lambda = 0.5 * (lo + hi);
  sol.omega = induced(sol.lambda);
  sol.objective = log_likelihood(stats, sol.omega);
  sol.iterations = iterations;
  return sol;
}

}  // namespace acsbm
