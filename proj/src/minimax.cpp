#include "bgrd/minimax.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "bgrd/parallel.hpp"
#include "bgrd/special_functions.hpp"

namespace bgrd {
namespace {

constexpr double kGolden = 0.61803398874989484820;

double residual_r(double L, double U, double D, double p) {
  const double budget = 2.0 * p * shifted_square_integral(L, U);
  if (budget > D) return -1.0;  // infeasible at this U
  return std::min(1.0 - p, (D - budget) / (L * L));
}

// payoff at (L, U) with the adversary on the full residual budget.
double inner_payoff(double L, double U, double D, double p) {
  const double r = residual_r(L, U, D, p);
  if (r < 0.0) return kInf;
  return payoff_h(GamePoint(L, U, r), p);
}

// Largest U in [L, U_max] with 2p * I(L,U) <= D (the integral is
// non-decreasing in U).
double feasible_u_limit(double L, double D, double p, double U_max) {
  if (2.0 * p * shifted_square_integral(L, U_max) <= D) return U_max;
  double lo = L, hi = U_max;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (2.0 * p * shifted_square_integral(L, mid) <= D)
      lo = mid;
    else
      hi = mid;
  }
  return lo;
}

void check_point(double D, double p) {
  if (!(D > 0.0)) throw std::domain_error("minimax: D must be > 0");
  if (!(p > 0.0 && p < 1.0)) throw std::domain_error("minimax: p must be in (0,1)");
}

}  // namespace

double distortion_budget_T1(const GamePoint& gp, double p) {
  return gp.r * gp.L * gp.L + 2.0 * p * shifted_square_integral(gp.L, gp.U);
}

double payoff_h(const GamePoint& gp, double p) {
  const double u = p * tail_prob(gp.U);
  const double mass = u + gp.r;
  if (mass <= 0.0) return 0.0;
  const double ratio = u / mass;
  if (ratio < p) return 0.0;
  return mass * binary_kl(ratio, p);
}

InnerResult inner_min(double L, double D, double p, const MinimaxConfig& cfg) {
  cfg.validate();
  check_point(D, p);
  if (!(L >= 0.0)) throw std::domain_error("inner_min: L must be >= 0");
  if (L == 0.0) {
    // r is free of the distortion constraint; the adversary drives the
    // ratio down to p and the payoff to zero.
    return {0.0, 0.0, 1.0 - p};
  }

  const double U_hi = feasible_u_limit(L, D, p, cfg.U_max);
  const int n = cfg.U_grid_points;
  double best_val = kInf;
  double best_U = L;
  int best_idx = 0;
  for (int i = 0; i < n; ++i) {
    const double U = L + (U_hi - L) * static_cast<double>(i) / (n - 1);
    const double v = inner_payoff(L, U, D, p);
    if (v < best_val) {
      best_val = v;
      best_U = U;
      best_idx = i;
    }
    if (best_val == 0.0) break;
  }

  if (best_val > 0.0) {
    // golden-section polish inside the bracketing cells
    double a = L + (U_hi - L) * static_cast<double>(std::max(0, best_idx - 1)) / (n - 1);
    double b = L + (U_hi - L) * static_cast<double>(std::min(n - 1, best_idx + 1)) / (n - 1);
    double c = b - kGolden * (b - a);
    double d = a + kGolden * (b - a);
    double fc = inner_payoff(L, c, D, p);
    double fd = inner_payoff(L, d, D, p);
    for (int it = 0; it < cfg.refine_iters; ++it) {
      if (fc < fd) {
        b = d;
        d = c;
        fd = fc;
        c = b - kGolden * (b - a);
        fc = inner_payoff(L, c, D, p);
      } else {
        a = c;
        c = d;
        fc = fd;
        d = a + kGolden * (b - a);
        fd = inner_payoff(L, d, D, p);
      }
    }
    const double Um = 0.5 * (a + b);
    const double fm = inner_payoff(L, Um, D, p);
    if (fm < best_val) {
      best_val = fm;
      best_U = Um;
    }
  }
  return {best_val, best_U, residual_r(L, best_U, D, p)};
}

namespace {

struct OuterScan {
  double value;
  double L;
  double grid_value;  // best value before golden-section polish
};

OuterScan outer_search(double D, double p, const MinimaxConfig& cfg, double L_max) {
  const int n = cfg.L_grid_points;
  std::vector<double> vals(n);
  parallel_for(static_cast<std::size_t>(n), [&](std::size_t i) {
    const double L = L_max * static_cast<double>(i) / (n - 1);
    vals[i] = inner_min(L, D, p, cfg).value;
  });
  int best = 0;
  for (int i = 1; i < n; ++i)
    if (vals[i] > vals[best]) best = i;  // strict >: ties go to smaller L

  double best_val = vals[best];
  double best_L = L_max * static_cast<double>(best) / (n - 1);

  double a = L_max * static_cast<double>(std::max(0, best - 1)) / (n - 1);
  double b = L_max * static_cast<double>(std::min(n - 1, best + 1)) / (n - 1);
  double c = b - kGolden * (b - a);
  double d = a + kGolden * (b - a);
  double fc = inner_min(c, D, p, cfg).value;
  double fd = inner_min(d, D, p, cfg).value;
  for (int it = 0; it < cfg.refine_iters; ++it) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kGolden * (b - a);
      fc = inner_min(c, D, p, cfg).value;
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kGolden * (b - a);
      fd = inner_min(d, D, p, cfg).value;
    }
  }
  const double Lm = 0.5 * (a + b);
  const double fm = inner_min(Lm, D, p, cfg).value;
  const double grid_value = vals[best];
  if (fm > best_val) {
    best_val = fm;
    best_L = Lm;
  }
  return {best_val, best_L, grid_value};
}

}  // namespace

MinimaxResult improvement_ri(double D, double p, const MinimaxConfig& cfg) {
  cfg.validate();
  check_point(D, p);
  const double L_max = cfg.L_max > 0.0 ? cfg.L_max : std::max(4.0, 4.0 * std::sqrt(D));

  OuterScan first = outer_search(D, p, cfg, L_max);
  MinimaxResult res;
  res.converged = true;
  OuterScan final = first;
  // If refinement moved the optimum by more than tol the grid was too
  // coarse; double the resolution once and rerun.
  if (std::abs(first.value - first.grid_value) > cfg.tol) {
    MinimaxConfig dense = cfg;
    dense.L_grid_points *= 2;
    dense.U_grid_points *= 2;
    OuterScan second = outer_search(D, p, dense, L_max);
    res.converged = std::abs(second.value - first.value) <= cfg.tol;
    if (second.value > final.value) final = second;
  }

  const InnerResult inner = inner_min(final.L, D, p, cfg);
  res.ri = std::max(final.value, inner.value);
  res.witness = GamePoint(final.L, std::max(final.L, inner.U), std::max(0.0, inner.r));
  res.inner_value_at_witness_L = inner.value;
  return res;
}

double improved_lower_bound(double D, double p, const MinimaxConfig& cfg) {
  return lower_bound_trivial(D, p) + improvement_ri(D, p, cfg).ri;
}

BoundSet bound_set(double D, double p, const MinimaxConfig& cfg) {
  check_point(D, p);
  BoundSet bs;
  bs.D = D;
  bs.ub1 = upper_bound_1(D, p);
  bs.ub2 = upper_bound_2(D, p);
  bs.lb_trivial = lower_bound_trivial(D, p);
  const MinimaxResult mr = improvement_ri(D, p, cfg);
  bs.ri = mr.ri;
  bs.lb_improved = bs.lb_trivial + mr.ri;
  bs.game_point = mr.witness;
  if (bs.ri < 0.0 || bs.ri > binary_entropy(p) + 1e-9)
    throw std::logic_error("bound_set: improvement outside [0, H(p)]");
  if (bs.lb_improved > std::min(bs.ub1, bs.ub2) + 1e-9)
    throw std::logic_error("bound_set: lower bound crossed an upper bound");
  return bs;
}

}  // namespace bgrd
