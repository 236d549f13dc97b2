#pragma once

#include <stdexcept>

#include "bgrd/bounds.hpp"

namespace bgrd {

// One point of the max-min game: the coder's score threshold L, the
// adversary's tail threshold U and false-support fraction r.
struct GamePoint {
  double L;
  double U;
  double r;

  GamePoint(double L_, double U_, double r_) : L(L_), U(U_), r(r_) {
    if (!(L >= 0.0 && U >= L)) throw std::invalid_argument("GamePoint: need 0 <= L <= U");
    if (!(r >= 0.0 && r <= 1.0)) throw std::invalid_argument("GamePoint: r out of range");
  }
};

struct MinimaxConfig {
  int L_grid_points = 400;
  int U_grid_points = 600;
  double L_max = 0.0;  // <= 0 means auto: max(4, 4*sqrt(D))
  double U_max = 8.0;  // tail_prob(8) < 1.3e-15; stands in for +infinity
  int refine_iters = 60;
  double tol = 1e-5;  // bits

  void validate() const {
    if (L_grid_points < 2 || U_grid_points < 2)
      throw std::invalid_argument("MinimaxConfig: grids need >= 2 points");
    if (!(tol > 0.0)) throw std::invalid_argument("MinimaxConfig: tol must be > 0");
    if (L_max > 0.0 && !(L_max <= U_max))
      throw std::invalid_argument("MinimaxConfig: L_max must be <= U_max");
  }
};

struct InnerResult {
  double value;  // bits
  double U;
  double r;
};

struct MinimaxResult {
  double ri;  // bits/symbol
  GamePoint witness{0.0, 0.0, 0.0};
  double inner_value_at_witness_L = 0.0;
  bool converged = true;
};

// Full result of one rate-distortion query at (D, p): the two upper bounds,
// the trivial and improved lower bounds, and the witness of the game.
struct BoundSet {
  double D;
  double ub1;
  double ub2;
  double lb_trivial;
  double lb_improved;
  double ri;
  GamePoint game_point{0.0, 0.0, 0.0};
};

// Adversary's distortion budget r*L^2 + 2p * int_L^U (s-L)^2 phi(s) ds.
double distortion_budget_T1(const GamePoint& gp, double p);

// Large-deviations payoff of confusing a fresh Bernoulli(p) codeword with
// the true support at the given game point.
double payoff_h(const GamePoint& gp, double p);

// min over {U >= L, r in [0,1-p], T1 <= D} of payoff_h. Since the payoff is
// non-increasing in r, the adversary always takes the full residual budget
// r = min(1-p, (D - 2p*I)/L^2), leaving a 1-D scan over U.
InnerResult inner_min(double L, double D, double p, const MinimaxConfig& cfg);

// max over L >= 0 of inner_min: coarse grid plus golden-section refinement.
MinimaxResult improvement_ri(double D, double p, const MinimaxConfig& cfg);

double improved_lower_bound(double D, double p, const MinimaxConfig& cfg);

// Computes every bound at (D, p) and enforces the ordering invariants
// (throws std::logic_error on violation: a lower bound crossing an upper
// bound means the optimizer is broken).
BoundSet bound_set(double D, double p, const MinimaxConfig& cfg);

}  // namespace bgrd
