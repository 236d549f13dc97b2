// Acceptance gate: one line per criterion, nonzero exit if any fail.
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "bgrd/bounds.hpp"
#include "bgrd/channel.hpp"
#include "bgrd/codec.hpp"
#include "bgrd/minimax.hpp"
#include "bgrd/rng.hpp"
#include "bgrd/special_functions.hpp"
#include "bgrd/typicality.hpp"

using namespace bgrd;

namespace {

int failures = 0;

void report(int id, bool pass, const std::string& what) {
  std::printf("%s criterion %2d: %s\n", pass ? "PASS" : "FAIL", id, what.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

std::string capture(const std::string& args) {
  const std::string cmd = std::string(BGRD_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return "<popen failed>";
  std::string out;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0) out.append(buf, got);
  pclose(pipe);
  return out;
}

// 2-D (U, r) exhaustive grid; both axes follow the feasible region (see
// the note in test_minimax.cpp).
double brute_force_inner(double L, double D, double p, int grid = 1200) {
  if (L == 0.0) return 0.0;
  double u_feas = 8.0;
  if (2.0 * p * shifted_square_integral(L, 8.0) > D) {
    double lo = L, hi = 8.0;
    for (int i = 0; i < 200; ++i) {
      const double mid = 0.5 * (lo + hi);
      if (2.0 * p * shifted_square_integral(L, mid) <= D)
        lo = mid;
      else
        hi = mid;
    }
    u_feas = lo;
  }
  double best = kInf;
  for (int i = 0; i < grid; ++i) {
    const double U = L + (u_feas - L) * i / (grid - 1.0);
    const double budget = 2.0 * p * shifted_square_integral(L, U);
    if (budget > D) break;
    const double r_hi = std::min(1.0 - p, (D - budget) / (L * L));
    for (int j = 0; j < 300; ++j) {
      const double r = r_hi * j / 299.0;
      const double u = p * tail_prob(U);
      const double mass = u + r;
      double h = 0.0;
      if (mass > 0.0 && u / mass > p) h = mass * binary_kl(u / mass, p);
      best = std::min(best, h);
      if (best == 0.0) return 0.0;
    }
  }
  return best;
}

void criterion_1() {
  bool ok = std::abs(gaussian_rd(0.25, 1.0) - 1.0) < 1e-12;
  for (double s2 : {0.5, 1.0, 2.0, 4.0, 9.0})
    ok = ok && std::abs(gaussian_rd(s2, s2)) < 1e-12;
  report(1, ok, "Gaussian R(D) exactness");
}

void criterion_2() {
  bool ok = true;
  for (int i = 0; i < 10; ++i) {
    const double p = 0.05 + 0.09 * i;
    for (int j = 0; j < 10; ++j) {
      const double D = (0.05 + 0.095 * j) * p;
      if (std::abs(upper_bound_1(D, p) - lower_bound_trivial(D, p) -
                   binary_entropy(p)) >= 1e-12)
        ok = false;
    }
  }
  report(2, ok, "H(p)-gap identity on 100-point grid");
}

void criterion_3() {
  const MinimaxConfig cfg;
  bool ok = true;
  std::string detail = "low-distortion asymptote of ri:";
  for (double p : {0.01, 0.05, 0.1, 0.25}) {
    const double target = p * std::log2(1.0 / p);
    const double ri = improvement_ri(1e-6, p, cfg).ri;
    const double gap = target - ri;
    char buf[80];
    std::snprintf(buf, sizeof(buf), " p=%g gap=%.4f", p, gap);
    detail += buf;
    if (std::abs(gap) > 0.02) ok = false;
  }
  report(3, ok, detail);
}

void criterion_4() {
  const MinimaxConfig cfg;
  const int points = 60;
  std::vector<double> ri(points);
  for (int i = 0; i < points; ++i) {
    const double D = 1e-6 * std::pow(0.1 / 1e-6, i / (points - 1.0));
    ri[i] = improvement_ri(D, 0.1, cfg).ri;
  }
  bool ok = true;
  for (int i = 1; i < points; ++i)
    if (ri[i] > ri[i - 1] + 1e-5) ok = false;
  report(4, ok, "ri non-increasing over 60 log-spaced D");
}

void criterion_5() {
  const MinimaxConfig cfg;
  bool ok = true;
  for (int i = 0; i < 40; ++i) {
    const double D = 0.005 + (0.1 - 0.005) * i / 39.0;
    try {
      const BoundSet bs = bound_set(D, 0.1, cfg);
      if (bs.lb_improved > std::min(bs.ub1, bs.ub2) + 1e-9) ok = false;
    } catch (const std::logic_error&) {
      ok = false;
    }
  }
  report(5, ok, "bound ordering on the 40-point distortion grid");
}

void criterion_6() {
  const MinimaxConfig cfg;
  CounterRng rng(2718, 1);
  bool ok = true;
  for (int trial = 0; trial < 50; ++trial) {
    const double L = 0.05 + 1.8 * rng.next_uniform();
    const double D = std::pow(10.0, -4.0 + 2.6 * rng.next_uniform());
    const double p = 0.02 + 0.28 * rng.next_uniform();
    const double fast = inner_min(L, D, p, cfg).value;
    const double slow = brute_force_inner(L, D, p);
    if (std::abs(fast - slow) >= 1e-4) ok = false;
  }
  report(6, ok, "inner minimum matches 2-D brute force on 50 triples");
}

void criterion_7() {
  CounterRng rng(314, 2);
  bool ok = true;
  for (int trial = 0; trial < 1000; ++trial) {
    double a = 8.0 * (rng.next_uniform() - 0.5);
    double b = 8.0 * (rng.next_uniform() - 0.5);
    if (a > b) std::swap(a, b);
    const int pick = trial % 5;
    const Interval iv = pick == 3   ? Interval(a, kInf)
                        : pick == 4 ? Interval(-kInf, b)
                                    : Interval(a, b);
    const int l = trial % 3;
    const double closed = truncated_moment(l, iv);
    const double quad = quadrature_oracle(
        [l](double s) {
          const double w = std_normal_pdf(s);
          return l == 0 ? w : (l == 1 ? s * w : s * s * w);
        },
        iv, 1e-12);
    if (std::abs(closed - quad) >= 1e-10) ok = false;
  }
  report(7, ok, "truncated moments vs quadrature, 1000 cases at 1e-10");
}

void criterion_8() {
  CounterRng rng(161, 3);
  bool ok = true;
  int tested = 0;
  while (tested < 10000) {
    const double p = 0.02 + 0.6 * rng.next_uniform();
    const double u = rng.next_uniform();
    const double v = rng.next_uniform();
    if (u / (u + v) <= p * 1.02) continue;
    ++tested;
    const double base = binomial_exponent(u, v, p);
    if (binomial_exponent(u * 1.01, v, p) <= base) ok = false;
    if (binomial_exponent(u, v * 1.01, p) >= base) ok = false;
  }
  report(8, ok, "binomial exponent monotone in (u, v) on 10^4 triples");
}

void criterion_9() {
  CodecConfig cfg;
  cfg.n = 10000;
  cfg.p = 0.1;
  cfg.target_D = 0.025;
  cfg.epsilon1 = 0.01;
  cfg.seed = 1;
  const CodecReport rep = run_codec(cfg, 100);
  const MinimaxConfig mcfg;
  const double lb = improved_lower_bound(rep.empirical_distortion, 0.1, mcfg);
  const double ub = upper_bound_1(rep.empirical_distortion, 0.1) + 0.255 * 0.1 + 0.05;
  char buf[120];
  std::snprintf(buf, sizeof(buf),
                "codec sandwich: lb=%.4f rate=%.4f ub=%.4f at D=%.5f", lb,
                rep.empirical_rate, ub, rep.empirical_distortion);
  report(9, rep.empirical_rate >= lb - 1e-6 && rep.empirical_rate <= ub, buf);
}

void criterion_10() {
  const std::vector<std::size_t> ns{100, 1000, 10000};
  const auto rows = concentration_experiment(ns, 0.05, 200, 42);
  const double slack = 2.0 / std::sqrt(200.0);
  bool ok = rows.size() == 3;
  for (std::size_t i = 1; ok && i < rows.size(); ++i)
    if (rows[i].fraction_typical < rows[i - 1].fraction_typical - slack) ok = false;
  char buf[120];
  std::snprintf(buf, sizeof(buf),
                "typicality concentration: fractions %.3f %.3f %.3f",
                rows[0].fraction_typical, rows[1].fraction_typical,
                rows[2].fraction_typical);
  report(10, ok, buf);
}

void criterion_11() {
  const double ri = improvement_ri(0.01, 0.1, MinimaxConfig{}).ri;
  ChannelConfig cfg;
  cfg.p = 0.1;
  cfg.D = 0.01;
  cfg.trials = 500;
  cfg.seed = 11;

  cfg.n = 1000;
  cfg.rate_tilde = 0.5 * ri;
  const double below = run_channel_experiment(cfg).error_rate;
  cfg.rate_tilde = 2.0 * ri;
  const double above = run_channel_experiment(cfg).error_rate;
  bool ok = below < above;

  cfg.rate_tilde = 0.5 * ri;
  double prev = 1.0;
  for (std::size_t n : {200, 500, 1000}) {
    cfg.n = n;
    const double err = run_channel_experiment(cfg).error_rate;
    if (err > prev + 1e-12) ok = false;
    prev = err;
  }
  char buf[120];
  std::snprintf(buf, sizeof(buf),
                "channel threshold: err(0.5R)=%.3g err(2R)=%.3g at n=1000", below,
                above);
  report(11, ok, buf);
}

void criterion_12() {
  const std::vector<std::string> cmds{
      "bounds --p 0.1 --d-min 0.01 --d-max 0.05 --points 3 --seed 5",
      "ri --p 0.1 --d-min 1e-4 --d-max 1e-2 --points 3 --seed 5",
      "simulate-codec --n 2000 --blocks 5 --target-d 0.025 --seed 5",
      "simulate-channel --n 200 --rate-tilde 0.02 --d 0.01 --trials 10 --seed 5",
      "typicality --n 100 --n 1000 --trials 10 --seed 5",
      "--format json bounds --d-min 0.02 --d-max 0.02 --points 1 --seed 5",
  };
  bool ok = true;
  for (const auto& c : cmds) {
    const std::string a = capture(c);
    const std::string b = capture(c);
    if (a.empty() || a != b) ok = false;
  }
  report(12, ok, "seeded commands byte-identical across runs");
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  criterion_11();
  criterion_12();
  if (failures > 0) {
    std::printf("%d of 12 criteria failed\n", failures);
    return 1;
  }
  std::printf("all 12 criteria passed\n");
  return 0;
}
