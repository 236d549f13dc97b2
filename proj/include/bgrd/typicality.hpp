#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "bgrd/special_functions.hpp"

namespace bgrd {

struct TypicalityReport {
  std::size_t n = 0;
  double epsilon = 0.0;
  // Double-sided sup deviation of the empirical l-th truncated moment from
  // the N(0,1) integral, per l in {0,1,2}, over the quantized endpoint grid.
  std::array<double, 3> sup_deviation{0.0, 0.0, 0.0};
  bool is_typical = false;
  int endpoints_checked = 0;
  // Largest theoretical per-cell moment mass of the grid; bounds the
  // residual error of quantizing the continuum sup.
  double max_cell_mass = 0.0;
};

struct ConcentrationRow {
  std::size_t n;
  double epsilon;
  int trials;
  double fraction_typical;
  std::uint64_t seed;
};

// (1/n) * sum_i 1(s_i in iv) * s_i^l, l in {0,1,2}.
double empirical_moment(std::span<const double> s, int l, Interval iv);

// Sup-deviation check over the endpoint grid omega(j) = j*omega,
// j in [-K-1, K+1], with omega(+-(K+1)) = +-infinity.
TypicalityReport gaussian_typicality(std::span<const double> s, double epsilon,
                                     int K = 80, double omega = 0.1);

// |#{ones}/n - p| <= epsilon.
bool bernoulli_typicality(std::span<const std::uint8_t> b, double p, double epsilon);

// Fraction of i.i.d. N(0,1) length-n draws that land in the epsilon-typical
// set, per n; deterministic given seed.
std::vector<ConcentrationRow> concentration_experiment(
    std::span<const std::size_t> n_values, double epsilon, int trials,
    std::uint64_t seed, int K = 80, double omega = 0.1);

}  // namespace bgrd
