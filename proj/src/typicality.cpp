#include "bgrd/typicality.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bgrd/rng.hpp"

namespace bgrd {

double empirical_moment(std::span<const double> s, int l, Interval iv) {
  if (s.empty()) throw std::invalid_argument("empirical_moment: empty sequence");
  if (l < 0 || l > 2) throw std::invalid_argument("empirical_moment: l must be 0, 1 or 2");
  double acc = 0.0;
  for (double v : s) {
    if (v < iv.lo || v > iv.hi) continue;
    acc += (l == 0) ? 1.0 : (l == 1 ? v : v * v);
  }
  return acc / static_cast<double>(s.size());
}

TypicalityReport gaussian_typicality(std::span<const double> s, double epsilon,
                                     int K, double omega) {
  if (s.empty()) throw std::invalid_argument("gaussian_typicality: empty sequence");
  if (!(epsilon > 0.0)) throw std::invalid_argument("gaussian_typicality: epsilon <= 0");
  if (K < 1 || !(omega > 0.0))
    throw std::invalid_argument("gaussian_typicality: bad grid parameters");

  const std::size_t n = s.size();
  std::vector<double> sorted(s.begin(), s.end());
  std::sort(sorted.begin(), sorted.end());

  // suffix sums of 1, s, s^2 over the sorted order
  std::vector<double> suf0(n + 1, 0.0), suf1(n + 1, 0.0), suf2(n + 1, 0.0);
  for (std::size_t i = n; i-- > 0;) {
    suf0[i] = suf0[i + 1] + 1.0;
    suf1[i] = suf1[i + 1] + sorted[i];
    suf2[i] = suf2[i + 1] + sorted[i] * sorted[i];
  }

  TypicalityReport rep;
  rep.n = n;
  rep.epsilon = epsilon;
  rep.endpoints_checked = 2 * K + 3;

  // One-sided cumulative deviations at each endpoint; the double-sided sup
  // over endpoint pairs equals max - min of these.
  std::array<double, 3> dmax{-kInf, -kInf, -kInf};
  std::array<double, 3> dmin{kInf, kInf, kInf};
  std::vector<double> edges;
  edges.reserve(2 * K + 3);
  edges.push_back(-kInf);
  for (int j = -K; j <= K; ++j) edges.push_back(j * omega);
  edges.push_back(kInf);

  for (double t : edges) {
    // empirical l-th moment over (t, inf)
    std::size_t idx;
    if (t == -kInf)
      idx = 0;
    else if (t == kInf)
      idx = n;
    else
      idx = static_cast<std::size_t>(
          std::upper_bound(sorted.begin(), sorted.end(), t) - sorted.begin());
    const double inv_n = 1.0 / static_cast<double>(n);
    const std::array<double, 3> emp{suf0[idx] * inv_n, suf1[idx] * inv_n,
                                    suf2[idx] * inv_n};
    for (int l = 0; l < 3; ++l) {
      const double theo = truncated_moment(l, Interval(t == kInf ? 40.0 : t, kInf));
      const double d = emp[l] - theo;
      dmax[l] = std::max(dmax[l], d);
      dmin[l] = std::min(dmin[l], d);
    }
  }
  for (int l = 0; l < 3; ++l) rep.sup_deviation[l] = dmax[l] - dmin[l];

  double cell_mass = 0.0;
  for (std::size_t e = 0; e + 1 < edges.size(); ++e) {
    for (int l = 0; l < 3; ++l) {
      const Interval cell(edges[e], edges[e + 1]);
      cell_mass = std::max(cell_mass, std::abs(truncated_moment(l, cell)));
    }
  }
  rep.max_cell_mass = cell_mass;

  rep.is_typical = std::max({rep.sup_deviation[0], rep.sup_deviation[1],
                             rep.sup_deviation[2]}) < epsilon;
  return rep;
}

bool bernoulli_typicality(std::span<const std::uint8_t> b, double p, double epsilon) {
  if (b.empty()) throw std::invalid_argument("bernoulli_typicality: empty sequence");
  if (!(p > 0.0 && p < 1.0))
    throw std::invalid_argument("bernoulli_typicality: p must be in (0,1)");
  std::size_t ones = 0;
  for (auto v : b) ones += (v != 0);
  const double freq = static_cast<double>(ones) / static_cast<double>(b.size());
  return std::abs(freq - p) <= epsilon;
}

std::vector<ConcentrationRow> concentration_experiment(
    std::span<const std::size_t> n_values, double epsilon, int trials,
    std::uint64_t seed, int K, double omega) {
  if (trials < 1) throw std::invalid_argument("concentration_experiment: trials < 1");
  std::vector<ConcentrationRow> rows;
  rows.reserve(n_values.size());
  CounterRng base(seed, 0x74797069ull);  // experiment-wide stream
  for (std::size_t ni = 0; ni < n_values.size(); ++ni) {
    const std::size_t n = n_values[ni];
    int typical = 0;
    for (int t = 0; t < trials; ++t) {
      CounterRng rng = base.substream(ni * 1000003ull + static_cast<std::uint64_t>(t));
      std::vector<double> s(n);
      for (auto& v : s) v = rng.next_normal();
      if (gaussian_typicality(s, epsilon, K, omega).is_typical) ++typical;
    }
    rows.push_back({n, epsilon, trials,
                    static_cast<double>(typical) / static_cast<double>(trials), seed});
  }
  return rows;
}

}  // namespace bgrd
