#include "bgrd/channel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "bgrd/codec.hpp"
#include "bgrd/minimax.hpp"
#include "bgrd/parallel.hpp"
#include "bgrd/rng.hpp"
#include "bgrd/typicality.hpp"

namespace bgrd {
namespace {

double log_binomial_tail(std::size_t w, double p, std::size_t s1) {
  // log Pr(Bin(w, p) >= s1)
  if (s1 == 0) return 0.0;
  if (s1 > w) return -std::numeric_limits<double>::infinity();
  const double lp = std::log(p);
  const double lq = std::log1p(-p);
  const double lgw = std::lgamma(static_cast<double>(w) + 1.0);
  double max_term = -std::numeric_limits<double>::infinity();
  std::vector<double> terms;
  terms.reserve(w - s1 + 1);
  for (std::size_t j = s1; j <= w; ++j) {
    const double jd = static_cast<double>(j);
    const double t = lgw - std::lgamma(jd + 1.0) -
                     std::lgamma(static_cast<double>(w - j) + 1.0) + jd * lp +
                     (static_cast<double>(w) - jd) * lq;
    terms.push_back(t);
    max_term = std::max(max_term, t);
  }
  double acc = 0.0;
  for (double t : terms) acc += std::exp(t - max_term);
  return std::min(0.0, max_term + std::log(acc));
}

// 1 - (1 - tail)^{M-1} with M given as log2(M); stable for astronomical M.
double marginal_error(double log2_M, double log_tail) {
  const double M = std::exp2(log2_M);
  if (M <= 1.0) return 0.0;
  if (log_tail >= 0.0) return 1.0;
  if (std::isfinite(M)) {
    const double m1 = std::ceil(M) - 1.0;
    return -std::expm1(m1 * std::log1p(-std::exp(log_tail)));
  }
  // (M-1)*log1p(-tail) ~ -M*tail; carry the exponent in logs
  const double log_exponent = log2_M * std::numbers::ln2 + log_tail;
  if (log_exponent > 3.0) return 1.0;
  return -std::expm1(-std::exp(log_exponent));
}

}  // namespace

void ChannelConfig::validate() const {
  if (n < 1) throw std::invalid_argument("ChannelConfig: n < 1");
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("ChannelConfig: p not in (0,1)");
  if (!(rate_tilde > 0.0)) throw std::invalid_argument("ChannelConfig: rate_tilde <= 0");
  if (!(D > 0.0)) throw std::invalid_argument("ChannelConfig: D <= 0");
  if (trials < 1) throw std::invalid_argument("ChannelConfig: trials < 1");
  if (!(epsilon > 0.0)) throw std::invalid_argument("ChannelConfig: epsilon <= 0");
  if (delta1 < 0.0) throw std::invalid_argument("ChannelConfig: delta1 < 0");
}

std::vector<Codeword> sample_codebook(std::size_t M, std::size_t n, double p,
                                      std::uint64_t seed) {
  if (M < 1) throw std::invalid_argument("sample_codebook: M < 1");
  CounterRng base(seed, 0x636f6465ull);
  std::vector<Codeword> book(M);
  for (std::size_t m = 0; m < M; ++m) {
    CounterRng rng = base.substream(m);
    book[m].resize(n);
    for (std::size_t k = 0; k < n; ++k) book[m][k] = rng.next_bernoulli(p) ? 1 : 0;
  }
  return book;
}

std::size_t score(std::span<const std::uint8_t> c, std::span<const double> xhat, double L) {
  if (c.size() != xhat.size()) throw std::invalid_argument("score: length mismatch");
  std::size_t s = 0;
  for (std::size_t k = 0; k < c.size(); ++k)
    if (c[k] && std::abs(xhat[k]) >= L) ++s;
  return s;
}

std::size_t decode(const std::vector<Codeword>& codebook, std::span<const double> xhat,
                   double L) {
  if (codebook.empty()) throw std::invalid_argument("decode: empty codebook");
  std::size_t best = 0;
  std::size_t best_score = score(codebook[0], xhat, L);
  for (std::size_t m = 1; m < codebook.size(); ++m) {
    const std::size_t s = score(codebook[m], xhat, L);
    if (s > best_score) {
      best = m;
      best_score = s;
    }
  }
  return best;
}

ChannelReport run_channel_experiment(const ChannelConfig& cfg) {
  cfg.validate();

  double L = cfg.L;
  if (L < 0.0) L = improvement_ri(cfg.D, cfg.p, MinimaxConfig{}).witness.L;

  const double log2_M = static_cast<double>(cfg.n) * cfg.rate_tilde;

  CodecConfig ccfg;
  ccfg.n = cfg.n;
  ccfg.p = cfg.p;
  ccfg.target_D = cfg.D;
  ccfg.epsilon1 = cfg.epsilon;  // support shell matches the codeword-typicality slack
  ccfg.seed = cfg.seed;
  const Codec codec(ccfg);

  struct TrialStats {
    double error = 0.0;
    double margin = 0.0;
    bool atypical_codeword = false;
    bool atypical_values = false;
    bool distortion_excess = false;
    double confusion = 0.0;
  };
  std::vector<TrialStats> stats(cfg.trials);

  CounterRng base(cfg.seed, 0x6368616eull);
  parallel_for(cfg.trials, [&](std::size_t t) {
    CounterRng rng = base.substream(t);

    Codeword c1(cfg.n);
    std::vector<double> s(cfg.n), x(cfg.n), support_values;
    for (std::size_t k = 0; k < cfg.n; ++k) c1[k] = rng.next_bernoulli(cfg.p) ? 1 : 0;
    for (std::size_t k = 0; k < cfg.n; ++k) {
      s[k] = rng.next_normal();
      x[k] = c1[k] ? s[k] : 0.0;
      if (c1[k]) support_values.push_back(s[k]);
    }

    const std::vector<double> xhat = codec.round_trip(x);

    std::size_t w = 0;
    for (double v : xhat)
      if (std::abs(v) >= L) ++w;
    const std::size_t s1 = score(c1, xhat, L);

    TrialStats& st = stats[t];
    st.margin = static_cast<double>(s1) - static_cast<double>(w) * cfg.p;
    st.atypical_codeword = !bernoulli_typicality(c1, cfg.p, cfg.epsilon);
    st.atypical_values =
        !gaussian_typicality(support_values, cfg.epsilon).is_typical;
    double dist = 0.0;
    for (std::size_t k = 0; k < cfg.n; ++k) {
      const double e = x[k] - xhat[k];
      dist += e * e;
    }
    st.distortion_excess = dist / static_cast<double>(cfg.n) >= cfg.D + cfg.delta1;

    // Each competitor score is i.i.d. Bin(w, p); marginalize the whole
    // codebook analytically so astronomically large M stays exact. Ties
    // count against the transmitted message (the union-bound event).
    const double log_tail = log_binomial_tail(w, cfg.p, s1);
    st.error = marginal_error(log2_M, log_tail);
    st.confusion = st.error;
  });

  ChannelReport rep;
  rep.n = cfg.n;
  rep.rate_tilde = cfg.rate_tilde;
  rep.log2_M = log2_M;
  rep.trials = cfg.trials;
  rep.seed = cfg.seed;
  rep.threshold_L = L;
  rep.margin_min = std::numeric_limits<double>::infinity();
  rep.margin_max = -std::numeric_limits<double>::infinity();
  double err = 0.0, margin = 0.0;
  for (const TrialStats& st : stats) {
    err += st.error;
    margin += st.margin;
    rep.margin_min = std::min(rep.margin_min, st.margin);
    rep.margin_max = std::max(rep.margin_max, st.margin);
    rep.atypical_codeword += st.atypical_codeword ? 1 : 0;
    rep.atypical_values += st.atypical_values ? 1 : 0;
    rep.distortion_excess += st.distortion_excess ? 1 : 0;
    rep.confusion += st.confusion;
  }
  rep.error_rate = err / static_cast<double>(cfg.trials);
  rep.margin_mean = margin / static_cast<double>(cfg.trials);
  return rep;
}

}  // namespace bgrd
