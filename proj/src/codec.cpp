#include "bgrd/codec.hpp"

#include <cmath>
#include <stdexcept>

#include "bgrd/bitio.hpp"
#include "bgrd/parallel.hpp"
#include "bgrd/rng.hpp"

namespace bgrd {

void CodecConfig::validate() const {
  if (n < 1) throw std::invalid_argument("CodecConfig: n < 1");
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("CodecConfig: p not in (0,1)");
  if (!(target_D > 0.0)) throw std::invalid_argument("CodecConfig: target_D <= 0");
  if (!(epsilon1 > 0.0)) throw std::invalid_argument("CodecConfig: epsilon1 <= 0");
}

SourceBlock sample_source(std::size_t n, double p, std::uint64_t seed) {
  CounterRng rng(seed, 0x736f7572ull);
  SourceBlock blk;
  blk.b.resize(n);
  blk.s.resize(n);
  blk.x.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    blk.b[i] = rng.next_bernoulli(p) ? 1 : 0;
    blk.s[i] = rng.next_normal();
    blk.x[i] = blk.b[i] ? blk.s[i] : 0.0;
  }
  return blk;
}

namespace {

void put_bigint(BitWriter& w, const BigInt& v, int width) {
  for (int i = width - 1; i >= 0; --i)
    w.put_bit(boost::multiprecision::bit_test(v, static_cast<unsigned>(i)));
}

BigInt get_bigint(BitReader& r, int width) {
  BigInt v = 0;
  for (int i = 0; i < width; ++i) {
    v <<= 1;
    if (r.get_bit()) v |= 1;
  }
  return v;
}

}  // namespace

Codec::Codec(const CodecConfig& cfg)
    : cfg_(cfg),
      support_((cfg.validate(), cfg.n), cfg.p, cfg.epsilon1),
      quantizer_(UniformQuantizer::calibrate(cfg.target_D / cfg.p)),
      rank_width_bits_(support_.width_bits()) {}

Codec::Block Codec::encode(std::span<const double> x) const {
  if (x.size() != cfg_.n) throw std::invalid_argument("Codec::encode: length mismatch");
  std::vector<std::uint8_t> b(cfg_.n);
  std::vector<double> values;
  for (std::size_t i = 0; i < cfg_.n; ++i) {
    b[i] = x[i] != 0.0 ? 1 : 0;
    if (b[i]) values.push_back(x[i]);
  }

  Block blk;
  BitWriter w;
  if (!support_.in_shell(values.size())) {
    blk.escaped = true;
    w.put_bit(true);
    blk.support_bits = static_cast<std::size_t>(support_.width_bits());
    blk.value_bits = 0;
    blk.bytes = w.bytes();
    return blk;
  }

  w.put_bit(false);
  w.put_bits(values.size(), 16);
  put_bigint(w, combination_rank(b), rank_width_bits_);

  UniformQuantizer::Result q = quantizer_.quantize(values);
  w.put_bits(q.bytes.size(), 32);
  w.put_bytes(q.bytes);

  blk.support_bits = static_cast<std::size_t>(support_.width_bits());
  blk.value_bits = q.bytes.size() * 8;
  blk.clamped = q.clamped;
  blk.bytes = w.bytes();
  return blk;
}

std::vector<double> Codec::decode(const Block& block) const {
  BitReader r(block.bytes);
  if (r.get_bit()) return std::vector<double>(cfg_.n, 0.0);

  const std::size_t k = r.get_bits(16);
  const BigInt rank = get_bigint(r, rank_width_bits_);
  std::vector<std::uint8_t> b = combination_unrank(rank, cfg_.n, k);

  const std::size_t payload = r.get_bits(32);
  std::vector<int> idx = quantizer_.decode_indices(r.get_bytes(payload), k);

  std::vector<double> xhat(cfg_.n, 0.0);
  std::size_t j = 0;
  for (std::size_t i = 0; i < cfg_.n; ++i)
    if (b[i]) xhat[i] = quantizer_.reconstruct(idx[j++]);
  return xhat;
}

std::vector<double> Codec::round_trip(std::span<const double> x) const {
  return decode(encode(x));
}

CodecReport Codec::run(std::size_t blocks) const {
  if (blocks < 1) throw std::invalid_argument("Codec::run: blocks < 1");

  struct BlockStats {
    double bits = 0.0;
    double support_bits = 0.0;
    double value_bits = 0.0;
    double sq_err = 0.0;
    double escape_sq_err = 0.0;
    bool escaped = false;
    std::size_t clamped = 0;
  };
  std::vector<BlockStats> stats(blocks);

  parallel_for(blocks, [&](std::size_t bi) {
    const std::uint64_t block_seed = mix64(cfg_.seed ^ (0xB10C0000ull + bi));
    SourceBlock src = sample_source(cfg_.n, cfg_.p, block_seed);
    Block blk = encode(src.x);
    std::vector<double> xhat = decode(blk);

    BlockStats& st = stats[bi];
    st.support_bits = static_cast<double>(blk.support_bits);
    st.value_bits = static_cast<double>(blk.value_bits);
    st.bits = st.support_bits + st.value_bits;
    st.escaped = blk.escaped;
    st.clamped = blk.clamped;
    for (std::size_t i = 0; i < cfg_.n; ++i) {
      const double e = src.x[i] - xhat[i];
      st.sq_err += e * e;
    }
    if (blk.escaped) st.escape_sq_err = st.sq_err;
  });

  CodecReport rep;
  rep.n = cfg_.n;
  rep.blocks = blocks;
  rep.seed = cfg_.seed;
  double bits = 0.0, sup = 0.0, val = 0.0, err = 0.0, esc = 0.0;
  for (const BlockStats& st : stats) {
    bits += st.bits;
    sup += st.support_bits;
    val += st.value_bits;
    err += st.sq_err;
    esc += st.escape_sq_err;
    rep.atypical_flag_count += st.escaped ? 1 : 0;
    rep.clamped_values += st.clamped;
  }
  const double denom = static_cast<double>(cfg_.n) * static_cast<double>(blocks);
  rep.empirical_rate = bits / denom;
  rep.support_bits = sup / static_cast<double>(blocks);
  rep.value_bits = val / static_cast<double>(blocks);
  rep.empirical_distortion = err / denom;
  rep.escape_distortion = esc / denom;
  return rep;
}

CodecReport run_codec(const CodecConfig& cfg, std::size_t blocks) {
  return Codec(cfg).run(blocks);
}

}  // namespace bgrd
