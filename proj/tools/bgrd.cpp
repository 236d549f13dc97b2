#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <string>
#include <vector>

#include "bgrd/bounds.hpp"
#include "bgrd/channel.hpp"
#include "bgrd/codec.hpp"
#include "bgrd/minimax.hpp"
#include "bgrd/parallel.hpp"
#include "bgrd/typicality.hpp"

namespace {

using ordered_json = nlohmann::ordered_json;

std::string fmt9(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    out += c;
    if (c == '"') out += '"';
  }
  out += '"';
  return out;
}

std::string render(const std::vector<ordered_json>& rows, const std::string& format) {
  if (format == "json") {
    ordered_json arr = ordered_json::array();
    for (const auto& r : rows) arr.push_back(r);
    return arr.dump(2) + "\n";
  }
  std::string out;
  if (rows.empty()) return out;
  bool first = true;
  for (auto it = rows.front().begin(); it != rows.front().end(); ++it) {
    if (!first) out += ',';
    out += csv_field(it.key());
    first = false;
  }
  out += '\n';
  for (const auto& r : rows) {
    first = true;
    for (auto it = r.begin(); it != r.end(); ++it) {
      if (!first) out += ',';
      const auto& v = it.value();
      if (v.is_number_float())
        out += csv_field(fmt9(v.get<double>()));
      else if (v.is_string())
        out += csv_field(v.get<std::string>());
      else
        out += csv_field(v.dump());
      first = false;
    }
    out += '\n';
  }
  return out;
}

void emit(const std::vector<ordered_json>& rows, const std::string& format,
          const std::string& out_path) {
  const std::string text = render(rows, format);
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open output file: " + out_path);
  f << text;
}

std::vector<double> distortion_grid(double d_min, double d_max, int points,
                                    const std::string& spacing) {
  if (!(d_min > 0.0) || d_max < d_min || points < 1)
    throw std::invalid_argument("need 0 < d-min <= d-max and points >= 1");
  std::vector<double> d(points);
  if (points == 1) {
    d[0] = d_min;
    return d;
  }
  for (int i = 0; i < points; ++i) {
    const double t = static_cast<double>(i) / (points - 1);
    d[i] = spacing == "log" ? d_min * std::pow(d_max / d_min, t)
                            : d_min + t * (d_max - d_min);
  }
  return d;
}

struct GlobalOpts {
  double p = 0.1;
  double sigma2 = 1.0;
  std::uint64_t seed = 0;
  std::string format = "csv";
  std::string out_path;
};

int run(int argc, char** argv) {
  CLI::App app{"Bernoulli-Gaussian rate-distortion bounds and simulations"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "flat key=value config file");

  GlobalOpts g;
  app.add_option("--p", g.p, "Bernoulli probability")->check(CLI::Range(1e-12, 1.0));
  app.add_option("--sigma2", g.sigma2, "Gaussian variance")->check(CLI::PositiveNumber);
  app.add_option("--seed", g.seed, "RNG seed");
  app.add_option("--format", g.format, "output format")
      ->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--out", g.out_path, "write output to file instead of stdout");

  double d_min = 0.005, d_max = 0.1;
  int points = 40;
  std::string spacing = "linear";
  auto* bounds_cmd = app.add_subcommand("bounds", "bound curves over a distortion grid");
  bounds_cmd->add_option("--d-min", d_min, "smallest distortion");
  bounds_cmd->add_option("--d-max", d_max, "largest distortion");
  bounds_cmd->add_option("--points", points, "grid size");
  bounds_cmd->add_option("--spacing", spacing, "grid spacing")
      ->check(CLI::IsMember({"linear", "log"}));

  double ri_d_min = 1e-6, ri_d_max = 1e-2;
  int ri_points = 40;
  std::string ri_spacing = "log";
  auto* ri_cmd = app.add_subcommand("ri", "improvement term over a distortion grid");
  ri_cmd->add_option("--d-min", ri_d_min, "smallest distortion");
  ri_cmd->add_option("--d-max", ri_d_max, "largest distortion");
  ri_cmd->add_option("--points", ri_points, "grid size");
  ri_cmd->add_option("--spacing", ri_spacing, "grid spacing")
      ->check(CLI::IsMember({"linear", "log"}));

  std::size_t codec_n = 10000, codec_blocks = 100;
  double codec_d = 0.025, codec_eps1 = 0.01;
  auto* codec_cmd = app.add_subcommand("simulate-codec", "two-stage coder Monte Carlo");
  codec_cmd->add_option("--n", codec_n, "block length")->check(CLI::PositiveNumber);
  codec_cmd->add_option("--target-d", codec_d, "distortion target")
      ->check(CLI::PositiveNumber);
  codec_cmd->add_option("--epsilon1", codec_eps1, "support typicality slack")
      ->check(CLI::PositiveNumber);
  codec_cmd->add_option("--blocks", codec_blocks, "number of blocks")
      ->check(CLI::PositiveNumber);

  std::size_t chan_n = 500, chan_trials = 100;
  double chan_rate = 0.02, chan_L = -1.0, chan_d = 0.01;
  double chan_eps = 0.05, chan_delta1 = 0.005;
  auto* chan_cmd = app.add_subcommand("simulate-channel", "random coding Monte Carlo");
  chan_cmd->add_option("--n", chan_n, "block length")->check(CLI::PositiveNumber);
  chan_cmd->add_option("--rate-tilde", chan_rate, "codebook rate in bits/symbol")
      ->check(CLI::PositiveNumber);
  chan_cmd->add_option("--L", chan_L, "score threshold; negative uses the witness L");
  chan_cmd->add_option("--d", chan_d, "codec distortion target")
      ->check(CLI::PositiveNumber);
  chan_cmd->add_option("--trials", chan_trials, "Monte Carlo trials")
      ->check(CLI::PositiveNumber);
  chan_cmd->add_option("--epsilon", chan_eps, "typicality slack");
  chan_cmd->add_option("--delta1", chan_delta1, "distortion-excess slack");

  std::vector<std::size_t> typ_n{100, 1000, 10000};
  double typ_eps = 0.05;
  int typ_trials = 200, typ_K = 80;
  double typ_omega = 0.1;
  auto* typ_cmd = app.add_subcommand("typicality", "typical-set concentration experiment");
  typ_cmd->add_option("--n", typ_n, "block lengths");
  typ_cmd->add_option("--epsilon", typ_eps, "typicality slack")
      ->check(CLI::PositiveNumber);
  typ_cmd->add_option("--trials", typ_trials, "trials per n")->check(CLI::PositiveNumber);
  typ_cmd->add_option("--K", typ_K, "endpoint grid half-width");
  typ_cmd->add_option("--omega", typ_omega, "endpoint grid step");

  CLI11_PARSE(app, argc, argv);

  const bgrd::SourceModel model(g.p, g.sigma2);
  const bgrd::MinimaxConfig mcfg;
  std::vector<ordered_json> rows;

  if (*bounds_cmd) {
    const std::vector<double> grid = distortion_grid(d_min, d_max, points, spacing);
    std::vector<bgrd::BoundSet> sets(grid.size(), bgrd::BoundSet{});
    bgrd::parallel_for(grid.size(), [&](std::size_t i) {
      const auto [pn, dn] = bgrd::scale_reduce(model, grid[i]);
      sets[i] = bgrd::bound_set(dn, pn, mcfg);
    });
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const bgrd::BoundSet& b = sets[i];
      rows.push_back({{"D", grid[i]},
                      {"ub1", b.ub1},
                      {"ub2", b.ub2},
                      {"lb_trivial", b.lb_trivial},
                      {"lb_improved", b.lb_improved},
                      {"ri", b.ri},
                      {"L", b.game_point.L},
                      {"U", b.game_point.U},
                      {"r", b.game_point.r}});
    }
  } else if (*ri_cmd) {
    const std::vector<double> grid =
        distortion_grid(ri_d_min, ri_d_max, ri_points, ri_spacing);
    const double asymptote = model.p * std::log2(1.0 / model.p);
    std::vector<double> ri(grid.size(), 0.0);
    bgrd::parallel_for(grid.size(), [&](std::size_t i) {
      const auto [pn, dn] = bgrd::scale_reduce(model, grid[i]);
      ri[i] = bgrd::improvement_ri(dn, pn, mcfg).ri;
    });
    for (std::size_t i = 0; i < grid.size(); ++i)
      rows.push_back({{"D", grid[i]}, {"ri", ri[i]}, {"asymptote", asymptote}});
  } else if (*codec_cmd) {
    bgrd::CodecConfig cfg;
    cfg.n = codec_n;
    cfg.p = model.p;
    cfg.target_D = codec_d / model.sigma2;  // codec works on the unit-variance source
    cfg.epsilon1 = codec_eps1;
    cfg.seed = g.seed;
    const bgrd::CodecReport rep = bgrd::run_codec(cfg, codec_blocks);
    const double d_meas = rep.empirical_distortion;
    rows.push_back({{"n", rep.n},
                    {"blocks", rep.blocks},
                    {"empirical_rate", rep.empirical_rate},
                    {"empirical_distortion", d_meas},
                    {"support_bits", rep.support_bits},
                    {"value_bits", rep.value_bits},
                    {"atypical_flag_count", rep.atypical_flag_count},
                    {"clamped_values", rep.clamped_values},
                    {"escape_distortion", rep.escape_distortion},
                    {"seed", rep.seed},
                    {"lb_improved", bgrd::improved_lower_bound(d_meas, model.p, mcfg)},
                    {"ub1", bgrd::upper_bound_1(d_meas, model.p)},
                    {"ub2", bgrd::upper_bound_2(d_meas, model.p)}});
  } else if (*chan_cmd) {
    bgrd::ChannelConfig cfg;
    cfg.n = chan_n;
    cfg.p = model.p;
    cfg.rate_tilde = chan_rate;
    cfg.L = chan_L;
    cfg.D = chan_d / model.sigma2;
    cfg.trials = chan_trials;
    cfg.seed = g.seed;
    cfg.epsilon = chan_eps;
    cfg.delta1 = chan_delta1;
    const bgrd::ChannelReport rep = bgrd::run_channel_experiment(cfg);
    rows.push_back({{"n", rep.n},
                    {"rate_tilde", rep.rate_tilde},
                    {"log2_M", rep.log2_M},
                    {"error_rate", rep.error_rate},
                    {"trials", rep.trials},
                    {"seed", rep.seed},
                    {"threshold_L", rep.threshold_L},
                    {"margin_min", rep.margin_min},
                    {"margin_mean", rep.margin_mean},
                    {"margin_max", rep.margin_max},
                    {"atypical_codeword", rep.atypical_codeword},
                    {"atypical_values", rep.atypical_values},
                    {"distortion_excess", rep.distortion_excess},
                    {"confusion", rep.confusion}});
  } else if (*typ_cmd) {
    const auto table = bgrd::concentration_experiment(typ_n, typ_eps, typ_trials,
                                                      g.seed, typ_K, typ_omega);
    for (const bgrd::ConcentrationRow& r : table)
      rows.push_back({{"n", r.n},
                      {"epsilon", r.epsilon},
                      {"trials", r.trials},
                      {"fraction_typical", r.fraction_typical},
                      {"seed", r.seed}});
  }

  emit(rows, g.format, g.out_path);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
