/*
 * Copyright 2026 the mtccsim authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mtcc/analytics.hpp"
#include "mtcc/channel.hpp"
#include "mtcc/content.hpp"
#include "mtcc/decoder.hpp"
#include "mtcc/delivery.hpp"
#include "mtcc/experiment.hpp"
#include "mtcc/placement.hpp"
#include "mtcc/rng.hpp"
#include "mtcc/subsets.hpp"

namespace {

struct CommonOpts {
  int users = 4;
  int transmitters = 2;
  int files = 0;  // 0 -> same as users
  double cache_files = 1.0;
  int file_symbols = 64;
  int field_bits = 16;
  std::string placement = "dec";
  int split = 0;
  std::string delivery = "joint";
  int trials = 100;
  std::uint64_t seed = 12345;
  int threads = 0;
  std::vector<int> demands;
  std::string format = "text";
  std::string out;
};

void add_system_options(CLI::App* cmd, CommonOpts* o) {
  cmd->add_option("--k", o->users, "number of users")->capture_default_str();
  cmd->add_option("--l", o->transmitters, "number of transmitters")->capture_default_str();
  cmd->add_option("--n", o->files, "number of files (default: same as --k)");
  cmd->add_option("--m-cache", o->cache_files, "per-user cache size in files")
      ->capture_default_str();
  cmd->add_option("--file-size", o->file_symbols, "symbols per file")->capture_default_str();
  cmd->add_option("--field-bits", o->field_bits, "field width (8 or 16)")->capture_default_str();
}

void add_scheme_options(CLI::App* cmd, CommonOpts* o) {
  cmd->add_option("--placement", o->placement, "dec | cent | hybrid")->capture_default_str();
  cmd->add_option("--kc", o->split, "centralized / first-served group size")
      ->capture_default_str();
  cmd->add_option("--delivery", o->delivery, "joint | tdma")->capture_default_str();
  cmd->add_option("--demands", o->demands, "demand vector, comma separated file indices")
      ->delimiter(',');
}

void add_run_options(CLI::App* cmd, CommonOpts* o) {
  cmd->add_option("--trials", o->trials, "Monte Carlo trials")->capture_default_str();
  cmd->add_option("--seed", o->seed, "root seed")->capture_default_str();
  cmd->add_option("--threads", o->threads, "worker threads (0 = auto)")->capture_default_str();
}

void add_output_options(CLI::App* cmd, CommonOpts* o, const char* formats) {
  cmd->add_option("--format", o->format, formats)->capture_default_str();
  cmd->add_option("--out", o->out, "output file (default: stdout)");
}

mtcc::ExperimentSpec build_spec(const CommonOpts& o) {
  mtcc::ExperimentSpec spec;
  spec.cfg.users = o.users;
  spec.cfg.transmitters = o.transmitters;
  spec.cfg.files = o.files > 0 ? o.files : o.users;
  spec.cfg.cache_files = o.cache_files;
  spec.cfg.file_symbols = o.file_symbols;
  spec.cfg.field_bits = o.field_bits;
  if (o.placement == "dec") {
    spec.placement = mtcc::PlacementKind::Decentralized;
  } else if (o.placement == "cent") {
    spec.placement = mtcc::PlacementKind::Centralized;
  } else if (o.placement == "hybrid") {
    spec.placement = mtcc::PlacementKind::Hybrid;
  } else {
    throw CLI::ValidationError("--placement", "expected dec, cent or hybrid");
  }
  if (o.delivery == "joint") {
    spec.delivery = mtcc::DeliveryKind::Joint;
  } else if (o.delivery == "tdma") {
    spec.delivery = mtcc::DeliveryKind::TimeShared;
  } else {
    throw CLI::ValidationError("--delivery", "expected joint or tdma");
  }
  spec.centralized_users = o.split;
  spec.demands = o.demands;
  spec.trials = o.trials;
  spec.seed = o.seed;
  spec.threads = o.threads;
  return spec;
}

// Routes output to --out or stdout.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw std::runtime_error("cannot open output file: " + path);
    }
  }
  std::ostream& os() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

void dump_trial_schedule(const mtcc::ExperimentSpec& spec, const std::string& path) {
  const auto& f = mtcc::gf::Field::of(spec.cfg.field_bits);
  const std::uint64_t trial_seed = mtcc::mix_seed(spec.seed, 0);
  const mtcc::DemandVector demands =
      spec.demands.empty() ? mtcc::all_distinct_demands(spec.cfg) : spec.demands;
  const mtcc::FileLibrary lib = mtcc::FileLibrary::random(
      spec.cfg.files, spec.cfg.file_symbols, f, mtcc::mix_seed(trial_seed, 4));
  mtcc::CacheMap cache = [&] {
    const std::uint64_t s = mtcc::mix_seed(trial_seed, 1);
    switch (spec.placement) {
      case mtcc::PlacementKind::Centralized:
        return mtcc::place_centralized(spec.cfg, s);
      case mtcc::PlacementKind::Hybrid:
        return mtcc::place_hybrid(spec.cfg, spec.centralized_users, s);
      default:
        return mtcc::place_decentralized(spec.cfg, s);
    }
  }();
  const mtcc::LinearNetwork net = mtcc::sample_network(spec.cfg.users, spec.cfg.transmitters, f,
                                                       mtcc::mix_seed(trial_seed, 2));
  Sink sink(path == "-" ? std::string() : path);
  if (spec.delivery == mtcc::DeliveryKind::Joint) {
    const mtcc::PieceTable table = mtcc::PieceTable::build(cache, demands);
    const auto sched = mtcc::schedule_delivery(f, table, lib, net, mtcc::mix_seed(trial_seed, 3));
    mtcc::dump_schedule_jsonl(sched, sink.os());
  } else {
    const auto tdma = mtcc::schedule_tdma(f, cache, demands, lib, net, spec.centralized_users,
                                          mtcc::mix_seed(trial_seed, 3));
    mtcc::dump_schedule_jsonl(tdma.part_a, sink.os());
    mtcc::dump_schedule_jsonl(tdma.part_b, sink.os());
  }
}

int cmd_simulate(const CommonOpts& o, const std::string& dump_path) {
  const mtcc::ExperimentSpec spec = build_spec(o);
  const mtcc::Aggregate agg = mtcc::run_monte_carlo(spec);
  if (!dump_path.empty()) dump_trial_schedule(spec, dump_path);

  Sink sink(o.out);
  std::ostream& os = sink.os();
  const double p = spec.cfg.cache_ratio();
  const double inf = mtcc::delay_infinite(spec.cfg.users, spec.cfg.transmitters, p);
  if (o.format == "json") {
    char buf[512];
    std::snprintf(buf, sizeof buf,
                  "{\"mean_delay_norm\":%.6g,\"std_delay_norm\":%.6g,\"analytic_infinite\":%.6g,"
                  "\"decode_failures\":%lld,\"attempted_blocks\":%lld,\"resample_events\":%lld,"
                  "\"trials\":%d,\"all_decoded_ok\":%s}\n",
                  agg.mean_delay_norm, agg.std_delay_norm, inf, agg.decode_failures,
                  agg.attempted_blocks, agg.resample_events, agg.trials,
                  agg.all_decoded_ok ? "true" : "false");
    os << buf;
  } else {
    os << "mean_delay_norm   " << agg.mean_delay_norm << '\n'
       << "std_delay_norm    " << agg.std_delay_norm << '\n'
       << "analytic_infinite " << inf << '\n'
       << "decode_failures   " << agg.decode_failures << " / " << agg.attempted_blocks
       << " blocks\n"
       << "resample_events   " << agg.resample_events << '\n'
       << "trials            " << agg.trials << '\n'
       << "all_decoded_ok    " << (agg.all_decoded_ok ? "yes" : "no") << '\n';
  }
  return agg.all_decoded_ok ? 0 : 2;
}

int cmd_sweep(const CommonOpts& o, const std::string& param, const std::vector<double>& values) {
  std::vector<mtcc::ResultRow> rows;
  for (double v : values) {
    CommonOpts step = o;
    if (param == "l") {
      step.transmitters = static_cast<int>(v);
    } else if (param == "m") {
      step.cache_files = v;
    } else if (param == "kc") {
      step.split = static_cast<int>(v);
    } else if (param == "f") {
      step.file_symbols = static_cast<int>(v);
    } else {
      throw CLI::ValidationError("--param", "expected l, m, kc or f");
    }
    rows.push_back(mtcc::run_row(param, v, build_spec(step)));
  }
  Sink sink(o.out);
  if (o.format == "json") {
    mtcc::emit_json(rows, sink.os());
  } else {
    mtcc::emit_csv(rows, sink.os());
  }
  return 0;
}

int cmd_figure(const CommonOpts& o, const std::string& name) {
  const auto rows = mtcc::sweep_figure(name, o.trials, o.seed, o.threads);
  Sink sink(o.out);
  if (o.format == "json") {
    mtcc::emit_json(rows, sink.os());
  } else {
    mtcc::emit_csv(rows, sink.os());
  }
  return 0;
}

int cmd_analytic(const CommonOpts& o) {
  const int K = o.users;
  const int L = o.transmitters;
  const int N = o.files > 0 ? o.files : o.users;
  const double p = N > 0 ? o.cache_files / N : 0.0;
  const int kc = o.split;
  const mtcc::TaylorDelays t = mtcc::taylor_delays(K, kc, p);

  Sink sink(o.out);
  std::ostream& os = sink.os();
  const auto line = [&](const char* key, double v) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "%-26s %.12g\n", key, v);
    os << buf;
  };
  if (o.format == "json") {
    char buf[1024];
    std::snprintf(
        buf, sizeof buf,
        "{\"delay_infinite\":%.12g,\"delay_infinite_blockwise\":%.12g,\"delay_tdma\":%.12g,"
        "\"delay_decentralized_l1\":%.12g,\"delay_centralized_l1\":%.12g,"
        "\"delay_hybrid_l1\":%.12g,\"taylor_hybrid\":%.12g,\"taylor_centralized\":%.12g,"
        "\"taylor_decentralized\":%.12g,\"delta_tc\":%.12g,\"tc_lower_bound\":%.12g,"
        "\"hybrid_superior\":%s}\n",
        mtcc::delay_infinite(K, L, p), mtcc::delay_infinite_blockwise(K, L, p),
        mtcc::delay_tdma(kc, K - kc, L, p), mtcc::delay_decentralized_l1(K, p),
        mtcc::delay_centralized_l1(K, p), mtcc::delay_hybrid_l1(kc, K - kc, p), t.hybrid,
        t.centralized, t.decentralized, mtcc::delta_tc(K, L, p), mtcc::tc_lower_bound(K, L, p),
        mtcc::hybrid_superior(K, kc) ? "true" : "false");
    os << buf;
  } else {
    line("delay_infinite", mtcc::delay_infinite(K, L, p));
    line("delay_infinite_blockwise", mtcc::delay_infinite_blockwise(K, L, p));
    line("delay_tdma", mtcc::delay_tdma(kc, K - kc, L, p));
    line("delay_decentralized_l1", mtcc::delay_decentralized_l1(K, p));
    line("delay_centralized_l1", mtcc::delay_centralized_l1(K, p));
    line("delay_hybrid_l1", mtcc::delay_hybrid_l1(kc, K - kc, p));
    line("taylor_hybrid", t.hybrid);
    line("taylor_centralized", t.centralized);
    line("taylor_decentralized", t.decentralized);
    line("delta_tc", mtcc::delta_tc(K, L, p));
    line("tc_lower_bound", mtcc::tc_lower_bound(K, L, p));
    os << "hybrid_superior            " << (mtcc::hybrid_superior(K, kc) ? "true" : "false")
       << '\n';
  }
  return 0;
}

int cmd_fit_gamma(const CommonOpts& o, const std::string& input, int alpha) {
  std::vector<double> samples;
  if (!input.empty()) {
    std::ifstream in(input);
    if (!in) throw std::runtime_error("cannot open sample file: " + input);
    double v;
    while (in >> v) samples.push_back(v);
  } else {
    mtcc::SystemConfig cfg;
    cfg.users = o.users;
    cfg.transmitters = o.transmitters;
    cfg.files = o.files > 0 ? o.files : o.users;
    cfg.cache_files = o.cache_files;
    cfg.file_symbols = o.file_symbols;
    cfg.field_bits = o.field_bits;
    cfg.validate();
    const mtcc::DemandVector demands = mtcc::all_distinct_demands(cfg);
    for (int trial = 0; trial < o.trials; ++trial) {
      const std::uint64_t trial_seed = mtcc::mix_seed(o.seed, static_cast<std::uint64_t>(trial));
      const mtcc::CacheMap cache = mtcc::place_decentralized(cfg, mtcc::mix_seed(trial_seed, 1));
      const mtcc::PieceTable table = mtcc::PieceTable::build(cache, demands);
      // Every (requester, helper-set) pair at the level, zeros included for
      // absent pieces so the fit reports how many were dropped.
      for (int r = 0; r < cfg.users; ++r) {
        const mtcc::UserMask others = mtcc::full_mask(cfg.users) & ~(mtcc::UserMask{1} << r);
        mtcc::for_each_subset_of_size(others, alpha - 1, [&](mtcc::UserMask s_mask) {
          samples.push_back(static_cast<double>(table.piece_length(r, s_mask)));
        });
      }
    }
  }

  const mtcc::GammaFit fit = mtcc::fit_gamma(samples);
  std::vector<double> positive;
  positive.reserve(samples.size());
  for (double v : samples) {
    if (v > 0.0) positive.push_back(v);
  }
  const double ks = mtcc::ks_statistic(positive, fit.params);

  Sink sink(o.out);
  std::ostream& os = sink.os();
  if (o.format == "json") {
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "{\"shape\":%.6g,\"scale\":%.6g,\"ks\":%.6g,\"used\":%d,\"dropped_zeros\":%d}\n",
                  fit.params.shape, fit.params.scale, ks, fit.used, fit.dropped_zeros);
    os << buf;
  } else {
    os << "shape         " << fit.params.shape << '\n'
       << "scale         " << fit.params.scale << '\n'
       << "ks            " << ks << '\n'
       << "used          " << fit.used << '\n'
       << "dropped_zeros " << fit.dropped_zeros << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"multi-transmitter coded caching simulator"};
  app.require_subcommand(1);

  CommonOpts o;
  std::string dump_path;
  std::string sweep_param;
  std::vector<double> sweep_values;
  std::string figure_name;
  std::string gamma_input;
  int gamma_alpha = 2;

  CLI::App* simulate = app.add_subcommand("simulate", "run one Monte Carlo configuration");
  add_system_options(simulate, &o);
  add_scheme_options(simulate, &o);
  add_run_options(simulate, &o);
  add_output_options(simulate, &o, "text | json");
  simulate->add_option("--dump-schedule", dump_path,
                       "write the first trial's block layout as JSON lines ('-' for stdout)");

  CLI::App* sweep = app.add_subcommand("sweep", "sweep one parameter, emit a result table");
  add_system_options(sweep, &o);
  add_scheme_options(sweep, &o);
  add_run_options(sweep, &o);
  add_output_options(sweep, &o, "csv | json");
  sweep->add_option("--param", sweep_param, "swept parameter: l, m, kc or f")->required();
  sweep->add_option("--values", sweep_values, "comma separated sweep values")
      ->required()
      ->delimiter(',');

  CLI::App* figure = app.add_subcommand("figure", "run a preset sweep");
  figure->add_option("name", figure_name, "fig2 | fig3 | fig4 | fig5 | fig6")->required();
  add_run_options(figure, &o);
  add_output_options(figure, &o, "csv | json");

  CLI::App* analytic = app.add_subcommand("analytic", "print closed-form delay values");
  add_system_options(analytic, &o);
  analytic->add_option("--kc", o.split, "group split for the time-shared forms")
      ->capture_default_str();
  add_output_options(analytic, &o, "text | json");

  CLI::App* fit = app.add_subcommand("fit-gamma", "fit a Gamma law to piece length samples");
  add_system_options(fit, &o);
  add_run_options(fit, &o);
  add_output_options(fit, &o, "text | json");
  fit->add_option("--alpha", gamma_alpha, "piece level (cached-by count + 1)")
      ->capture_default_str();
  fit->add_option("--input", gamma_input, "read samples from a file instead of simulating");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (*simulate) return cmd_simulate(o, dump_path);
    if (*sweep) return cmd_sweep(o, sweep_param, sweep_values);
    if (*figure) return cmd_figure(o, figure_name);
    if (*analytic) return cmd_analytic(o);
    if (*fit) return cmd_fit_gamma(o, gamma_input, gamma_alpha);
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
