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
#include "mtcc/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <istream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "mtcc/analytics.hpp"
#include "mtcc/channel.hpp"
#include "mtcc/decoder.hpp"
#include "mtcc/delivery.hpp"
#include "mtcc/placement.hpp"
#include "mtcc/rng.hpp"

namespace mtcc {

namespace {

CacheMap make_placement(const ExperimentSpec& spec, std::uint64_t seed) {
  switch (spec.placement) {
    case PlacementKind::Decentralized:
      return place_decentralized(spec.cfg, seed);
    case PlacementKind::Centralized:
      return place_centralized(spec.cfg, seed);
    case PlacementKind::Hybrid:
      return place_hybrid(spec.cfg, spec.centralized_users, seed);
  }
  throw std::logic_error("unknown placement kind");
}

struct PartCheck {
  long long attempted = 0;
  long long failed = 0;
  bool ok = true;
};

PartCheck check_part(const gf::Field& f, const CacheMap& cache, const DemandVector& demands,
                     const FileLibrary& lib, const std::vector<int>& group,
                     const TransmissionSchedule& part) {
  PartCheck out;
  if (group.empty()) return out;
  const CacheMap sub_cache = cache.restrict_users(group);
  DemandVector sub_demands;
  for (int u : group) sub_demands.push_back(demands[static_cast<std::size_t>(u)]);
  const PieceTable sub_table = PieceTable::build(sub_cache, sub_demands);
  const VerifyReport rep = verify_all(f, sub_cache, lib, sub_table, part);
  out.attempted = rep.attempted_blocks;
  out.failed = rep.failed_blocks;
  out.ok = rep.ok_modulo_failures();
  return out;
}

}  // namespace

TrialResult run_trial(const ExperimentSpec& spec, int trial_index) {
  spec.cfg.validate();
  const gf::Field& f = gf::Field::of(spec.cfg.field_bits);
  const std::uint64_t trial_seed = mix_seed(spec.seed, static_cast<std::uint64_t>(trial_index));
  const std::uint64_t placement_seed = mix_seed(trial_seed, 1);
  const std::uint64_t network_seed = mix_seed(trial_seed, 2);
  const std::uint64_t coefficient_seed = mix_seed(trial_seed, 3);
  const std::uint64_t library_seed = mix_seed(trial_seed, 4);

  const DemandVector demands =
      spec.demands.empty() ? all_distinct_demands(spec.cfg) : spec.demands;
  if (static_cast<int>(demands.size()) != spec.cfg.users)
    throw std::invalid_argument("demand vector length must equal the user count");

  const FileLibrary lib =
      FileLibrary::random(spec.cfg.files, spec.cfg.file_symbols, f, library_seed);
  const CacheMap cache = make_placement(spec, placement_seed);
  const LinearNetwork net =
      sample_network(spec.cfg.users, spec.cfg.transmitters, f, network_seed);

  TrialResult res;
  if (spec.delivery == DeliveryKind::Joint) {
    const PieceTable table = PieceTable::build(cache, demands);
    const TransmissionSchedule sched = schedule_delivery(f, table, lib, net, coefficient_seed);
    const VerifyReport rep = verify_all(f, cache, lib, table, sched);
    res.slots = sched.total_slots();
    res.attempted_blocks = rep.attempted_blocks;
    res.failed_blocks = rep.failed_blocks;
    res.resample_events = sched.resample_events;
    res.decoded_ok = rep.ok_modulo_failures();
  } else {
    const TdmaSchedule tdma =
        schedule_tdma(f, cache, demands, lib, net, spec.centralized_users, coefficient_seed);
    const PartCheck a = check_part(f, cache, demands, lib, tdma.group_a, tdma.part_a);
    const PartCheck b = check_part(f, cache, demands, lib, tdma.group_b, tdma.part_b);
    res.slots = tdma.total_slots();
    res.attempted_blocks = a.attempted + b.attempted;
    res.failed_blocks = a.failed + b.failed;
    res.resample_events = tdma.part_a.resample_events + tdma.part_b.resample_events;
    res.decoded_ok = a.ok && b.ok;
  }
  return res;
}

Aggregate run_monte_carlo(const ExperimentSpec& spec) {
  if (spec.trials <= 0) throw std::invalid_argument("trial count must be positive");
  std::vector<TrialResult> results(static_cast<std::size_t>(spec.trials));

  int workers = spec.threads > 0 ? spec.threads
                                 : static_cast<int>(std::thread::hardware_concurrency());
  workers = std::clamp(workers, 1, spec.trials);

  std::atomic<int> next{0};
  std::mutex error_mutex;
  std::exception_ptr error;

  const auto body = [&] {
    for (;;) {
      const int i = next.fetch_add(1);
      if (i >= spec.trials) return;
      try {
        results[static_cast<std::size_t>(i)] = run_trial(spec, i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        return;
      }
    }
  };

  if (workers == 1) {
    body();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(body);
    for (auto& t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);

  Aggregate agg;
  agg.trials = spec.trials;
  const double F = static_cast<double>(spec.cfg.file_symbols);
  double mean = 0.0;
  for (const TrialResult& r : results) {
    mean += static_cast<double>(r.slots) / F;
    agg.attempted_blocks += r.attempted_blocks;
    agg.decode_failures += r.failed_blocks;
    agg.resample_events += r.resample_events;
    if (!r.decoded_ok) agg.all_decoded_ok = false;
  }
  mean /= static_cast<double>(spec.trials);
  double ss = 0.0;
  for (const TrialResult& r : results) {
    const double d = static_cast<double>(r.slots) / F - mean;
    ss += d * d;
  }
  agg.mean_delay_norm = mean;
  agg.std_delay_norm = spec.trials > 1 ? std::sqrt(ss / (spec.trials - 1)) : 0.0;
  return agg;
}

ResultRow run_row(const std::string& param, double value, const ExperimentSpec& spec) {
  const Aggregate agg = run_monte_carlo(spec);
  const int K = spec.cfg.users;
  const int L = spec.cfg.transmitters;
  const double p = spec.cfg.cache_ratio();

  int split = 0;
  if (spec.delivery == DeliveryKind::TimeShared || spec.placement == PlacementKind::Hybrid)
    split = spec.centralized_users;
  else if (spec.placement == PlacementKind::Centralized)
    split = K;

  ResultRow row;
  row.sweep_param = param;
  row.sweep_value = value;
  row.mean_delay_norm = agg.mean_delay_norm;
  row.std_delay_norm = agg.std_delay_norm;
  row.analytic_infinite = delay_infinite(K, L, p);
  row.analytic_tdma = delay_tdma(split, K - split, L, p);
  row.decode_failures = agg.decode_failures;
  row.trials = agg.trials;
  row.seed = spec.seed;
  row.resample_events = agg.resample_events;
  return row;
}

std::vector<std::string> figure_names() { return {"fig2", "fig3", "fig4", "fig5", "fig6"}; }

std::vector<ResultRow> sweep_figure(const std::string& name, int trials, std::uint64_t seed,
                                    int threads) {
  std::vector<ResultRow> rows;
  const auto base_spec = [&](SystemConfig cfg) {
    ExperimentSpec spec;
    spec.cfg = cfg;
    spec.trials = trials;
    spec.seed = seed;
    spec.threads = threads;
    return spec;
  };

  if (name == "fig2") {
    for (double m : {2.0, 4.0, 6.0}) {
      for (int l = 1; l <= 6; ++l) {
        ExperimentSpec spec = base_spec({.users = 10, .transmitters = l, .files = 10,
                                         .cache_files = m, .file_symbols = 100});
        char param[32];
        std::snprintf(param, sizeof param, "l@m=%g", m);
        rows.push_back(run_row(param, l, spec));
      }
    }
  } else if (name == "fig3") {
    for (int fsize : {100, 1000, 10000, 100000}) {
      for (int l = 1; l <= 4; ++l) {
        ExperimentSpec spec = base_spec({.users = 4, .transmitters = l, .files = 4,
                                         .cache_files = 2.0, .file_symbols = fsize});
        char param[32];
        std::snprintf(param, sizeof param, "l@f=%d", fsize);
        rows.push_back(run_row(param, l, spec));
      }
    }
  } else if (name == "fig4" || name == "fig5") {
    const int split = name == "fig4" ? 4 : 6;
    const std::vector<double> ms =
        name == "fig4" ? std::vector<double>{0, 2, 4, 6, 8} : std::vector<double>{0, 4, 8};
    struct Scheme {
      const char* tag;
      PlacementKind placement;
      DeliveryKind delivery;
    };
    const Scheme schemes[] = {
        {"m@dec", PlacementKind::Decentralized, DeliveryKind::Joint},
        {"m@hybrid-tdma", PlacementKind::Hybrid, DeliveryKind::TimeShared},
        {"m@centralized", PlacementKind::Centralized, DeliveryKind::Joint},
    };
    for (const Scheme& s : schemes) {
      for (double m : ms) {
        ExperimentSpec spec = base_spec({.users = 8, .transmitters = 1, .files = 8,
                                         .cache_files = m, .file_symbols = 1000});
        spec.placement = s.placement;
        spec.delivery = s.delivery;
        spec.centralized_users = s.placement == PlacementKind::Hybrid ? split : 0;
        rows.push_back(run_row(s.tag, m, spec));
      }
    }
  } else if (name == "fig6") {
    for (const char* tag : {"kc@tdma", "kc@joint"}) {
      const bool tdma = std::string(tag) == "kc@tdma";
      for (int kc = 0; kc <= 10; kc += 2) {
        ExperimentSpec spec = base_spec({.users = 10, .transmitters = 1, .files = 10,
                                         .cache_files = 5.0, .file_symbols = 1000});
        spec.placement = PlacementKind::Hybrid;
        spec.delivery = tdma ? DeliveryKind::TimeShared : DeliveryKind::Joint;
        spec.centralized_users = kc;
        rows.push_back(run_row(tag, kc, spec));
      }
    }
  } else {
    throw std::invalid_argument("unknown figure preset: " + name);
  }
  return rows;
}

namespace {

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace

void emit_csv(const std::vector<ResultRow>& rows, std::ostream& os) {
  os << kCsvHeader << '\n';
  for (const ResultRow& r : rows) {
    os << r.sweep_param << ',' << fmt_double(r.sweep_value) << ','
       << fmt_double(r.mean_delay_norm) << ',' << fmt_double(r.std_delay_norm) << ','
       << fmt_double(r.analytic_infinite) << ',' << fmt_double(r.analytic_tdma) << ','
       << r.decode_failures << ',' << r.trials << ',' << r.seed << '\n';
  }
}

void emit_json(const std::vector<ResultRow>& rows, std::ostream& os) {
  os << "[\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const ResultRow& r = rows[i];
    os << "  {\"sweep_param\":\"" << r.sweep_param << "\",\"sweep_value\":"
       << fmt_double(r.sweep_value) << ",\"mean_delay_norm\":" << fmt_double(r.mean_delay_norm)
       << ",\"std_delay_norm\":" << fmt_double(r.std_delay_norm)
       << ",\"analytic_infinite\":" << fmt_double(r.analytic_infinite)
       << ",\"analytic_tdma\":" << fmt_double(r.analytic_tdma)
       << ",\"decode_failures\":" << r.decode_failures << ",\"trials\":" << r.trials
       << ",\"seed\":" << r.seed << '}' << (i + 1 < rows.size() ? "," : "") << '\n';
  }
  os << "]\n";
}

std::vector<ResultRow> parse_csv(std::istream& is) {
  std::vector<ResultRow> rows;
  std::string line;
  if (!std::getline(is, line)) throw std::invalid_argument("empty result table");
  if (line != kCsvHeader) throw std::invalid_argument("unexpected result header: " + line);
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells.size() != 9) throw std::invalid_argument("malformed result line: " + line);
    ResultRow r;
    r.sweep_param = cells[0];
    r.sweep_value = std::stod(cells[1]);
    r.mean_delay_norm = std::stod(cells[2]);
    r.std_delay_norm = std::stod(cells[3]);
    r.analytic_infinite = std::stod(cells[4]);
    r.analytic_tdma = std::stod(cells[5]);
    r.decode_failures = std::stoll(cells[6]);
    r.trials = std::stoi(cells[7]);
    r.seed = std::stoull(cells[8]);
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace mtcc
