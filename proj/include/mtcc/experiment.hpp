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
#ifndef MTCC_EXPERIMENT_HPP_
#define MTCC_EXPERIMENT_HPP_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "mtcc/content.hpp"

namespace mtcc {

enum class PlacementKind { Decentralized, Centralized, Hybrid };
enum class DeliveryKind { Joint, TimeShared };

// One Monte Carlo configuration. centralized_users is the group split: the
// centralized part of a Hybrid placement and/or the first-served group of a
// TimeShared delivery (both use the same split).
struct ExperimentSpec {
  SystemConfig cfg;
  PlacementKind placement = PlacementKind::Decentralized;
  DeliveryKind delivery = DeliveryKind::Joint;
  int centralized_users = 0;
  DemandVector demands;  // empty -> user k demands file k
  int trials = 100;
  std::uint64_t seed = 12345;
  int threads = 0;  // 0 -> hardware concurrency
};

struct TrialResult {
  long long slots = 0;
  long long attempted_blocks = 0;
  long long failed_blocks = 0;
  int resample_events = 0;
  bool decoded_ok = false;  // bit-exact for every user without a counted failure
};

// Runs one seeded trial: placement, library, network, schedule, then a full
// decode of every user checked against the library. Fully determined by
// (spec, trial_index); the per-trial seed never depends on the trial count.
TrialResult run_trial(const ExperimentSpec& spec, int trial_index);

struct Aggregate {
  double mean_delay_norm = 0.0;  // mean over trials of slots / file_symbols
  double std_delay_norm = 0.0;   // sample standard deviation of the same
  long long attempted_blocks = 0;
  long long decode_failures = 0;
  long long resample_events = 0;
  int trials = 0;
  bool all_decoded_ok = true;
};

Aggregate run_monte_carlo(const ExperimentSpec& spec);

// One emitted line of a sweep. resample_events is diagnostic only and is not
// serialized. analytic_infinite is the large-file decentralized limit at the
// row's (K, L, M/N); analytic_tdma is the time-shared limit at the row's group
// split (split 0 degenerates to analytic_infinite, split K to the one-shot
// full-group limit).
struct ResultRow {
  std::string sweep_param;
  double sweep_value = 0.0;
  double mean_delay_norm = 0.0;
  double std_delay_norm = 0.0;
  double analytic_infinite = 0.0;
  double analytic_tdma = 0.0;
  long long decode_failures = 0;
  int trials = 0;
  std::uint64_t seed = 0;
  long long resample_events = 0;
};

// Monte Carlo for one row; param/value label the sweep position.
ResultRow run_row(const std::string& param, double value, const ExperimentSpec& spec);

// Preset sweeps, selected by name:
//   fig2  gain vs antenna count:   K=10 N=10 F=100, M in {2,4,6}, L = 1..6
//   fig3  finite-size overhead:    K=4 N=4 M=2, F in {1e2..1e5}, L = 1..4
//   fig4  scheme comparison:       K=8 N=8 F=1000 L=1 split=4, M in {0,2,4,6,8}
//   fig5  scheme comparison:       as fig4 with split=6, M in {0,4,8}
//   fig6  split sweep:             K=10 N=10 M=5 F=1000 L=1, split in {0,2,..,10}
std::vector<std::string> figure_names();
std::vector<ResultRow> sweep_figure(const std::string& name, int trials, std::uint64_t seed,
                                    int threads);

inline constexpr const char* kCsvHeader =
    "sweep_param,sweep_value,mean_delay_norm,std_delay_norm,analytic_infinite,analytic_tdma,"
    "decode_failures,trials,seed";

void emit_csv(const std::vector<ResultRow>& rows, std::ostream& os);
void emit_json(const std::vector<ResultRow>& rows, std::ostream& os);
std::vector<ResultRow> parse_csv(std::istream& is);

}  // namespace mtcc

#endif  // MTCC_EXPERIMENT_HPP_
