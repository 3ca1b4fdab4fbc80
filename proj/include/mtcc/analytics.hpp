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
#ifndef MTCC_ANALYTICS_HPP_
#define MTCC_ANALYTICS_HPP_

#include <span>
#include <stdexcept>
#include <vector>

#include "mtcc/content.hpp"

namespace mtcc {

// Binomial coefficient as a double; exact integer arithmetic where it fits,
// log-gamma beyond that.
double binom(int n, int k);

// Large-file limit of the normalized coding delay (delay / file size) for
// decentralized placement with cache ratio p, K users, L transmitters.
// Level alpha holds a p^(alpha-1) (1-p)^(K-alpha+1) fraction of each file per
// piece and is served with multicast gain min(alpha + L - 1, K).
double delay_infinite(int users, int transmitters, double cache_ratio);

// Same limit accumulated block by block (sets T of size min(alpha+L-1, K),
// omega repetitions each, chunk mass split over the consuming sets). Agrees
// with delay_infinite identically; kept as an independent accounting route.
double delay_infinite_blockwise(int users, int transmitters, double cache_ratio);

// Large-file limit for time-shared delivery: a group of kc users served by a
// one-shot zero-forcing phase (gain capped at the group size), then the other
// kd users as a stand-alone decentralized subsystem.
double delay_tdma(int kc, int kd, int transmitters, double cache_ratio);

// Closed forms for a single transmit antenna.
double delay_decentralized_l1(int users, double cache_ratio);
double delay_centralized_l1(int users, double cache_ratio);
double delay_hybrid_l1(int kc, int kd, double cache_ratio);

// First-order expansions around cache_ratio = 0 of the three L = 1 delays.
struct TaylorDelays {
  double hybrid = 0.0;
  double centralized = 0.0;
  double decentralized = 0.0;
};
TaylorDelays taylor_delays(int users, int kc, double cache_ratio);

// Small-cache comparison: the hybrid split beats the fully decentralized
// scheme (to first order) iff kc^2 + C(K-kc, 2) > C(K, 2).
bool hybrid_superior(int users, int kc);

// Per-slot gain shortfall of capping the multicast gain at min(alpha+L-1, K)
// instead of alpha+L-1, and the induced delay lower bound for any scheme with
// L cooperating transmitters.
double delta_tc(int users, int transmitters, double cache_ratio);
double tc_lower_bound(int users, int transmitters, double cache_ratio);

// Exact slot count of the canonical schedule for a concrete piece table,
// derived purely from the split bookkeeping (no field arithmetic, no network,
// no symbol values). Matches the transmit engine slot for slot.
long long finite_delay_sum(const PieceTable& table, int transmitters);

// --- Gamma fitting of piece-length samples ---------------------------------

struct DegenerateSample : std::runtime_error {
  explicit DegenerateSample(const char* what) : std::runtime_error(what) {}
};

struct GammaParams {
  double shape = 0.0;
  double scale = 0.0;
};

struct GammaFit {
  GammaParams params;
  int dropped_zeros = 0;  // non-positive samples excluded from the fit
  int used = 0;
};

// Method-of-moments fit (shape = mean^2/var, scale = var/mean), optionally
// refined by maximum likelihood (Newton on the digamma equation). Non-positive
// samples are dropped and counted; a sample with zero variance throws
// DegenerateSample.
GammaFit fit_gamma(std::span<const double> xs, bool refine_mle = true);

double gamma_pdf(double x, const GammaParams& g);
// Regularized lower incomplete gamma at x / scale: series expansion in the
// convergent region, Lentz continued fraction for the upper tail.
double gamma_cdf(double x, const GammaParams& g);

// Two-sided Kolmogorov-Smirnov distance between the empirical CDF of xs and
// the fitted Gamma CDF.
double ks_statistic(std::vector<double> xs, const GammaParams& g);

}  // namespace mtcc

#endif  // MTCC_ANALYTICS_HPP_
