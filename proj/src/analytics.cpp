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
#include "mtcc/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>

#include "mtcc/subsets.hpp"

namespace mtcc {

double binom(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  if (n <= 62) return static_cast<double>(binom_ll(n, k));
  return std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0));
}

namespace {

double pow_checked(double base, int e) {
  // pow(0, 0) must be 1 for the alpha = 1 / alpha = K boundary terms.
  if (e == 0) return 1.0;
  return std::pow(base, e);
}

}  // namespace

double delay_infinite(int users, int transmitters, double cache_ratio) {
  const int K = users;
  const double p = cache_ratio;
  double sum = 0.0;
  for (int alpha = 1; alpha <= K; ++alpha) {
    const int gain = std::min(alpha + transmitters - 1, K);
    sum += binom(K, alpha) * pow_checked(p, alpha - 1) * pow_checked(1.0 - p, K - alpha + 1) *
           static_cast<double>(alpha) / gain;
  }
  return sum;
}

double delay_infinite_blockwise(int users, int transmitters, double cache_ratio) {
  const int K = users;
  const double p = cache_ratio;
  double sum = 0.0;
  for (int alpha = 1; alpha <= K; ++alpha) {
    const int st = std::min(alpha + transmitters - 1, K);
    const double sets = binom(K, st);
    const double reps = binom(st - 1, alpha - 1);
    const double consumers = binom(K - alpha, st - alpha);
    sum += sets * reps / consumers * pow_checked(p, alpha - 1) * pow_checked(1.0 - p, K - alpha + 1);
  }
  return sum;
}

double delay_tdma(int kc, int kd, int transmitters, double cache_ratio) {
  const double p = cache_ratio;
  double first = 0.0;
  if (kc > 0) {
    const double gain = std::min(transmitters + kc * p, static_cast<double>(kc));
    first = kc * (1.0 - p) / gain;
  }
  const double second = kd > 0 ? delay_infinite(kd, transmitters, p) : 0.0;
  return first + second;
}

double delay_decentralized_l1(int users, double cache_ratio) {
  const double p = cache_ratio;
  if (p <= 0.0) return static_cast<double>(users);
  return (1.0 - p) / p * (1.0 - pow_checked(1.0 - p, users));
}

double delay_centralized_l1(int users, double cache_ratio) {
  const double p = cache_ratio;
  return users * (1.0 - p) / (1.0 + users * p);
}

double delay_hybrid_l1(int kc, int kd, double cache_ratio) {
  const double p = cache_ratio;
  const double first = kc > 0 ? kc * (1.0 - p) / (1.0 + kc * p) : 0.0;
  const double second = kd > 0 ? delay_decentralized_l1(kd, p) : 0.0;
  return first + second;
}

TaylorDelays taylor_delays(int users, int kc, double cache_ratio) {
  const double K = users;
  const double p = cache_ratio;
  const int kd = users - kc;
  TaylorDelays t;
  t.hybrid = K - p * (static_cast<double>(kc) * kc + K + binom(kd, 2));
  t.centralized = K - p * (K * K + K);
  t.decentralized = K - p * (K + binom(users, 2));
  return t;
}

bool hybrid_superior(int users, int kc) {
  const int kd = users - kc;
  return static_cast<double>(kc) * kc + binom(kd, 2) > binom(users, 2);
}

double delta_tc(int users, int transmitters, double cache_ratio) {
  const int K = users;
  const double p = cache_ratio;
  double sum = 0.0;
  for (int alpha = 1; alpha <= K; ++alpha) {
    sum += binom(K, alpha) * pow_checked(p, alpha - 1) * pow_checked(1.0 - p, K - alpha + 1) /
           (alpha + transmitters - 1);
  }
  return (transmitters - 1) * sum;
}

double tc_lower_bound(int users, int transmitters, double cache_ratio) {
  return delay_infinite(users, 1, cache_ratio) - delta_tc(users, transmitters, cache_ratio);
}

long long finite_delay_sum(const PieceTable& table, int transmitters) {
  const int K = table.users();
  std::vector<long long> cursor(table.pieces().size(), 0);
  long long slots = 0;
  for (int alpha = K; alpha >= 1; --alpha) {
    if (!table.level_nonempty(alpha)) continue;
    const int st = std::min(alpha + transmitters - 1, K);
    const long long consumers = binom_ll(K - alpha, st - alpha);
    const long long omega = binom_ll(st - 1, alpha - 1);
    for_each_subset_of_size(full_mask(K), st, [&](UserMask t_mask) {
      int block_len = 0;
      for_each_subset_of_size(t_mask, alpha, [&](UserMask u_mask) {
        for (int r : mask_members(u_mask)) {
          const UserMask rest = u_mask & ~(UserMask{1} << r);
          const int idx = table.index_of(r, rest);
          if (idx < 0) continue;
          const ChunkSpan span = chunk_span(table.piece_length(r, rest), consumers,
                                            cursor[static_cast<std::size_t>(idx)]++);
          block_len = std::max(block_len, span.length);
        }
      });
      slots += omega * block_len;
    });
  }
  return slots;
}

// --- Gamma fitting ----------------------------------------------------------

namespace {

double digamma(double x) {
  double result = 0.0;
  while (x < 6.0) {
    result -= 1.0 / x;
    x += 1.0;
  }
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  result += std::log(x) - 0.5 * inv -
            inv2 * (1.0 / 12.0 - inv2 * (1.0 / 120.0 - inv2 * (1.0 / 252.0 - inv2 / 240.0)));
  return result;
}

double trigamma(double x) {
  double result = 0.0;
  while (x < 6.0) {
    result += 1.0 / (x * x);
    x += 1.0;
  }
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  result += inv * (1.0 + 0.5 * inv + inv2 * (1.0 / 6.0 - inv2 * (1.0 / 30.0 - inv2 / 42.0)));
  return result;
}

// Regularized lower incomplete gamma P(a, x) by power series.
double gamma_p_series(double a, double x) {
  double term = 1.0 / a;
  double sum = term;
  for (int n = 1; n < 500; ++n) {
    term *= x / (a + n);
    sum += term;
    if (term < sum * 1e-16) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Regularized upper incomplete gamma Q(a, x) by Lentz's continued fraction.
double gamma_q_cf(double a, double x) {
  const double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 500; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < 1e-16) break;
  }
  return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

double regularized_gamma_p(double a, double x) {
  if (x <= 0.0) return 0.0;
  if (x < a + 1.0) return gamma_p_series(a, x);
  return 1.0 - gamma_q_cf(a, x);
}

}  // namespace

GammaFit fit_gamma(std::span<const double> xs, bool refine_mle) {
  GammaFit fit;
  std::vector<double> v;
  v.reserve(xs.size());
  for (double x : xs) {
    if (x > 0.0) {
      v.push_back(x);
    } else {
      ++fit.dropped_zeros;
    }
  }
  fit.used = static_cast<int>(v.size());
  if (v.size() < 2) throw DegenerateSample("need at least two positive samples");

  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(v.size());
  double var = 0.0;
  for (double x : v) var += (x - mean) * (x - mean);
  var /= static_cast<double>(v.size());
  if (var <= 0.0 || mean <= 0.0) throw DegenerateSample("sample variance is zero");

  double shape = mean * mean / var;
  if (refine_mle) {
    double log_mean = 0.0;
    for (double x : v) log_mean += std::log(x);
    log_mean /= static_cast<double>(v.size());
    const double s = std::log(mean) - log_mean;  // > 0 by Jensen unless degenerate
    if (s > 0.0) {
      double k = shape > 0.0 ? shape : (3.0 - s + std::sqrt((s - 3.0) * (s - 3.0) + 24.0 * s)) / (12.0 * s);
      for (int it = 0; it < 60; ++it) {
        const double f = std::log(k) - digamma(k) - s;
        const double fp = 1.0 / k - trigamma(k);
        const double step = f / fp;
        k -= step;
        if (k <= 0.0) k = 1e-9;
        if (std::fabs(step) < 1e-12 * std::max(1.0, k)) break;
      }
      shape = k;
    }
  }
  fit.params.shape = shape;
  fit.params.scale = mean / shape;
  return fit;
}

double gamma_pdf(double x, const GammaParams& g) {
  if (x < 0.0) return 0.0;
  if (x == 0.0) {
    if (g.shape > 1.0) return 0.0;
    if (g.shape == 1.0) return 1.0 / g.scale;
    return std::numeric_limits<double>::infinity();
  }
  const double log_pdf = (g.shape - 1.0) * std::log(x) - x / g.scale -
                         g.shape * std::log(g.scale) - std::lgamma(g.shape);
  return std::exp(log_pdf);
}

double gamma_cdf(double x, const GammaParams& g) {
  if (x <= 0.0) return 0.0;
  return regularized_gamma_p(g.shape, x / g.scale);
}

double ks_statistic(std::vector<double> xs, const GammaParams& g) {
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  double ks = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double f = gamma_cdf(xs[i], g);
    const double hi = (static_cast<double>(i) + 1.0) / n - f;
    const double lo = f - static_cast<double>(i) / n;
    ks = std::max({ks, hi, lo});
  }
  return ks;
}

}  // namespace mtcc
