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
#include "mtcc/placement.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "mtcc/rng.hpp"

namespace mtcc {

namespace {

// Draws `want` distinct symbol indices for one (user, file) pair via a partial
// Fisher-Yates shuffle and marks them in the cache map.
void fill_decentralized_pair(CacheMap& cache, int user, int file, int symbols, int want,
                             std::uint64_t seed) {
  if (want <= 0) return;
  std::mt19937_64 gen(seed);
  std::vector<int> idx(symbols);
  std::iota(idx.begin(), idx.end(), 0);
  for (int i = 0; i < want; ++i) {
    const int j = i + static_cast<int>(uniform_below(gen, static_cast<std::uint32_t>(symbols - i)));
    std::swap(idx[i], idx[j]);
    cache.add(user, file, idx[i]);
  }
}

// Centralized subfile layout for one user group. `group` lists global user
// ids; labels are size-t subsets of the group (by local index). Returns via
// `cache`. Leftover symbols (when C(|group|, t) does not divide F) are
// assigned one by one to the label that keeps the loaded users most balanced,
// ties broken by label order.
void fill_centralized_group(CacheMap& cache, const std::vector<int>& group,
                            const SystemConfig& cfg) {
  const int kc = static_cast<int>(group.size());
  if (kc == 0) return;
  const int t = centralized_caching_degree(kc, cfg.cache_files, cfg.files);
  if (t == 0) return;  // nothing cached

  std::vector<UserMask> labels;
  for_each_subset_of_size(full_mask(kc), t, [&](UserMask m) { labels.push_back(m); });
  const int c = static_cast<int>(labels.size());
  const int f = cfg.file_symbols;

  std::vector<int> label_count(c, f / c);
  int leftover = f % c;
  if (leftover > 0) {
    std::vector<int> user_load(kc, 0);
    for (int i = 0; i < c; ++i) {
      for (int u : mask_members(labels[i])) user_load[u] += label_count[i];
    }
    for (int x = 0; x < leftover; ++x) {
      int best = -1;
      long long best_score = -1;
      for (int i = 0; i < c; ++i) {
        long long score = 0;
        for (int u : mask_members(labels[i])) score = std::max(score, static_cast<long long>(user_load[u]));
        if (best < 0 || score < best_score) {
          best = i;
          best_score = score;
        }
      }
      ++label_count[best];
      for (int u : mask_members(labels[best])) ++user_load[u];
    }
  }

  // Contiguous symbol ranges per label, in label order, identically per file.
  int next = 0;
  for (int i = 0; i < c; ++i) {
    const auto members = mask_members(labels[i]);
    for (int j = 0; j < label_count[i]; ++j, ++next) {
      for (int local : members) {
        const int user = group[static_cast<std::size_t>(local)];
        for (int n = 0; n < cfg.files; ++n) cache.add(user, n, next);
      }
    }
  }
}

}  // namespace

int centralized_caching_degree(int users, double cache_files, int files) {
  const double t = static_cast<double>(users) * cache_files / files;
  const double r = std::round(t);
  if (std::abs(t - r) > 1e-9)
    throw InvalidCentralizedParameter("centralized placement needs integral users*M/N, got " + std::to_string(t));
  return static_cast<int>(r);
}

CacheMap place_decentralized(const SystemConfig& cfg, std::uint64_t seed) {
  cfg.validate();
  CacheMap cache(cfg.users, cfg.files, cfg.file_symbols);
  const int want = static_cast<int>(std::llround(cfg.cache_ratio() * cfg.file_symbols));
  for (int k = 0; k < cfg.users; ++k) {
    for (int n = 0; n < cfg.files; ++n) {
      fill_decentralized_pair(cache, k, n, cfg.file_symbols, want,
                              mix_seed(seed, static_cast<std::uint64_t>(k), static_cast<std::uint64_t>(n)));
    }
  }
  return cache;
}

CacheMap place_centralized(const SystemConfig& cfg, std::uint64_t /*seed*/) {
  cfg.validate();
  CacheMap cache(cfg.users, cfg.files, cfg.file_symbols);
  std::vector<int> group(cfg.users);
  std::iota(group.begin(), group.end(), 0);
  fill_centralized_group(cache, group, cfg);
  return cache;
}

CacheMap place_hybrid(const SystemConfig& cfg, int centralized_users, std::uint64_t seed) {
  cfg.validate();
  if (centralized_users < 0 || centralized_users > cfg.users)
    throw std::invalid_argument("centralized group size out of range");
  CacheMap cache(cfg.users, cfg.files, cfg.file_symbols);

  std::vector<int> group(centralized_users);
  std::iota(group.begin(), group.end(), 0);
  fill_centralized_group(cache, group, cfg);

  const int want = static_cast<int>(std::llround(cfg.cache_ratio() * cfg.file_symbols));
  for (int k = centralized_users; k < cfg.users; ++k) {
    for (int n = 0; n < cfg.files; ++n) {
      fill_decentralized_pair(cache, k, n, cfg.file_symbols, want,
                              mix_seed(seed, static_cast<std::uint64_t>(k), static_cast<std::uint64_t>(n)));
    }
  }
  return cache;
}

}  // namespace mtcc
