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
#pragma once

#include <cstdint>
#include <stdexcept>

#include "mtcc/content.hpp"

namespace mtcc {

// Centralized placement needs an integral caching degree t = users * M / N.
struct InvalidCentralizedParameter : std::invalid_argument {
  explicit InvalidCentralizedParameter(const std::string& what) : std::invalid_argument(what) {}
};

// t = K * M / N, or a throw when it is not (numerically) an integer.
int centralized_caching_degree(int users, double cache_files, int files);

// Uniform random placement: every user independently stores
// round((M/N) * F) symbols of every file, chosen uniformly without
// replacement. Each (user, file) pair draws from its own seed derived from
// `seed`, so placements of disjoint user groups are independent and stable.
CacheMap place_decentralized(const SystemConfig& cfg, std::uint64_t seed);

// Deterministic subfile placement: with t = K*M/N, files are partitioned over
// the C(K, t) size-t subsets of users ("labels", ascending mask order); user k
// stores the subfiles whose label contains k. Symbols are spread as evenly as
// possible; leftover symbols go to labels picked to keep per-user cache loads
// balanced. The seed is accepted for interface symmetry but unused.
CacheMap place_centralized(const SystemConfig& cfg, std::uint64_t seed);

// Two-group placement: users 0..centralized_users-1 follow the deterministic
// subfile scheme among themselves (t = centralized_users * M / N); the
// remaining users place uniformly at random. centralized_users == 0 matches
// place_decentralized exactly, == users matches place_centralized exactly.
CacheMap place_hybrid(const SystemConfig& cfg, int centralized_users, std::uint64_t seed);

}  // namespace mtcc
