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

#include <array>
#include <bit>
#include <cstdint>
#include <vector>

namespace mtcc {

// User sets are bitmasks over user indices 0..K-1. The canonical enumeration
// order everywhere in this project is ascending numeric mask value; scheduling
// determinism depends on it.
using UserMask = std::uint32_t;

inline int mask_size(UserMask m) { return std::popcount(m); }

inline UserMask full_mask(int n) {
  return n >= 32 ? ~UserMask{0} : ((UserMask{1} << n) - 1);
}

inline std::vector<int> mask_members(UserMask m) {
  std::vector<int> out;
  while (m != 0) {
    const int b = std::countr_zero(m);
    out.push_back(b);
    m &= m - 1;
  }
  return out;
}

// Exact binomial coefficient for the small arguments used in scheduling.
inline long long binom_ll(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Calls f(subset) for every subset of `set_mask` with exactly `size` bits,
// in ascending numeric mask order (Gosper's hack over the compacted bits;
// the expansion back into `set_mask` positions preserves the order).
template <typename F>
void for_each_subset_of_size(UserMask set_mask, int size, F&& f) {
  const int n = mask_size(set_mask);
  if (size < 0 || size > n) return;
  if (size == 0) {
    f(UserMask{0});
    return;
  }
  std::array<int, 32> pos{};
  int np = 0;
  for (UserMask m = set_mask; m != 0; m &= m - 1) pos[np++] = std::countr_zero(m);

  const std::uint32_t limit = full_mask(n);
  std::uint32_t v = (std::uint32_t{1} << size) - 1;
  while (true) {
    UserMask expanded = 0;
    for (int b = 0; b < np; ++b) {
      if (v >> b & 1u) expanded |= UserMask{1} << pos[b];
    }
    f(expanded);
    const std::uint32_t lo = v & (~v + 1);
    const std::uint32_t lz = v + lo;
    if (lz == 0) break;
    const std::uint32_t nxt = lz | (((v ^ lz) / lo) >> 2);
    if (nxt > limit) break;
    v = nxt;
  }
}

}  // namespace mtcc
