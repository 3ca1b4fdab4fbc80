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
#include "mtcc/content.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

#include "mtcc/rng.hpp"

namespace mtcc {

void SystemConfig::validate() const {
  if (users < 1 || users > 20) throw std::invalid_argument("users must be in 1..20");
  if (transmitters < 1) throw std::invalid_argument("transmitters must be >= 1");
  if (files < users) throw std::invalid_argument("need at least as many files as users");
  if (cache_files < 0.0 || cache_files > static_cast<double>(files))
    throw std::invalid_argument("cache size must be in [0, files]");
  if (file_symbols < 1) throw std::invalid_argument("file size must be >= 1 symbol");
  if (field_bits != 8 && field_bits != 16) throw std::invalid_argument("field width must be 8 or 16 bits");
}

std::vector<int> all_distinct_demands(const SystemConfig& cfg) {
  std::vector<int> d(cfg.users);
  for (int k = 0; k < cfg.users; ++k) d[k] = k;
  return d;
}

FileLibrary FileLibrary::random(int files, int symbols, const gf::Field& f, std::uint64_t seed) {
  FileLibrary lib(files, symbols);
  std::mt19937_64 gen(seed);
  const std::uint64_t mask = f.order() - 1;
  for (int n = 0; n < files; ++n) {
    for (int j = 0; j < symbols; ++j) {
      lib.set(n, j, static_cast<gf::Elem>(gen() & mask));
    }
  }
  return lib;
}

CacheMap::CacheMap(int users, int files, int symbols)
    : users_(users), files_(files), symbols_(symbols), words_((symbols + 63) / 64),
      bits_(static_cast<std::size_t>(users) * files * ((symbols + 63) / 64), 0) {}

int CacheMap::count(int user, int file) const {
  int total = 0;
  const std::size_t base = (static_cast<std::size_t>(user) * files_ + file) * words_;
  for (int w = 0; w < words_; ++w) total += std::popcount(bits_[base + w]);
  return total;
}

long long CacheMap::user_total(int user) const {
  long long total = 0;
  for (int n = 0; n < files_; ++n) total += count(user, n);
  return total;
}

CacheMap CacheMap::restrict_users(const std::vector<int>& user_ids) const {
  CacheMap out(static_cast<int>(user_ids.size()), files_, symbols_);
  for (std::size_t k = 0; k < user_ids.size(); ++k) {
    const int src = user_ids[k];
    for (int n = 0; n < files_; ++n) {
      const std::size_t from = (static_cast<std::size_t>(src) * files_ + n) * words_;
      const std::size_t to = (k * files_ + n) * words_;
      std::copy_n(bits_.begin() + from, words_, out.bits_.begin() + to);
    }
  }
  return out;
}

PieceTable PieceTable::build(const CacheMap& cache, const DemandVector& demands) {
  if (static_cast<int>(demands.size()) != cache.users())
    throw std::invalid_argument("demand vector size must match user count");
  for (int d : demands) {
    if (d < 0 || d >= cache.files()) throw std::invalid_argument("demand outside library");
  }

  PieceTable t;
  t.users_ = cache.users();
  t.symbols_ = cache.symbols();
  t.demands_ = demands;
  t.level_flag_.assign(static_cast<std::size_t>(t.users_) + 2, 0);

  const int K = cache.users();
  const int F = cache.symbols();
  std::unordered_map<std::uint64_t, std::vector<int>> cells;
  for (int r = 0; r < K; ++r) {
    const int file = demands[r];
    for (int j = 0; j < F; ++j) {
      if (cache.cached(r, file, j)) continue;
      UserMask s = 0;
      for (int k = 0; k < K; ++k) {
        if (k != r && cache.cached(k, file, j)) s |= UserMask{1} << k;
      }
      cells[(std::uint64_t{static_cast<std::uint32_t>(r)} << 32) | s].push_back(j);
    }
  }

  std::vector<std::uint64_t> keys;
  keys.reserve(cells.size());
  for (const auto& [key, _] : cells) keys.push_back(key);
  std::sort(keys.begin(), keys.end());

  t.pieces_.reserve(keys.size());
  for (std::uint64_t key : keys) {
    Piece p;
    p.requester = static_cast<int>(key >> 32);
    p.cached_by = static_cast<UserMask>(key & 0xFFFFFFFFu);
    p.symbols = std::move(cells[key]);
    t.index_[key] = static_cast<int>(t.pieces_.size());
    t.level_flag_[static_cast<std::size_t>(mask_size(p.cached_by)) + 1] = 1;
    t.pieces_.push_back(std::move(p));
  }
  return t;
}

int PieceTable::index_of(int requester, UserMask cached_by) const {
  const auto it = index_.find((std::uint64_t{static_cast<std::uint32_t>(requester)} << 32) | cached_by);
  return it == index_.end() ? -1 : it->second;
}

int PieceTable::piece_length(int requester, UserMask cached_by) const {
  const int i = index_of(requester, cached_by);
  return i < 0 ? 0 : pieces_[i].length();
}

bool PieceTable::level_nonempty(int alpha) const {
  if (alpha < 1 || alpha > users_) return false;
  return level_flag_[static_cast<std::size_t>(alpha)] != 0;
}

std::vector<int> PieceTable::level_lengths(int alpha) const {
  std::vector<int> out;
  for (const Piece& p : pieces_) {
    if (mask_size(p.cached_by) == alpha - 1) out.push_back(p.length());
  }
  return out;
}

std::vector<int> piece_length_distribution(const PieceTable& table, int alpha) {
  return table.level_lengths(alpha);
}

}  // namespace mtcc
