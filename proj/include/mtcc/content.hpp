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
#include <span>
#include <unordered_map>
#include <vector>

#include "mtcc/gf.hpp"
#include "mtcc/subsets.hpp"

namespace mtcc {

// System-wide parameters. Users are indexed 0..users-1, files 0..files-1,
// symbols of a file 0..file_symbols-1. cache_files is the per-user cache size
// measured in files (fractional values are allowed so that any cache ratio is
// expressible for any library size).
struct SystemConfig {
  int users = 1;          // K
  int transmitters = 1;   // L
  int files = 1;          // N
  double cache_files = 0; // M
  int file_symbols = 1;   // F
  int field_bits = 16;    // m

  double cache_ratio() const { return files > 0 ? cache_files / files : 0.0; }

  // Throws std::invalid_argument on out-of-range parameters. files >= users is
  // required so that an all-distinct demand vector exists.
  void validate() const;
};

// All-distinct worst-case demand: user k requests file k.
std::vector<int> all_distinct_demands(const SystemConfig& cfg);

using DemandVector = std::vector<int>;

// The server's file catalogue: files x file_symbols field elements.
class FileLibrary {
 public:
  FileLibrary(int files, int symbols) : files_(files), symbols_(symbols),
      data_(static_cast<std::size_t>(files) * symbols, 0) {}

  static FileLibrary random(int files, int symbols, const gf::Field& f, std::uint64_t seed);

  int files() const { return files_; }
  int symbols() const { return symbols_; }

  gf::Elem at(int file, int symbol) const {
    return data_[static_cast<std::size_t>(file) * symbols_ + symbol];
  }
  void set(int file, int symbol, gf::Elem v) {
    data_[static_cast<std::size_t>(file) * symbols_ + symbol] = v;
  }
  std::span<const gf::Elem> file(int n) const {
    return {data_.data() + static_cast<std::size_t>(n) * symbols_, static_cast<std::size_t>(symbols_)};
  }

 private:
  int files_;
  int symbols_;
  std::vector<gf::Elem> data_;
};

// Which symbol indices each user stores, as one bitset per (user, file).
// Placement fills it; the piece table and the decoder read it. The index sets
// are public metadata; actual symbol values live in the FileLibrary.
class CacheMap {
 public:
  CacheMap(int users, int files, int symbols);

  int users() const { return users_; }
  int files() const { return files_; }
  int symbols() const { return symbols_; }

  void add(int user, int file, int symbol) {
    bits_[word_index(user, file, symbol)] |= std::uint64_t{1} << (symbol & 63);
  }
  bool cached(int user, int file, int symbol) const {
    return (bits_[word_index(user, file, symbol)] >> (symbol & 63)) & 1u;
  }

  int count(int user, int file) const;
  long long user_total(int user) const;

  // Restriction to a subset of users (identity on files/symbols); used to run
  // one group of a time-shared schedule as its own subsystem.
  CacheMap restrict_users(const std::vector<int>& user_ids) const;

  bool operator==(const CacheMap& o) const {
    return users_ == o.users_ && files_ == o.files_ && symbols_ == o.symbols_ && bits_ == o.bits_;
  }

 private:
  std::size_t word_index(int user, int file, int symbol) const {
    return (static_cast<std::size_t>(user) * files_ + file) * words_ + (symbol >> 6);
  }
  int users_;
  int files_;
  int symbols_;
  int words_;
  std::vector<std::uint64_t> bits_;
};

// A piece groups the symbols of requester r's demanded file that are cached by
// exactly the users in `cached_by` (a mask that never contains r) and missing
// from r's own cache. Pieces with no symbols are not stored.
struct Piece {
  int requester = 0;
  UserMask cached_by = 0;
  std::vector<int> symbols;  // ascending symbol indices

  int length() const { return static_cast<int>(symbols.size()); }
};

// Partition of every demanded file's uncached part, sorted by (requester,
// cached_by mask) ascending. The table, like the cache index sets, is public:
// receivers rebuild the same structure when interpreting a schedule.
class PieceTable {
 public:
  static PieceTable build(const CacheMap& cache, const DemandVector& demands);

  int users() const { return users_; }
  int file_symbols() const { return symbols_; }
  const DemandVector& demands() const { return demands_; }
  const std::vector<Piece>& pieces() const { return pieces_; }

  // Index into pieces() or -1 when the piece is empty/absent.
  int index_of(int requester, UserMask cached_by) const;
  int piece_length(int requester, UserMask cached_by) const;

  // A multicast level alpha touches pieces with |cached_by| == alpha - 1.
  bool level_nonempty(int alpha) const;
  std::vector<int> level_lengths(int alpha) const;

 private:
  int users_ = 0;
  int symbols_ = 0;
  DemandVector demands_;
  std::vector<Piece> pieces_;
  std::unordered_map<std::uint64_t, int> index_;
  std::vector<char> level_flag_;
};

// Realized lengths of all stored pieces at one multicast level; the empirical
// samples behind the per-level delay statistics.
std::vector<int> piece_length_distribution(const PieceTable& table, int alpha);

// Mini-file split bookkeeping: a piece consumed by `parts` different
// multicast groups is cut into `parts` equal chunks by ceiling division, the
// last chunk possibly shorter (or empty).
struct ChunkSpan {
  int offset = 0;
  int length = 0;
};

inline ChunkSpan chunk_span(int piece_len, long long parts, long long chunk_index) {
  if (parts <= 0) return {0, 0};
  const long long unit = (piece_len + parts - 1) / parts;
  long long begin = chunk_index * unit;
  if (begin > piece_len) begin = piece_len;
  long long end = begin + unit;
  if (end > piece_len) end = piece_len;
  return {static_cast<int>(begin), static_cast<int>(end - begin)};
}

}  // namespace mtcc
