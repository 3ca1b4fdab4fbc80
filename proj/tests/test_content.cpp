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
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <set>

#include "doctest.h"
#include "mtcc/content.hpp"
#include "mtcc/placement.hpp"
#include "mtcc/subsets.hpp"

using namespace mtcc;

TEST_CASE("configuration validation rejects out-of-range parameters") {
  SystemConfig ok{.users = 4, .transmitters = 2, .files = 4, .cache_files = 2, .file_symbols = 16};
  CHECK_NOTHROW(ok.validate());

  SystemConfig bad = ok;
  bad.users = 0;
  CHECK_THROWS(bad.validate());
  bad = ok;
  bad.users = 21;
  CHECK_THROWS(bad.validate());
  bad = ok;
  bad.files = 3;  // fewer files than users
  CHECK_THROWS(bad.validate());
  bad = ok;
  bad.cache_files = 5.0;
  CHECK_THROWS(bad.validate());
  bad = ok;
  bad.cache_files = -0.5;
  CHECK_THROWS(bad.validate());
  bad = ok;
  bad.file_symbols = 0;
  CHECK_THROWS(bad.validate());
  bad = ok;
  bad.field_bits = 12;
  CHECK_THROWS(bad.validate());
}

TEST_CASE("distinct demand vector and cache ratio") {
  SystemConfig cfg{.users = 4, .transmitters = 1, .files = 6, .cache_files = 3, .file_symbols = 8};
  CHECK(all_distinct_demands(cfg) == std::vector<int>{0, 1, 2, 3});
  CHECK(cfg.cache_ratio() == doctest::Approx(0.5));
}

TEST_CASE("random library is deterministic per seed and in range") {
  const gf::Field& f = gf::Field::of(8);
  const FileLibrary a = FileLibrary::random(3, 40, f, 42);
  const FileLibrary b = FileLibrary::random(3, 40, f, 42);
  const FileLibrary c = FileLibrary::random(3, 40, f, 43);
  bool same = true, diff = false;
  for (int n = 0; n < 3; ++n) {
    for (int j = 0; j < 40; ++j) {
      CHECK(a.at(n, j) < 256);
      same = same && a.at(n, j) == b.at(n, j);
      diff = diff || a.at(n, j) != c.at(n, j);
    }
  }
  CHECK(same);
  CHECK(diff);
  CHECK(a.file(1).size() == 40);
  CHECK(a.file(1)[5] == a.at(1, 5));
}

TEST_CASE("cache map bookkeeping") {
  CacheMap cache(2, 2, 100);
  CHECK(cache.count(0, 0) == 0);
  cache.add(0, 0, 3);
  cache.add(0, 0, 64);  // second bit word
  cache.add(0, 1, 99);
  cache.add(1, 0, 3);
  CHECK(cache.cached(0, 0, 3));
  CHECK(cache.cached(0, 0, 64));
  CHECK(!cache.cached(0, 0, 4));
  CHECK(cache.count(0, 0) == 2);
  CHECK(cache.user_total(0) == 3);
  CHECK(cache.user_total(1) == 1);

  const CacheMap only1 = cache.restrict_users({1});
  CHECK(only1.users() == 1);
  CHECK(only1.cached(0, 0, 3));
  CHECK(!only1.cached(0, 1, 99));
}

TEST_CASE("piece table on a handcrafted two-user system") {
  CacheMap cache(2, 2, 4);
  // user 0 holds symbols {0,1} of file 0 and {0} of file 1
  cache.add(0, 0, 0);
  cache.add(0, 0, 1);
  cache.add(0, 1, 0);
  // user 1 holds symbol {3} of file 1 and nothing of file 0
  cache.add(1, 1, 3);

  const PieceTable table = PieceTable::build(cache, {0, 1});
  CHECK(table.users() == 2);
  CHECK(table.file_symbols() == 4);

  // user 0 misses {2,3} of file 0; user 1 caches none of them
  CHECK(table.piece_length(0, 0) == 2);
  CHECK(table.index_of(0, UserMask{1} << 1) == -1);
  CHECK(table.piece_length(0, UserMask{1} << 1) == 0);
  // user 1 misses {0,1,2} of file 1; user 0 caches {0} of it
  CHECK(table.piece_length(1, 0) == 2);
  CHECK(table.piece_length(1, UserMask{1} << 0) == 1);
  const int idx = table.index_of(1, UserMask{1} << 0);
  REQUIRE(idx >= 0);
  CHECK(table.pieces()[idx].symbols == std::vector<int>{0});

  CHECK(table.level_nonempty(1));
  CHECK(table.level_nonempty(2));
  CHECK(table.level_lengths(1) == std::vector<int>{2, 2});
  CHECK(table.level_lengths(2) == std::vector<int>{1});
}

TEST_CASE("pieces partition every demanded file's uncached symbols exactly") {
  SystemConfig cfg{.users = 4, .transmitters = 2, .files = 4, .cache_files = 2, .file_symbols = 200};
  for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
    const CacheMap cache = place_decentralized(cfg, seed);
    const DemandVector demands = all_distinct_demands(cfg);
    const PieceTable table = PieceTable::build(cache, demands);

    for (int r = 0; r < cfg.users; ++r) {
      std::set<int> seen;
      for (const Piece& p : table.pieces()) {
        if (p.requester != r) continue;
        CHECK((p.cached_by >> r & 1u) == 0);
        for (int s : p.symbols) {
          CHECK(seen.insert(s).second);  // disjoint across pieces
          CHECK(!cache.cached(r, demands[r], s));
          for (int k = 0; k < cfg.users; ++k) {
            if (k == r) continue;
            CHECK(cache.cached(k, demands[r], s) == bool(p.cached_by >> k & 1u));
          }
        }
      }
      // together with the requester's own cache, the pieces cover the file
      CHECK(static_cast<int>(seen.size()) + cache.count(r, demands[r]) == cfg.file_symbols);
    }
  }
}

TEST_CASE("piece lengths concentrate on the occupancy mean") {
  SystemConfig cfg{.users = 4, .transmitters = 1, .files = 4, .cache_files = 2, .file_symbols = 10000};
  // A level-2 piece keeps a symbol with probability p(1-p)^3 = 1/16.
  const double expected = 10000.0 / 16.0;
  double total = 0.0;
  int count = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const CacheMap cache = place_decentralized(cfg, seed);
    const PieceTable table = PieceTable::build(cache, all_distinct_demands(cfg));
    for (int len : piece_length_distribution(table, 2)) {
      total += len;
      ++count;
    }
  }
  CHECK(count == 20 * 4 * 3);  // every (requester, helper) pair materializes
  const double mean = total / count;
  CHECK(mean == doctest::Approx(expected).epsilon(0.03));
}

TEST_CASE("degenerate cache sizes produce degenerate tables") {
  SystemConfig cfg{.users = 3, .transmitters = 1, .files = 3, .cache_files = 0, .file_symbols = 32};
  const DemandVector demands = all_distinct_demands(cfg);

  const PieceTable empty_cache = PieceTable::build(place_decentralized(cfg, 5), demands);
  CHECK(empty_cache.level_nonempty(1));
  for (int alpha = 2; alpha <= 3; ++alpha) CHECK(!empty_cache.level_nonempty(alpha));
  for (const Piece& p : empty_cache.pieces()) CHECK(static_cast<int>(p.symbols.size()) == 32);

  cfg.cache_files = 3;  // everything cached
  const PieceTable full_cache = PieceTable::build(place_decentralized(cfg, 5), demands);
  CHECK(full_cache.pieces().empty());
  for (int alpha = 1; alpha <= 3; ++alpha) CHECK(!full_cache.level_nonempty(alpha));
}

TEST_CASE("chunk spans tile a piece by ceiling division") {
  const auto check_tiling = [](int len, int parts) {
    int covered = 0;
    for (int i = 0; i < parts; ++i) {
      const ChunkSpan s = chunk_span(len, parts, i);
      CHECK(s.offset == covered);
      covered += s.length;
    }
    CHECK(covered == len);
  };
  check_tiling(10, 3);
  check_tiling(4, 6);
  check_tiling(0, 3);
  check_tiling(17, 1);

  CHECK(chunk_span(10, 3, 0).length == 4);
  CHECK(chunk_span(10, 3, 2).length == 2);
  CHECK(chunk_span(4, 6, 4).length == 0);
  CHECK(chunk_span(4, 6, 5).length == 0);
}
