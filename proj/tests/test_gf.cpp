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
#include <random>

#include "doctest.h"
#include "mtcc/gf.hpp"

using namespace mtcc;

namespace {

gf::Elem rand_elem(const gf::Field& f, std::mt19937_64& gen) {
  return static_cast<gf::Elem>(gen() & (f.order() - 1));
}

gf::Matrix rand_matrix(const gf::Field& f, int r, int c, std::mt19937_64& gen) {
  gf::Matrix m(r, c);
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < c; ++j) m(i, j) = rand_elem(f, gen);
  }
  return m;
}

// Determinant by cofactor expansion, for cross-checking rank decisions on
// matrices small enough to afford O(n!).
gf::Elem brute_det(const gf::Field& f, const gf::Matrix& m) {
  const int n = m.rows;
  if (n == 1) return m(0, 0);
  gf::Elem det = 0;
  for (int j = 0; j < n; ++j) {
    gf::Matrix minor(n - 1, n - 1);
    for (int r = 1; r < n; ++r) {
      int cc = 0;
      for (int c = 0; c < n; ++c) {
        if (c == j) continue;
        minor(r - 1, cc++) = m(r, c);
      }
    }
    det = f.add(det, f.mul(m(0, j), brute_det(f, minor)));  // char 2: signs vanish
  }
  return det;
}

int brute_rank(const gf::Field& f, const gf::Matrix& m) {
  const int maxk = std::min(m.rows, m.cols);
  for (int k = maxk; k >= 1; --k) {
    // Any k x k submatrix with nonzero determinant witnesses rank >= k.
    std::vector<int> rows(k), cols(k);
    const auto next_comb = [](std::vector<int>& idx, int n) {
      int i = static_cast<int>(idx.size()) - 1;
      while (i >= 0 && idx[i] == n - static_cast<int>(idx.size()) + i) --i;
      if (i < 0) return false;
      ++idx[i];
      for (std::size_t j = i + 1; j < idx.size(); ++j) idx[j] = idx[j - 1] + 1;
      return true;
    };
    for (int i = 0; i < k; ++i) rows[i] = i;
    do {
      for (int i = 0; i < k; ++i) cols[i] = i;
      do {
        gf::Matrix sub(k, k);
        for (int r = 0; r < k; ++r) {
          for (int c = 0; c < k; ++c) sub(r, c) = m(rows[r], cols[c]);
        }
        if (brute_det(f, sub) != 0) return k;
      } while (next_comb(cols, m.cols));
    } while (next_comb(rows, m.rows));
  }
  return 0;
}

}  // namespace

TEST_CASE("8-bit field matches known multiplication results") {
  const gf::Field& f = gf::Field::of(8);
  CHECK(f.order() == 256);
  CHECK(f.add(0x57, 0x57) == 0);
  CHECK(f.add(0x57, 0x83) == (0x57 ^ 0x83));
  CHECK(f.mul(0x02, 0x03) == 0x06);
  CHECK(f.mul(0x57, 0x83) == 0xC1);
  CHECK(f.mul(0x00, 0x95) == 0);
  CHECK(f.mul(0x01, 0x95) == 0x95);
}

TEST_CASE("16-bit field reduction and identities") {
  const gf::Field& f = gf::Field::of(16);
  CHECK(f.order() == 65536);
  // x^16 = x^12 + x^3 + x + 1 under the 0x1100B modulus.
  CHECK(f.mul(0x8000, 0x0002) == 0x100B);
  CHECK(f.mul(0x0001, 0xBEEF) == 0xBEEF);
  CHECK(f.mul(0xBEEF, 0x0000) == 0);
}

TEST_CASE("every nonzero 8-bit element has a working inverse") {
  const gf::Field& f = gf::Field::of(8);
  for (unsigned a = 1; a < 256; ++a) {
    const gf::Elem inv = f.inv(static_cast<gf::Elem>(a));
    CHECK(f.mul(static_cast<gf::Elem>(a), inv) == 1);
  }
  CHECK_THROWS(f.inv(0));
}

TEST_CASE("sampled 16-bit inverses and powers") {
  const gf::Field& f = gf::Field::of(16);
  std::mt19937_64 gen(7);
  for (int i = 0; i < 2000; ++i) {
    gf::Elem a = rand_elem(f, gen);
    if (a == 0) a = 1;
    CHECK(f.mul(a, f.inv(a)) == 1);
    CHECK(f.pow(a, f.order() - 1) == 1);  // multiplicative group order
    CHECK(f.pow(a, 0) == 1);
  }
}

TEST_CASE("field axioms hold on random triples") {
  for (int bits : {8, 16}) {
    const gf::Field& f = gf::Field::of(bits);
    std::mt19937_64 gen(99 + bits);
    for (int i = 0; i < 3000; ++i) {
      const gf::Elem a = rand_elem(f, gen), b = rand_elem(f, gen), c = rand_elem(f, gen);
      CHECK(f.mul(a, b) == f.mul(b, a));
      CHECK(f.mul(a, f.mul(b, c)) == f.mul(f.mul(a, b), c));
      CHECK(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
    }
  }
}

TEST_CASE("unsupported field widths are rejected") {
  CHECK_THROWS(gf::Field::of(12));
  CHECK_THROWS(gf::Field::of(0));
}

TEST_CASE("rank agrees with determinant-based oracle") {
  const gf::Field& f = gf::Field::of(8);
  std::mt19937_64 gen(1234);
  for (int trial = 0; trial < 120; ++trial) {
    const int r = 1 + static_cast<int>(gen() % 4);
    const int c = 1 + static_cast<int>(gen() % 4);
    gf::Matrix m = rand_matrix(f, r, c, gen);
    if (trial % 3 == 0 && r >= 2) {
      // Force a dependency: last row becomes a multiple of the first.
      const gf::Elem s = rand_elem(f, gen);
      for (int j = 0; j < c; ++j) m(r - 1, j) = f.mul(s, m(0, j));
    }
    CHECK(gf::rank(f, m) == brute_rank(f, m));
  }
}

TEST_CASE("solver round-trips random systems") {
  for (int bits : {8, 16}) {
    const gf::Field& f = gf::Field::of(bits);
    std::mt19937_64 gen(55 + bits);
    for (int trial = 0; trial < 60; ++trial) {
      const int n = 1 + static_cast<int>(gen() % 5);
      gf::Matrix a(0, 0);
      do {
        a = rand_matrix(f, n, n, gen);
      } while (gf::rank(f, a) < n);
      gf::Vec x(n);
      for (auto& v : x) v = rand_elem(f, gen);
      const gf::Vec b = gf::mat_vec(f, a, x);
      const auto solved = gf::try_solve(f, a, b);
      REQUIRE(solved.has_value());
      CHECK(*solved == x);
      CHECK(gf::solve_system(f, a, b) == x);
    }
  }
}

TEST_CASE("multi right-hand-side solve matches column-by-column solves") {
  const gf::Field& f = gf::Field::of(16);
  std::mt19937_64 gen(321);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 2 + static_cast<int>(gen() % 4);
    const int m = 1 + static_cast<int>(gen() % 6);
    gf::Matrix a(0, 0);
    do {
      a = rand_matrix(f, n, n, gen);
    } while (gf::rank(f, a) < n);
    const gf::Matrix x = rand_matrix(f, n, m, gen);
    const gf::Matrix b = gf::mat_mul(f, a, x);
    const auto solved = gf::try_solve_many(f, a, b);
    REQUIRE(solved.has_value());
    CHECK(solved->a == x.a);
  }
}

TEST_CASE("singular systems are reported, not mis-solved") {
  const gf::Field& f = gf::Field::of(8);
  gf::Matrix a(2, 2);
  a(0, 0) = 3;
  a(0, 1) = 5;
  a(1, 0) = 3;
  a(1, 1) = 5;  // duplicate rows
  gf::Vec b{1, 2};
  CHECK(!gf::try_solve(f, a, b).has_value());
  CHECK_THROWS_AS(gf::solve_system(f, a, b), gf::SingularSystem);
  gf::Matrix rhs(2, 1);
  rhs(0, 0) = 1;
  rhs(1, 0) = 2;
  CHECK(!gf::try_solve_many(f, a, rhs).has_value());
}

TEST_CASE("null space vectors annihilate their matrix") {
  const gf::Field& f = gf::Field::of(16);
  std::mt19937_64 gen(777);
  for (int trial = 0; trial < 200; ++trial) {
    const int rows = 1 + static_cast<int>(gen() % 3);
    const int cols = rows + 1 + static_cast<int>(gen() % 3);
    const gf::Matrix m = rand_matrix(f, rows, cols, gen);
    const gf::Vec v = gf::null_space_vector(f, m);
    REQUIRE(static_cast<int>(v.size()) == cols);
    bool nonzero = false;
    for (auto e : v) nonzero = nonzero || e != 0;
    CHECK(nonzero);
    const gf::Vec prod = gf::mat_vec(f, m, v);
    for (auto e : prod) CHECK(e == 0);
  }
}

TEST_CASE("null space of an all-zero matrix is a standard basis vector") {
  const gf::Field& f = gf::Field::of(8);
  gf::Matrix m(2, 4);
  const gf::Vec v = gf::null_space_vector(f, m);
  CHECK(v == gf::Vec{1, 0, 0, 0});
}

TEST_CASE("random wide 16-bit matrices are generically full rank") {
  const gf::Field& f = gf::Field::of(16);
  std::mt19937_64 gen(2026);
  for (int trial = 0; trial < 300; ++trial) {
    const gf::Matrix m = rand_matrix(f, 4, 6, gen);
    CHECK(gf::rank(f, m) == 4);
  }
}

TEST_CASE("shared field instances are reused") {
  CHECK(&gf::Field::of(8) == &gf::Field::of(8));
  CHECK(&gf::Field::of(16) == &gf::Field::of(16));
  CHECK(&gf::Field::of(8) != &gf::Field::of(16));
}
