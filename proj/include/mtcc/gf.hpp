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
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace mtcc::gf {

// Raw field element. GF(2^8) values also live in the low byte of a uint16_t
// so all buffers share one storage type.
using Elem = std::uint16_t;
using Vec = std::vector<Elem>;

// Raised by solve_system when the coefficient matrix is singular. The decoder
// treats this as a counted decode-failure event, never as a fatal error.
struct SingularSystem : std::runtime_error {
  SingularSystem() : std::runtime_error("singular linear system") {}
};

// GF(2^m) for m in {8, 16}. Addition is XOR; multiplication and inversion go
// through log/antilog tables built once at construction.
//
//   m = 8  : x^8 + x^4 + x^3 + x + 1   (0x11B), generator 0x03
//   m = 16 : x^16 + x^12 + x^3 + x + 1 (0x1100B), generator 0x02
//
// Construction verifies that the generator walks the full multiplicative
// group (cycle length 2^m - 1), so a bad polynomial/generator pair cannot
// slip through silently.
class Field {
 public:
  explicit Field(int bits);

  int bits() const { return bits_; }
  std::uint32_t order() const { return order_; }
  std::uint32_t modulus() const { return poly_; }

  Elem add(Elem a, Elem b) const { return a ^ b; }

  Elem mul(Elem a, Elem b) const {
    if (a == 0 || b == 0) return 0;
    return exp_[std::uint32_t(log_[a]) + log_[b]];
  }

  Elem inv(Elem a) const {
    if (a == 0) throw std::domain_error("inverse of zero");
    return exp_[order_ - 1 - log_[a]];
  }

  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }

  Elem pow(Elem a, std::uint64_t e) const;

  // Shared per-width instances; the tables are immutable after construction
  // so concurrent use is safe.
  static const Field& of(int bits);

 private:
  int bits_;
  std::uint32_t order_;
  std::uint32_t poly_;
  std::uint32_t generator_;
  std::vector<Elem> exp_;
  std::vector<Elem> log_;
};

struct Matrix {
  int rows = 0;
  int cols = 0;
  std::vector<Elem> a;

  Matrix() = default;
  Matrix(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, 0) {}

  Elem& operator()(int r, int c) { return a[static_cast<std::size_t>(r) * cols + c]; }
  Elem operator()(int r, int c) const { return a[static_cast<std::size_t>(r) * cols + c]; }

  static Matrix identity(const Field& f, int n);
};

Elem dot(const Field& f, std::span<const Elem> a, std::span<const Elem> b);
Vec mat_vec(const Field& f, const Matrix& m, std::span<const Elem> x);
Matrix mat_mul(const Field& f, const Matrix& a, const Matrix& b);

// Row rank by Gaussian elimination; pivoting takes the first nonzero entry in
// the column (no magnitude ordering exists over a finite field).
int rank(const Field& f, Matrix m);

// Square solve. try_solve reports a singular matrix as nullopt; solve_system
// throws SingularSystem instead. try_solve_many solves for several right-hand
// sides at once (columns of rhs).
std::optional<Vec> try_solve(const Field& f, Matrix a, Vec b);
Vec solve_system(const Field& f, Matrix a, Vec b);
std::optional<Matrix> try_solve_many(const Field& f, Matrix a, Matrix rhs);

// One nonzero vector v with m * v = 0, for a wide matrix (rows < cols).
// Deterministic: the first non-pivot column gets coefficient 1 and the rest
// follow by back-substitution; with zero rows this yields the first standard
// basis vector.
Vec null_space_vector(const Field& f, Matrix m);

}  // namespace mtcc::gf
