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
#include "mtcc/gf.hpp"

#include <cassert>
#include <utility>

namespace mtcc::gf {

namespace {

// Shift-and-add polynomial multiplication with on-the-fly reduction. Only used
// while building the log/antilog tables; runtime multiplies go through them.
std::uint32_t poly_mul_reduce(std::uint32_t a, std::uint32_t b, std::uint32_t poly, int bits) {
  std::uint32_t acc = 0;
  const std::uint32_t high = std::uint32_t{1} << bits;
  while (b != 0) {
    if (b & 1u) acc ^= a;
    b >>= 1;
    a <<= 1;
    if (a & high) a ^= poly;
  }
  return acc;
}

}  // namespace

Field::Field(int bits) : bits_(bits) {
  switch (bits) {
    case 8:
      poly_ = 0x11B;
      generator_ = 0x03;
      break;
    case 16:
      poly_ = 0x1100B;
      generator_ = 0x02;
      break;
    default:
      throw std::invalid_argument("field width must be 8 or 16 bits");
  }
  order_ = std::uint32_t{1} << bits;
  const std::uint32_t n = order_ - 1;
  exp_.assign(2 * static_cast<std::size_t>(n), 0);
  log_.assign(order_, 0);

  std::uint32_t x = 1;
  for (std::uint32_t i = 0; i < n; ++i) {
    if (i > 0 && x == 1) throw std::logic_error("field generator cycles early");
    exp_[i] = static_cast<Elem>(x);
    exp_[i + n] = static_cast<Elem>(x);
    log_[x] = static_cast<Elem>(i);
    x = poly_mul_reduce(x, generator_, poly_, bits);
  }
  if (x != 1) throw std::logic_error("field generator does not close the cycle");
}

Elem Field::pow(Elem a, std::uint64_t e) const {
  Elem r = 1;
  while (e != 0) {
    if (e & 1u) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

const Field& Field::of(int bits) {
  static const Field f8(8);
  static const Field f16(16);
  switch (bits) {
    case 8:
      return f8;
    case 16:
      return f16;
    default:
      throw std::invalid_argument("field width must be 8 or 16 bits");
  }
}

Matrix Matrix::identity(const Field&, int n) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Elem dot(const Field& f, std::span<const Elem> a, std::span<const Elem> b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: length mismatch");
  Elem s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s = f.add(s, f.mul(a[i], b[i]));
  return s;
}

Vec mat_vec(const Field& f, const Matrix& m, std::span<const Elem> x) {
  if (static_cast<int>(x.size()) != m.cols) throw std::invalid_argument("mat_vec: shape mismatch");
  Vec y(m.rows, 0);
  for (int r = 0; r < m.rows; ++r) {
    Elem s = 0;
    for (int c = 0; c < m.cols; ++c) s = f.add(s, f.mul(m(r, c), x[c]));
    y[r] = s;
  }
  return y;
}

Matrix mat_mul(const Field& f, const Matrix& a, const Matrix& b) {
  if (a.cols != b.rows) throw std::invalid_argument("mat_mul: shape mismatch");
  Matrix c(a.rows, b.cols);
  for (int i = 0; i < a.rows; ++i) {
    for (int k = 0; k < a.cols; ++k) {
      const Elem v = a(i, k);
      if (v == 0) continue;
      for (int j = 0; j < b.cols; ++j) c(i, j) = f.add(c(i, j), f.mul(v, b(k, j)));
    }
  }
  return c;
}

int rank(const Field& f, Matrix m) {
  int r = 0;
  for (int c = 0; c < m.cols && r < m.rows; ++c) {
    int piv = -1;
    for (int i = r; i < m.rows; ++i) {
      if (m(i, c) != 0) {
        piv = i;
        break;
      }
    }
    if (piv < 0) continue;
    for (int j = 0; j < m.cols; ++j) std::swap(m(piv, j), m(r, j));
    const Elem ip = f.inv(m(r, c));
    for (int i = r + 1; i < m.rows; ++i) {
      if (m(i, c) == 0) continue;
      const Elem factor = f.mul(m(i, c), ip);
      for (int j = c; j < m.cols; ++j) m(i, j) = f.add(m(i, j), f.mul(factor, m(r, j)));
    }
    ++r;
  }
  return r;
}

std::optional<Matrix> try_solve_many(const Field& f, Matrix a, Matrix rhs) {
  if (a.rows != a.cols) throw std::invalid_argument("solve: matrix not square");
  if (rhs.rows != a.rows) throw std::invalid_argument("solve: rhs shape mismatch");
  const int n = a.rows;
  // Gauss-Jordan on [a | rhs].
  for (int c = 0; c < n; ++c) {
    int piv = -1;
    for (int i = c; i < n; ++i) {
      if (a(i, c) != 0) {
        piv = i;
        break;
      }
    }
    if (piv < 0) return std::nullopt;
    if (piv != c) {
      for (int j = 0; j < n; ++j) std::swap(a(piv, j), a(c, j));
      for (int j = 0; j < rhs.cols; ++j) std::swap(rhs(piv, j), rhs(c, j));
    }
    const Elem ip = f.inv(a(c, c));
    for (int j = c; j < n; ++j) a(c, j) = f.mul(a(c, j), ip);
    for (int j = 0; j < rhs.cols; ++j) rhs(c, j) = f.mul(rhs(c, j), ip);
    for (int i = 0; i < n; ++i) {
      if (i == c || a(i, c) == 0) continue;
      const Elem factor = a(i, c);
      for (int j = c; j < n; ++j) a(i, j) = f.add(a(i, j), f.mul(factor, a(c, j)));
      for (int j = 0; j < rhs.cols; ++j) rhs(i, j) = f.add(rhs(i, j), f.mul(factor, rhs(c, j)));
    }
  }
  return rhs;
}

std::optional<Vec> try_solve(const Field& f, Matrix a, Vec b) {
  Matrix rhs(static_cast<int>(b.size()), 1);
  for (std::size_t i = 0; i < b.size(); ++i) rhs(static_cast<int>(i), 0) = b[i];
  auto sol = try_solve_many(f, std::move(a), std::move(rhs));
  if (!sol) return std::nullopt;
  Vec x(sol->rows);
  for (int i = 0; i < sol->rows; ++i) x[i] = (*sol)(i, 0);
  return x;
}

Vec solve_system(const Field& f, Matrix a, Vec b) {
  auto x = try_solve(f, std::move(a), std::move(b));
  if (!x) throw SingularSystem{};
  return *x;
}

Vec null_space_vector(const Field& f, Matrix m) {
  if (m.rows >= m.cols) throw std::invalid_argument("null space: need rows < cols");
  std::vector<int> pivot_cols;
  int r = 0;
  for (int c = 0; c < m.cols && r < m.rows; ++c) {
    int piv = -1;
    for (int i = r; i < m.rows; ++i) {
      if (m(i, c) != 0) {
        piv = i;
        break;
      }
    }
    if (piv < 0) continue;
    for (int j = 0; j < m.cols; ++j) std::swap(m(piv, j), m(r, j));
    const Elem ip = f.inv(m(r, c));
    for (int j = c; j < m.cols; ++j) m(r, j) = f.mul(m(r, j), ip);
    for (int i = r + 1; i < m.rows; ++i) {
      if (m(i, c) == 0) continue;
      const Elem factor = m(i, c);
      for (int j = c; j < m.cols; ++j) m(i, j) = f.add(m(i, j), f.mul(factor, m(r, j)));
    }
    pivot_cols.push_back(c);
    ++r;
  }

  int free_col = -1;
  {
    std::size_t k = 0;
    for (int c = 0; c < m.cols; ++c) {
      if (k < pivot_cols.size() && pivot_cols[k] == c) {
        ++k;
        continue;
      }
      free_col = c;
      break;
    }
  }
  assert(free_col >= 0);  // rows < cols guarantees a free column

  Vec v(m.cols, 0);
  v[free_col] = 1;
  for (int i = static_cast<int>(pivot_cols.size()) - 1; i >= 0; --i) {
    const int p = pivot_cols[i];
    Elem s = 0;
    for (int c = p + 1; c < m.cols; ++c) {
      if (m(i, c) != 0 && v[c] != 0) s = f.add(s, f.mul(m(i, c), v[c]));
    }
    v[p] = s;  // characteristic two: -x == x
  }
  return v;
}

}  // namespace mtcc::gf
