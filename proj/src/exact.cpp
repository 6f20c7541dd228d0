#include "exact.hpp"

#include <limits>

#include "torbase/errors.hpp"

namespace torbase::exact {

namespace {

using Matrix = std::vector<std::vector<mpq_class>>;

Matrix to_rational(const std::vector<Vec>& rows) {
  Matrix m;
  m.reserve(rows.size());
  for (const auto& r : rows) {
    std::vector<mpq_class> q;
    q.reserve(r.size());
    for (Int x : r) q.emplace_back(static_cast<long>(x));
    m.push_back(std::move(q));
  }
  return m;
}

// Row echelon form in place, returns the rank.
std::size_t eliminate(Matrix& m, std::size_t cols) {
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    std::size_t p = r;
    while (p < m.size() && m[p][c] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[r]);
    for (std::size_t i = r + 1; i < m.size(); ++i) {
      if (m[i][c] == 0) continue;
      mpq_class f = m[i][c] / m[r][c];
      for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    ++r;
  }
  return r;
}

mpz_class determinant(Matrix m) {
  const std::size_t n = m.size();
  mpq_class det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m[p][c] == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      std::swap(m[p], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (std::size_t i = c + 1; i < n; ++i) {
      if (m[i][c] == 0) continue;
      mpq_class f = m[i][c] / m[c][c];
      for (std::size_t j = c; j < n; ++j) m[i][j] -= f * m[c][j];
    }
  }
  return det.get_num();
}

using Wide = __int128;

// Fraction-free elimination. False when an intermediate leaves 128 bits.
bool small_determinant(std::vector<std::vector<Wide>> m, Wide& det) {
  const std::size_t n = m.size();
  Wide prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && m[p][k] == 0) ++p;
    if (p == n) {
      det = 0;
      return true;
    }
    if (p != k) {
      std::swap(m[p], m[k]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Wide a, b, c;
        if (__builtin_mul_overflow(m[i][j], m[k][k], &a) || __builtin_mul_overflow(m[i][k], m[k][j], &b) ||
            __builtin_sub_overflow(a, b, &c))
          return false;
        m[i][j] = c / prev;
      }
      m[i][k] = 0;
    }
    prev = m[k][k];
  }
  det = sign * m[n - 1][n - 1];
  return true;
}

Wide wide_gcd(Wide a, Wide b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    Wide t = a % b;
    a = b;
    b = t;
  }
  return a;
}

// Signed maximal minors in 128-bit arithmetic; false on overflow.
bool small_null_vector(const std::vector<Vec>& rows, Vec& out) {
  const std::size_t n = rows.front().size();
  std::vector<Wide> r(n);
  Wide g = 0;
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<std::vector<Wide>> minor(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t k = 0; k < n; ++k)
        if (k != j) minor[i].push_back(rows[i][k]);
    if (!small_determinant(std::move(minor), r[j])) return false;
    if (j % 2 == 1) r[j] = -r[j];
    g = wide_gcd(g, r[j]);
  }
  out.clear();
  if (g == 0) return true;
  out.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    const Wide v = r[j] / g;
    if (v > std::numeric_limits<Int>::max() || v < std::numeric_limits<Int>::min())
      throw OverflowError("exact value exceeds 64 bits");
    out[j] = static_cast<Int>(v);
  }
  return true;
}

Int to_int(const mpz_class& z) {
  if (!z.fits_slong_p()) throw OverflowError("exact value exceeds 64 bits");
  return static_cast<Int>(z.get_si());
}

}  // namespace

std::size_t rank(const std::vector<Vec>& rows) {
  if (rows.empty()) return 0;
  Matrix m = to_rational(rows);
  return eliminate(m, rows.front().size());
}

Vec null_vector(const std::vector<Vec>& rows) {
  const std::size_t n = rows.empty() ? 0 : rows.front().size();
  ensure(rows.size() + 1 == n, "null_vector expects n-1 rows");
  if (Vec fast; small_null_vector(rows, fast)) return fast;
  Matrix full = to_rational(rows);
  std::vector<mpz_class> r(n);
  mpz_class g = 0;
  for (std::size_t j = 0; j < n; ++j) {
    Matrix minor(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t k = 0; k < n; ++k)
        if (k != j) minor[i].push_back(full[i][k]);
    r[j] = determinant(std::move(minor));
    if (j % 2 == 1) r[j] = -r[j];
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), r[j].get_mpz_t());
  }
  if (g == 0) return {};
  Vec out(n);
  for (std::size_t j = 0; j < n; ++j) out[j] = to_int(r[j] / g);
  return out;
}

bool feasible(const Matrix& m, const std::vector<mpq_class>& rhs) {
  const std::size_t rows = m.size();
  if (rows == 0) return true;
  const std::size_t n = m.front().size();
  const std::size_t cols = n + rows;
  Matrix t(rows, std::vector<mpq_class>(cols));
  std::vector<mpq_class> b(rhs);
  std::vector<std::size_t> basis(rows);
  for (std::size_t i = 0; i < rows; ++i) {
    const bool flip = b[i] < 0;
    for (std::size_t j = 0; j < n; ++j) t[i][j] = flip ? mpq_class(-m[i][j]) : m[i][j];
    if (flip) b[i] = -b[i];
    t[i][n + i] = 1;
    basis[i] = n + i;
  }
  std::vector<mpq_class> d(cols);
  mpq_class w = 0;
  for (std::size_t i = 0; i < rows; ++i) {
    w += b[i];
    for (std::size_t j = 0; j < n; ++j) d[j] += t[i][j];
  }
  while (true) {
    std::size_t enter = cols;
    for (std::size_t j = 0; j < cols; ++j)
      if (d[j] > 0) {
        enter = j;
        break;
      }
    if (enter == cols) break;
    std::size_t leave = rows;
    mpq_class best;
    for (std::size_t i = 0; i < rows; ++i) {
      if (t[i][enter] <= 0) continue;
      mpq_class ratio = b[i] / t[i][enter];
      if (leave == rows || ratio < best || (ratio == best && basis[i] < basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    ensure(leave != rows, "phase one objective is bounded");
    mpq_class piv = t[leave][enter];
    for (auto& x : t[leave]) x /= piv;
    b[leave] /= piv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == leave || t[i][enter] == 0) continue;
      mpq_class f = t[i][enter];
      for (std::size_t j = 0; j < cols; ++j) t[i][j] -= f * t[leave][j];
      b[i] -= f * b[leave];
    }
    mpq_class f = d[enter];
    for (std::size_t j = 0; j < cols; ++j) d[j] -= f * t[leave][j];
    w -= f * b[leave];
    basis[leave] = enter;
  }
  return w == 0;
}

}  // namespace torbase::exact
