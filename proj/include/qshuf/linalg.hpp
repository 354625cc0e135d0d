#pragma once
// Exact linear algebra: reduced row echelon form over a field, kernels, linear
// solves, fraction-free (Bareiss) rank over integral domains, and a fast rank
// modulo 2^31-1.

#include "qshuf/ratfunc.hpp"
#include "qshuf/scalar.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

namespace qshuf {

template <class S>
using SparseRow = std::vector<std::pair<int, S>>;

// Incremental echelon form. Rows are stored with pivot entry 1 and reduced
// against all earlier pivots.
template <class S>
class Echelon {
 public:
  explicit Echelon(int ncols) : ncols_(ncols), pivot_of_col_(ncols, -1) {}

  int cols() const { return ncols_; }
  int rank() const { return int(rows_.size()); }
  const std::vector<int>& pivots() const { return pivot_cols_; }

  // Returns true when the row was independent of the rows added so far.
  bool add(std::vector<S> row) {
    using T = field_traits<S>;
    reduce(row);
    int p = -1;
    for (int c = 0; c < ncols_; ++c)
      if (!T::is_zero(row[c])) {
        p = c;
        break;
      }
    if (p < 0) return false;
    S inv = T::inv(row[p]);
    for (int c = p; c < ncols_; ++c)
      if (!T::is_zero(row[c])) row[c] = row[c] * inv;
    pivot_of_col_[p] = int(rows_.size());
    pivot_cols_.push_back(p);
    rows_.push_back(std::move(row));
    return true;
  }
  bool add_sparse(const SparseRow<S>& r) {
    std::vector<S> row(ncols_, field_traits<S>::zero());
    for (auto& [c, v] : r) row[c] = row[c] + v;
    return add(std::move(row));
  }

  // Reduces v against the stored rows (in place); v is in the span iff it
  // becomes zero.
  void reduce(std::vector<S>& v) const {
    using T = field_traits<S>;
    for (size_t r = 0; r < rows_.size(); ++r) {
      int p = pivot_cols_[r];
      if (T::is_zero(v[p])) continue;
      S f = v[p];
      const auto& row = rows_[r];
      for (int c = p; c < ncols_; ++c)
        if (!T::is_zero(row[c])) v[c] = v[c] - f * row[c];
    }
  }

  // Fully reduced rows (RREF), sorted by pivot column.
  std::vector<std::vector<S>> rref() const {
    using T = field_traits<S>;
    std::vector<int> order(rows_.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = int(i);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return pivot_cols_[a] < pivot_cols_[b]; });
    std::vector<std::vector<S>> R;
    for (int i : order) R.push_back(rows_[i]);
    for (int r = int(R.size()) - 1; r >= 0; --r) {
      int p = pivot_cols_[order[r]];
      for (int s = 0; s < r; ++s) {
        if (T::is_zero(R[s][p])) continue;
        S f = R[s][p];
        for (int c = p; c < ncols_; ++c)
          if (!T::is_zero(R[r][c])) R[s][c] = R[s][c] - f * R[r][c];
      }
    }
    return R;
  }

  // Kernel basis of the row space: one vector per free column, with a 1 in
  // that column.
  std::vector<std::vector<S>> kernel() const {
    using T = field_traits<S>;
    auto R = rref();
    std::vector<int> piv;
    for (auto& row : R)
      for (int c = 0; c < ncols_; ++c)
        if (!T::is_zero(row[c])) {
          piv.push_back(c);
          break;
        }
    std::vector<bool> is_piv(ncols_, false);
    for (int p : piv) is_piv[p] = true;
    std::vector<std::vector<S>> out;
    for (int f = 0; f < ncols_; ++f) {
      if (is_piv[f]) continue;
      std::vector<S> v(ncols_, T::zero());
      v[f] = T::one();
      for (size_t r = 0; r < R.size(); ++r) v[piv[r]] = T::zero() - R[r][f];
      out.push_back(std::move(v));
    }
    return out;
  }

 private:
  int ncols_;
  std::vector<std::vector<S>> rows_;
  std::vector<int> pivot_cols_;
  std::vector<int> pivot_of_col_;
};

// Solves sum_j x_j col_j = target. Columns are given as dense vectors of equal
// length. Free variables are set to zero.
template <class S>
std::optional<std::vector<S>> solve_columns(const std::vector<std::vector<S>>& cols, const std::vector<S>& target) {
  using T = field_traits<S>;
  int m = int(target.size()), n = int(cols.size());
  // augmented rows [A | b]
  std::vector<std::vector<S>> M(m, std::vector<S>(n + 1, T::zero()));
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < m; ++i) M[i][j] = cols[j][i];
  for (int i = 0; i < m; ++i) M[i][n] = target[i];
  std::vector<int> piv;
  int r = 0;
  for (int c = 0; c < n && r < m; ++c) {
    int s = r;
    while (s < m && T::is_zero(M[s][c])) ++s;
    if (s == m) continue;
    std::swap(M[s], M[r]);
    S inv = T::inv(M[r][c]);
    for (int cc = c; cc <= n; ++cc) M[r][cc] = M[r][cc] * inv;
    for (int i = 0; i < m; ++i) {
      if (i == r || T::is_zero(M[i][c])) continue;
      S f = M[i][c];
      for (int cc = c; cc <= n; ++cc)
        if (!T::is_zero(M[r][cc])) M[i][cc] = M[i][cc] - f * M[r][cc];
    }
    piv.push_back(c);
    ++r;
  }
  for (int i = r; i < m; ++i)
    if (!T::is_zero(M[i][n])) return std::nullopt;
  std::vector<S> x(n, T::zero());
  for (int i = 0; i < r; ++i) x[piv[i]] = M[i][n];
  return x;
}

// Inverse of a square matrix, or nullopt if singular.
template <class S>
std::optional<std::vector<std::vector<S>>> invert(std::vector<std::vector<S>> M) {
  using T = field_traits<S>;
  int n = int(M.size());
  std::vector<std::vector<S>> I(n, std::vector<S>(n, T::zero()));
  for (int i = 0; i < n; ++i) I[i][i] = T::one();
  for (int c = 0; c < n; ++c) {
    int s = c;
    while (s < n && T::is_zero(M[s][c])) ++s;
    if (s == n) return std::nullopt;
    std::swap(M[s], M[c]);
    std::swap(I[s], I[c]);
    S inv = T::inv(M[c][c]);
    for (int k = 0; k < n; ++k) {
      M[c][k] = M[c][k] * inv;
      I[c][k] = I[c][k] * inv;
    }
    for (int r = 0; r < n; ++r) {
      if (r == c || T::is_zero(M[r][c])) continue;
      S f = M[r][c];
      for (int k = 0; k < n; ++k) {
        M[r][k] = M[r][k] - f * M[c][k];
        I[r][k] = I[r][k] - f * I[c][k];
      }
    }
  }
  return I;
}

// Fraction-free Gaussian elimination over an integral domain. `div` must
// perform exact division.
template <class R, class Div, class IsZero>
int bareiss_rank(std::vector<std::vector<R>> M, const R& zero, const R& one, Div&& div, IsZero&& is_zero) {
  int m = int(M.size());
  if (!m) return 0;
  int n = int(M[0].size());
  R prev = one;
  int r = 0;
  for (int c = 0; c < n && r < m; ++c) {
    int s = r;
    while (s < m && is_zero(M[s][c])) ++s;
    if (s == m) continue;
    std::swap(M[s], M[r]);
    for (int i = r + 1; i < m; ++i) {
      for (int k = c + 1; k < n; ++k) M[i][k] = div(R(M[r][c] * M[i][k] - M[i][c] * M[r][k]), prev);
      M[i][c] = zero;
    }
    prev = M[r][c];
    ++r;
  }
  return r;
}

inline int bareiss_rank_integer(std::vector<std::vector<mpz_class>> M) {
  return bareiss_rank(
      std::move(M), mpz_class(0), mpz_class(1), [](const mpz_class& a, const mpz_class& b) { return mpz_class(a / b); },
      [](const mpz_class& a) { return sgn(a) == 0; });
}

inline int bareiss_rank_poly(std::vector<std::vector<MPoly>> M) {
  return bareiss_rank(
      std::move(M), MPoly(), MPoly::constant(1),
      [](const MPoly& a, const MPoly& b) {
        auto q = MPoly::divide(a, b);
        if (!q) throw qshuf_error("inexact division in fraction-free elimination");
        return *q;
      },
      [](const MPoly& a) { return a.is_zero(); });
}

namespace detail {

constexpr uint64_t kP31 = Zp31::P;

inline uint32_t fold31(uint64_t t) {
  t = (t & kP31) + (t >> 31);
  t = (t & kP31) + (t >> 31);
  return uint32_t(t >= kP31 ? t - kP31 : t);
}

// Rank of a dense row-major R x C matrix over Z/(2^31-1), destroying it.
// Pivots are taken in panels of up to four so that each trailing row is
// updated with one pass and a single reduction per entry.
inline int dense_rank31(std::vector<uint32_t>& M, size_t R, size_t C) {
  constexpr int K = 4;
  std::vector<std::array<uint32_t, K>> f(R);
  size_t rank = 0, col = 0;
  while (rank < R && col < C) {
    size_t pc[K];
    int np = 0;
    while (np < K && col < C && rank + np < R) {
      // effective value of column `col` after the panel's earlier pivots
      auto eff = [&](size_t r) {
        uint64_t v = M[r * C + col];
        for (int j = 0; j < np; ++j)
          v += uint64_t(kP31 - f[r][j]) * M[(rank + j) * C + col];
        return fold31(v);
      };
      size_t found = R;
      for (size_t r = rank + np; r < R; ++r)
        if (eff(r)) {
          found = r;
          break;
        }
      if (found == R) {
        ++col;
        continue;
      }
      size_t dst = rank + np;
      if (found != dst) {
        std::swap_ranges(M.begin() + found * C, M.begin() + (found + 1) * C, M.begin() + dst * C);
        std::swap(f[found], f[dst]);
      }
      uint32_t* pr = &M[dst * C];
      for (int j = 0; j < np; ++j) {
        uint64_t nf = kP31 - f[dst][j];
        if (nf == kP31) continue;
        const uint32_t* pj = &M[(rank + j) * C];
        for (size_t k = pc[0]; k < C; ++k) pr[k] = fold31(pr[k] + nf * pj[k]);
      }
      uint64_t inv = Zp31(pr[col]).inverse().value();
      for (size_t k = col; k < C; ++k) pr[k] = uint32_t(Zp31::mulmod(pr[k], inv));
      pc[np] = col;
      for (size_t r = dst + 1; r < R; ++r) {
        uint64_t v = M[r * C + col];
        for (int j = 0; j < np; ++j) v += uint64_t(kP31 - f[r][j]) * M[(rank + j) * C + col];
        f[r][np] = fold31(v);
      }
      ++np;
      ++col;
    }
    if (np == 0) break;
    // trailing update
    const uint32_t* p0 = &M[rank * C];
    const uint32_t* p1 = np > 1 ? &M[(rank + 1) * C] : p0;
    const uint32_t* p2 = np > 2 ? &M[(rank + 2) * C] : p0;
    const uint32_t* p3 = np > 3 ? &M[(rank + 3) * C] : p0;
    for (size_t r = rank + np; r < R; ++r) {
      uint64_t n0 = kP31 - f[r][0], n1 = np > 1 ? kP31 - f[r][1] : kP31, n2 = np > 2 ? kP31 - f[r][2] : kP31,
               n3 = np > 3 ? kP31 - f[r][3] : kP31;
      if (n0 == kP31) n0 = 0;
      if (n1 == kP31) n1 = 0;
      if (n2 == kP31) n2 = 0;
      if (n3 == kP31) n3 = 0;
      if (!(n0 | n1 | n2 | n3)) continue;
      uint32_t* __restrict row = &M[r * C];
      for (size_t k = pc[0]; k < C; ++k) {
        uint64_t t = uint64_t(row[k]) + n0 * p0[k] + n1 * p1[k] + n2 * p2[k] + n3 * p3[k];
        t = (t & kP31) + (t >> 31);
        t = (t & kP31) + (t >> 31);
        row[k] = uint32_t(t >= kP31 ? t - kP31 : t);
      }
    }
    rank += np;
  }
  return int(rank);
}

}  // namespace detail

// Rank over Z/(2^31-1) of a sparse matrix with entries already reduced. Tall
// systems are first compressed by a random dense combination of rows; the
// rank is preserved with high probability and can only drop, never rise.
inline int rank_mod_p31(const std::vector<std::vector<std::pair<int, uint32_t>>>& rows, size_t ncols, uint64_t seed) {
  using detail::fold31;
  size_t m = rows.size();
  if (m == 0 || ncols == 0) return 0;
  size_t T = ncols + 16;
  std::vector<uint32_t> M;
  if (m <= T) {
    M.assign(m * ncols, 0);
    for (size_t r = 0; r < m; ++r)
      for (auto& [c, v] : rows[r]) M[r * ncols + c] = fold31(uint64_t(M[r * ncols + c]) + v);
    return detail::dense_rank31(M, m, ncols);
  }
  // transpose of (W * A): ncols x T, same rank
  M.assign(ncols * T, 0);
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::vector<uint32_t> w(T);
  for (size_t r = 0; r < m; ++r) {
    for (auto& x : w) x = uint32_t(rng() % detail::kP31);
    for (auto& [c, v] : rows[r]) {
      uint32_t* __restrict dst = &M[size_t(c) * T];
      uint64_t vv = v;
      for (size_t t = 0; t < T; ++t) dst[t] = fold31(dst[t] + vv * w[t]);
    }
  }
  return detail::dense_rank31(M, ncols, T);
}

}  // namespace qshuf
