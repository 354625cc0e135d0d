#pragma once
// Kac polynomials, the plethystic exponential and the dimension conjecture
// harness.
//
// kac_hua evaluates Hua's generating function at integer points q0 = 2, 3, ...,
// extracts A_n(q0) by Moebius inversion of its logarithm, and interpolates.
// kac_bruteforce counts absolutely indecomposable representations over F_q
// with the mass formula  #classes = sum_V |Aut V| / |G|.

#include "qshuf/slope.hpp"

#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <unordered_map>

namespace qshuf {

using Partition = std::vector<int>;

inline void partitions_of(int n, int maxpart, Partition& cur, std::vector<Partition>& out) {
  if (n == 0) {
    out.push_back(cur);
    return;
  }
  for (int k = std::min(n, maxpart); k >= 1; --k) {
    cur.push_back(k);
    partitions_of(n - k, k, cur, out);
    cur.pop_back();
  }
}

inline std::vector<Partition> partitions(int n) {
  std::vector<Partition> out;
  Partition cur;
  partitions_of(n, n, cur, out);
  return out;
}

inline Partition conjugate(const Partition& p) {
  Partition c(p.empty() ? 0 : p[0], 0);
  for (int part : p)
    for (int k = 0; k < part; ++k) ++c[k];
  return c;
}

// <lambda, mu> = sum_k lambda'_k mu'_k
inline long partition_form(const Partition& lc, const Partition& mc) {
  long s = 0;
  for (size_t k = 0; k < std::min(lc.size(), mc.size()); ++k) s += long(lc[k]) * mc[k];
  return s;
}

struct KacPoly {
  DimVector n;
  std::vector<mpz_class> coef;  // coefficient of t^k

  mpz_class eval(const mpz_class& t) const {
    mpz_class r = 0;
    for (size_t k = coef.size(); k-- > 0;) r = r * t + coef[k];
    return r;
  }
  bool nonnegative() const {
    return std::all_of(coef.begin(), coef.end(), [](const mpz_class& c) { return sgn(c) >= 0; });
  }
  std::string str() const {
    std::string s;
    for (size_t k = 0; k < coef.size(); ++k) {
      if (sgn(coef[k]) == 0) continue;
      if (!s.empty()) s += " + ";
      s += coef[k].get_str();
      if (k) s += k == 1 ? "*t" : "*t^" + std::to_string(k);
    }
    return s.empty() ? "0" : s;
  }
};

// 1 - <n,n> for the Euler form; A_n has degree at most this.
inline long kac_degree_bound(const Quiver& Q, const DimVector& n) {
  long s = 1;
  for (int x : n) s -= long(x) * x;
  return s + edge_form(Q, n, n);
}

inline int mobius(int n) {
  int r = 1;
  for (int p = 2; p * p <= n; ++p)
    if (n % p == 0) {
      n /= p;
      if (n % p == 0) return 0;
      r = -r;
    }
  return n > 1 ? -r : r;
}

namespace detail {

using QSeries = std::vector<mpq_class>;  // indexed like TruncSeries

// Hua's series  sum_pi q^{sum_e <pi_s,pi_t> - sum_i <pi_i,pi_i>} / prod_i b_{pi_i}(1/q)
inline QSeries hua_series(const Quiver& Q, const TruncSeries& shape, const mpq_class& q, size_t ceiling) {
  int nv = Q.vertex_count();
  std::vector<std::vector<Partition>> conj(size_t(1) + *std::max_element(shape.box_max().begin(), shape.box_max().end()));
  std::vector<std::vector<mpq_class>> weight(conj.size());  // q^{-<p,p>} / b_p(1/q)
  mpq_class qi = 1 / q;
  for (size_t k = 0; k < conj.size(); ++k)
    for (auto& p : partitions(int(k))) {
      Partition c = conjugate(p);
      mpq_class w = scalar_pow(q, -partition_form(c, c));
      std::map<int, int> mult;
      for (int part : p) ++mult[part];
      for (auto& [part, m] : mult)
        for (int j = 1; j <= m; ++j) w /= 1 - scalar_pow(qi, j);
      conj[k].push_back(c);
      weight[k].push_back(w);
    }
  QSeries out(shape.size());
  for (size_t idx = 0; idx < shape.size(); ++idx) {
    DimVector n = shape.at_index(idx);
    size_t combos = 1;
    for (int x : n) combos *= conj[x].size();
    if (combos > ceiling) throw resource_limit_error("partition tuples for " + dim_str(n) + " exceed the ceiling");
    std::vector<size_t> sel(nv, 0);
    mpq_class tot = 0;
    for (size_t c = 0; c < combos; ++c) {
      size_t r = c;
      for (int i = 0; i < nv; ++i) {
        sel[i] = r % conj[n[i]].size();
        r /= conj[n[i]].size();
      }
      long e = 0;
      mpq_class w = 1;
      for (int i = 0; i < nv; ++i) w *= weight[n[i]][sel[i]];
      for (auto& ed : Q.edges()) e += partition_form(conj[n[ed.source]][sel[ed.source]], conj[n[ed.target]][sel[ed.target]]);
      tot += w * scalar_pow(q, e);
    }
    out[idx] = tot;
  }
  return out;
}

// log of a series with constant term 1, via the Euler derivation:
// |n| L_n = |n| S_n - sum_{0<k<n} |k| L_k S_{n-k}
inline QSeries series_log(const TruncSeries& shape, const QSeries& S) {
  QSeries L(S.size());
  std::vector<DimVector> idx(S.size());
  for (size_t i = 0; i < S.size(); ++i) idx[i] = shape.at_index(i);
  for (size_t i = 1; i < S.size(); ++i) {
    int w = total(idx[i]);
    mpq_class acc = w * S[i];
    for (size_t j = 1; j < S.size(); ++j) {
      if (j == i || !leq(idx[j], idx[i]) || sgn(L[j]) == 0) continue;
      acc -= total(idx[j]) * L[j] * S[shape.index(idx[i] - idx[j])];
    }
    L[i] = acc / w;
  }
  return L;
}

}  // namespace detail

// A_{Q,n}(t) for every 0 < n <= nmax (entry for n = 0 is the zero polynomial).
inline std::vector<KacPoly> kac_hua_box(const Quiver& Q, const DimVector& nmax, size_t ceiling = resource_ceiling()) {
  TruncSeries shape(nmax);
  long dmax = 0;
  for (size_t i = 1; i < shape.size(); ++i) dmax = std::max(dmax, kac_degree_bound(Q, shape.at_index(i)));
  int npts = int(dmax) + 2;  // one spare point certifies the degree bound
  int gmax = 0;
  for (int x : nmax) gmax = std::max(gmax, x);

  // values[idx][p] = A_n(x_p) at x_p = p + 2
  std::vector<std::vector<mpq_class>> values(shape.size(), std::vector<mpq_class>(npts));
  for (int p = 0; p < npts; ++p) {
    long q0 = p + 2;
    std::vector<detail::QSeries> logs(gmax + 1);
    for (size_t idx = 1; idx < shape.size(); ++idx) {
      DimVector n = shape.at_index(idx);
      int g = 0;
      for (int x : n) g = std::gcd(g, x);
      mpq_class acc = 0;
      for (int r = 1; r <= g; ++r) {
        if (g % r || mobius(r) == 0) continue;
        if (logs[r].empty()) {
          mpq_class qr = scalar_pow(mpq_class(q0), r);
          logs[r] = detail::series_log(shape, detail::hua_series(Q, shape, qr, ceiling));
        }
        DimVector nr(n);
        for (int& x : nr) x /= r;
        acc += mpq_class(mobius(r), r) * logs[r][shape.index(nr)];
      }
      values[idx][p] = acc * (q0 - 1);
    }
  }

  std::vector<KacPoly> out(shape.size());
  for (size_t idx = 0; idx < shape.size(); ++idx) {
    out[idx].n = shape.at_index(idx);
    if (idx == 0) continue;
    // Newton divided differences, then expansion to the monomial basis
    std::vector<mpq_class> dd = values[idx];
    for (int k = 1; k < npts; ++k)
      for (int p = npts - 1; p >= k; --p) dd[p] = (dd[p] - dd[p - 1]) / mpq_class(k);
    std::vector<mpq_class> poly(npts, 0);
    for (int k = npts - 1; k >= 0; --k) {
      // poly = poly * (t - x_k) + dd[k]
      std::vector<mpq_class> next(npts, 0);
      for (int j = 0; j < npts; ++j) {
        if (sgn(poly[j]) == 0) continue;
        if (j + 1 < npts) next[j + 1] += poly[j];
        next[j] -= poly[j] * (k + 2);
      }
      next[0] += dd[k];
      poly = std::move(next);
    }
    long bound = std::max(0L, kac_degree_bound(Q, out[idx].n));
    for (int j = 0; j < npts; ++j) {
      if (poly[j].get_den() != 1)
        throw qshuf_error("Hua interpolation produced a non-integral coefficient for " + dim_str(out[idx].n));
      if (j > bound && sgn(poly[j]) != 0)
        throw qshuf_error("Hua interpolation exceeded the degree bound for " + dim_str(out[idx].n));
    }
    size_t len = npts;
    while (len > 0 && sgn(poly[len - 1]) == 0) --len;
    for (size_t j = 0; j < len; ++j) out[idx].coef.push_back(poly[j].get_num());
  }
  return out;
}

inline KacPoly kac_hua(const Quiver& Q, const DimVector& n, size_t ceiling = resource_ceiling()) {
  if (total(n) == 0) return KacPoly{n, {}};
  TruncSeries shape(n);
  return kac_hua_box(Q, n, ceiling)[shape.index(n)];
}

// ---------------------------------------------------------------------------
// finite fields F_2, F_3, F_4

class SmallField {
 public:
  explicit SmallField(int q) : q_(q) {
    if (q != 2 && q != 3 && q != 4) throw qshuf_error("field size must be 2, 3 or 4");
    for (int a = 0; a < q; ++a)
      for (int b = 0; b < q; ++b) {
        if (q == 4) {
          add_[a][b] = uint8_t(a ^ b);
          // F_4 = F_2[x]/(x^2 + x + 1), element a = a0 + a1 x
          int a0 = a & 1, a1 = a >> 1, b0 = b & 1, b1 = b >> 1;
          int c0 = (a0 & b0) ^ (a1 & b1), c1 = (a0 & b1) ^ (a1 & b0) ^ (a1 & b1);
          mul_[a][b] = uint8_t(c0 | (c1 << 1));
        } else {
          add_[a][b] = uint8_t((a + b) % q);
          mul_[a][b] = uint8_t((a * b) % q);
        }
      }
    for (int a = 0; a < q; ++a)
      for (int b = 0; b < q; ++b) {
        if (add_[a][b] == 0) neg_[a] = uint8_t(b);
        if (mul_[a][b] == 1) inv_[a] = uint8_t(b);
      }
    for (int a = 2; a < q; ++a) {  // a multiplicative generator
      int x = a, ord = 1;
      while (x != 1) x = mul_[x][a], ++ord;
      if (ord == q - 1) { gen_ = uint8_t(a); break; }
    }
  }
  int size() const { return q_; }
  uint8_t add(uint8_t a, uint8_t b) const { return add_[a][b]; }
  uint8_t sub(uint8_t a, uint8_t b) const { return add_[a][neg_[b]]; }
  uint8_t mul(uint8_t a, uint8_t b) const { return mul_[a][b]; }
  uint8_t neg(uint8_t a) const { return neg_[a]; }
  uint8_t inv(uint8_t a) const { return inv_[a]; }
  uint8_t generator() const { return gen_; }

 private:
  int q_;
  uint8_t add_[4][4]{}, mul_[4][4]{}, neg_[4]{}, inv_[4]{};
  uint8_t gen_ = 1;
};

namespace detail {

using FqMat = std::vector<uint8_t>;  // row-major

inline FqMat fq_mul(const SmallField& F, const FqMat& a, const FqMat& b, int n) {
  FqMat c(size_t(n) * n, 0);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      uint8_t x = a[i * n + k];
      if (!x) continue;
      for (int j = 0; j < n; ++j) c[i * n + j] = F.add(c[i * n + j], F.mul(x, b[k * n + j]));
    }
  return c;
}

inline bool fq_is_zero(const FqMat& a) {
  return std::all_of(a.begin(), a.end(), [](uint8_t x) { return x == 0; });
}

// Row reduction in place; returns pivot columns.
inline std::vector<int> fq_rref(const SmallField& F, std::vector<FqMat>& rows, int ncols) {
  std::vector<int> piv;
  size_t r = 0;
  for (int c = 0; c < ncols && r < rows.size(); ++c) {
    size_t p = r;
    while (p < rows.size() && rows[p][c] == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[r]);
    uint8_t iv = F.inv(rows[r][c]);
    for (auto& x : rows[r]) x = F.mul(x, iv);
    for (size_t o = 0; o < rows.size(); ++o) {
      if (o == r || rows[o][c] == 0) continue;
      uint8_t f = rows[o][c];
      for (int j = c; j < ncols; ++j) rows[o][j] = F.sub(rows[o][j], F.mul(f, rows[r][j]));
    }
    piv.push_back(c);
    ++r;
  }
  rows.resize(r);
  return piv;
}

// Endomorphism algebra of a representation, as block-diagonal matrices of
// size N = sum n_i. Returns a basis.
struct EndSolver {
  const Quiver& Q;
  const SmallField& F;
  DimVector n;
  std::vector<int> uoff;  // offset of phi_i among the unknowns
  int nunk = 0;
  int N = 0;
  std::vector<int> voff;

  EndSolver(const Quiver& Q_, const SmallField& F_, DimVector n_) : Q(Q_), F(F_), n(std::move(n_)) {
    for (int x : n) {
      uoff.push_back(nunk);
      voff.push_back(N);
      nunk += x * x;
      N += x;
    }
  }

  // mats[e] is n_t x n_s. Equations: phi_t A - A phi_s = 0.
  std::vector<FqMat> kernel(const std::vector<FqMat>& mats) const {
    std::vector<FqMat> rows;
    for (auto& e : Q.edges()) {
      int s = e.source, t = e.target, ns = n[s], nt = n[t];
      const FqMat& A = mats[e.id];
      for (int a = 0; a < nt; ++a)
        for (int b = 0; b < ns; ++b) {
          FqMat row(nunk, 0);
          for (int c = 0; c < nt; ++c)  // (phi_t)_{a c} A_{c b}
            row[uoff[t] + a * nt + c] = F.add(row[uoff[t] + a * nt + c], A[c * ns + b]);
          for (int c = 0; c < ns; ++c)  // - A_{a c} (phi_s)_{c b}
            row[uoff[s] + c * ns + b] = F.sub(row[uoff[s] + c * ns + b], A[a * ns + c]);
          if (!fq_is_zero(row)) rows.push_back(std::move(row));
        }
    }
    auto piv = fq_rref(F, rows, nunk);
    std::vector<char> is_piv(nunk, 0);
    for (int c : piv) is_piv[c] = 1;
    std::vector<FqMat> basis;
    for (int f = 0; f < nunk; ++f) {
      if (is_piv[f]) continue;
      FqMat v(nunk, 0);
      v[f] = 1;
      for (size_t r = 0; r < piv.size(); ++r) v[piv[r]] = F.neg(rows[r][f]);
      basis.push_back(to_block(v));
    }
    return basis;
  }

  FqMat to_block(const FqMat& v) const {
    FqMat m(size_t(N) * N, 0);
    for (size_t i = 0; i < n.size(); ++i)
      for (int a = 0; a < n[i]; ++a)
        for (int b = 0; b < n[i]; ++b) m[(voff[i] + a) * N + voff[i] + b] = v[uoff[i] + a * n[i] + b];
    return m;
  }
};

inline bool fq_nilpotent(const SmallField& F, const FqMat& a, int N) {
  FqMat p = a;
  for (int k = 1; k < N; ++k) p = fq_mul(F, p, a, N);
  return fq_is_zero(p);
}

// End(V) is local with residue field F_q: every basis element is lambda + nilpotent,
// and the nilpotent parts span a nilpotent two-sided ideal complementing F_q.
inline bool local_with_trivial_residue(const SmallField& F, const std::vector<FqMat>& basis, int N) {
  if (basis.size() == 1) return true;  // End = F_q (the identity always lies in End)
  FqMat id(size_t(N) * N, 0);
  for (int i = 0; i < N; ++i) id[i * N + i] = 1;
  std::vector<FqMat> J;
  for (auto& b : basis) {
    bool found = false;
    for (int lam = 0; lam < F.size() && !found; ++lam) {
      FqMat m = b;
      for (int i = 0; i < N; ++i) m[i * N + i] = F.sub(m[i * N + i], uint8_t(lam));
      if (fq_nilpotent(F, m, N)) {
        if (!fq_is_zero(m)) J.push_back(std::move(m));
        found = true;
      }
    }
    if (!found) return false;
  }
  int NN = N * N;
  auto span = [&](std::vector<FqMat> v) {
    fq_rref(F, v, NN);
    return v;
  };
  J = span(J);
  if (J.size() + 1 != basis.size()) return false;
  // powers J^k must reach zero, and J must be closed under multiplication
  std::vector<FqMat> P = J;
  for (int k = 0; k <= int(basis.size()) && !P.empty(); ++k) {
    std::vector<FqMat> prod;
    for (auto& x : P)
      for (auto& y : J) prod.push_back(fq_mul(F, x, y, N));
    prod = span(std::move(prod));
    if (k == 0) {
      std::vector<FqMat> both = J;
      both.insert(both.end(), prod.begin(), prod.end());
      if (span(both).size() != J.size()) return false;
    }
    if (prod.size() >= P.size() && !prod.empty()) return false;
    P = std::move(prod);
  }
  return P.empty();
}

// all matrices of the given size, indexed base-q
inline void fq_decode(size_t code, int q, FqMat& m) {
  for (auto& x : m) {
    x = uint8_t(code % q);
    code /= q;
  }
}
inline size_t fq_encode(const FqMat& m, int q) {
  size_t code = 0;
  for (size_t k = m.size(); k-- > 0;) code = code * q + m[k];
  return code;
}

inline FqMat fq_mul_rect(const SmallField& F, const FqMat& a, const FqMat& b, int r, int k, int c) {
  FqMat out(size_t(r) * c, 0);
  for (int i = 0; i < r; ++i)
    for (int l = 0; l < k; ++l) {
      uint8_t x = a[i * k + l];
      if (!x) continue;
      for (int j = 0; j < c; ++j) out[i * c + j] = F.add(out[i * c + j], F.mul(x, b[l * c + j]));
    }
  return out;
}

// Mass-formula sum over all representations of dimension n, one edge at a
// time. After fixing the matrices of the first edges, the remaining sum is
// invariant under the units of their common centralizer Z, so the next edge
// is summed over Z^x-orbits. Once Z is the scalars every completion has
// End = F_q and the rest of the sum is a product.
class MassSum {
 public:
  MassSum(const Quiver& Q, const SmallField& F, const DimVector& n, size_t ceiling)
      : Q_(Q), F_(F), n_(n), ceiling_(ceiling) {
    for (int x : n) {
      voff_.push_back(N_);
      N_ += x;
    }
    for (auto& e : Q.edges()) {
      int r = n[e.target], c = n[e.source];
      size_t sz = 1;
      for (int k = 0; k < r * c; ++k) sz *= size_t(F.size());
      if (sz > 1) order_.push_back(e.id);
      rows_.push_back(r);
      cols_.push_back(c);
      space_.push_back(sz);
    }
    // largest spaces first, so the orbit reduction sees the full group there
    std::stable_sort(order_.begin(), order_.end(), [&](int a, int b) { return space_[a] > space_[b]; });
  }

  mpz_class total(int jobs) {
    std::vector<FqMat> Z;
    for (size_t v = 0; v < n_.size(); ++v)
      for (int a = 0; a < n_[v]; ++a)
        for (int b = 0; b < n_[v]; ++b) {
          FqMat m(size_t(N_) * N_, 0);
          m[(voff_[v] + a) * N_ + voff_[v] + b] = 1;
          Z.push_back(std::move(m));
        }
    if (order_.size() < 2 || Z.size() == 1) return sum(0, Z, 0);
    auto orbs = orbits(Z, order_[0], 0);
    std::vector<mpz_class> part(orbs.size());
    parallel_for(orbs.size(), jobs, [&](size_t i) { part[i] = orbs[i].size * sum(1, orbs[i].Z, i + 1); });
    mpz_class s = 0;
    for (auto& p : part) s += p;
    return s;
  }

 private:
  struct Orbit {
    size_t size;
    std::vector<FqMat> Z;
  };

  FqMat block(const FqMat& g, int v) const {
    int k = n_[v], o = voff_[v];
    FqMat b(size_t(k) * k);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) b[i * k + j] = g[(o + i) * N_ + o + j];
    return b;
  }

  void charge() {
    if (++work_ > ceiling_) throw resource_limit_error("brute-force enumeration of " + dim_str(n_) + " over F_" +
                                                      std::to_string(F_.size()) + " exceeds the ceiling");
  }

  // elements of Z commuting with the matrix X of edge e
  std::vector<FqMat> restrict(const std::vector<FqMat>& Z, int e, const FqMat& X) {
    charge();
    const auto& ed = Q_.edges()[e];
    int r = rows_[e], c = cols_[e], d = int(Z.size());
    std::vector<FqMat> eqs(size_t(r) * c, FqMat(d, 0));
    for (int k = 0; k < d; ++k) {
      FqMat lhs = fq_mul_rect(F_, block(Z[k], ed.target), X, r, r, c);
      FqMat rhs = fq_mul_rect(F_, X, block(Z[k], ed.source), r, c, c);
      for (int p = 0; p < r * c; ++p) eqs[p][k] = F_.sub(lhs[p], rhs[p]);
    }
    auto piv = fq_rref(F_, eqs, d);
    if (piv.empty()) return Z;
    std::vector<char> is_piv(d, 0);
    for (int p : piv) is_piv[p] = 1;
    std::vector<FqMat> out;
    for (int f = 0; f < d; ++f) {
      if (is_piv[f]) continue;
      FqMat m = Z[f];
      for (size_t i = 0; i < piv.size(); ++i) {
        uint8_t co = F_.neg(eqs[i][f]);
        if (!co) continue;
        for (size_t p = 0; p < m.size(); ++p) m[p] = F_.add(m[p], F_.mul(co, Z[piv[i]][p]));
      }
      out.push_back(std::move(m));
    }
    return out;
  }

  FqMat combine(const std::vector<FqMat>& Z, size_t code) const {
    FqMat m(size_t(N_) * N_, 0);
    for (auto& z : Z) {
      uint8_t co = uint8_t(code % F_.size());
      code /= F_.size();
      if (co)
        for (size_t p = 0; p < m.size(); ++p) m[p] = F_.add(m[p], F_.mul(co, z[p]));
    }
    return m;
  }

  // inverse of g, or empty if g is singular
  FqMat inverse(const FqMat& g) const {
    std::vector<FqMat> aug(N_, FqMat(2 * size_t(N_), 0));
    for (int i = 0; i < N_; ++i) {
      for (int j = 0; j < N_; ++j) aug[i][j] = g[i * N_ + j];
      aug[i][N_ + i] = 1;
    }
    auto piv = fq_rref(F_, aug, 2 * N_);
    if (int(piv.size()) < N_ || piv[N_ - 1] >= N_) return {};
    FqMat inv(size_t(N_) * N_);
    for (int i = 0; i < N_; ++i)
      for (int j = 0; j < N_; ++j) inv[i * N_ + j] = aug[i][N_ + j];
    return inv;
  }

  size_t units(const std::vector<FqMat>& Z) const {
    if (Z.size() == 1) return size_t(F_.size() - 1);
    size_t all = 1, count = 0;
    for (size_t k = 0; k < Z.size(); ++k) all *= size_t(F_.size());
    for (size_t code = 1; code < all; ++code)
      if (!inverse(combine(Z, code)).empty()) ++count;
    return count;
  }

  std::vector<Orbit> orbits(const std::vector<FqMat>& Z, int e, uint64_t salt) {
    const auto& ed = Q_.edges()[e];
    int r = rows_[e], c = cols_[e];
    size_t sz = space_[e], group = units(Z), all = 1;
    for (size_t k = 0; k < Z.size(); ++k) all *= size_t(F_.size());
    std::mt19937_64 rng(0x9e3779b97f4a7c15ULL ^ (salt * 1000003ULL + size_t(e)));
    std::uniform_int_distribution<size_t> pick(1, all - 1);
    std::vector<std::pair<FqMat, FqMat>> gens;  // (g_target, g_source^{-1})
    std::vector<size_t> parent(sz);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](size_t x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    FqMat X(size_t(r) * c);
    for (int round = 0;; ++round) {
      if (round == 32) throw qshuf_error("orbit enumeration did not converge");
      // random elements generate Z^x with high probability; orbit sizes are checked below
      size_t fresh = gens.size();
      while (gens.size() < fresh + 3) {
        FqMat g = combine(Z, pick(rng)), gi = inverse(g);
        if (!gi.empty()) gens.emplace_back(block(g, ed.target), block(gi, ed.source));
      }
      for (size_t code = 0; code < sz; ++code) {
        fq_decode(code, F_.size(), X);
        for (size_t k = fresh; k < gens.size(); ++k) {
          charge();
          FqMat img = fq_mul_rect(F_, fq_mul_rect(F_, gens[k].first, X, r, r, c), gens[k].second, r, c, c);
          size_t a = find(code), b = find(fq_encode(img, F_.size()));
          if (a != b) parent[std::max(a, b)] = std::min(a, b);
        }
      }
      std::map<size_t, size_t> count;
      for (size_t code = 0; code < sz; ++code) ++count[find(code)];
      std::vector<Orbit> out;
      bool complete = true;
      for (auto& [root, cnt] : count) {
        fq_decode(root, F_.size(), X);
        auto Zs = restrict(Z, e, X);
        if (cnt * units(Zs) != group) {
          complete = false;
          break;
        }
        out.push_back({cnt, std::move(Zs)});
      }
      if (complete) return out;
    }
  }

  unsigned __int128 leaf(const std::vector<FqMat>& Z) const {
    unsigned q = unsigned(F_.size());
    if (Z.size() > 1 && !local_with_trivial_residue(F_, Z, N_)) return 0;
    // |Aut V| = q^dim - q^(dim-1) for a local algebra with residue field F_q
    unsigned __int128 a = q - 1;
    for (size_t k = 1; k < Z.size(); ++k) a *= q;
    return a;
  }

  // sum of |Aut| over completions of the edges order_[level..]
  mpz_class sum(size_t level, const std::vector<FqMat>& Z, uint64_t salt) {
    if (Z.size() == 1) {
      mpz_class s = F_.size() - 1;
      for (size_t l = level; l < order_.size(); ++l) s *= mpz_class(std::to_string(space_[order_[l]]));
      return s;
    }
    if (level == order_.size()) return to_mpz(leaf(Z));
    int e = order_[level];
    if (level + 1 == order_.size()) {
      unsigned __int128 acc = 0;
      FqMat X(size_t(rows_[e]) * cols_[e]);
      for (size_t code = 0; code < space_[e]; ++code) {
        fq_decode(code, F_.size(), X);
        acc += leaf(restrict(Z, e, X));
      }
      return to_mpz(acc);
    }
    mpz_class s = 0;
    auto orbs = orbits(Z, e, salt);
    for (size_t i = 0; i < orbs.size(); ++i)
      s += orbs[i].size * sum(level + 1, orbs[i].Z, salt * 131 + i + 1);
    return s;
  }

  static mpz_class to_mpz(unsigned __int128 v) {
    mpz_class a;
    mpz_import(a.get_mpz_t(), 2, -1, sizeof(uint64_t), 0, 0, &v);
    return a;
  }

  const Quiver& Q_;
  const SmallField& F_;
  DimVector n_;
  size_t ceiling_;
  std::atomic<size_t> work_{0};
  int N_ = 0;
  std::vector<int> voff_, order_, rows_, cols_;
  std::vector<size_t> space_;
};

}  // namespace detail

inline mpz_class gl_order(int n, int q) {
  mpz_class r = 1, qn;
  mpz_ui_pow_ui(qn.get_mpz_t(), q, n);
  mpz_class qk = 1;
  for (int k = 0; k < n; ++k) {
    r *= qn - qk;
    qk *= q;
  }
  return r;
}

// counts matrix products, roughly
inline constexpr size_t kBruteForceCeiling = 400000000;

// Number of absolutely indecomposable representations of dimension n over F_q.
inline mpz_class kac_bruteforce_count(const Quiver& Q, const DimVector& n, int q, int jobs = 1,
                                      size_t ceiling = kBruteForceCeiling) {
  if (total(n) > 3) throw qshuf_error("exhaustive enumeration is limited to |n| <= 3");
  if (total(n) == 0) return 0;
  SmallField F(q);
  mpz_class G = 1;
  for (int x : n) G *= gl_order(x, q);
  mpz_class mass = detail::MassSum(Q, F, n, ceiling).total(jobs);
  if (mass % G != 0) throw qshuf_error("mass formula produced a non-integral count");
  return mass / G;
}

inline std::vector<mpz_class> kac_bruteforce(const Quiver& Q, const DimVector& n, const std::vector<int>& field_sizes,
                                             int jobs = 1) {
  std::vector<mpz_class> out;
  for (int q : field_sizes) out.push_back(kac_bruteforce_count(Q, n, q, jobs));
  return out;
}

// ---------------------------------------------------------------------------

// Exp[sum d_n z^n] = prod_n (1 - z^n)^{-d_n}, truncated to the input's box.
inline TruncSeries plethystic_exp(const TruncSeries& in) {
  if (sgn(in.coef(0)) != 0) throw qshuf_error("Exp requires a zero constant term");
  TruncSeries out(in.box_max());
  out.coef(0) = 1;
  for (size_t idx = 1; idx < in.size(); ++idx) {
    const mpz_class& d = in.coef(idx);
    if (sgn(d) < 0) throw qshuf_error("Exp requires nonnegative coefficients");
    if (sgn(d) == 0) continue;
    DimVector n = in.at_index(idx);
    // factor sum_k binom(d + k - 1, k) z^{kn}
    std::vector<mpz_class> fac{1};
    for (int k = 1;; ++k) {
      DimVector kn(n);
      for (int& x : kn) x *= k;
      if (!out.contains(kn)) break;
      fac.push_back(fac.back() * (d + k - 1) / k);
    }
    TruncSeries next(in.box_max());
    for (size_t j = 0; j < out.size(); ++j) {
      if (sgn(out.coef(j)) == 0) continue;
      DimVector base = out.at_index(j);
      for (size_t k = 0; k < fac.size(); ++k) {
        DimVector s(base);
        for (size_t i = 0; i < s.size(); ++i) s[i] += int(k) * n[i];
        if (!out.contains(s)) break;
        next[s] += out.coef(j) * fac[k];
      }
    }
    out = std::move(next);
  }
  return out;
}

struct ConjectureRow {
  DimVector n;
  long lhs = 0;       // dim B_{0|n}
  mpz_class rhs = 0;  // coefficient of Exp[A_Q(1, z)]
  bool equal = false;
  bool capped = false;
  DimensionRecord record;
};

struct ConjectureReport {
  std::vector<ConjectureRow> rows;
  std::vector<KacPoly> kac;  // per n in the box
  bool all_equal = true;     // over uncapped rows
  bool seeds_agree = true;
  size_t capped = 0;
};

inline ConjectureReport check_conjecture(const Quiver& Q, const DimVector& nmax, const std::vector<uint64_t>& seeds,
                                         int jobs = 1, size_t ceiling = resource_ceiling()) {
  ConjectureReport rep;
  rep.kac = kac_hua_box(Q, nmax, ceiling);
  TruncSeries A1(nmax);
  for (size_t i = 1; i < A1.size(); ++i) A1.coef(i) = rep.kac[i].eval(1);
  TruncSeries rhs = plethystic_exp(A1);
  SlopeVector zero(Q.vertex_count(), mpq_class(0));
  auto chi = graded_character(Q, zero, nmax, seeds, jobs, ceiling);
  for (size_t i = 0; i < chi.records.size(); ++i) {
    const auto& rec = chi.records[i];
    ConjectureRow row;
    row.n = rec.n;
    row.record = rec;
    row.capped = rec.capped;
    row.rhs = rhs[rec.n];
    if (rec.capped) {
      ++rep.capped;
    } else {
      row.lhs = rec.dim;
      row.equal = row.rhs == row.lhs;
      if (!row.equal) rep.all_equal = false;
      if (!rec.agree) rep.seeds_agree = false;
    }
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

}  // namespace qshuf
