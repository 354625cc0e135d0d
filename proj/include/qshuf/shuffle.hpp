#pragma once
// Shuffle algebra elements and the shuffle product.

#include "qshuf/kostka.hpp"
#include "qshuf/laurent.hpp"
#include "qshuf/zeta.hpp"

namespace qshuf {

enum class Side { Plus, Minus };

inline const char* side_str(Side s) { return s == Side::Plus ? "+" : "-"; }

struct Bidegree {
  std::vector<int> hdeg;  // signed: negative on the minus side
  long vdeg = 0;
  friend bool operator==(const Bidegree&, const Bidegree&) = default;
};

template <class S>
struct ShuffleElement {
  Side side = Side::Plus;
  SymLaurent<S> poly;

  ShuffleElement() = default;
  ShuffleElement(Side s, SymLaurent<S> p) : side(s), poly(std::move(p)) {}

  const DimVector& shape() const { return poly.shape(); }
  bool is_zero() const { return poly.is_zero(); }

  Bidegree bidegree() const {
    auto d = poly.homogeneous_degree();
    if (!d) throw qshuf_error("bidegree of a zero or inhomogeneous element");
    Bidegree b;
    b.hdeg = shape();
    if (side == Side::Minus)
      for (auto& v : b.hdeg) v = -v;
    b.vdeg = *d;
    return b;
  }

  friend bool operator==(const ShuffleElement& a, const ShuffleElement& b) {
    return a.side == b.side && a.poly == b.poly;
  }
  ShuffleElement& operator+=(const ShuffleElement& o) {
    poly += o.poly;
    return *this;
  }
  ShuffleElement& operator-=(const ShuffleElement& o) {
    poly -= o.poly;
    return *this;
  }
  ShuffleElement scaled(const S& c) const { return {side, poly.scaled(c)}; }
};

template <class S>
ShuffleElement<S> unit_element(int vertices, Side side = Side::Plus) {
  return {side, SymLaurent<S>::constant(DimVector(vertices, 0), field_traits<S>::one())};
}

// e_{i,d} (plus side) or f_{i,d} (minus side): z_{i,1}^d
template <class S>
ShuffleElement<S> generator(int vertices, int i, int d, Side side = Side::Plus) {
  SymLaurent<S> p(unit_vector(vertices, i));
  p.add(ExpKey{d}, field_traits<S>::one());
  return {side, p};
}

namespace detail {

// Antisymmetrizes z^alpha within each block: returns false when some block has a
// repeated exponent, else sorts alpha decreasingly and reports the sign.
inline bool antisymmetrize_key(ExpKey& alpha, const std::vector<int>& off, int& sign) {
  sign = 1;
  for (size_t i = 0; i + 1 < off.size(); ++i) {
    // insertion sort counting transpositions
    for (int a = off[i] + 1; a < off[i + 1]; ++a) {
      int v = alpha[a], b = a;
      while (b > off[i] && alpha[b - 1] < v) {
        alpha[b] = alpha[b - 1];
        --b;
        sign = -sign;
      }
      if (b > off[i] && alpha[b - 1] == v) return false;
      alpha[b] = v;
    }
  }
  return true;
}

// All permutations of delta = (n-1, ..., 0) per block with their signs.
inline std::vector<std::pair<ExpKey, int>> vandermonde_terms(const DimVector& shape) {
  auto off = block_offsets(shape);
  std::vector<std::pair<ExpKey, int>> out{{ExpKey(off.back(), 0), 1}};
  for (size_t i = 0; i < shape.size(); ++i) {
    int n = shape[i];
    std::vector<int> perm(n);
    for (int a = 0; a < n; ++a) perm[a] = a;
    std::vector<std::pair<ExpKey, int>> next;
    do {
      int inv = 0;
      for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
          if (perm[a] > perm[b]) ++inv;
      for (auto& [k, s] : out) {
        ExpKey kk = k;
        for (int a = 0; a < n; ++a) kk[off[i] + a] = n - 1 - perm[a];
        next.emplace_back(std::move(kk), (inv % 2) ? -s : s);
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
    out = std::move(next);
  }
  return out;
}

// Coefficients c_lambda with F * Vandermonde = sum c_lambda a_lambda, lambda
// strictly decreasing per block.
template <class S>
std::map<ExpKey, S> alternant_coefficients(const SymLaurent<S>& F) {
  const auto& shape = F.shape();
  auto off = block_offsets(shape);
  auto vt = vandermonde_terms(shape);
  std::map<ExpKey, S> out;
  for (auto& [k, c] : F.terms())
    for_each_orbit_member(k, shape, [&](const ExpKey& m) {
      for (auto& [d, s] : vt) {
        ExpKey lam = m;
        bool ok = true;
        for (size_t a = 0; a < lam.size(); ++a) lam[a] += d[a];
        for (size_t i = 0; i < shape.size() && ok; ++i)
          for (int a = off[i] + 1; a < off[i + 1]; ++a)
            if (lam[a - 1] <= lam[a]) {
              ok = false;
              break;
            }
        if (!ok) continue;
        S v = s > 0 ? c : field_traits<S>::zero() - c;
        auto [it, fresh] = out.try_emplace(lam, v);
        if (!fresh) it->second = it->second + v;
      }
    });
  for (auto it = out.begin(); it != out.end();)
    it = field_traits<S>::is_zero(it->second) ? out.erase(it) : std::next(it);
  return out;
}

// sum r_lambda a_lambda / Vandermonde as a symmetric polynomial
template <class S>
SymLaurent<S> divide_by_vandermonde(const std::map<ExpKey, S>& alt, const DimVector& shape) {
  auto off = block_offsets(shape);
  std::vector<SchurExpander> expanders(shape.size());
  SymLaurent<S> out(shape);
  for (auto& [lam, c] : alt) {
    std::vector<const std::vector<std::pair<Partition, long>>*> parts;
    for (size_t i = 0; i < shape.size(); ++i) {
      Partition nu(lam.begin() + off[i], lam.begin() + off[i + 1]);
      for (int a = 0; a < shape[i]; ++a) nu[a] -= shape[i] - 1 - a;
      parts.push_back(&expanders[i].expand(nu));
    }
    ExpKey key(off.back());
    auto rec = [&](auto&& self, size_t i, long mult) -> void {
      if (i == shape.size()) {
        out.add_canonical(key, c * field_traits<S>::from_int(mult));
        return;
      }
      for (auto& [mu, k] : *parts[i]) {
        std::copy(mu.begin(), mu.end(), key.begin() + off[i]);
        long m2;
        if (__builtin_mul_overflow(mult, k, &m2)) throw qshuf_error("Kostka product overflow");
        self(self, i + 1, m2);
      }
    };
    rec(rec, 0, 1);
  }
  return out;
}

// Cross factor C with F*G*prod(zeta)*Vandermonde = (F V_F)(G V_G) C, as a raw
// polynomial in the variables of the product shape.
template <class S>
RawLaurent<S> cross_factor(const Algebra<S>& A, const DimVector& n1, const DimVector& n2) {
  using T = field_traits<S>;
  DimVector shape = n1 + n2;
  auto off = block_offsets(shape);
  int N = off.back();
  const auto& P = A.params;
  const Quiver& Q = A.quiver;
  std::map<ExpKey, S> cur{{ExpKey(N, 0), T::one()}};
  // cur *= ca * z^shift_a + cb * z^shift_b
  auto mul_binomial = [&](const S& ca, const S& cb, const std::vector<std::pair<int, int>>& shift_a,
                          const std::vector<std::pair<int, int>>& shift_b) {
    std::map<ExpKey, S> next;
    for (auto& [k, c] : cur) {
      for (int side = 0; side < 2; ++side) {
        ExpKey kk = k;
        for (auto [v, e] : side ? shift_b : shift_a) kk[v] += e;
        S val = c * (side ? cb : ca);
        auto [it, fresh] = next.try_emplace(std::move(kk), val);
        if (!fresh) it->second = it->second + val;
      }
    }
    cur.clear();
    for (auto& [k, c] : next)
      if (!T::is_zero(c)) cur.emplace(k, c);
  };
  for (int i = 0; i < Q.vertex_count(); ++i)
    for (int a = 0; a < n1[i]; ++a) {
      int za = off[i] + a;
      for (int j = 0; j < Q.vertex_count(); ++j)
        for (int b = 0; b < n2[j]; ++b) {
          int zb = off[j] + n1[j] + b;
          if (i == j)  // -(z_b - z_a/q)
            mul_binomial(T::from_int(-1), T::inv(P.q), {{zb, 1}}, {{za, 1}});
          for (auto& e : Q.edges()) {
            if (e.source == i && e.target == j)  // 1/t - z_a/z_b
              mul_binomial(T::inv(P.t[e.id]), T::from_int(-1), {}, {{za, 1}, {zb, -1}});
            if (e.source == j && e.target == i)  // 1 - t z_b/(q z_a)
              mul_binomial(T::one(), T::zero() - P.t[e.id] * T::inv(P.q), {},
                           {{zb, 1}, {za, -1}});
          }
        }
    }
  RawLaurent<S> r(shape);
  for (auto& [k, c] : cur) r.add(k, c);
  return r;
}

}  // namespace detail

// Plus-side product of F (shape n1) and G (shape n2); the minus side is the
// opposite algebra, so f-products reverse the order.
template <class S>
ShuffleElement<S> shuffle_product(const Algebra<S>& A, const ShuffleElement<S>& F, const ShuffleElement<S>& G) {
  if (F.side != G.side) throw qshuf_error("shuffle product of elements from opposite sides");
  if (F.side == Side::Minus) {
    ShuffleElement<S> a{Side::Plus, F.poly}, b{Side::Plus, G.poly};
    auto r = shuffle_product(A, b, a);
    r.side = Side::Minus;
    return r;
  }
  const DimVector &n1 = F.shape(), &n2 = G.shape();
  DimVector shape = n1 + n2;
  if (F.is_zero() || G.is_zero()) return {Side::Plus, SymLaurent<S>(shape)};
  if (total(n2) == 0) return {Side::Plus, F.poly.scaled(G.poly.coefficient({}))};
  if (total(n1) == 0) return {Side::Plus, G.poly.scaled(F.poly.coefficient({}))};

  auto altF = detail::alternant_coefficients(F.poly);
  auto altG = detail::alternant_coefficients(G.poly);
  auto C = detail::cross_factor(A, n1, n2);
  auto off = block_offsets(shape);
  auto off1 = block_offsets(n1), off2 = block_offsets(n2);

  std::map<ExpKey, S> alt;
  ExpKey base(off.back());
  for (auto& [lf, cf] : altF)
    for (auto& [lg, cg] : altG) {
      for (size_t i = 0; i < shape.size(); ++i) {
        std::copy(lf.begin() + off1[i], lf.begin() + off1[i + 1], base.begin() + off[i]);
        std::copy(lg.begin() + off2[i], lg.begin() + off2[i + 1], base.begin() + off[i] + n1[i]);
      }
      S cfg = cf * cg;
      for (auto& [k, c] : C.terms()) {
        ExpKey alpha = base;
        for (size_t a = 0; a < alpha.size(); ++a) alpha[a] += k[a];
        int sign;
        if (!detail::antisymmetrize_key(alpha, off, sign)) continue;
        S v = cfg * c;
        if (sign < 0) v = field_traits<S>::zero() - v;
        auto [it, fresh] = alt.try_emplace(std::move(alpha), v);
        if (!fresh) it->second = it->second + v;
      }
    }
  for (auto it = alt.begin(); it != alt.end();)
    it = field_traits<S>::is_zero(it->second) ? alt.erase(it) : std::next(it);
  return {Side::Plus, detail::divide_by_vandermonde(alt, shape)};
}

// Multiplies by prod z_{ia}^{k_i} (plus) or prod z_{ia}^{-k_i} (minus).
template <class S>
ShuffleElement<S> tau_shift(const ShuffleElement<S>& F, const std::vector<int>& k) {
  auto vv = variable_vertices(F.shape());
  int sgn_ = F.side == Side::Plus ? 1 : -1;
  SymLaurent<S> r(F.shape());
  for (auto& [key, c] : F.poly.terms()) {
    ExpKey kk = key;
    for (size_t a = 0; a < kk.size(); ++a) kk[a] += sgn_ * k[vv[a]];
    r.add_canonical(kk, c);
  }
  return {F.side, r};
}

// Reference evaluation of the product at a point, straight from the defining
// symmetrization (full group sum divided by n1! n2!). Test oracle only.
template <class S>
S shuffle_product_at(const Algebra<S>& A, const SymLaurent<S>& F, const SymLaurent<S>& G, const std::vector<S>& z) {
  const DimVector &n1 = F.shape(), &n2 = G.shape();
  DimVector shape = n1 + n2;
  auto off = block_offsets(shape);
  auto vv = variable_vertices(shape);
  int N = off.back();
  std::vector<int> perm(N);
  for (int a = 0; a < N; ++a) perm[a] = a;
  std::vector<ZetaFactor<S>> zt;
  int V = A.vertices();
  for (int i = 0; i < V; ++i)
    for (int j = 0; j < V; ++j) zt.push_back(zeta(A, i, j));
  S sum = field_traits<S>::zero();
  std::function<void(size_t)> rec = [&](size_t i) {
    if (i == shape.size()) {
      std::vector<S> zf, zg;
      std::vector<int> pf, pg;  // flat positions in F and G
      for (size_t v = 0; v < shape.size(); ++v) {
        for (int a = 0; a < n1[v]; ++a) pf.push_back(perm[off[v] + a]);
        for (int b = 0; b < n2[v]; ++b) pg.push_back(perm[off[v] + n1[v] + b]);
      }
      for (int p : pf) zf.push_back(z[p]);
      for (int p : pg) zg.push_back(z[p]);
      S term = evaluate(F, zf) * evaluate(G, zg);
      for (int p : pf)
        for (int r : pg) term = term * zt[vv[p] * V + vv[r]](z[p] * field_traits<S>::inv(z[r]));
      sum = sum + term;
      return;
    }
    auto b = perm.begin() + off[i], e = perm.begin() + off[i + 1];
    std::sort(b, e);
    do rec(i + 1);
    while (std::next_permutation(b, e));
  };
  rec(0);
  return sum * field_traits<S>::inv(field_traits<S>::from_int(group_order(n1) * group_order(n2)));
}

}  // namespace qshuf
