#pragma once
// Parameter specialization: q and t_e either as seeded random rationals or as
// formal symbols.

#include "qshuf/quiver.hpp"
#include "qshuf/ratfunc.hpp"

#include <cstdint>
#include <map>
#include <random>

namespace qshuf {

enum class ParamMode { Specialized, ExactRational };

struct ParamSpec {
  ParamMode mode = ParamMode::Specialized;
  uint64_t seed = 0;
  mpq_class q;
  std::vector<mpq_class> t;

  std::vector<mpq_class> point() const {
    std::vector<mpq_class> p{q};
    p.insert(p.end(), t.begin(), t.end());
    return p;
  }
};

namespace detail {

// Uniform draw in [lo, hi] independent of the standard library's distribution
// implementation, so that seeds reproduce across platforms.
inline long bounded(std::mt19937_64& rng, long lo, long hi) {
  uint64_t range = uint64_t(hi - lo) + 1;
  uint64_t limit = UINT64_MAX - UINT64_MAX % range;
  uint64_t x;
  do x = rng(); while (x >= limit);
  return lo + long(x % range);
}

inline void factor_into(long v, int sign, std::map<long, long>& out) {
  v = v < 0 ? -v : v;
  for (long p = 2; p * p <= v; ++p)
    while (v % p == 0) {
      out[p] += sign;
      v /= p;
    }
  if (v > 1) out[v] += sign;
}

// True when the prime-exponent vectors of the values are linearly independent,
// which rules out every relation prod x_k^{c_k} = 1 (any bound on |c_k|).
inline bool multiplicatively_independent(const std::vector<mpq_class>& vals) {
  std::vector<std::map<long, long>> rows;
  std::map<long, int> col;
  for (auto& v : vals) {
    std::map<long, long> f;
    factor_into(v.get_num().get_si(), 1, f);
    factor_into(v.get_den().get_si(), -1, f);
    for (auto it = f.begin(); it != f.end();)
      it = it->second == 0 ? f.erase(it) : std::next(it);
    for (auto& [p, e] : f) col.try_emplace(p, int(col.size()));
    rows.push_back(f);
  }
  std::vector<std::vector<mpq_class>> M(rows.size(), std::vector<mpq_class>(col.size()));
  for (size_t r = 0; r < rows.size(); ++r)
    for (auto& [p, e] : rows[r]) M[r][col[p]] = e;
  size_t rank = 0;
  for (size_t c = 0; c < col.size() && rank < M.size(); ++c) {
    size_t piv = rank;
    while (piv < M.size() && sgn(M[piv][c]) == 0) ++piv;
    if (piv == M.size()) continue;
    std::swap(M[piv], M[rank]);
    for (size_t r = 0; r < M.size(); ++r) {
      if (r == rank || sgn(M[r][c]) == 0) continue;
      mpq_class f = M[r][c] / M[rank][c];
      for (size_t cc = c; cc < col.size(); ++cc) M[r][cc] -= f * M[rank][cc];
    }
    ++rank;
  }
  return rank == vals.size();
}

}  // namespace detail

inline constexpr long kParamBound = 10000;

// Draws q, t_e with |numerator|, denominator <= kParamBound, redrawing until
// the values are multiplicatively independent.
inline ParamSpec specialized_params(const Quiver& Q, uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto draw = [&] {
    long num = 0;
    while (num == 0) num = detail::bounded(rng, -kParamBound, kParamBound);
    long den = detail::bounded(rng, 1, kParamBound);
    mpq_class v(num, den);
    v.canonicalize();
    return v;
  };
  ParamSpec spec;
  spec.mode = ParamMode::Specialized;
  spec.seed = seed;
  while (true) {
    spec.q = draw();
    spec.t.clear();
    for (int e = 0; e < Q.edge_count(); ++e) spec.t.push_back(draw());
    if (detail::multiplicatively_independent(spec.point())) return spec;
  }
}

inline ParamSpec exact_params() {
  ParamSpec spec;
  spec.mode = ParamMode::ExactRational;
  return spec;
}

// Concrete parameter values in the scalar type S.
template <class S>
struct Params {
  S q;
  std::vector<S> t;
};

template <class S>
Params<S> make_params(const ParamSpec& spec, const Quiver& Q) {
  Params<S> P;
  if constexpr (std::is_same_v<S, RatFunc>) {
    if (spec.mode == ParamMode::ExactRational) {
      P.q = RatFunc::symbol(0);
      for (int e = 0; e < Q.edge_count(); ++e) P.t.push_back(RatFunc::symbol(1 + e));
      return P;
    }
  }
  if (spec.mode != ParamMode::Specialized) throw qshuf_error("exact mode requires rational-function scalars");
  if (int(spec.t.size()) != Q.edge_count()) throw qshuf_error("parameter count does not match edge count");
  P.q = field_traits<S>::from_rational(spec.q);
  for (auto& v : spec.t) P.t.push_back(field_traits<S>::from_rational(v));
  return P;
}

// A quiver together with parameter values: the context every algebra
// operation runs in.
template <class S>
struct Algebra {
  Quiver quiver;
  Params<S> params;

  Algebra() = default;
  Algebra(Quiver Q, Params<S> P) : quiver(std::move(Q)), params(std::move(P)) {}
  Algebra(const Quiver& Q, const ParamSpec& spec) : quiver(Q), params(make_params<S>(spec, Q)) {}

  int vertices() const { return quiver.vertex_count(); }
  // q^a * prod_e t_e^{b_e}
  S monomial(long a, const std::vector<long>& b) const {
    S r = scalar_pow(params.q, a);
    for (size_t e = 0; e < b.size(); ++e)
      if (b[e]) r = r * scalar_pow(params.t[e], b[e]);
    return r;
  }
};

}  // namespace qshuf
