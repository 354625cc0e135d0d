#pragma once
// Slope conditions and the graded pieces B_{m|n}: orbit enumeration inside the
// slope polytope, the wheel linear system, and kernel bases / dimensions.

#include "qshuf/linalg.hpp"
#include "qshuf/tseries.hpp"
#include "qshuf/wheel.hpp"

#include <atomic>
#include <cstdlib>
#include <mutex>
#include <thread>

namespace qshuf {

using SlopeVector = std::vector<mpq_class>;

inline constexpr size_t kDefaultResourceCeiling = 5000000;

inline size_t resource_ceiling() {
  if (const char* env = std::getenv("QSHUF_RESOURCE_CEILING")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == 0 && v > 0) return size_t(v);
    throw qshuf_error(std::string("QSHUF_RESOURCE_CEILING is not a positive integer: '") + env + "'");
  }
  return kDefaultResourceCeiling;
}

struct resource_limit_error : qshuf_error {
  using qshuf_error::qshuf_error;
};

inline mpz_class floor_q(const mpq_class& x) {
  mpz_class r;
  mpz_fdiv_q(r.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return r;
}

// m . n when it is an integer
inline std::optional<long> integral_degree(const SlopeVector& m, const DimVector& n) {
  mpq_class d = dot(m, n);
  if (d.get_den() != 1) return std::nullopt;
  return d.get_num().get_si();
}

template <class S>
bool naive_slope_leq(const ShuffleElement<S>& F, const SlopeVector& m) {
  auto d = F.poly.homogeneous_degree();
  if (!d) throw qshuf_error("naive slope of a zero or inhomogeneous element");
  mpq_class md = dot(m, F.shape());
  return F.side == Side::Plus ? mpq_class(*d) <= md : mpq_class(*d) >= -md;
}

template <class S>
bool has_naive_slope(const ShuffleElement<S>& F, const SlopeVector& m) {
  auto d = F.poly.homogeneous_degree();
  if (!d) return false;
  mpq_class md = dot(m, F.shape());
  return F.side == Side::Plus ? mpq_class(*d) == md : mpq_class(*d) == -md;
}

// Monomial-wise test: scaling a subset of variables sends distinct monomials
// to distinct monomials, so the limit is finite iff every monomial obeys the
// bound.
template <class S>
bool has_slope_leq(const Quiver& Q, const ShuffleElement<S>& F, const SlopeVector& m) {
  if (F.is_zero()) throw qshuf_error("slope of the zero element");
  const DimVector& n = F.shape();
  for (auto& k : box(n)) {
    DimVector rest = n - k;
    if (F.side == Side::Plus) {
      mpq_class bound = dot(m, k) + edge_form(Q, k, rest);
      if (mpq_class(degree_profile(F.poly, k)) > bound) return false;
    } else {
      mpq_class bound = -dot(m, k) - edge_form(Q, rest, k);
      if (mpq_class(min_degree_profile(F.poly, k)) < bound) return false;
    }
  }
  return true;
}

// Canonical orbit keys of shape n, total degree m.n (plus) or -m.n (minus),
// satisfying the slope bounds. Lexicographic order of the plus-oriented keys.
inline std::vector<ExpKey> slope_orbits(const Quiver& Q, const SlopeVector& m, const DimVector& n, Side side,
                                        size_t ceiling = resource_ceiling()) {
  auto D = integral_degree(m, n);
  if (!D) return {};
  int V = Q.vertex_count();
  auto off = block_offsets(n);
  int N = off.back();
  // upper bound on the sum of the top k exponents (plus orientation)
  auto bound = [&](const DimVector& k) -> long {
    DimVector rest = n - k;
    long ef = side == Side::Plus ? edge_form(Q, k, rest) : edge_form(Q, rest, k);
    return floor_q(dot(m, k) + ef).get_si();
  };
  std::vector<long> hi(V), lo(V);
  for (int i = 0; i < V; ++i) {
    if (!n[i]) continue;
    DimVector e = unit_vector(V, i);
    hi[i] = bound(e);
    lo[i] = *D - bound(n - e);
  }
  // all k with k_v <= n_v for v < i; used for prefix checks
  std::vector<std::vector<DimVector>> earlier(V + 1);
  for (int i = 0; i <= V; ++i) {
    DimVector cap(V, 0);
    for (int v = 0; v < i; ++v) cap[v] = n[v];
    earlier[i] = box(cap);
  }
  std::vector<ExpKey> out;
  ExpKey key(N, 0);
  // prefix sums per block: pre[i][a] = sum of first a exponents of block i
  std::vector<std::vector<long>> pre(V);
  for (int i = 0; i < V; ++i) pre[i].assign(n[i] + 1, 0);
  long sum = 0;
  size_t visited = 0;
  // remaining capacity (max, min) for positions after (i, a)
  auto rest_range = [&](int i, int a, long cur) -> std::pair<long, long> {
    long mx = 0, mn = 0;
    int left_here = n[i] - a - 1;
    mx += long(left_here) * cur;
    mn += long(left_here) * lo[i];
    for (int v = i + 1; v < V; ++v) {
      mx += long(n[v]) * hi[v];
      mn += long(n[v]) * lo[v];
    }
    return {mn, mx};
  };
  auto rec = [&](auto&& self, int i, int a) -> void {
    if (++visited > ceiling) throw resource_limit_error("slope polytope enumeration exceeds the resource ceiling");
    if (i == V) {
      if (sum == *D) out.push_back(key);
      return;
    }
    if (a == n[i]) {
      self(self, i + 1, 0);
      return;
    }
    long top = a ? key[off[i] + a - 1] : hi[i];
    for (long x = top; x >= lo[i]; --x) {
      auto [mn, mx] = rest_range(i, a, x);
      if (sum + x + mx < *D) break;  // smaller x only lowers the maximum
      if (sum + x + mn > *D) continue;
      key[off[i] + a] = int(x);
      pre[i][a + 1] = pre[i][a] + x;
      bool ok = true;
      for (auto& k : earlier[i]) {
        long s = pre[i][a + 1];
        DimVector kk = k;
        kk[i] = a + 1;
        for (int v = 0; v < i; ++v) s += pre[v][k[v]];
        if (s > bound(kk)) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      sum += x;
      self(self, i, a + 1);
      sum -= x;
    }
  };
  rec(rec, 0, 0);
  if (side == Side::Minus)
    for (auto& k : out) {
      for (auto& v : k) v = -v;
      k = canonical_key(k, n);
    }
  return out;
}

struct SymbolicEntry {
  int col = 0;
  int qe = 0;
  int te = 0;
  long count = 0;
};

// Wheel conditions as a linear system in the orbit coefficients, with entries
// kept as integer combinations of monomials q^qe t_e^te so that the system can
// be specialized to any scalar type.
struct WheelSystem {
  DimVector shape;
  std::vector<ExpKey> unknowns;
  std::vector<int> row_edge;
  std::vector<std::vector<SymbolicEntry>> rows;
  size_t nonzeros = 0;
};

inline WheelSystem build_wheel_system(const Quiver& Q, const DimVector& shape, std::vector<ExpKey> unknowns,
                                      size_t ceiling = resource_ceiling()) {
  WheelSystem W;
  W.shape = shape;
  W.unknowns = std::move(unknowns);
  size_t budget = W.unknowns.size();
  for (auto& w : wheel_conditions(Q, shape)) {
    std::map<ExpKey, int> row_of;
    std::map<std::tuple<int, int, int, int>, long> acc;  // (row, col, qe, te)
    for (size_t u = 0; u < W.unknowns.size(); ++u)
      for_each_wheel_contribution(shape, W.unknowns[u], w, [&](const ExpKey& eq, int qe, int te) {
        auto [it, fresh] = row_of.try_emplace(eq, int(W.rows.size() + row_of.size()));
        acc[{it->second, int(u), qe, te}] += 1;
        if (++budget > ceiling) throw resource_limit_error("wheel system exceeds the resource ceiling");
      });
    size_t base = W.rows.size();
    W.rows.resize(base + row_of.size());
    W.row_edge.resize(base + row_of.size(), w.edge);
    for (auto& [k, cnt] : acc) {
      auto [r, c, qe, te] = k;
      W.rows[r].push_back({c, qe, te, cnt});
      ++W.nonzeros;
    }
  }
  return W;
}

template <class S>
std::vector<SparseRow<S>> specialize(const WheelSystem& W, const Algebra<S>& A) {
  std::map<int, S> qpow;
  std::map<std::pair<int, int>, S> tpow;
  auto qp = [&](int e) -> const S& {
    auto it = qpow.find(e);
    if (it == qpow.end()) it = qpow.emplace(e, scalar_pow(A.params.q, e)).first;
    return it->second;
  };
  auto tp = [&](int edge, int e) -> const S& {
    auto it = tpow.find({edge, e});
    if (it == tpow.end()) it = tpow.emplace(std::make_pair(edge, e), scalar_pow(A.params.t[edge], e)).first;
    return it->second;
  };
  std::vector<SparseRow<S>> out(W.rows.size());
  for (size_t r = 0; r < W.rows.size(); ++r) {
    std::map<int, S> row;
    for (auto& e : W.rows[r]) {
      S v = qp(e.qe) * tp(W.row_edge[r], e.te) * field_traits<S>::from_int(e.count);
      auto [it, fresh] = row.try_emplace(e.col, v);
      if (!fresh) it->second = it->second + v;
    }
    for (auto& [c, v] : row)
      if (!field_traits<S>::is_zero(v)) out[r].emplace_back(c, v);
  }
  return out;
}

template <class S>
struct SlopeBasis {
  SlopeVector m;
  DimVector n;
  Side side = Side::Plus;
  std::vector<ShuffleElement<S>> basis;
  int dim = 0;
};

// Exact kernel basis over S. Basis vectors are reduced row-echelon
// representatives of the kernel.
template <class S>
SlopeBasis<S> slope_basis(const Algebra<S>& A, const SlopeVector& m, const DimVector& n, Side side) {
  SlopeBasis<S> B{m, n, side, {}, 0};
  if (total(n) == 0) {
    B.basis.push_back(unit_element<S>(A.vertices(), side));
    B.dim = 1;
    return B;
  }
  auto orbits = slope_orbits(A.quiver, m, n, side);
  if (orbits.empty()) return B;
  auto W = build_wheel_system(A.quiver, n, orbits);
  Echelon<S> E(int(W.unknowns.size()));
  for (auto& row : specialize(W, A))
    if (!row.empty()) E.add_sparse(row);
  for (auto& v : E.kernel()) {
    SymLaurent<S> p(n);
    for (size_t u = 0; u < v.size(); ++u) p.add_canonical(W.unknowns[u], v[u]);
    B.basis.push_back({side, p});
  }
  B.dim = int(B.basis.size());
  return B;
}

struct DimensionRecord {
  DimVector n;
  long dim = 0;                // agreed dimension (minimum over seeds), -1 when capped
  std::vector<long> per_seed;  // one entry per seed
  bool agree = true;
  bool capped = false;
  size_t unknowns = 0;
  size_t equations = 0;
  std::string note;
};

// Dimension of B_{m|n} from ranks modulo a large prime under several seeded
// specializations. Each seed gives an upper bound on the generic dimension.
inline DimensionRecord slope_dimension(const Quiver& Q, const SlopeVector& m, const DimVector& n, Side side,
                                       const std::vector<uint64_t>& seeds, size_t ceiling = resource_ceiling()) {
  DimensionRecord rec;
  rec.n = n;
  if (total(n) == 0) {
    rec.dim = 1;
    rec.per_seed.assign(seeds.size(), 1);
    return rec;
  }
  try {
    auto orbits = slope_orbits(Q, m, n, side, ceiling);
    rec.unknowns = orbits.size();
    if (orbits.empty()) {
      rec.per_seed.assign(seeds.size(), 0);
      rec.dim = 0;
      return rec;
    }
    auto W = build_wheel_system(Q, n, std::move(orbits), ceiling);
    rec.equations = W.rows.size();
    for (uint64_t seed : seeds) {
      Algebra<Zp31> A(Q, specialized_params(Q, seed));
      auto rows = specialize(W, A);
      std::vector<std::vector<std::pair<int, uint32_t>>> raw(rows.size());
      for (size_t r = 0; r < rows.size(); ++r)
        for (auto& [c, v] : rows[r]) raw[r].emplace_back(c, uint32_t(v.value()));
      int rank = rank_mod_p31(raw, rec.unknowns, seed);
      rec.per_seed.push_back(long(rec.unknowns) - rank);
    }
  } catch (const resource_limit_error& e) {
    rec.capped = true;
    rec.dim = -1;
    rec.note = e.what();
    return rec;
  }
  rec.dim = *std::min_element(rec.per_seed.begin(), rec.per_seed.end());
  rec.agree = std::all_of(rec.per_seed.begin(), rec.per_seed.end(), [&](long d) { return d == rec.dim; });
  return rec;
}

// Runs f(i) for i in [0, count) on up to `jobs` threads.
template <class Fn>
void parallel_for(size_t count, int jobs, Fn&& f) {
  if (jobs <= 1 || count <= 1) {
    for (size_t i = 0; i < count; ++i) f(i);
    return;
  }
  std::atomic<size_t> next{0};
  std::vector<std::thread> pool;
  std::exception_ptr err;
  std::mutex err_mu;
  for (int t = 0; t < jobs && size_t(t) < count; ++t)
    pool.emplace_back([&] {
      for (size_t i; (i = next++) < count;) {
        try {
          f(i);
        } catch (...) {
          std::lock_guard<std::mutex> g(err_mu);
          if (!err) err = std::current_exception();
        }
      }
    });
  for (auto& th : pool) th.join();
  if (err) std::rethrow_exception(err);
}

struct GradedCharacter {
  TruncSeries series;  // capped entries are recorded as 0 here
  std::vector<DimensionRecord> records;
};

inline GradedCharacter graded_character(const Quiver& Q, const SlopeVector& m, const DimVector& nmax,
                                        const std::vector<uint64_t>& seeds, int jobs = 1,
                                        size_t ceiling = resource_ceiling()) {
  GradedCharacter G{TruncSeries(nmax), {}};
  auto ns = box(nmax);
  G.records.resize(ns.size());
  parallel_for(ns.size(), jobs, [&](size_t i) { G.records[i] = slope_dimension(Q, m, ns[i], Side::Plus, seeds, ceiling); });
  for (size_t i = 0; i < ns.size(); ++i)
    if (!G.records[i].capped) G.series[ns[i]] = G.records[i].dim;
  return G;
}

}  // namespace qshuf
