#pragma once
// Factorization along a ray of slopes m + r theta: hinge-based PBW
// decomposition, dual bases of slope subalgebras, and the windowed check of
// the slope factorization of the canonical tensor.

#include "qshuf/hopf.hpp"

#include <random>
#include <set>

namespace qshuf {

inline SlopeVector along(const SlopeVector& m, const SlopeVector& theta, const mpq_class& r) {
  if (m.size() != theta.size()) throw qshuf_error("slope and direction vectors differ in length");
  SlopeVector out(m.size());
  for (size_t i = 0; i < m.size(); ++i) out[i] = m[i] + r * theta[i];
  return out;
}

// the r with (m + r theta).n = d
inline mpq_class ray_parameter(const SlopeVector& m, const SlopeVector& theta, const DimVector& n, long d) {
  mpq_class t = dot(theta, n);
  if (sgn(t) <= 0) throw qshuf_error("direction vector must pair positively with every nonzero degree");
  return (mpq_class(d) - dot(m, n)) / t;
}

inline void check_direction(const SlopeVector& theta) {
  for (auto& x : theta)
    if (sgn(x) <= 0) throw qshuf_error("direction vector must have positive entries");
}

struct Hinge {
  DimVector k;  // horizontal degree of the right leg
  long e = 0;   // vertical degree of the right leg
  mpq_class slope;
  bool bad = false;
};

// primarily by slope, then by |k|, then lexicographically on k
inline bool hinge_less(const Hinge& a, const Hinge& b) {
  if (a.slope != b.slope) return a.slope < b.slope;
  if (total(a.k) != total(b.k)) return total(a.k) < total(b.k);
  return a.k < b.k;
}

template <class S>
struct PBWFactor {
  mpq_class r;
  ShuffleElement<S> element;
};

template <class S>
struct PBWTerm {
  S coefficient;
  std::vector<PBWFactor<S>> factors;  // strictly increasing r
};

template <class S>
struct PBWDecomposition {
  std::vector<PBWTerm<S>> terms;
  int hinge_steps = 0;
  int closed_form_checks = 0;
  int closed_form_matches = 0;
};

template <class S>
class SlopeFactorization {
  using T = field_traits<S>;

 public:
  SlopeFactorization(Hopf<S>& H, SlopeVector m, SlopeVector theta) : H_(H), m_(std::move(m)), theta_(std::move(theta)) {
    if (m_.size() != size_t(H_.vertices()) || theta_.size() != size_t(H_.vertices()))
      throw qshuf_error("slope and direction vectors must have one entry per vertex");
    check_direction(theta_);
  }

  const SlopeBasis<S>& basis(const mpq_class& r, const DimVector& k, Side side) {
    auto key = std::make_tuple(r, k, int(side));
    auto it = bases_.find(key);
    if (it == bases_.end()) it = bases_.emplace(key, slope_basis(H_.algebra(), along(m_, theta_, r), k, side)).first;
    return it->second;
  }

  // The bad hinge of F that is maximal in the hinge order, if any.
  std::optional<Hinge> maximal_bad_hinge(const ShuffleElement<S>& F) {
    const DimVector& n = F.shape();
    auto d = F.poly.homogeneous_degree();
    if (!d) throw qshuf_error("hinges of a zero or inhomogeneous element");
    mpq_class r = ray_parameter(m_, theta_, n, *d);
    std::optional<Hinge> best;
    for (auto& k : box(n)) {
      if (total(k) == 0 || k == n) continue;
      DimVector rest = n - k;
      mpq_class thr = dot(along(m_, theta_, r), k);
      long top = degree_profile(F.poly, k) - edge_form(H_.algebra().quiver, k, rest);
      for (long e = top; mpq_class(e) > thr; --e) {
        if (H_.coproduct_component(F, rest, e).is_zero()) continue;
        Hinge h{k, e, ray_parameter(m_, theta_, k, e), true};
        if (!best || hinge_less(*best, h)) best = h;
        break;
      }
    }
    return best;
  }

  PBWDecomposition<S> decompose(const ShuffleElement<S>& F) {
    if (F.side != Side::Plus) throw qshuf_error("pbw_decompose expects a plus-side element");
    PBWDecomposition<S> out;
    out.terms = run(F, out, 0);
    return out;
  }

  ShuffleElement<S> remultiply(const PBWDecomposition<S>& D, const DimVector& shape) {
    ShuffleElement<S> acc{Side::Plus, SymLaurent<S>(shape)};
    for (auto& t : D.terms) {
      ShuffleElement<S> p = unit_element<S>(H_.vertices());
      for (auto& f : t.factors) p = shuffle_product(H_.algebra(), p, f.element);
      if (p.shape() != shape) throw qshuf_error("PBW term has the wrong horizontal degree");
      acc += p.scaled(t.coefficient);
    }
    return acc;
  }

 private:
  // scalar relating F h_k to h_k F for F of horizontal degree l
  S exchange_scalar(const DimVector& l, const DimVector& k) {
    const auto& A = H_.algebra();
    S x = T::one();
    for (int i = 0; i < H_.vertices(); ++i)
      for (int j = 0; j < H_.vertices(); ++j) {
        S c = i == j ? A.params.q : T::one();
        for (auto& e : A.quiver.edges()) {
          if (e.source == i && e.target == j) c = c * T::inv(A.params.t[e.id]);
          if (e.source == j && e.target == i) c = c * A.params.t[e.id] * T::inv(A.params.q);
        }
        for (long p = 0; p < long(l[i]) * k[j]; ++p) x = x * c;
      }
    return x;
  }

  std::vector<PBWTerm<S>> run(ShuffleElement<S> F, PBWDecomposition<S>& stats, int depth) {
    if (depth > 64) throw qshuf_error("pbw_decompose: recursion depth exceeded");
    std::vector<PBWTerm<S>> terms;
    if (F.is_zero()) return terms;
    const DimVector n = F.shape();
    if (total(n) == 0) {
      terms.push_back({F.poly.coefficient(ExpKey{}), {}});
      return terms;
    }
    auto d = F.poly.homogeneous_degree();
    if (!d) throw qshuf_error("pbw_decompose needs a homogeneous element");
    mpq_class r = ray_parameter(m_, theta_, n, *d);
    std::optional<Hinge> prev;
    for (int step = 0;; ++step) {
      if (step > 10000) throw qshuf_error("pbw_decompose: hinge subtraction did not terminate");
      if (F.is_zero()) break;
      auto h = maximal_bad_hinge(F);
      if (!h) {
        if (!has_slope_leq(H_.algebra().quiver, F, along(m_, theta_, r)))
          throw qshuf_error("pbw_decompose: element without bad hinges fails the slope bound");
        terms.push_back({T::one(), {{r, F}}});
        break;
      }
      if (prev && (h->slope > prev->slope || (h->slope == prev->slope && total(h->k) > total(prev->k))))
        throw qshuf_error("pbw_decompose: hinge subtraction did not decrease the bad hinge at k=" + dim_str(prev->k) +
                          " e=" + std::to_string(prev->e));
      ++stats.hinge_steps;
      DimVector k = h->k, rest = n - k;
      auto comp = H_.coproduct_component(F, rest, h->e);
      for (auto& [key, c] : comp.terms)
        if (!key.cartan.only_zero_modes() || key.cartan.zero != k)
          throw qshuf_error("pbw_decompose: hinge component carries higher Cartan modes");
      // rewrite the right legs in a basis of B_{m + rho theta | k}
      const auto& B = basis(h->slope, k, Side::Plus);
      if (B.dim == 0) throw qshuf_error("pbw_decompose: empty slope subalgebra at a hinge");
      std::map<ExpKey, int> ridx;
      for (auto& b : B.basis)
        for (auto& [key, c] : b.poly.terms()) ridx.emplace(key, 0);
      std::map<ExpKey, std::map<ExpKey, S>> rows;  // left key -> right key -> coefficient
      for (auto& [key, c] : comp.terms) {
        ridx.emplace(key.right, 0);
        rows[key.left][key.right] = c;
      }
      int ri = 0;
      for (auto& [key, v] : ridx) v = ri++;
      std::vector<std::vector<S>> cols;
      for (auto& b : B.basis) {
        std::vector<S> col(ridx.size(), T::zero());
        for (auto& [key, c] : b.poly.terms()) col[ridx[key]] = c;
        cols.push_back(std::move(col));
      }
      std::vector<ShuffleElement<S>> F1(B.dim, ShuffleElement<S>{Side::Plus, SymLaurent<S>(rest)});
      for (auto& [lkey, row] : rows) {
        std::vector<S> target(ridx.size(), T::zero());
        for (auto& [rkey, c] : row) target[ridx[rkey]] = c;
        auto sol = solve_columns(cols, target);
        if (!sol) throw qshuf_error("pbw_decompose: hinge component has a right leg outside the slope subalgebra");
        for (int t = 0; t < B.dim; ++t) F1[t].poly.add(lkey, (*sol)[t]);
      }
      ShuffleElement<S> G{Side::Plus, SymLaurent<S>(n)};
      for (int t = 0; t < B.dim; ++t)
        if (!F1[t].is_zero()) G += shuffle_product(H_.algebra(), F1[t], B.basis[t]);
      auto compG = H_.coproduct_component(G, rest, h->e);
      if (compG.is_zero()) throw qshuf_error("pbw_decompose: hinge component of the product vanishes");
      auto first = comp.terms.begin();
      auto itG = compG.terms.find(first->first);
      if (itG == compG.terms.end()) throw qshuf_error("pbw_decompose: hinge components are not proportional");
      S gamma = first->second * T::inv(itG->second);
      for (auto& [key, c] : compG.terms) {
        auto it = comp.terms.find(key);
        S lhs = it == comp.terms.end() ? T::zero() : it->second;
        if (!(lhs == S(gamma * c))) throw qshuf_error("pbw_decompose: hinge components are not proportional");
      }
      if (comp.terms.size() != compG.terms.size()) throw qshuf_error("pbw_decompose: hinge components are not proportional");
      ++stats.closed_form_checks;
      if (gamma * exchange_scalar(rest, k) == T::one()) ++stats.closed_form_matches;
      for (int t = 0; t < B.dim; ++t) {
        if (F1[t].is_zero()) continue;
        for (auto& sub : run(F1[t], stats, depth + 1)) {
          PBWTerm<S> term{sub.coefficient * gamma, sub.factors};
          if (!term.factors.empty() && term.factors.back().r > h->slope)
            throw qshuf_error("pbw_decompose: left factor has slope above the hinge");
          if (!term.factors.empty() && term.factors.back().r == h->slope)
            term.factors.back().element = shuffle_product(H_.algebra(), term.factors.back().element, B.basis[t]);
          else
            term.factors.push_back({h->slope, B.basis[t]});
          terms.push_back(std::move(term));
        }
      }
      F -= G.scaled(gamma);
      if (!F.is_zero() && !H_.coproduct_component(F, rest, h->e).is_zero())
        throw qshuf_error("pbw_decompose: subtraction did not remove the hinge component");
      prev = h;
    }
    return terms;
  }

  Hopf<S>& H_;
  SlopeVector m_, theta_;
  std::map<std::tuple<mpq_class, DimVector, int>, SlopeBasis<S>> bases_;
};

template <class S>
struct DualBases {
  SlopeVector m;
  DimVector n;
  std::vector<ShuffleElement<S>> plus, minus;
  std::vector<WordCombination<S>> minus_words;
  std::vector<std::vector<S>> gram;  // against the unnormalized minus basis
};

// Plus and minus bases of B_{m|n} with <plus[s], minus[t]> = delta_st.
template <class S>
DualBases<S> dual_bases(Hopf<S>& H, const SlopeVector& m, const DimVector& n) {
  using T = field_traits<S>;
  DualBases<S> D{m, n, {}, {}, {}, {}};
  auto Bp = slope_basis(H.algebra(), m, n, Side::Plus);
  auto Bm = slope_basis(H.algebra(), m, n, Side::Minus);
  if (Bp.dim != Bm.dim) throw qshuf_error("plus and minus slope subalgebras differ in dimension at n=" + dim_str(n));
  if (Bp.dim == 0) throw qshuf_error("dual_bases of an empty slope subalgebra");
  int dim = Bp.dim;
  std::vector<WordCombination<S>> words;
  for (auto& b : Bm.basis) words.push_back(H.express_in_words(b));
  D.gram.assign(dim, std::vector<S>(dim, T::zero()));
  for (int s = 0; s < dim; ++s)
    for (int t = 0; t < dim; ++t) D.gram[s][t] = H.pairing(Bp.basis[s], words[t]);
  auto inv = invert(D.gram);
  if (!inv) throw qshuf_error("singular Gram matrix for the slope subalgebra at n=" + dim_str(n));
  D.plus = Bp.basis;
  for (int t = 0; t < dim; ++t) {
    ShuffleElement<S> b{Side::Minus, SymLaurent<S>(n)};
    std::map<GeneratorWord, S> wc;
    for (int u = 0; u < dim; ++u) {
      const S& x = (*inv)[u][t];
      if (T::is_zero(x)) continue;
      b += Bm.basis[u].scaled(x);
      for (auto& [w, c] : words[u]) {
        auto [it, fresh] = wc.try_emplace(w, S(c * x));
        if (!fresh) it->second = it->second + c * x;
      }
    }
    WordCombination<S> comb;
    for (auto& [w, c] : wc)
      if (!T::is_zero(c)) comb.emplace_back(w, c);
    D.minus.push_back(std::move(b));
    D.minus_words.push_back(std::move(comb));
  }
  return D;
}

// One basis element of an ordered product over a slope assignment.
template <class S>
struct SlopeProduct {
  std::vector<std::pair<mpq_class, DimVector>> legs;  // strictly increasing slopes
  std::vector<int> index;                             // basis index per leg
  ShuffleElement<S> plus;
  WordCombination<S> minus;  // product of the dual legs, as words
  DimVector shape;
  long degree = 0;
  bool inside = true;
};

struct RPrimeReport {
  int hbound = 0, window = 0;
  long legs = 0, products = 0, discarded = 0;
  long orthogonality_pairs = 0, orthogonality_failures = 0;
  long test_words = 0, reproduction_failures = 0, exact_reproductions = 0;
  long shape_one_checked = 0, shape_one_failures = 0;
  std::vector<std::string> failures;
  bool passed() const { return orthogonality_failures == 0 && reproduction_failures == 0 && shape_one_failures == 0; }
};

// Ordered products over slope assignments along m + r theta with |n| <= hbound.
// A leg (r, k) lies inside the window when the exponent range of its basis
// meets [-window, window]; legs from one further shell of radius hbound are
// built too and their products are counted as discarded.
template <class S>
class SlopeProducts {
  using T = field_traits<S>;

 public:
  SlopeProducts(Hopf<S>& H, SlopeVector m, SlopeVector theta, int hbound, int window, bool with_products = true)
      : H_(H), m_(std::move(m)), theta_(std::move(theta)), hbound_(hbound), window_(window) {
    check_direction(theta_);
    if (hbound < 1) throw qshuf_error("hbound must be at least 1");
    if (window < 0) throw qshuf_error("window must be nonnegative");
    build_legs();
    if (with_products) build_products();
  }

  struct Leg {
    mpq_class r;
    DimVector k;
    DualBases<S> duals;
    bool inside = true;
  };

  const std::vector<Leg>& legs() const { return legs_; }
  const std::vector<SlopeProduct<S>>& products() const { return products_; }
  Hopf<S>& hopf() { return H_; }

  // Slope assignments (leg indices, strictly increasing slopes) inside the window.
  std::vector<std::vector<int>> assignments() const {
    std::vector<std::vector<int>> out;
    std::vector<int> chosen;
    std::function<void(size_t, int)> rec = [&](size_t from, int size) {
      if (!chosen.empty()) out.push_back(chosen);
      for (size_t l = from; l < legs_.size(); ++l) {
        if (!legs_[l].inside || (!chosen.empty() && legs_[l].r == legs_[chosen.back()].r)) continue;
        int s = total(legs_[l].k);
        if (size + s > hbound_) continue;
        chosen.push_back(int(l));
        size_t next = l + 1;
        while (next < legs_.size() && legs_[next].r == legs_[l].r) ++next;
        rec(next, size + s);
        chosen.pop_back();
      }
    };
    rec(0, 0);
    return out;
  }

  S pair(const SlopeProduct<S>& a, const SlopeProduct<S>& b) {
    if (a.shape != b.shape || a.degree != b.degree) return T::zero();
    return H_.pairing(a.plus, b.minus);
  }

 private:
  void build_legs() {
    int V = H_.vertices();
    DimVector cap(V, hbound_);
    int outer = window_ + hbound_;
    for (auto& k : box(cap)) {
      if (total(k) == 0 || total(k) > hbound_) continue;
      // r in [-outer - 1, outer + 1] gives d in a bounded range
      mpq_class t = dot(theta_, k), mk = dot(m_, k);
      long dlo = floor_q(mk - mpq_class(outer + 1) * t).get_si();
      long dhi = floor_q(mk + mpq_class(outer + 1) * t).get_si() + 1;
      for (long d = dlo; d <= dhi; ++d) {
        mpq_class r = ray_parameter(m_, theta_, k, d);
        if (abs(r) > outer) continue;
        auto B = slope_basis(H_.algebra(), along(m_, theta_, r), k, Side::Plus);
        if (B.dim == 0) continue;
        int lo = INT_MAX, hi = INT_MIN;
        for (auto& b : B.basis) {
          lo = std::min(lo, b.poly.min_exponent());
          hi = std::max(hi, b.poly.max_exponent());
        }
        bool inside = hi >= -window_ && lo <= window_;
        bool shell = hi >= -outer && lo <= outer;
        if (!shell) continue;
        legs_.push_back({r, k, dual_bases(H_, along(m_, theta_, r), k), inside});
      }
    }
    std::sort(legs_.begin(), legs_.end(), [](const Leg& a, const Leg& b) {
      return a.r != b.r ? a.r < b.r : a.k < b.k;
    });
  }

  void build_products() {
    std::vector<int> chosen;
    std::function<void(size_t, int)> rec = [&](size_t from, int size) {
      if (!chosen.empty()) emit(chosen);
      for (size_t l = from; l < legs_.size(); ++l) {
        if (!chosen.empty() && legs_[l].r == legs_[chosen.back()].r) continue;
        int s = total(legs_[l].k);
        if (size + s > hbound_) continue;
        chosen.push_back(int(l));
        // next legs must have strictly larger slope
        size_t next = l + 1;
        while (next < legs_.size() && legs_[next].r == legs_[l].r) ++next;
        rec(next, size + s);
        chosen.pop_back();
      }
    };
    rec(0, 0);
  }

  void emit(const std::vector<int>& chosen) {
    std::vector<int> idx(chosen.size(), 0);
    std::function<void(size_t)> rec = [&](size_t c) {
      if (c == chosen.size()) {
        SlopeProduct<S> P;
        P.plus = unit_element<S>(H_.vertices());
        P.minus = {{GeneratorWord{Side::Minus, {}}, T::one()}};
        P.shape = DimVector(H_.vertices(), 0);
        for (size_t u = 0; u < chosen.size(); ++u) {
          const Leg& L = legs_[chosen[u]];
          P.legs.emplace_back(L.r, L.k);
          P.index.push_back(idx[u]);
          P.plus = shuffle_product(H_.algebra(), P.plus, L.duals.plus[idx[u]]);
          WordCombination<S> next;
          for (auto& [w1, c1] : P.minus)
            for (auto& [w2, c2] : L.duals.minus_words[idx[u]]) next.emplace_back(concat(w1, w2), S(c1 * c2));
          P.minus = std::move(next);
          P.shape = P.shape + L.k;
          P.inside = P.inside && L.inside;
        }
        auto d = P.plus.poly.homogeneous_degree();
        if (!d) throw qshuf_error("ordered product of slope legs vanished");
        P.degree = *d;
        products_.push_back(std::move(P));
        return;
      }
      for (idx[c] = 0; idx[c] < int(legs_[chosen[c]].duals.plus.size()); ++idx[c]) rec(c + 1);
    };
    rec(0);
  }

  Hopf<S>& H_;
  SlopeVector m_, theta_;
  int hbound_, window_;
  std::vector<Leg> legs_;
  std::vector<SlopeProduct<S>> products_;
};

inline std::string assignment_str(const std::vector<std::pair<mpq_class, DimVector>>& legs, const std::vector<int>& idx) {
  std::string s;
  for (size_t u = 0; u < legs.size(); ++u) {
    if (u) s += " ";
    s += "(" + legs[u].first.get_str() + "," + dim_str(legs[u].second) + ")#" + std::to_string(idx[u]);
  }
  return s;
}

// Windowed check of the slope factorization of the canonical tensor.
template <class S>
RPrimeReport rprime_window_check(Hopf<S>& H, const SlopeVector& m, const SlopeVector& theta, int hbound, int window) {
  using T = field_traits<S>;
  RPrimeReport R;
  R.hbound = hbound;
  R.window = window;
  SlopeProducts<S> SP(H, m, theta, hbound, window);
  for (auto& L : SP.legs())
    if (L.inside) ++R.legs;
  std::vector<const SlopeProduct<S>*> in;
  for (auto& P : SP.products()) {
    if (P.inside)
      in.push_back(&P);
    else
      ++R.discarded;
  }
  R.products = long(in.size());
  // (1) ordered products pair blockwise: identity on the dual system
  for (size_t a = 0; a < in.size(); ++a)
    for (size_t b = 0; b < in.size(); ++b) {
      if (in[a]->shape != in[b]->shape || in[a]->degree != in[b]->degree) continue;
      ++R.orthogonality_pairs;
      S v = SP.pair(*in[a], *in[b]);
      S want = a == b ? T::one() : T::zero();
      if (!(v == want)) {
        ++R.orthogonality_failures;
        if (R.failures.size() < 20)
          R.failures.push_back("pairing " + assignment_str(in[a]->legs, in[a]->index) + " vs " +
                               assignment_str(in[b]->legs, in[b]->index) + " = " + T::str(v) + ", expected " +
                               T::str(want));
      }
    }
  // (2) contracting the first legs against window words
  int V = H.vertices();
  std::vector<GeneratorWord> tests;
  std::function<void(GeneratorWord&)> gen = [&](GeneratorWord& w) {
    if (!w.letters.empty()) tests.push_back(w);
    if (int(w.letters.size()) == hbound) return;
    for (int i = 0; i < V; ++i)
      for (int d = -window; d <= window; ++d) {
        w.letters.push_back({i, d});
        gen(w);
        w.letters.pop_back();
      }
  };
  GeneratorWord w0{Side::Minus, {}};
  gen(w0);
  for (auto& w : tests) {
    ++R.test_words;
    DimVector shape = w.shape(V);
    long deg = -w.degree();
    WordCombination<S> contracted;
    std::vector<const SlopeProduct<S>*> partners;
    for (auto* P : in) {
      if (P->shape != shape || P->degree != deg) continue;
      partners.push_back(P);
      S c = H.pairing_word(P->plus, w);
      if (T::is_zero(c)) continue;
      for (auto& [u, x] : P->minus) contracted.emplace_back(u, S(c * x));
    }
    bool ok = true;
    for (auto* P : partners) {
      S lhs = H.pairing(P->plus, contracted), rhs = H.pairing_word(P->plus, w);
      if (!(lhs == rhs)) {
        ok = false;
        if (R.failures.size() < 20)
          R.failures.push_back("contraction against " + w.str() + " differs on " + assignment_str(P->legs, P->index));
      }
    }
    if (!ok) ++R.reproduction_failures;
    if (H.expand(contracted, Side::Minus, shape) == H.expand(w)) ++R.exact_reproductions;
  }
  // (3) shape-one layer: duals of z_i^d are z_i^{-d} / gamma_i
  for (auto& L : SP.legs()) {
    if (!L.inside || total(L.k) != 1) continue;
    int i = int(std::find(L.k.begin(), L.k.end(), 1) - L.k.begin());
    for (size_t s = 0; s < L.duals.plus.size(); ++s) {
      ++R.shape_one_checked;
      const auto& a = L.duals.plus[s];
      const auto& b = L.duals.minus[s];
      bool ok = a.poly.terms().size() == 1 && b.poly.terms().size() == 1;
      if (ok) {
        auto [ka, ca] = *a.poly.terms().begin();
        auto [kb, cb] = *b.poly.terms().begin();
        ok = kb[0] == -ka[0] && S(ca * cb * H.gamma(i)) == T::one();
      }
      if (!ok) {
        ++R.shape_one_failures;
        if (R.failures.size() < 20) R.failures.push_back("shape-one dual at r=" + L.r.get_str() + " is not f/gamma");
      }
    }
  }
  return R;
}

struct OrthogonalityTrial {
  std::string left, right;
  bool same_assignment = false;
  std::string value, expected;
  bool ok = false;
};

// Random ordered products of random combinations in each slope leg. The
// pairing must factor over the legs when the assignments agree and vanish
// otherwise. Off-diagonal partners are drawn from assignments of the same
// bidegree.
template <class S>
std::vector<OrthogonalityTrial> slope_orthogonality_trials(Hopf<S>& H, const SlopeVector& m, const SlopeVector& theta,
                                                           int trials, uint64_t seed, int hbound, int window) {
  using T = field_traits<S>;
  SlopeProducts<S> SP(H, m, theta, hbound, window, false);
  const auto& legs = SP.legs();
  auto all = SP.assignments();
  auto signature = [&](const std::vector<int>& a) {
    DimVector n(H.vertices(), 0);
    mpq_class d = 0;
    for (int l : a) {
      n = n + legs[l].k;
      d += dot(along(m, theta, legs[l].r), legs[l].k);
    }
    return std::make_pair(n, d);
  };
  std::map<std::pair<DimVector, mpq_class>, std::vector<int>> groups;
  std::vector<int> multi;
  for (size_t a = 0; a < all.size(); ++a) {
    groups[signature(all[a])].push_back(int(a));
    if (all[a].size() >= 2) multi.push_back(int(a));
  }
  if (multi.empty()) throw qshuf_error("no multi-slope assignments inside the window");
  std::mt19937_64 rng(seed);
  auto pick = [&](size_t n) { return size_t(rng() % n); };
  auto coeffs = [&](size_t dim) {
    std::vector<long> c(dim, 0);
    while (std::all_of(c.begin(), c.end(), [](long x) { return x == 0; }))
      for (auto& x : c) x = long(rng() % 7) - 3;
    return c;
  };
  std::vector<OrthogonalityTrial> out;
  for (int t = 0; t < trials; ++t) {
    const auto& alpha = all[multi[pick(multi.size())]];
    const auto& group = groups[signature(alpha)];
    const std::vector<int>* beta = &alpha;
    if (rng() % 2 && group.size() > 1) {
      int b;
      do b = group[pick(group.size())];
      while (all[b] == alpha);
      beta = &all[b];
    }
    bool same = *beta == alpha;
    ShuffleElement<S> P = unit_element<S>(H.vertices());
    std::vector<ShuffleElement<S>> aleg;
    OrthogonalityTrial tr;
    for (int l : alpha) {
      auto c = coeffs(legs[l].duals.plus.size());
      ShuffleElement<S> a{Side::Plus, SymLaurent<S>(legs[l].k)};
      for (size_t s = 0; s < c.size(); ++s) a += legs[l].duals.plus[s].scaled(T::from_int(c[s]));
      aleg.push_back(a);
      P = shuffle_product(H.algebra(), P, a);
      tr.left += (tr.left.empty() ? "" : " ") + std::string("(") + legs[l].r.get_str() + "," + dim_str(legs[l].k) + ")";
    }
    WordCombination<S> Q{{GeneratorWord{Side::Minus, {}}, T::one()}};
    std::vector<WordCombination<S>> bleg;
    for (int l : *beta) {
      auto c = coeffs(legs[l].duals.minus.size());
      std::map<GeneratorWord, S> acc;
      for (size_t s = 0; s < c.size(); ++s)
        for (auto& [w, x] : legs[l].duals.minus_words[s]) {
          auto [it, fresh] = acc.try_emplace(w, S(x * T::from_int(c[s])));
          if (!fresh) it->second = it->second + x * T::from_int(c[s]);
        }
      WordCombination<S> b(acc.begin(), acc.end());
      bleg.push_back(b);
      WordCombination<S> next;
      for (auto& [w1, c1] : Q)
        for (auto& [w2, c2] : b) next.emplace_back(concat(w1, w2), S(c1 * c2));
      Q = std::move(next);
      tr.right += (tr.right.empty() ? "" : " ") + std::string("(") + legs[l].r.get_str() + "," + dim_str(legs[l].k) + ")";
    }
    S value = H.pairing(P, Q);
    S expected = T::zero();
    if (same) {
      expected = T::one();
      for (size_t u = 0; u < aleg.size(); ++u) expected = expected * H.pairing(aleg[u], bleg[u]);
    }
    tr.same_assignment = same;
    tr.value = T::str(value);
    tr.expected = T::str(expected);
    tr.ok = value == expected;
    out.push_back(std::move(tr));
  }
  return out;
}

}  // namespace qshuf
