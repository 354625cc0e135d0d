#pragma once
// Generator words, the pairing between the plus and minus halves computed by
// iterated coefficient extraction, graded coproduct components, the slope
// coproduct and primitive elements, and rewriting elements in generator words.

#include "qshuf/linalg.hpp"
#include "qshuf/shuffle.hpp"
#include "qshuf/slope.hpp"
#include "qshuf/zeta.hpp"

#include <climits>
#include <compare>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

namespace qshuf {

struct Letter {
  int vertex = 0;
  int d = 0;
  friend auto operator<=>(const Letter&, const Letter&) = default;
};

struct GeneratorWord {
  Side side = Side::Plus;
  std::vector<Letter> letters;

  DimVector shape(int vertices) const {
    DimVector n(vertices, 0);
    for (auto& l : letters) {
      if (l.vertex < 0 || l.vertex >= vertices) throw qshuf_error("word letter has a vertex out of range");
      ++n[l.vertex];
    }
    return n;
  }
  long degree() const {
    long s = 0;
    for (auto& l : letters) s += l.d;
    return s;
  }
  Bidegree bidegree(int vertices) const {
    Bidegree b;
    b.hdeg = shape(vertices);
    if (side == Side::Minus)
      for (auto& v : b.hdeg) v = -v;
    b.vdeg = degree();
    return b;
  }
  std::string str() const {
    if (letters.empty()) return "1";
    std::ostringstream os;
    const char* g = side == Side::Plus ? "e" : "f";
    for (size_t a = 0; a < letters.size(); ++a) {
      if (a) os << '*';
      os << g << '_' << letters[a].vertex << '(' << letters[a].d << ')';
    }
    return os.str();
  }
  friend auto operator<=>(const GeneratorWord&, const GeneratorWord&) = default;
};

inline GeneratorWord concat(const GeneratorWord& a, const GeneratorWord& b) {
  if (a.side != b.side) throw qshuf_error("concatenating words from different sides");
  GeneratorWord w{a.side, a.letters};
  w.letters.insert(w.letters.end(), b.letters.begin(), b.letters.end());
  return w;
}

template <class S>
using WordCombination = std::vector<std::pair<GeneratorWord, S>>;

// Cartan part of a coproduct summand: h_{i,0}^{zero[i]} times higher modes
// h_{i,p} (p >= 1) on the plus side, h_{i,-p} on the minus side.
struct CartanWord {
  std::vector<int> zero;
  std::vector<std::pair<int, int>> modes;  // (vertex, p), sorted

  static CartanWord from_modes(int vertices, const std::vector<std::pair<int, int>>& all) {
    CartanWord c;
    c.zero.assign(vertices, 0);
    for (auto& [i, p] : all) {
      if (p == 0)
        ++c.zero[i];
      else
        c.modes.emplace_back(i, p);
    }
    std::sort(c.modes.begin(), c.modes.end());
    return c;
  }
  // every factor, zero modes included
  std::vector<std::pair<int, int>> all_modes() const {
    std::vector<std::pair<int, int>> out;
    for (size_t i = 0; i < zero.size(); ++i) out.insert(out.end(), zero[i], {int(i), 0});
    out.insert(out.end(), modes.begin(), modes.end());
    return out;
  }
  bool only_zero_modes() const { return modes.empty(); }
  long degree() const {
    long s = 0;
    for (auto& m : modes) s += m.second;
    return s;
  }
  std::string str(Side side) const {
    std::ostringstream os;
    bool first = true;
    const char* sg = side == Side::Plus ? "+" : "-";
    for (size_t i = 0; i < zero.size(); ++i)
      if (zero[i]) {
        os << (first ? "" : " ") << "h_" << i << "," << sg << "0";
        if (zero[i] > 1) os << "^" << zero[i];
        first = false;
      }
    for (auto& [i, p] : modes) {
      os << (first ? "" : " ") << "h_" << i << "," << sg << p;
      first = false;
    }
    return first ? "1" : os.str();
  }
  friend auto operator<=>(const CartanWord&, const CartanWord&) = default;
};

// One graded component of the coproduct. On the plus side the Cartan word
// multiplies the left leg from the left; on the minus side it multiplies the
// right leg from the right.
template <class S>
struct MixedTensor {
  struct Key {
    CartanWord cartan;
    ExpKey left, right;
    friend auto operator<=>(const Key&, const Key&) = default;
  };
  Side side = Side::Plus;
  DimVector left_shape, right_shape;
  long left_degree = 0, right_degree = 0;  // including Cartan mode degrees
  std::map<Key, S> terms;

  bool is_zero() const { return terms.empty(); }
  void add(Key k, const S& c) {
    if (field_traits<S>::is_zero(c)) return;
    auto [it, fresh] = terms.try_emplace(std::move(k), c);
    if (!fresh) {
      it->second = it->second + c;
      if (field_traits<S>::is_zero(it->second)) terms.erase(it);
    }
  }
  friend bool operator==(const MixedTensor& a, const MixedTensor& b) {
    return a.side == b.side && a.left_shape == b.left_shape && a.right_shape == b.right_shape && a.terms == b.terms;
  }
};

template <class S>
ShuffleElement<S> orbit_element(Side side, const DimVector& shape, const ExpKey& key, const S& c = field_traits<S>::one()) {
  SymLaurent<S> p(shape);
  p.add(key, c);
  return {side, p};
}

namespace detail {

enum class SeriesKind { InvZetaZero, InvZetaInfinity, CartanRatio };

// Calls f(s) for every s in Z_{>=0}^slots with sum total.
inline void for_each_composition(int slots, int total, const std::function<void(const std::vector<int>&)>& f) {
  std::vector<int> s(slots, 0);
  if (slots == 0) {
    if (total == 0) f(s);
    return;
  }
  std::function<void(int, int)> rec = [&](int i, int rem) {
    if (i == slots - 1) {
      s[i] = rem;
      f(s);
      return;
    }
    for (int v = 0; v <= rem; ++v) {
      s[i] = v;
      rec(i + 1, rem - v);
    }
  };
  rec(0, total);
}

// letter a of vertex i takes the next unused variable of block i
inline std::vector<int> letter_variables(const std::vector<int>& verts, const DimVector& shape) {
  auto off = block_offsets(shape);
  std::vector<int> used(shape.size(), 0), out;
  for (int v : verts) out.push_back(off[v] + used[v]++);
  return out;
}

template <class S>
void raw_add(std::map<ExpKey, S>& P, const ExpKey& k, const S& c) {
  if (field_traits<S>::is_zero(c)) return;
  auto [it, fresh] = P.try_emplace(k, c);
  if (!fresh) {
    it->second = it->second + c;
    if (field_traits<S>::is_zero(it->second)) P.erase(it);
  }
}

template <class S>
std::map<ExpKey, S> raw_mul(const std::map<ExpKey, S>& a, const std::map<ExpKey, S>& b) {
  std::map<ExpKey, S> c;
  for (auto& [ka, va] : a)
    for (auto& [kb, vb] : b) {
      ExpKey k = ka;
      for (size_t i = 0; i < k.size(); ++i) k[i] += kb[i];
      raw_add(c, k, S(va * vb));
    }
  return c;
}

// Distinct ways to split a sorted block into a left part of size kl and the rest.
inline std::vector<std::pair<std::vector<int>, std::vector<int>>> block_splits(const std::vector<int>& block, int kl) {
  std::vector<std::pair<int, int>> runs;
  for (int v : block) {
    if (!runs.empty() && runs.back().first == v)
      ++runs.back().second;
    else
      runs.emplace_back(v, 1);
  }
  std::vector<std::pair<std::vector<int>, std::vector<int>>> out;
  std::vector<int> take(runs.size(), 0);
  std::function<void(size_t, int)> rec = [&](size_t r, int rem) {
    if (r == runs.size()) {
      if (rem) return;
      std::vector<int> L, R;
      for (size_t u = 0; u < runs.size(); ++u) {
        L.insert(L.end(), take[u], runs[u].first);
        R.insert(R.end(), runs[u].second - take[u], runs[u].first);
      }
      out.emplace_back(std::move(L), std::move(R));
      return;
    }
    for (int c = 0; c <= std::min(rem, runs[r].second); ++c) {
      take[r] = c;
      rec(r + 1, rem - c);
    }
  };
  rec(0, kl);
  return out;
}

}  // namespace detail

// Pairing, coproduct and word machinery for one algebra. Holds the series
// expansions and word expansions it has computed so far; not thread-safe.
template <class S>
class Hopf {
  using T = field_traits<S>;

 public:
  explicit Hopf(const Algebra<S>& A) : A_(A) {}

  const Algebra<S>& algebra() const { return A_; }
  int vertices() const { return A_.vertices(); }

  // ---------------------------------------------------------------- words

  const ShuffleElement<S>& expand(const GeneratorWord& w) {
    auto it = words_.find(w);
    if (it != words_.end()) return it->second;
    ShuffleElement<S> r;
    if (w.letters.empty()) {
      r = unit_element<S>(vertices(), w.side);
    } else {
      GeneratorWord prefix{w.side, {w.letters.begin(), w.letters.end() - 1}};
      auto& l = w.letters.back();
      r = shuffle_product(A_, expand(prefix), generator<S>(vertices(), l.vertex, l.d, w.side));
    }
    return words_.emplace(w, std::move(r)).first->second;
  }

  ShuffleElement<S> expand(const WordCombination<S>& c, Side side, const DimVector& shape) {
    ShuffleElement<S> r{side, SymLaurent<S>(shape)};
    for (auto& [w, x] : c) r += expand(w).scaled(x);
    return r;
  }

  // Expresses a homogeneous F as a combination of word expansions with letter
  // degrees in [lo - r, hi + r], growing r up to max_radius (default: the
  // support width plus 8).
  WordCombination<S> express_in_words(const ShuffleElement<S>& F, std::optional<int> max_radius = std::nullopt) {
    const DimVector& n = F.shape();
    if (F.is_zero()) return {};
    auto deg = F.poly.homogeneous_degree();
    if (!deg) throw qshuf_error("express_in_words needs a homogeneous element");
    if (total(n) == 0) return {{GeneratorWord{F.side, {}}, F.poly.coefficient({})}};
    int lo = F.poly.min_exponent(), hi = F.poly.max_exponent();
    int rmax = max_radius ? *max_radius : (hi - lo) + 8;
    std::vector<int> verts = variable_vertices(n);
    std::vector<std::vector<int>> vseqs;
    do vseqs.push_back(verts);
    while (std::next_permutation(verts.begin(), verts.end()));
    int len = total(n);
    for (int r = 0; r <= rmax; ++r) {
      int a = lo - r, b = hi + r;
      std::vector<GeneratorWord> cand;
      for (auto& vs : vseqs) {
        std::vector<int> d(len);
        std::function<void(int, long)> rec = [&](int i, long rem) {
          int left = len - i;
          if (left == 0) {
            if (rem == 0) {
              GeneratorWord w{F.side, {}};
              for (int u = 0; u < len; ++u) w.letters.push_back({vs[u], d[u]});
              cand.push_back(std::move(w));
            }
            return;
          }
          for (int v = a; v <= b; ++v) {
            long r2 = rem - v;
            if (r2 < long(left - 1) * a || r2 > long(left - 1) * b) continue;
            d[i] = v;
            rec(i + 1, r2);
          }
        };
        rec(0, *deg);
      }
      std::map<ExpKey, int> rows;
      for (auto& [k, c] : F.poly.terms()) rows.emplace(k, 0);
      for (auto& w : cand)
        for (auto& [k, c] : expand(w).poly.terms()) rows.emplace(k, 0);
      int idx = 0;
      for (auto& [k, v] : rows) v = idx++;
      std::vector<std::vector<S>> cols;
      for (auto& w : cand) {
        std::vector<S> col(rows.size(), T::zero());
        for (auto& [k, c] : expand(w).poly.terms()) col[rows[k]] = c;
        cols.push_back(std::move(col));
      }
      std::vector<S> target(rows.size(), T::zero());
      for (auto& [k, c] : F.poly.terms()) target[rows[k]] = c;
      auto sol = solve_columns(cols, target);
      if (!sol) continue;
      WordCombination<S> out;
      for (size_t j = 0; j < cand.size(); ++j)
        if (!T::is_zero((*sol)[j])) out.emplace_back(cand[j], (*sol)[j]);
      return out;
    }
    throw qshuf_error("express_in_words: no word combination with letter degrees within radius " +
                      std::to_string(rmax) + " of the support");
  }

  // ---------------------------------------------------------------- pairing

  // <F, w> for a plus-side F and a minus-side word: constant term over
  // |z_1| << ... << |z_n| of z^d F(z) / prod_{a<b} zeta_{i_a i_b}(z_a/z_b),
  // times prod gamma_{i_a}. With `dress`, F stands for (Cartan word) * F, and
  // the Cartan word's pairing against the h-part of the coproduct of w is
  // inserted into the integrand.
  S pairing_word(const ShuffleElement<S>& F, const GeneratorWord& w, const CartanWord* dress = nullptr) {
    if (F.side != Side::Plus || w.side != Side::Minus) throw qshuf_error("pairing_word pairs a plus element with a minus word");
    if (F.shape() != w.shape(vertices())) return T::zero();
    std::vector<int> verts, d;
    for (auto& l : w.letters) {
      verts.push_back(l.vertex);
      d.push_back(l.d);
    }
    std::map<ExpKey, S> ins = insertion(dress, verts, Side::Plus);
    long want = -w.degree() - (dress ? dress->degree() : 0);
    auto P = detail::raw_mul(letter_polynomial(F.poly, verts, want), ins);
    return gamma_product(verts) * ordered_constant_term(verts, d, P);
  }

  // <u, G> for a plus-side word u and a minus-side G: constant term over
  // |z_1| >> ... >> |z_n| of z^d G(z) / prod_{a<b} zeta_{i_b i_a}(z_b/z_a),
  // times prod gamma. With `dress`, G stands for (Cartan word) * G.
  S pairing_word(const GeneratorWord& u, const ShuffleElement<S>& G, const CartanWord* dress = nullptr) {
    if (u.side != Side::Plus || G.side != Side::Minus) throw qshuf_error("pairing_word pairs a plus word with a minus element");
    if (G.shape() != u.shape(vertices())) return T::zero();
    std::vector<int> verts, d;
    for (auto& l : u.letters) {
      verts.push_back(l.vertex);
      d.push_back(l.d);
    }
    std::map<ExpKey, S> ins = insertion(dress, verts, Side::Minus);
    long want = -u.degree() + (dress ? dress->degree() : 0);
    auto P = detail::raw_mul(letter_polynomial(G.poly, verts, want), ins);
    // reverse the letters so the region becomes |y_1| << ... << |y_n|
    std::vector<int> rv(verts.rbegin(), verts.rend()), rd(d.rbegin(), d.rend());
    std::map<ExpKey, S> RP;
    for (auto& [k, c] : P) {
      ExpKey r(k.rbegin(), k.rend());
      detail::raw_add(RP, r, c);
    }
    return gamma_product(verts) * ordered_constant_term(rv, rd, RP);
  }

  S pairing(const ShuffleElement<S>& F, const WordCombination<S>& G) {
    S acc = T::zero();
    for (auto& [w, c] : G) acc = acc + c * pairing_word(F, w);
    return acc;
  }
  S pairing(const WordCombination<S>& U, const ShuffleElement<S>& G) {
    S acc = T::zero();
    for (auto& [u, c] : U) acc = acc + c * pairing_word(u, G);
    return acc;
  }
  // plus element against minus element, the minus side rewritten in words
  S pairing(const ShuffleElement<S>& F, const ShuffleElement<S>& G) {
    if (F.side != Side::Plus || G.side != Side::Minus) throw qshuf_error("pairing expects (plus, minus)");
    if (F.shape() != G.shape() || F.is_zero() || G.is_zero()) return T::zero();
    return pairing(F, express_in_words(G));
  }

  // ---------------------------------------------------------------- coproduct

  // Component of the coproduct with left horizontal degree k_left and right
  // leg of total degree right_degree (Cartan modes included).
  MixedTensor<S> coproduct_component(const ShuffleElement<S>& F, const DimVector& k_left, long right_degree) {
    const DimVector& n = F.shape();
    if (!leq(k_left, n)) throw qshuf_error("coproduct split exceeds the horizontal degree");
    DimVector k_right = n - k_left;
    MixedTensor<S> M;
    M.side = F.side;
    M.left_shape = k_left;
    M.right_shape = k_right;
    M.right_degree = right_degree;
    auto fdeg = F.poly.homogeneous_degree();
    M.left_degree = (fdeg ? *fdeg : 0) - right_degree;
    if (F.is_zero()) return M;
    bool plus = F.side == Side::Plus;
    auto vl = variable_vertices(k_left), vr = variable_vertices(k_right);
    int nl = int(vl.size()), nr = int(vr.size());
    // valuation of each (left a, right b) denominator factor: #(j_b -> i_a)
    std::vector<int> val(size_t(nl) * nr);
    long valsum = 0;
    for (int a = 0; a < nl; ++a)
      for (int b = 0; b < nr; ++b) valsum += val[size_t(a) * nr + b] = A_.quiver.arrows(vr[b], vl[a]);
    auto off = block_offsets(n);
    for (auto& [key, c] : F.poly.terms()) {
      // distinct splits of every block
      std::vector<std::vector<std::pair<std::vector<int>, std::vector<int>>>> per;
      for (size_t i = 0; i < n.size(); ++i)
        per.push_back(detail::block_splits({key.begin() + off[i], key.begin() + off[i + 1]}, k_left[i]));
      std::vector<size_t> pick(n.size(), 0);
      std::function<void(size_t)> rec = [&](size_t i) {
        if (i < n.size()) {
          for (pick[i] = 0; pick[i] < per[i].size(); ++pick[i]) rec(i + 1);
          return;
        }
        ExpKey L, R;
        for (size_t v = 0; v < n.size(); ++v) {
          auto& [l, r] = per[v][pick[v]];
          L.insert(L.end(), l.begin(), l.end());
          R.insert(R.end(), r.begin(), r.end());
        }
        long sumR = 0;
        for (int x : R) sumR += x;
        long budget = sumR - right_degree - valsum;
        if (budget < 0) return;
        S stab0 = T::from_int(stabilizer_order(canonical_key(L, k_left), k_left) *
                              stabilizer_order(canonical_key(R, k_right), k_right));
        S scale = c * T::inv(stab0);
        int mode_slots = plus ? nr : nl;
        int slots = mode_slots + nl * nr;
        detail::for_each_composition(slots, int(budget), [&](const std::vector<int>& s) {
          S coef = scale;
          ExpKey L2 = L, R2 = R;
          std::vector<std::pair<int, int>> modes;
          for (int a = 0; a < nl; ++a)
            for (int b = 0; b < nr; ++b) {
              int e = val[size_t(a) * nr + b] + s[mode_slots + a * nr + b];
              coef = coef * (plus ? series(detail::SeriesKind::InvZetaInfinity, vr[b], vl[a], e)
                                  : series(detail::SeriesKind::InvZetaZero, vl[a], vr[b], e));
              if (T::is_zero(coef)) return;
              L2[a] += e;
              R2[b] -= e;
            }
          if (plus) {
            for (int b = 0; b < nr; ++b) {
              R2[b] -= s[b];
              modes.emplace_back(vr[b], s[b]);
            }
          } else {
            for (int a = 0; a < nl; ++a) {
              L2[a] += s[a];
              modes.emplace_back(vl[a], s[a]);
            }
          }
          ExpKey cl = canonical_key(L2, k_left), cr = canonical_key(R2, k_right);
          S w = T::from_int(stabilizer_order(cl, k_left) * stabilizer_order(cr, k_right));
          M.add({CartanWord::from_modes(vertices(), modes), cl, cr}, coef * w);
        });
      };
      rec(0);
    }
    return M;
  }

  // Pairing of a plus-side coproduct component against w1 (x) w2, with the
  // Cartan word dressing the left leg: sum <h L, w1> <R, w2>.
  S pairing_tensor(const MixedTensor<S>& M, const GeneratorWord& w1, const GeneratorWord& w2) {
    if (M.side != Side::Plus) throw qshuf_error("pairing_tensor(plus component, words) on a minus component");
    S acc = T::zero();
    for (auto& [k, c] : M.terms) {
      S r = pairing_word(orbit_element<S>(Side::Plus, M.right_shape, k.right), w2);
      if (T::is_zero(r)) continue;
      acc = acc + c * r * pairing_word(orbit_element<S>(Side::Plus, M.left_shape, k.left), w1, &k.cartan);
    }
    return acc;
  }

  // Pairing of a minus-side coproduct component against words: the right leg
  // R * (Cartan word) pairs with u_right, the left leg with u_left. The Cartan
  // word stands to the right of R, so it contributes through its counit.
  S pairing_tensor(const GeneratorWord& u_right, const GeneratorWord& u_left, const MixedTensor<S>& M) {
    if (M.side != Side::Minus) throw qshuf_error("pairing_tensor(words, minus component) on a plus component");
    S acc = T::zero();
    for (auto& [k, c] : M.terms) {
      if (!k.cartan.only_zero_modes()) continue;
      S l = pairing_word(u_left, orbit_element<S>(Side::Minus, M.left_shape, k.left));
      if (T::is_zero(l)) continue;
      acc = acc + c * l * pairing_word(u_right, orbit_element<S>(Side::Minus, M.right_shape, k.right));
    }
    return acc;
  }

  // Slope coproduct: for each 0 <= k <= n (left horizontal degree), the
  // component with both legs of naive slope m and only zero Cartan modes.
  std::vector<std::pair<DimVector, MixedTensor<S>>> delta_m(const ShuffleElement<S>& F, const SlopeVector& m) {
    if (F.is_zero() || !has_naive_slope(F, m) || !has_slope_leq(A_.quiver, F, m))
      throw qshuf_error("delta_m: element is not in the slope subalgebra");
    std::vector<std::pair<DimVector, MixedTensor<S>>> out;
    const DimVector& n = F.shape();
    for (auto& k : box(n)) {
      DimVector rest = n - k;
      auto dr = integral_degree(m, rest);
      if (!dr) continue;
      long signed_dr = F.side == Side::Plus ? *dr : -*dr;
      auto M = coproduct_component(F, k, signed_dr);
      for (auto it = M.terms.begin(); it != M.terms.end();)
        it = it->first.cartan.only_zero_modes() ? std::next(it) : M.terms.erase(it);
      if (!M.is_zero()) out.emplace_back(k, std::move(M));
    }
    return out;
  }

  bool primitive_check(const ShuffleElement<S>& F, const SlopeVector& m) {
    const DimVector& n = F.shape();
    for (auto& [k, M] : delta_m(F, m)) {
      (void)M;
      if (total(k) != 0 && k != n) return false;
    }
    return true;
  }

  // Dimension of the primitive subspace of B_{m|n}: kernel of the map to the
  // middle components of the slope coproduct.
  int primitive_count(const SlopeVector& m, const DimVector& n) {
    auto B = slope_basis(A_, m, n, Side::Plus);
    if (B.dim == 0) return 0;
    std::map<std::pair<DimVector, typename MixedTensor<S>::Key>, int> index;
    std::vector<std::vector<std::pair<int, S>>> rows;
    for (auto& b : B.basis) {
      std::vector<std::pair<int, S>> row;
      for (auto& [k, M] : delta_m(b, m)) {
        if (total(k) == 0 || k == n) continue;
        for (auto& [key, c] : M.terms) {
          auto [it, fresh] = index.try_emplace({k, key}, int(index.size()));
          row.emplace_back(it->second, c);
        }
      }
      rows.push_back(std::move(row));
    }
    Echelon<S> E(std::max<int>(1, int(index.size())));
    for (auto& r : rows) E.add_sparse(r);
    return B.dim - E.rank();
  }

  S gamma(int i) { return gamma_const(A_, i); }

  S series(detail::SeriesKind kind, int i, int j, int power) {
    auto key = std::make_tuple(int(kind), i, j);
    auto it = series_.find(key);
    if (it == series_.end() || power - it->second.valuation >= int(it->second.coef.size())) {
      int need = 16;
      if (it != series_.end()) need = std::max(2 * int(it->second.coef.size()), power - it->second.valuation + 8);
      PowerSeries<S> ps;
      switch (kind) {
        case detail::SeriesKind::InvZetaZero: ps = inv_zeta_at_zero(A_, i, j, need); break;
        case detail::SeriesKind::InvZetaInfinity: ps = inv_zeta_at_infinity(A_, i, j, need); break;
        case detail::SeriesKind::CartanRatio: ps = cartan_ratio_series(A_, i, j, need); break;
      }
      it = series_.insert_or_assign(key, std::move(ps)).first;
      if (power - it->second.valuation >= int(it->second.coef.size())) return series(kind, i, j, power);
    }
    return it->second.at(power);
  }

 private:
  S gamma_product(const std::vector<int>& verts) {
    S g = T::one();
    for (int v : verts) g = g * gamma_const(A_, v);
    return g;
  }

  // Raw monomials of F rewritten in letter order, restricted to total degree want.
  std::map<ExpKey, S> letter_polynomial(const SymLaurent<S>& F, const std::vector<int>& verts, long want) {
    std::map<ExpKey, S> P;
    auto var = detail::letter_variables(verts, F.shape());
    for (auto& [k, c] : F.terms()) {
      long s = 0;
      for (int x : k) s += x;
      if (s != want) continue;
      for_each_orbit_member(k, F.shape(), [&](const ExpKey& m) {
        ExpKey g(verts.size());
        for (size_t a = 0; a < verts.size(); ++a) g[a] = m[var[a]];
        detail::raw_add(P, g, c);
      });
    }
    return P;
  }

  // Pairing of the Cartan word with the h-part carried by the letters. Plus
  // side: h^+_j(w) against prod_c h^-_{v_c}(z_c), coefficient of w^{-p}.
  // Minus side: prod_c h^+_{v_c}(z_c) against h^-_i(y), coefficient of y^p.
  std::map<ExpKey, S> insertion(const CartanWord* dress, const std::vector<int>& verts, Side side) {
    int n = int(verts.size());
    std::map<ExpKey, S> P{{ExpKey(n, 0), T::one()}};
    if (!dress) return P;
    for (auto& [j, p] : dress->all_modes()) {
      std::map<ExpKey, S> Q;
      detail::for_each_composition(n, p, [&](const std::vector<int>& s) {
        S c = T::one();
        ExpKey k(n);
        for (int a = 0; a < n && !T::is_zero(c); ++a) {
          if (side == Side::Plus) {
            c = c * series(detail::SeriesKind::CartanRatio, j, verts[a], s[a]);
            k[a] = s[a];
          } else {
            c = c * series(detail::SeriesKind::CartanRatio, verts[a], j, s[a]);
            k[a] = -s[a];
          }
        }
        detail::raw_add(Q, k, c);
      });
      P = detail::raw_mul(P, Q);
    }
    return P;
  }

  // Constant term of z^shift P(z) / prod_{a<b} zeta_{v_a v_b}(z_a/z_b) with
  // each factor expanded in positive powers of z_a/z_b.
  S ordered_constant_term(const std::vector<int>& verts, const std::vector<int>& shift, const std::map<ExpKey, S>& P) {
    int n = int(verts.size());
    if (n == 0) {
      auto it = P.find(ExpKey{});
      return it == P.end() ? T::zero() : it->second;
    }
    std::vector<int> val(size_t(n) * n, 0);
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b) val[size_t(a) * n + b] = A_.quiver.arrows(verts[b], verts[a]);
    S total_ct = T::zero();
    std::vector<long> need(n), in(n);
    for (auto& [g, c] : P) {
      long sum = 0;
      for (int a = 0; a < n; ++a) {
        need[a] = -(long(g[a]) + shift[a]);
        sum += need[a];
      }
      if (sum != 0) continue;
      std::fill(in.begin(), in.end(), 0);
      S acc = T::zero();
      // s_ab for a < b: sum_{b>a} s_ab = need_a + sum_{b<a} s_ba
      std::function<void(int, int, long, S)> rec = [&](int a, int b, long rem, S coef) {
        if (b == n) {
          if (rem != 0) return;
          int a2 = a + 1;
          if (a2 == n - 1) {
            if (need[a2] + in[a2] == 0) acc = acc + coef;
            return;
          }
          long r2 = need[a2] + in[a2];
          for (int b2 = a2 + 1; b2 < n; ++b2) r2 -= val[size_t(a2) * n + b2];
          if (r2 < 0) return;
          rec(a2, a2 + 1, r2, coef);
          return;
        }
        long lim = (b == n - 1) ? rem : 0;
        for (long x = lim; x <= rem; ++x) {
          int s = val[size_t(a) * n + b] + int(x);
          S k = coef * series(detail::SeriesKind::InvZetaZero, verts[a], verts[b], s);
          if (T::is_zero(k)) continue;
          in[b] += s;
          rec(a, b + 1, rem - x, k);
          in[b] -= s;
        }
      };
      if (n == 1) {
        if (need[0] == 0) acc = T::one();
      } else {
        long r0 = need[0];
        for (int b = 1; b < n; ++b) r0 -= val[b];
        if (r0 >= 0) rec(0, 1, r0, T::one());
      }
      total_ct = total_ct + c * acc;
    }
    return total_ct;
  }

  const Algebra<S>& A_;
  std::map<GeneratorWord, ShuffleElement<S>> words_;
  std::map<std::tuple<int, int, int>, PowerSeries<S>> series_;
};

}  // namespace qshuf
