#pragma once
// Laurent polynomials in grouped variables z_{i,a}, 1 <= a <= n_i. Exponent
// keys are flat vectors with the vertex blocks laid out in vertex order.

#include "qshuf/quiver.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>

namespace qshuf {

using ExpKey = std::vector<int>;

inline std::vector<int> block_offsets(const DimVector& shape) {
  std::vector<int> off(shape.size() + 1, 0);
  for (size_t i = 0; i < shape.size(); ++i) off[i + 1] = off[i] + shape[i];
  return off;
}

// vertex of each flat variable position
inline std::vector<int> variable_vertices(const DimVector& shape) {
  std::vector<int> v;
  for (size_t i = 0; i < shape.size(); ++i) v.insert(v.end(), shape[i], int(i));
  return v;
}

inline ExpKey canonical_key(ExpKey k, const DimVector& shape) {
  int off = 0;
  for (int n : shape) {
    std::sort(k.begin() + off, k.begin() + off + n, std::greater<int>());
    off += n;
  }
  return k;
}

inline long factorial(int n) {
  long r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

inline long group_order(const DimVector& shape) {
  long r = 1;
  for (int n : shape) r *= factorial(n);
  return r;
}

// Size of the stabilizer of a canonical key in the product of symmetric groups.
inline long stabilizer_order(const ExpKey& k, const DimVector& shape) {
  long r = 1;
  int off = 0;
  for (int n : shape) {
    int run = 1;
    for (int a = 1; a <= n; ++a) {
      if (a < n && k[off + a] == k[off + a - 1]) {
        ++run;
      } else {
        r *= factorial(run);
        run = 1;
      }
    }
    off += n;
  }
  return r;
}

inline long orbit_size(const ExpKey& k, const DimVector& shape) {
  return group_order(shape) / stabilizer_order(k, shape);
}

// Calls f on every distinct exponent vector in the orbit of the canonical key.
inline void for_each_orbit_member(const ExpKey& k, const DimVector& shape,
                                  const std::function<void(const ExpKey&)>& f) {
  ExpKey cur = k;
  auto off = block_offsets(shape);
  // start every block in ascending order for next_permutation
  for (size_t i = 0; i < shape.size(); ++i) std::sort(cur.begin() + off[i], cur.begin() + off[i + 1]);
  std::function<void(size_t)> rec = [&](size_t i) {
    if (i == shape.size()) {
      f(cur);
      return;
    }
    auto b = cur.begin() + off[i], e = cur.begin() + off[i + 1];
    do rec(i + 1);
    while (std::next_permutation(b, e));
  };
  rec(0);
}

template <class S>
class RawLaurent {
 public:
  using Terms = std::map<ExpKey, S>;

  RawLaurent() = default;
  explicit RawLaurent(DimVector shape) : shape_(std::move(shape)) {}

  const DimVector& shape() const { return shape_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int variables() const { return total(shape_); }

  void add(const ExpKey& k, const S& c) {
    if (field_traits<S>::is_zero(c)) return;
    auto [it, fresh] = terms_.try_emplace(k, c);
    if (!fresh) {
      it->second = it->second + c;
      if (field_traits<S>::is_zero(it->second)) terms_.erase(it);
    }
  }

  friend bool operator==(const RawLaurent& a, const RawLaurent& b) {
    return a.shape_ == b.shape_ && a.terms_ == b.terms_;
  }

 private:
  DimVector shape_;
  Terms terms_;
};

template <class S>
class SymLaurent {
 public:
  using Terms = std::map<ExpKey, S>;

  SymLaurent() = default;
  explicit SymLaurent(DimVector shape) : shape_(std::move(shape)) {}

  static SymLaurent constant(const DimVector& shape, const S& c) {
    SymLaurent r(shape);
    r.add(ExpKey(total(shape), 0), c);
    return r;
  }

  const DimVector& shape() const { return shape_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int variables() const { return total(shape_); }

  // Adds c to the orbit coefficient of k (k need not be canonical).
  void add(const ExpKey& k, const S& c) {
    if (field_traits<S>::is_zero(c)) return;
    ExpKey ck = canonical_key(k, shape_);
    auto [it, fresh] = terms_.try_emplace(std::move(ck), c);
    if (!fresh) {
      it->second = it->second + c;
      if (field_traits<S>::is_zero(it->second)) terms_.erase(it);
    }
  }

  S coefficient(const ExpKey& k) const {
    auto it = terms_.find(canonical_key(k, shape_));
    return it == terms_.end() ? field_traits<S>::zero() : it->second;
  }

  SymLaurent& operator+=(const SymLaurent& o) {
    check_shape(o);
    for (auto& [k, c] : o.terms_) add_canonical(k, c);
    return *this;
  }
  SymLaurent& operator-=(const SymLaurent& o) {
    check_shape(o);
    for (auto& [k, c] : o.terms_) add_canonical(k, field_traits<S>::zero() - c);
    return *this;
  }
  friend SymLaurent operator+(SymLaurent a, const SymLaurent& b) { return a += b; }
  friend SymLaurent operator-(SymLaurent a, const SymLaurent& b) { return a -= b; }
  SymLaurent scaled(const S& s) const {
    SymLaurent r(shape_);
    if (field_traits<S>::is_zero(s)) return r;
    for (auto& [k, c] : terms_) r.terms_.emplace(k, c * s);
    return r;
  }
  friend bool operator==(const SymLaurent& a, const SymLaurent& b) {
    return a.shape_ == b.shape_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const SymLaurent& a, const SymLaurent& b) { return !(a == b); }

  RawLaurent<S> to_raw() const {
    RawLaurent<S> r(shape_);
    for (auto& [k, c] : terms_) for_each_orbit_member(k, shape_, [&](const ExpKey& m) { r.add(m, c); });
    return r;
  }

  // Total degree if homogeneous; nullopt for zero or inhomogeneous input.
  std::optional<long> homogeneous_degree() const {
    std::optional<long> d;
    for (auto& [k, c] : terms_) {
      long s = 0;
      for (int v : k) s += v;
      if (d && *d != s) return std::nullopt;
      d = s;
    }
    return d;
  }

  int max_exponent() const {
    int m = 0;
    bool first = true;
    for (auto& [k, c] : terms_)
      for (int v : k) {
        m = first ? v : std::max(m, v);
        first = false;
      }
    return m;
  }
  int min_exponent() const {
    int m = 0;
    bool first = true;
    for (auto& [k, c] : terms_)
      for (int v : k) {
        m = first ? v : std::min(m, v);
        first = false;
      }
    return m;
  }

  // trusted insertion of a canonical key
  void add_canonical(const ExpKey& k, const S& c) {
    if (field_traits<S>::is_zero(c)) return;
    auto [it, fresh] = terms_.try_emplace(k, c);
    if (!fresh) {
      it->second = it->second + c;
      if (field_traits<S>::is_zero(it->second)) terms_.erase(it);
    }
  }

 private:
  void check_shape(const SymLaurent& o) const {
    if (o.shape_ != shape_) throw qshuf_error("shape mismatch in SymLaurent arithmetic");
  }

  DimVector shape_;
  Terms terms_;
};

// Full group sum of p over all products of per-vertex permutations.
template <class S>
SymLaurent<S> symmetrize(const RawLaurent<S>& p) {
  SymLaurent<S> r(p.shape());
  for (auto& [k, c] : p.terms()) {
    ExpKey ck = canonical_key(k, p.shape());
    r.add_canonical(ck, c * field_traits<S>::from_int(stabilizer_order(ck, p.shape())));
  }
  return r;
}

// Image of one variable under a substitution: coef * z_target (target >= 0)
// or the pure scalar coef (target < 0).
template <class S>
struct VarImage {
  S coef;
  int target = -1;
};

template <class S>
using Assignment = std::map<int, VarImage<S>>;

template <class S>
RawLaurent<S> substitute(const RawLaurent<S>& p, const Assignment<S>& a) {
  for (auto& [v, img] : a) {
    if (img.target >= 0 && a.count(img.target)) throw qshuf_error("substitution target is itself substituted");
    if (field_traits<S>::is_zero(img.coef)) throw qshuf_error("substitution by zero scalar");
  }
  RawLaurent<S> r(p.shape());
  for (auto& [k, c] : p.terms()) {
    ExpKey out = k;
    S coef = c;
    for (auto& [v, img] : a) {
      int e = k[v];
      out[v] = 0;
      if (e == 0) continue;
      coef = coef * scalar_pow(img.coef, e);
      if (img.target >= 0) out[img.target] += e;
    }
    r.add(out, coef);
  }
  return r;
}

template <class S>
RawLaurent<S> substitute(const SymLaurent<S>& F, const Assignment<S>& a) {
  return substitute(F.to_raw(), a);
}

// max over monomials of the sum of the k_i largest exponents of each block
template <class S>
long degree_profile(const SymLaurent<S>& F, const DimVector& k) {
  if (F.is_zero()) throw qshuf_error("degree profile of the zero polynomial");
  auto off = block_offsets(F.shape());
  long best = 0;
  bool first = true;
  for (auto& [key, c] : F.terms()) {
    long s = 0;
    for (size_t i = 0; i < k.size(); ++i)
      for (int a = 0; a < k[i]; ++a) s += key[off[i] + a];
    best = first ? s : std::max(best, s);
    first = false;
  }
  return best;
}

// min over monomials of the sum of the k_i smallest exponents of each block
template <class S>
long min_degree_profile(const SymLaurent<S>& F, const DimVector& k) {
  if (F.is_zero()) throw qshuf_error("degree profile of the zero polynomial");
  auto off = block_offsets(F.shape());
  long best = 0;
  bool first = true;
  for (auto& [key, c] : F.terms()) {
    long s = 0;
    for (size_t i = 0; i < k.size(); ++i)
      for (int a = 0; a < k[i]; ++a) s += key[off[i + 1] - 1 - a];
    best = first ? s : std::min(best, s);
    first = false;
  }
  return best;
}

template <class S>
S evaluate(const RawLaurent<S>& p, const std::vector<S>& z) {
  S s = field_traits<S>::zero();
  for (auto& [k, c] : p.terms()) {
    S v = c;
    for (size_t a = 0; a < k.size(); ++a)
      if (k[a]) v = v * scalar_pow(z[a], k[a]);
    s = s + v;
  }
  return s;
}

template <class S>
S evaluate(const SymLaurent<S>& F, const std::vector<S>& z) {
  return evaluate(F.to_raw(), z);
}

// Converts coefficients between scalar types (e.g. exact -> specialized).
template <class T, class S, class Fn>
SymLaurent<T> map_coefficients(const SymLaurent<S>& F, Fn&& fn) {
  SymLaurent<T> r(F.shape());
  for (auto& [k, c] : F.terms()) r.add_canonical(k, fn(c));
  return r;
}

}  // namespace qshuf
