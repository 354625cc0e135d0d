#pragma once
// Wheel conditions. For an edge e = i -> j there are two specializations:
//   pattern 0: z_{i,a} = (q/t_e) z_{j,b},  z_{i,c} = (1/t_e) z_{j,b}
//   pattern 1: z_{j,a} = t_e z_{i,b},      z_{j,c} = (t_e/q) z_{i,b}
// By symmetry one canonical triple per (edge, pattern) suffices. After the
// substitution, the coefficient of z_b^beta * (rest) collects all ways of
// removing three exponents (x_a, x_b, x_c) with x_a + x_b + x_c = beta.

#include "qshuf/shuffle.hpp"

#include <optional>

namespace qshuf {

struct WheelCondition {
  int edge = 0;
  int pattern = 0;
  int pair_vertex = 0;    // vertex carrying z_a, z_c
  int single_vertex = 0;  // vertex carrying z_b
};

inline std::vector<WheelCondition> wheel_conditions(const Quiver& Q, const DimVector& shape) {
  std::vector<WheelCondition> out;
  for (auto& e : Q.edges())
    for (int p = 0; p < 2; ++p) {
      WheelCondition w{e.id, p, p == 0 ? e.source : e.target, p == 0 ? e.target : e.source};
      DimVector need(shape.size(), 0);
      need[w.pair_vertex] += 2;
      need[w.single_vertex] += 1;
      if (leq(need, shape)) out.push_back(w);
    }
  return out;
}

// Key of a substituted monomial: beta followed by the remaining exponents in
// canonical block order (the pair block loses two entries, the single block one).
template <class Fn>
void for_each_wheel_contribution(const DimVector& shape, const ExpKey& key, const WheelCondition& w, Fn&& f) {
  auto off = block_offsets(shape);
  int P = w.pair_vertex, U = w.single_vertex;
  std::vector<int> pb(key.begin() + off[P], key.begin() + off[P + 1]);
  std::vector<int> ub(key.begin() + off[U], key.begin() + off[U + 1]);
  auto remove_one = [](std::vector<int>& v, int x) { v.erase(std::find(v.begin(), v.end(), x)); };
  auto distinct = [](const std::vector<int>& v) {
    std::vector<int> d(v);
    d.erase(std::unique(d.begin(), d.end()), d.end());
    return d;
  };
  for (int xa : distinct(pb)) {
    std::vector<int> pb1(pb);
    remove_one(pb1, xa);
    for (int xc : distinct(pb1)) {
      std::vector<int> pb2(pb1);
      remove_one(pb2, xc);
      std::vector<int> src = P == U ? pb2 : ub;
      for (int xb : distinct(src)) {
        std::vector<int> rest_u(src);
        remove_one(rest_u, xb);
        ExpKey eq;
        eq.push_back(xa + xb + xc);
        for (size_t v = 0; v < shape.size(); ++v) {
          if (int(v) == P && P == U) eq.insert(eq.end(), rest_u.begin(), rest_u.end());
          else if (int(v) == P) eq.insert(eq.end(), pb2.begin(), pb2.end());
          else if (int(v) == U) eq.insert(eq.end(), rest_u.begin(), rest_u.end());
          else eq.insert(eq.end(), key.begin() + off[v], key.begin() + off[v + 1]);
        }
        // coefficient q^qe * t^te
        int qe, te;
        if (w.pattern == 0) {
          qe = xa;
          te = -xa - xc;
        } else {
          qe = -xc;
          te = xa + xc;
        }
        f(eq, qe, te);
      }
    }
  }
}

// Raw-substitution form of a canonical wheel condition (for cross-checks).
template <class S>
Assignment<S> wheel_assignment(const Algebra<S>& A, const DimVector& shape, const WheelCondition& w) {
  using T = field_traits<S>;
  auto off = block_offsets(shape);
  int a = off[w.pair_vertex], c = off[w.pair_vertex] + 1;
  int b = w.pair_vertex == w.single_vertex ? off[w.single_vertex] + 2 : off[w.single_vertex];
  const S& q = A.params.q;
  const S& t = A.params.t[w.edge];
  Assignment<S> asg;
  if (w.pattern == 0) {
    asg[a] = {q * T::inv(t), b};
    asg[c] = {T::inv(t), b};
  } else {
    asg[a] = {t, b};
    asg[c] = {t * T::inv(q), b};
  }
  return asg;
}

struct WheelWitness {
  int edge = 0;
  int pattern = 0;
  ExpKey monomial;  // beta followed by the remaining exponents
};

template <class S>
struct WheelResult {
  bool ok = true;
  std::optional<WheelWitness> witness;
  std::string witness_coefficient;
};

template <class S>
WheelResult<S> wheel_check(const Algebra<S>& A, const ShuffleElement<S>& F) {
  const auto& shape = F.shape();
  WheelResult<S> res;
  for (auto& w : wheel_conditions(A.quiver, shape)) {
    std::map<ExpKey, S> eqs;
    const S& q = A.params.q;
    const S& t = A.params.t[w.edge];
    for (auto& [k, c] : F.poly.terms())
      for_each_wheel_contribution(shape, k, w, [&](const ExpKey& eq, int qe, int te) {
        S v = c * scalar_pow(q, qe) * scalar_pow(t, te);
        auto [it, fresh] = eqs.try_emplace(eq, v);
        if (!fresh) it->second = it->second + v;
      });
    for (auto& [eq, v] : eqs)
      if (!field_traits<S>::is_zero(v)) {
        res.ok = false;
        res.witness = WheelWitness{w.edge, w.pattern, eq};
        res.witness_coefficient = field_traits<S>::str(v);
        return res;
      }
  }
  return res;
}

}  // namespace qshuf
