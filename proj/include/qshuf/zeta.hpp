#pragma once
// The zeta factors of the shuffle product and their power-series expansions.

#include "qshuf/params.hpp"

#include <map>

namespace qshuf {

// univariate Laurent polynomial in x: exponent -> coefficient
template <class S>
using UPoly = std::map<int, S>;

template <class S>
UPoly<S> upoly_mul(const UPoly<S>& a, const UPoly<S>& b) {
  UPoly<S> r;
  for (auto& [ea, ca] : a)
    for (auto& [eb, cb] : b) {
      auto [it, fresh] = r.try_emplace(ea + eb, ca * cb);
      if (!fresh) it->second = it->second + ca * cb;
    }
  for (auto it = r.begin(); it != r.end();)
    it = field_traits<S>::is_zero(it->second) ? r.erase(it) : std::next(it);
  return r;
}

// x -> 1/x
template <class S>
UPoly<S> upoly_reflect(const UPoly<S>& a) {
  UPoly<S> r;
  for (auto& [e, c] : a) r.emplace(-e, c);
  return r;
}

template <class S>
S upoly_eval(const UPoly<S>& a, const S& x) {
  S s = field_traits<S>::zero();
  for (auto& [e, c] : a) s = s + c * scalar_pow(x, e);
  return s;
}

template <class S>
struct ZetaFactor {
  UPoly<S> numerator;
  UPoly<S> denominator;

  S operator()(const S& x) const {
    return upoly_eval(numerator, x) * field_traits<S>::inv(upoly_eval(denominator, x));
  }
};

template <class S>
ZetaFactor<S> zeta(const Algebra<S>& A, int i, int j) {
  using T = field_traits<S>;
  const auto& P = A.params;
  UPoly<S> num{{0, T::one()}}, den{{0, T::one()}};
  if (i == j) {
    num = upoly_mul(num, UPoly<S>{{0, T::one()}, {1, T::zero() - T::inv(P.q)}});
    den = UPoly<S>{{0, T::one()}, {1, T::from_int(-1)}};
  }
  for (auto& e : A.quiver.edges()) {
    if (e.source == i && e.target == j)
      num = upoly_mul(num, UPoly<S>{{0, T::inv(P.t[e.id])}, {1, T::from_int(-1)}});
    if (e.source == j && e.target == i)
      num = upoly_mul(num, UPoly<S>{{0, T::one()}, {-1, T::zero() - P.t[e.id] * T::inv(P.q)}});
  }
  return {num, den};
}

template <class S>
S gamma_const(const Algebra<S>& A, int i) {
  using T = field_traits<S>;
  const auto& P = A.params;
  S g = T::inv(T::one() - T::inv(P.q));
  for (auto& e : A.quiver.edges())
    if (e.source == i && e.target == i) {
      const S& t = P.t[e.id];
      g = g * (T::inv(t) - T::one()) * (T::one() - t * T::inv(P.q));
    }
  return g;
}

// x^valuation * sum_s coef[s] x^s, truncated
template <class S>
struct PowerSeries {
  int valuation = 0;
  std::vector<S> coef;

  S at(int power) const {
    int s = power - valuation;
    if (s < 0) return field_traits<S>::zero();
    if (s >= int(coef.size())) throw qshuf_error("power series truncated below requested order");
    return coef[s];
  }
};

// Expansion of num/den around x = 0 with `terms` coefficients.
template <class S>
PowerSeries<S> ratio_series(const UPoly<S>& num, const UPoly<S>& den, int terms) {
  using T = field_traits<S>;
  if (num.empty()) throw qshuf_error("series of a zero rational function");
  if (den.empty()) throw qshuf_error("series with zero denominator");
  int vn = num.begin()->first, vd = den.begin()->first;
  std::vector<S> a(terms, T::zero()), b(terms, T::zero());
  for (auto& [e, c] : num)
    if (e - vn < terms) a[e - vn] = c;
  for (auto& [e, c] : den)
    if (e - vd < terms) b[e - vd] = c;
  PowerSeries<S> r;
  r.valuation = vn - vd;
  r.coef.assign(terms, T::zero());
  S inv0 = T::inv(b[0]);
  for (int s = 0; s < terms; ++s) {
    S acc = a[s];
    for (int u = 1; u <= s; ++u)
      if (!T::is_zero(b[u])) acc = acc - b[u] * r.coef[s - u];
    r.coef[s] = acc * inv0;
  }
  return r;
}

// 1/zeta_ij(x) expanded for small x; valuation is #(j -> i).
template <class S>
PowerSeries<S> inv_zeta_at_zero(const Algebra<S>& A, int i, int j, int terms) {
  auto z = zeta(A, i, j);
  return ratio_series(z.denominator, z.numerator, terms);
}

// 1/zeta_ij(1/x) expanded for small x; valuation is #(i -> j).
template <class S>
PowerSeries<S> inv_zeta_at_infinity(const Algebra<S>& A, int i, int j, int terms) {
  auto z = zeta(A, i, j);
  return ratio_series(upoly_reflect(z.denominator), upoly_reflect(z.numerator), terms);
}

// zeta_ji(1/y) / zeta_ij(y) for small y: the pairing of h_j^+(w) with
// h_i^-(z) at y = z/w. Valuation 0.
template <class S>
PowerSeries<S> cartan_ratio_series(const Algebra<S>& A, int j, int i, int terms) {
  auto zji = zeta(A, j, i), zij = zeta(A, i, j);
  UPoly<S> num = upoly_mul(upoly_reflect(zji.numerator), zij.denominator);
  UPoly<S> den = upoly_mul(upoly_reflect(zji.denominator), zij.numerator);
  return ratio_series(num, den, terms);
}

}  // namespace qshuf
