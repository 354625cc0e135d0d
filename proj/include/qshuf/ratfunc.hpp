#pragma once
// Exact rational functions in the formal parameters q, t_0, ..., t_{E-1}.
// Symbol 0 is q, symbol 1+e is t_e. Numerator and denominator are Laurent
// polynomials with rational coefficients; the denominator is kept monic with
// no monomial content.

#include "qshuf/scalar.hpp"

#include <map>
#include <optional>
#include <sstream>
#include <vector>

namespace qshuf {

class MPoly {
 public:
  using Mono = std::vector<int>;
  // Lex order on exponent vectors padded with zeros; compatible with
  // multiplication even for negative exponents.
  struct MonoLess {
    bool operator()(const Mono& a, const Mono& b) const {
      size_t n = std::max(a.size(), b.size());
      for (size_t i = 0; i < n; ++i) {
        int x = i < a.size() ? a[i] : 0, y = i < b.size() ? b[i] : 0;
        if (x != y) return x < y;
      }
      return false;
    }
  };
  using Terms = std::map<Mono, mpq_class, MonoLess>;

  MPoly() = default;
  static MPoly constant(const mpq_class& c) {
    MPoly p;
    if (sgn(c) != 0) p.t_[Mono{}] = c;
    return p;
  }
  static MPoly monomial(const mpq_class& c, Mono m) {
    trim(m);
    MPoly p;
    if (sgn(c) != 0) p.t_[std::move(m)] = c;
    return p;
  }

  const Terms& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  bool is_monomial() const { return t_.size() == 1; }

  void add_term(Mono m, const mpq_class& c) {
    trim(m);
    auto [it, fresh] = t_.try_emplace(std::move(m), c);
    if (!fresh) {
      it->second += c;
      if (sgn(it->second) == 0) t_.erase(it);
    } else if (sgn(c) == 0) {
      t_.erase(it);
    }
  }

  friend MPoly operator+(const MPoly& a, const MPoly& b) {
    MPoly r = a;
    for (auto& [m, c] : b.t_) r.add_term(m, c);
    return r;
  }
  friend MPoly operator-(const MPoly& a, const MPoly& b) {
    MPoly r = a;
    for (auto& [m, c] : b.t_) r.add_term(m, -c);
    return r;
  }
  MPoly operator-() const {
    MPoly r;
    for (auto& [m, c] : t_) r.t_[m] = -c;
    return r;
  }
  friend MPoly operator*(const MPoly& a, const MPoly& b) {
    MPoly r;
    for (auto& [ma, ca] : a.t_)
      for (auto& [mb, cb] : b.t_) r.add_term(add_mono(ma, mb), ca * cb);
    return r;
  }
  friend bool operator==(const MPoly& a, const MPoly& b) { return a.t_ == b.t_; }

  MPoly scaled(const mpq_class& c, const Mono& m) const {
    MPoly r;
    if (sgn(c) == 0) return r;
    for (auto& [mm, cc] : t_) r.t_[add_mono(mm, m)] = cc * c;
    return r;
  }

  // Exact quotient a / b, or nullopt when b does not divide a.
  // Exact quotient a / b, or nullopt. Per-variable degree ranges add under
  // multiplication, which bounds the quotient's exponents and ends the loop.
  static std::optional<MPoly> divide(const MPoly& a, const MPoly& b) {
    if (b.is_zero()) throw qshuf_error("polynomial division by zero");
    if (a.is_zero()) return MPoly();
    Mono alo, ahi, blo, bhi;
    a.degree_ranges(alo, ahi);
    b.degree_ranges(blo, bhi);
    size_t n = std::max(alo.size(), blo.size());
    alo.resize(n, 0), ahi.resize(n, 0), blo.resize(n, 0), bhi.resize(n, 0);
    const auto& lb = *b.t_.rbegin();
    MPoly r = a, q;
    while (!r.is_zero()) {
      const auto& lr = *r.t_.rbegin();
      Mono qm = sub_mono(lr.first, lb.first);
      for (size_t i = 0; i < n; ++i) {
        int e = i < qm.size() ? qm[i] : 0;
        if (e < alo[i] - blo[i] || e > ahi[i] - bhi[i]) return std::nullopt;
      }
      if (qm.size() > n) return std::nullopt;
      mpq_class qc = lr.second / lb.second;
      q.add_term(qm, qc);
      r = r - b.scaled(qc, qm);
    }
    return q;
  }

  void degree_ranges(Mono& lo, Mono& hi) const {
    lo.clear(), hi.clear();
    bool first = true;
    for (auto& [m, c] : t_) {
      size_t n = std::max(lo.size(), m.size());
      lo.resize(n, 0), hi.resize(n, 0);
      for (size_t i = 0; i < n; ++i) {
        int e = i < m.size() ? m[i] : 0;
        lo[i] = first ? e : std::min(lo[i], e);
        hi[i] = first ? e : std::max(hi[i], e);
      }
      first = false;
    }
  }

  mpq_class eval(const std::vector<mpq_class>& pt) const {
    mpq_class s = 0;
    for (auto& [m, c] : t_) {
      mpq_class v = c;
      for (size_t i = 0; i < m.size(); ++i)
        if (m[i]) v *= scalar_pow(pt.at(i), m[i]);
      s += v;
    }
    return s;
  }
  template <class S>
  S eval_in(const std::vector<S>& pt) const {
    using T = field_traits<S>;
    S s = T::zero();
    for (auto& [m, c] : t_) {
      S v = T::from_rational(c);
      for (size_t i = 0; i < m.size(); ++i)
        if (m[i]) v = v * scalar_pow(pt.at(i), m[i]);
      s = s + v;
    }
    return s;
  }

  // Componentwise minimum exponent over all terms.
  Mono min_mono() const {
    Mono r;
    bool first = true;
    for (auto& [m, c] : t_) {
      if (first) { r = m; first = false; continue; }
      if (m.size() > r.size()) r.resize(m.size(), 0);
      for (size_t i = 0; i < r.size(); ++i) r[i] = std::min(r[i], i < m.size() ? m[i] : 0);
    }
    trim(r);
    return r;
  }

  std::string str(const std::vector<std::string>& names) const {
    if (t_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = t_.rbegin(); it != t_.rend(); ++it) {
      const mpq_class& c = it->second;
      bool unit = it->first.empty();
      mpq_class a = abs(c);
      if (!first) os << (sgn(c) < 0 ? " - " : " + ");
      else if (sgn(c) < 0) os << "-";
      first = false;
      bool show_c = unit || a != 1;
      if (show_c) os << a.get_str();
      bool star = show_c;
      for (size_t i = 0; i < it->first.size(); ++i) {
        int e = it->first[i];
        if (!e) continue;
        if (star) os << "*";
        os << names.at(i);
        if (e != 1) os << "^" << e;
        star = true;
      }
    }
    return os.str();
  }

  static Mono add_mono(const Mono& a, const Mono& b) {
    Mono r(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    trim(r);
    return r;
  }
  static Mono sub_mono(const Mono& a, const Mono& b) {
    Mono r(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    trim(r);
    return r;
  }
  static void trim(Mono& m) {
    while (!m.empty() && m.back() == 0) m.pop_back();
  }

 private:
  Terms t_;
};

class RatFunc {
 public:
  RatFunc() : num_(), den_(MPoly::constant(1)) {}
  RatFunc(long v) : num_(MPoly::constant(v)), den_(MPoly::constant(1)) {}
  explicit RatFunc(const mpq_class& v) : num_(MPoly::constant(v)), den_(MPoly::constant(1)) {}
  RatFunc(MPoly n, MPoly d) : num_(std::move(n)), den_(std::move(d)) { normalize(); }

  static RatFunc symbol(int idx) {
    MPoly::Mono m(idx + 1, 0);
    m[idx] = 1;
    return RatFunc(MPoly::monomial(1, m), MPoly::constant(1));
  }

  const MPoly& num() const { return num_; }
  const MPoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }

  friend RatFunc operator+(const RatFunc& a, const RatFunc& b) { return combine(a, b, false); }
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b) { return combine(a, b, true); }
  RatFunc operator-() const {
    RatFunc r = *this;
    r.num_ = -r.num_;
    return r;
  }
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
    if (a.is_zero() || b.is_zero()) return RatFunc();
    return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b) {
    if (b.is_zero()) throw qshuf_error("division by zero rational function");
    return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
  }
  RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
  RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
  RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
  RatFunc& operator/=(const RatFunc& o) { return *this = *this / o; }
  friend bool operator==(const RatFunc& a, const RatFunc& b) {
    if (a.den_ == b.den_) return a.num_ == b.num_;
    return a.num_ * b.den_ == b.num_ * a.den_;
  }
  friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }

  mpq_class eval(const std::vector<mpq_class>& pt) const {
    mpq_class d = den_.eval(pt);
    if (sgn(d) == 0) throw qshuf_error("rational function pole at evaluation point");
    return num_.eval(pt) / d;
  }
  template <class S>
  S eval_in(const std::vector<S>& pt) const {
    return num_.eval_in(pt) * field_traits<S>::inv(den_.eval_in(pt));
  }

  std::string str(const std::vector<std::string>& names) const {
    std::string n = num_.str(names);
    if (den_ == MPoly::constant(1)) return n;
    return "(" + n + ")/(" + den_.str(names) + ")";
  }

 private:
  static RatFunc combine(const RatFunc& a, const RatFunc& b, bool minus) {
    auto sgnd = [&](const MPoly& p) { return minus ? -p : p; };
    if (a.den_ == b.den_) return RatFunc(a.num_ + sgnd(b.num_), a.den_);
    if (auto k = MPoly::divide(a.den_, b.den_)) return RatFunc(a.num_ + sgnd(b.num_ * *k), a.den_);
    if (auto k = MPoly::divide(b.den_, a.den_)) return RatFunc(a.num_ * *k + sgnd(b.num_), b.den_);
    return RatFunc(a.num_ * b.den_ + sgnd(b.num_ * a.den_), a.den_ * b.den_);
  }

  void normalize() {
    if (den_.is_zero()) throw qshuf_error("zero denominator");
    if (num_.is_zero()) {
      den_ = MPoly::constant(1);
      return;
    }
    // strip monomial content of the denominator into the numerator
    MPoly::Mono mm = den_.min_mono();
    for (auto& v : mm) v = -v;
    if (!mm.empty()) {
      den_ = den_.scaled(1, mm);
      num_ = num_.scaled(1, mm);
    }
    if (den_.is_monomial()) {
      const auto& [m, c] = *den_.terms().begin();
      MPoly::Mono inv = m;
      for (auto& v : inv) v = -v;
      num_ = num_.scaled(mpq_class(1) / c, inv);
      den_ = MPoly::constant(1);
      return;
    }
    if (auto q = MPoly::divide(num_, den_)) {
      num_ = *q;
      den_ = MPoly::constant(1);
      return;
    }
    mpq_class lc = den_.terms().rbegin()->second;
    if (lc != 1) {
      mpq_class s = mpq_class(1) / lc;
      den_ = den_.scaled(s, {});
      num_ = num_.scaled(s, {});
    }
  }

  MPoly num_, den_;
};

template <>
struct field_traits<RatFunc> {
  static RatFunc zero() { return RatFunc(); }
  static RatFunc one() { return RatFunc(1); }
  static RatFunc from_int(long v) { return RatFunc(v); }
  static RatFunc from_rational(const mpq_class& v) { return RatFunc(v); }
  static bool is_zero(const RatFunc& v) { return v.is_zero(); }
  static RatFunc inv(const RatFunc& v) { return RatFunc(1) / v; }
  static std::string str(const RatFunc& v) { return v.str(default_names()); }
  static std::vector<std::string>& default_names() {
    static thread_local std::vector<std::string> names = make_names(64);
    return names;
  }
  static std::vector<std::string> make_names(int edges) {
    std::vector<std::string> n{"q"};
    for (int e = 0; e < edges; ++e) n.push_back("t" + std::to_string(e));
    return n;
  }
};

}  // namespace qshuf
