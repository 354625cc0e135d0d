#pragma once
// Coefficient fields. Every algorithm is templated on a scalar type S with a
// matching field_traits<S> specialization.

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace qshuf {

struct qshuf_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

template <class S>
struct field_traits;

template <>
struct field_traits<mpq_class> {
  static mpq_class zero() { return mpq_class(0); }
  static mpq_class one() { return mpq_class(1); }
  static mpq_class from_int(long v) { return mpq_class(v); }
  static mpq_class from_rational(const mpq_class& v) { return v; }
  static bool is_zero(const mpq_class& v) { return sgn(v) == 0; }
  static mpq_class inv(const mpq_class& v) {
    if (sgn(v) == 0) throw qshuf_error("division by zero scalar");
    return mpq_class(1) / v;
  }
  static std::string str(const mpq_class& v) { return v.get_str(); }
};

// Prime field modulo the Mersenne prime 2^K - 1 (K = 31 or 61). Used for
// large rank computations only.
template <int K>
class Mersenne {
 public:
  static constexpr uint64_t P = (uint64_t(1) << K) - 1;

  Mersenne() = default;
  explicit Mersenne(uint64_t raw) : v_(raw % P) {}
  static Mersenne from_signed(long x) {
    long r = x % long(P);
    if (r < 0) r += long(P);
    Mersenne z;
    z.v_ = uint64_t(r);
    return z;
  }
  static Mersenne from_mpz(const mpz_class& x) {
    mpz_class p(std::to_string(P));
    mpz_class r = x % p;
    if (r < 0) r += p;
    Mersenne z;
    z.v_ = r.get_ui();
    return z;
  }

  uint64_t value() const { return v_; }

  static uint64_t fold(unsigned __int128 x) {
    uint64_t s = uint64_t(x & P) + uint64_t(x >> K);
    s = (s & P) + (s >> K);
    return s >= P ? s - P : s;
  }
  static uint64_t mulmod(uint64_t a, uint64_t b) { return fold((unsigned __int128)a * b); }
  static uint64_t addmod(uint64_t a, uint64_t b) {
    uint64_t s = a + b;
    return s >= P ? s - P : s;
  }

  friend Mersenne operator+(Mersenne a, Mersenne b) { Mersenne r; r.v_ = addmod(a.v_, b.v_); return r; }
  friend Mersenne operator-(Mersenne a, Mersenne b) { Mersenne r; r.v_ = addmod(a.v_, P - b.v_); return r; }
  friend Mersenne operator*(Mersenne a, Mersenne b) { Mersenne r; r.v_ = mulmod(a.v_, b.v_); return r; }
  Mersenne operator-() const { Mersenne r; r.v_ = v_ == 0 ? 0 : P - v_; return r; }
  Mersenne& operator+=(Mersenne o) { return *this = *this + o; }
  Mersenne& operator-=(Mersenne o) { return *this = *this - o; }
  Mersenne& operator*=(Mersenne o) { return *this = *this * o; }
  friend bool operator==(Mersenne a, Mersenne b) { return a.v_ == b.v_; }
  friend bool operator!=(Mersenne a, Mersenne b) { return a.v_ != b.v_; }

  Mersenne pow(uint64_t e) const {
    Mersenne b = *this, r(1);
    while (e) {
      if (e & 1) r *= b;
      b *= b;
      e >>= 1;
    }
    return r;
  }
  Mersenne inverse() const {
    if (v_ == 0) throw qshuf_error("division by zero modulo p");
    return pow(P - 2);
  }
  friend Mersenne operator/(Mersenne a, Mersenne b) { return a * b.inverse(); }
  Mersenne& operator/=(Mersenne o) { return *this = *this / o; }

 private:
  uint64_t v_ = 0;
};

using Zp = Mersenne<61>;
using Zp31 = Mersenne<31>;

template <int K>
struct field_traits<Mersenne<K>> {
  using F = Mersenne<K>;
  static F zero() { return F(0); }
  static F one() { return F(1); }
  static F from_int(long v) { return F::from_signed(v); }
  static F from_rational(const mpq_class& v) {
    F d = F::from_mpz(v.get_den());
    if (d.value() == 0) throw qshuf_error("denominator vanishes modulo p");
    return F::from_mpz(v.get_num()) / d;
  }
  static bool is_zero(const F& v) { return v.value() == 0; }
  static F inv(const F& v) { return v.inverse(); }
  static std::string str(const F& v) { return std::to_string(v.value()); }
};

template <class S>
S scalar_pow(const S& base, long e) {
  using T = field_traits<S>;
  S b = e < 0 ? T::inv(base) : base;
  unsigned long k = e < 0 ? (unsigned long)(-e) : (unsigned long)e;
  S r = T::one();
  while (k) {
    if (k & 1) r = r * b;
    b = b * b;
    k >>= 1;
  }
  return r;
}

// Parses "p/q" or "p" into an exact rational.
inline mpq_class parse_rational(const std::string& s) {
  mpq_class r;
  if (s.empty() || r.set_str(s, 10) != 0) throw qshuf_error("malformed rational '" + s + "'");
  if (r.get_den() == 0) throw qshuf_error("zero denominator in '" + s + "'");
  r.canonicalize();
  return r;
}

}  // namespace qshuf
