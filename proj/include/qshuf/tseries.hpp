#pragma once
// Truncated multivariate power series with integer coefficients, indexed by
// 0 <= n <= n_max.

#include "qshuf/quiver.hpp"

namespace qshuf {

class TruncSeries {
 public:
  TruncSeries() = default;
  explicit TruncSeries(DimVector nmax) : nmax_(std::move(nmax)) {
    size_t sz = 1;
    for (int v : nmax_) sz *= size_t(v + 1);
    c_.assign(sz, 0);
  }

  const DimVector& box_max() const { return nmax_; }
  size_t size() const { return c_.size(); }

  bool contains(const DimVector& n) const {
    if (n.size() != nmax_.size()) return false;
    for (size_t i = 0; i < n.size(); ++i)
      if (n[i] < 0 || n[i] > nmax_[i]) return false;
    return true;
  }
  size_t index(const DimVector& n) const {
    size_t idx = 0;
    for (size_t i = 0; i < n.size(); ++i) idx = idx * size_t(nmax_[i] + 1) + size_t(n[i]);
    return idx;
  }
  DimVector at_index(size_t idx) const {
    DimVector n(nmax_.size());
    for (size_t i = nmax_.size(); i-- > 0;) {
      n[i] = int(idx % size_t(nmax_[i] + 1));
      idx /= size_t(nmax_[i] + 1);
    }
    return n;
  }

  const mpz_class& operator[](const DimVector& n) const { return c_.at(index(n)); }
  mpz_class& operator[](const DimVector& n) { return c_.at(index(n)); }
  const mpz_class& coef(size_t idx) const { return c_[idx]; }
  mpz_class& coef(size_t idx) { return c_[idx]; }

  friend TruncSeries operator*(const TruncSeries& a, const TruncSeries& b) {
    if (a.nmax_ != b.nmax_) throw qshuf_error("series truncation boxes differ");
    TruncSeries r(a.nmax_);
    for (size_t i = 0; i < a.size(); ++i) {
      if (sgn(a.c_[i]) == 0) continue;
      DimVector ni = a.at_index(i);
      for (size_t j = 0; j < b.size(); ++j) {
        if (sgn(b.c_[j]) == 0) continue;
        DimVector s = ni + b.at_index(j);
        if (r.contains(s)) r[s] += a.c_[i] * b.c_[j];
      }
    }
    return r;
  }
  friend bool operator==(const TruncSeries& a, const TruncSeries& b) {
    return a.nmax_ == b.nmax_ && a.c_ == b.c_;
  }

 private:
  DimVector nmax_;
  std::vector<mpz_class> c_;
};

}  // namespace qshuf
