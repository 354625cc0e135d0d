#pragma once
// Kostka numbers and the monomial expansion of Schur polynomials in a fixed
// number of variables. Used to divide alternants by the Vandermonde.

#include "qshuf/scalar.hpp"

#include <map>
#include <vector>

namespace qshuf {

using Partition = std::vector<int>;  // weakly decreasing, fixed length

namespace detail {

inline long checked_add(long a, long b) {
  long r;
  if (__builtin_add_overflow(a, b, &r)) throw qshuf_error("Kostka number overflow");
  return r;
}

class KostkaTable {
 public:
  // number of semistandard tableaux of shape lambda and content mu[0..len)
  long kostka(const Partition& lambda, const std::vector<int>& mu, size_t len) {
    int used = 0;
    for (int v : lambda)
      if (v > 0) ++used;
    if (size_t(used) > len) return 0;
    if (len == 0) return used == 0 ? 1 : 0;
    long size = 0, weight = 0;
    for (int v : lambda) size += v;
    for (size_t i = 0; i < len; ++i) weight += mu[i];
    if (size != weight) return 0;
    Key key{lambda, std::vector<int>(mu.begin(), mu.begin() + len)};
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    // remove the horizontal strip filled with the largest letter
    long total = 0;
    Partition nu(lambda.size());
    int strip = mu[len - 1];
    std::vector<int> cap(lambda.size());
    for (size_t r = 0; r < lambda.size(); ++r)
      cap[r] = lambda[r] - (r + 1 < lambda.size() ? lambda[r + 1] : 0);
    auto rec = [&](auto&& self, size_t r, int left) -> void {
      if (r == lambda.size()) {
        if (left == 0) total = checked_add(total, kostka(nu, mu, len - 1));
        return;
      }
      int hi = std::min(cap[r], left);
      for (int take = 0; take <= hi; ++take) {
        nu[r] = lambda[r] - take;
        self(self, r + 1, left - take);
      }
    };
    rec(rec, 0, strip);
    memo_.emplace(std::move(key), total);
    return total;
  }

 private:
  using Key = std::pair<Partition, std::vector<int>>;
  std::map<Key, long> memo_;
};

}  // namespace detail

// s_nu in nu.size() variables as a list of (mu, K_{nu,mu}) over partitions mu
// dominated by nu. Entries of nu may be negative (Laurent shift).
class SchurExpander {
 public:
  const std::vector<std::pair<Partition, long>>& expand(const Partition& nu) {
    if (auto it = cache_.find(nu); it != cache_.end()) return it->second;
    size_t N = nu.size();
    int shift = N ? -nu.back() : 0;
    Partition lam(nu);
    for (auto& v : lam) v += shift;
    int size = 0;
    for (int v : lam) size += v;
    std::vector<std::pair<Partition, long>> out;
    Partition mu(N, 0);
    // enumerate partitions mu of `size` with N parts, dominated by lam
    auto rec = [&](auto&& self, size_t r, int left, int maxpart, int lam_prefix, int mu_prefix) -> void {
      if (r == N) {
        if (left == 0) {
          long k = table_.kostka(lam, mu, N);
          if (k) {
            Partition m(mu);
            for (auto& v : m) v -= shift;
            out.emplace_back(std::move(m), k);
          }
        }
        return;
      }
      int rows_left = int(N - r);
      for (int v = std::min(maxpart, left); v >= 0; --v) {
        if (long(v) * rows_left < left) break;
        if (mu_prefix + v > lam_prefix + lam[r]) continue;
        mu[r] = v;
        self(self, r + 1, left - v, v, lam_prefix + lam[r], mu_prefix + v);
      }
    };
    rec(rec, 0, size, size, 0, 0);
    return cache_.emplace(nu, std::move(out)).first->second;
  }

 private:
  detail::KostkaTable table_;
  std::map<Partition, std::vector<std::pair<Partition, long>>> cache_;
};

}  // namespace qshuf
