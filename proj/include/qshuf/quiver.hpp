#pragma once
#include "qshuf/scalar.hpp"

#include <numeric>
#include <string>
#include <vector>

namespace qshuf {

using DimVector = std::vector<int>;

struct Edge {
  int source = 0;
  int target = 0;
  int id = 0;
};

class Quiver {
 public:
  Quiver() = default;
  Quiver(int vertices, const std::vector<std::pair<int, int>>& arrows) : n_(vertices) {
    if (vertices <= 0) throw qshuf_error("quiver needs at least one vertex");
    for (size_t e = 0; e < arrows.size(); ++e) {
      auto [s, t] = arrows[e];
      if (s < 0 || t < 0 || s >= vertices || t >= vertices)
        throw qshuf_error("edge " + std::to_string(e) + " has a vertex index out of range");
      edges_.push_back({s, t, int(e)});
    }
    arrows_.assign(size_t(n_) * n_, 0);
    for (auto& e : edges_) ++arrows_[size_t(e.source) * n_ + e.target];
  }

  static Quiver jordan() { return Quiver(1, {{0, 0}}); }
  static Quiver loops(int g) { return Quiver(1, std::vector<std::pair<int, int>>(g, {0, 0})); }
  static Quiver multi_edge(int d) { return Quiver(2, std::vector<std::pair<int, int>>(d, {0, 1})); }

  int vertex_count() const { return n_; }
  int edge_count() const { return int(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }
  // number of arrows i -> j
  int arrows(int i, int j) const { return arrows_[size_t(i) * n_ + j]; }
  int loops_at(int i) const { return arrows(i, i); }

  friend bool operator==(const Quiver& a, const Quiver& b) {
    if (a.n_ != b.n_ || a.edges_.size() != b.edges_.size()) return false;
    for (size_t e = 0; e < a.edges_.size(); ++e)
      if (a.edges_[e].source != b.edges_[e].source || a.edges_[e].target != b.edges_[e].target) return false;
    return true;
  }

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<int> arrows_;
};

inline int total(const DimVector& n) { return std::accumulate(n.begin(), n.end(), 0); }

inline DimVector unit_vector(int vertices, int i) {
  DimVector v(vertices, 0);
  v.at(i) = 1;
  return v;
}

inline bool leq(const DimVector& a, const DimVector& b) {
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

inline DimVector operator+(const DimVector& a, const DimVector& b) {
  DimVector r(a);
  for (size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}
inline DimVector operator-(const DimVector& a, const DimVector& b) {
  DimVector r(a);
  for (size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
  return r;
}

inline long dot(const DimVector& k, const DimVector& l) {
  long s = 0;
  for (size_t i = 0; i < k.size(); ++i) s += long(k[i]) * l[i];
  return s;
}

inline mpq_class dot(const std::vector<mpq_class>& m, const DimVector& k) {
  mpq_class s = 0;
  for (size_t i = 0; i < k.size(); ++i) s += m[i] * k[i];
  return s;
}

// sum over i,j of k_i l_j (arrows i -> j)
inline long edge_form(const Quiver& Q, const DimVector& k, const DimVector& l) {
  long s = 0;
  for (auto& e : Q.edges()) s += long(k[e.source]) * l[e.target];
  return s;
}

// All 0 <= k <= n in lexicographic order.
inline std::vector<DimVector> box(const DimVector& n) {
  std::vector<DimVector> out;
  DimVector k(n.size(), 0);
  while (true) {
    out.push_back(k);
    size_t i = k.size();
    while (i > 0) {
      --i;
      if (k[i] < n[i]) {
        ++k[i];
        for (size_t j = i + 1; j < k.size(); ++j) k[j] = 0;
        goto next;
      }
    }
    return out;
  next:;
  }
}

inline std::string dim_str(const DimVector& n) {
  std::string s;
  for (size_t i = 0; i < n.size(); ++i) s += (i ? "," : "") + std::to_string(n[i]);
  return s;
}

}  // namespace qshuf
