// Acceptance harness: one PASS/FAIL line per criterion. All comparisons are
// exact; the tolerance column says so explicitly.

#include "qshuf/qshuf.hpp"

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <thread>

using namespace qshuf;
using Q = mpq_class;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

const std::vector<uint64_t> kSeeds{7, 8, 9};

int jobs() { return int(std::max(1u, std::thread::hardware_concurrency())); }

GeneratorWord random_word(std::mt19937_64& rng, Side s, int len, int V, int dmax) {
  GeneratorWord w{s, {}};
  for (int a = 0; a < len; ++a) w.letters.push_back({int(rng() % V), int(rng() % (2 * dmax + 1)) - dmax});
  return w;
}

void match(std::mt19937_64& rng, GeneratorWord& u, const GeneratorWord& w) {
  std::vector<int> verts;
  for (auto& l : w.letters) verts.push_back(l.vertex);
  std::shuffle(verts.begin(), verts.end(), rng);
  for (size_t a = 0; a < verts.size(); ++a) u.letters[a].vertex = verts[a];
  u.letters[0].d -= int(u.degree() + w.degree());
}

Verdict conjecture() {
  struct Case {
    std::string name;
    Quiver Q;
    DimVector nmax;
  };
  std::vector<Case> cases{{"1 loop", Quiver::loops(1), {5}},      {"2 loops", Quiver::loops(2), {5}},
                          {"3 loops", Quiver::loops(3), {5}},     {"1 edge", Quiver::multi_edge(1), {3, 3}},
                          {"2 edges", Quiver::multi_edge(2), {3, 3}}, {"3 edges", Quiver::multi_edge(3), {3, 3}},
                          {"4 edges", Quiver::multi_edge(4), {3, 3}}};
  Verdict v{true, ""};
  for (auto& c : cases) {
    auto rep = check_conjecture(c.Q, c.nmax, kSeeds, jobs());
    std::string capped;
    for (auto& r : rep.rows)
      if (r.capped) capped += " n=" + dim_str(r.n);
    // only the three-loop n=5 row may be capped
    bool cap_ok = rep.capped == 0 || (c.name == "3 loops" && rep.capped == 1 && rep.rows.back().capped);
    bool ok = rep.all_equal && rep.seeds_agree && cap_ok;
    v.pass = v.pass && ok;
    v.detail += "; " + c.name + (ok ? " ok" : " FAIL") + (capped.empty() ? "" : " (capped:" + capped + ")");
  }
  v.detail = v.detail.substr(2);
  return v;
}

Verdict jordan_table() {
  auto G = graded_character(Quiver::jordan(), {Q(0)}, {5}, kSeeds, jobs());
  auto K = kac_hua_box(Quiver::jordan(), {5});
  TruncSeries A1({5});
  for (size_t i = 1; i < A1.size(); ++i) A1.coef(i) = K[i].eval(1);
  auto E = plethystic_exp(A1);
  std::vector<long> frozen{1, 2, 3, 5, 7};
  Verdict v{true, "dims"};
  for (int n = 1; n <= 5; ++n) {
    long d = G.records[n].dim;
    v.detail += " " + std::to_string(d);
    v.pass = v.pass && d == frozen[n - 1] && E[{n}] == d && G.records[n].agree;
  }
  return v;
}

Verdict kac_equivalence() {
  std::vector<std::pair<std::string, Quiver>> quivers{
      {"1 loop", Quiver::loops(1)},       {"2 loops", Quiver::loops(2)},      {"3 loops", Quiver::loops(3)},
      {"1 edge", Quiver::multi_edge(1)},  {"2 edges", Quiver::multi_edge(2)}, {"3 edges", Quiver::multi_edge(3)},
      {"4 edges", Quiver::multi_edge(4)}, {"loop+edge", Quiver(2, {{0, 0}, {0, 1}})}};
  Verdict v{true, ""};
  long compared = 0;
  for (auto& [name, Qv] : quivers) {
    DimVector corner(Qv.vertex_count(), 3);
    for (auto& n : box(corner)) {
      if (total(n) == 0 || total(n) > 3) continue;
      auto K = kac_hua(Qv, n);
      for (int q : {2, 3}) {
        ++compared;
        if (kac_bruteforce_count(Qv, n, q, jobs()) != K.eval(q)) {
          v.pass = false;
          v.detail += " mismatch " + name + " n=" + dim_str(n) + " q=" + std::to_string(q);
        }
      }
    }
  }
  v.detail = std::to_string(compared) + " counts compared" + v.detail;
  return v;
}

Verdict generator_pairing() {
  long checked = 0, bad = 0;
  for (Quiver Qv : {Quiver::jordan(), Quiver(2, {{0, 1}})}) {
    Algebra<Q> A(Qv, specialized_params(Qv, 7));
    Hopf<Q> H(A);
    int V = Qv.vertex_count();
    for (int i = 0; i < V; ++i)
      for (int j = 0; j < V; ++j)
        for (int d = -3; d <= 3; ++d)
          for (int k = -3; k <= 3; ++k) {
            Q expect = (i == j && d + k == 0) ? gamma_const(A, i) : Q(0);
            ++checked;
            if (H.pairing_word(generator<Q>(V, i, d), GeneratorWord{Side::Minus, {{j, k}}}) != expect) ++bad;
          }
  }
  // the same identity with formal parameters
  Algebra<RatFunc> X(Quiver::jordan(), exact_params());
  Hopf<RatFunc> HX(X);
  for (int d = -3; d <= 3; ++d) {
    ++checked;
    if (HX.pairing_word(generator<RatFunc>(1, 0, d), GeneratorWord{Side::Minus, {{0, -d}}}) != gamma_const(X, 0)) ++bad;
  }
  return {bad == 0, std::to_string(checked - bad) + "/" + std::to_string(checked) + " pairings"};
}

Verdict wheel_closure() {
  std::vector<Quiver> quivers{Quiver::jordan(), Quiver::loops(2), Quiver(2, {{0, 1}}), Quiver::multi_edge(2),
                              Quiver(2, {{0, 0}, {0, 1}})};
  std::mt19937_64 rng(101);
  int ok = 0, total_words = 100;
  for (int t = 0; t < total_words; ++t) {
    const Quiver& Qv = quivers[t % quivers.size()];
    Algebra<Q> A(Qv, specialized_params(Qv, 7));
    Hopf<Q> H(A);
    auto w = random_word(rng, Side::Plus, 1 + int(rng() % 4), Qv.vertex_count(), 3);
    ok += wheel_check(A, H.expand(w)).ok;
  }
  return {ok == total_words, std::to_string(ok) + "/" + std::to_string(total_words) + " expansions"};
}

Verdict bialgebra() {
  std::vector<Quiver> quivers{Quiver::jordan(), Quiver(2, {{0, 1}}), Quiver::loops(2),
                              Quiver(2, {{0, 0}, {0, 1}, {1, 0}})};
  std::mt19937_64 rng(29);
  int plus_ok = 0, minus_ok = 0, nonzero = 0;
  const int per_side = 30;
  for (int t = 0; t < per_side; ++t) {
    const Quiver& Qv = quivers[t % quivers.size()];
    int V = Qv.vertex_count();
    Algebra<Q> A(Qv, specialized_params(Qv, 11));
    Hopf<Q> H(A);
    int l1 = 1 + int(rng() % 2), l2 = 1 + int(rng() % 2);
    auto w1 = random_word(rng, Side::Minus, l1, V, 2), w2 = random_word(rng, Side::Minus, l2, V, 2);
    auto u = random_word(rng, Side::Plus, l1 + l2, V, 2);
    match(rng, u, concat(w1, w2));
    auto F = H.expand(u);
    Q lhs = H.pairing_word(F, concat(w1, w2));
    plus_ok += lhs == H.pairing_tensor(H.coproduct_component(F, w1.shape(V), -w2.degree()), w1, w2);
    nonzero += lhs != 0;
    auto u1 = random_word(rng, Side::Plus, l1, V, 2), u2 = random_word(rng, Side::Plus, l2, V, 2);
    auto w = random_word(rng, Side::Minus, l1 + l2, V, 2);
    match(rng, w, concat(u1, u2));
    auto G = H.expand(w);
    Q lhs2 = H.pairing_word(concat(u1, u2), G);
    minus_ok += lhs2 == H.pairing_tensor(u1, u2, H.coproduct_component(G, u2.shape(V), -u1.degree()));
    nonzero += lhs2 != 0;
  }
  return {plus_ok == per_side && minus_ok == per_side,
          "plus " + std::to_string(plus_ok) + "/30, minus " + std::to_string(minus_ok) + "/30, nonzero " +
              std::to_string(nonzero) + "/60"};
}

Verdict pbw_roundtrip() {
  Quiver J = Quiver::jordan();
  Algebra<Q> A(J, specialized_params(J, 7));
  Hopf<Q> H(A);
  SlopeFactorization<Q> PF(H, {Q(0)}, {Q(1)});
  int ok = 0, tried = 0;
  std::function<void(GeneratorWord&, int)> gen = [&](GeneratorWord& w, int left) {
    if (!w.letters.empty() && std::abs(w.degree()) <= 3) {
      auto F = H.expand(w);
      if (!F.is_zero()) {
        ++tried;
        auto D = PF.decompose(F);
        bool good = PF.remultiply(D, F.shape()) == F;
        for (auto& t : D.terms)
          for (size_t a = 1; a < t.factors.size(); ++a) good = good && t.factors[a - 1].r < t.factors[a].r;
        ok += good;
      }
    }
    if (!left) return;
    for (int d = -3; d <= 3; ++d) {
      w.letters.push_back({0, d});
      gen(w, left - 1);
      w.letters.pop_back();
    }
  };
  GeneratorWord w{Side::Plus, {}};
  gen(w, 3);
  return {ok == tried, std::to_string(ok) + "/" + std::to_string(tried) + " words with letters in [-3,3]"};
}

Verdict orthogonality() {
  Quiver J = Quiver::jordan();
  Algebra<Q> A(J, specialized_params(J, 7));
  Hopf<Q> H(A);
  auto trials = slope_orthogonality_trials(H, {Q(0)}, {Q(1)}, 20, 7, 3, 2);
  int ok = 0, same = 0;
  for (auto& t : trials) ok += t.ok, same += t.same_assignment;
  return {ok == 20 && trials.size() == 20,
          std::to_string(ok) + "/20 products, " + std::to_string(same) + " on matching assignments"};
}

Verdict rprime() {
  Quiver J = Quiver::jordan();
  Algebra<Q> A(J, specialized_params(J, 7));
  Hopf<Q> H(A);
  auto R = rprime_window_check(H, {Q(0)}, {Q(1)}, 2, 3);
  bool ok = R.passed() && R.shape_one_failures == 0 && R.shape_one_checked == 7;
  return {ok, "products " + std::to_string(R.products) + ", discarded " + std::to_string(R.discarded) +
                  ", contraction " + std::to_string(R.exact_reproductions) + "/" + std::to_string(R.test_words) +
                  ", shape-1 " + std::to_string(R.shape_one_checked - R.shape_one_failures) + "/" +
                  std::to_string(R.shape_one_checked)};
}

std::pair<int, std::string> capture(const std::string& cmd) {
  std::string out;
  FILE* p = popen((cmd + " 2>/dev/null").c_str(), "r");
  if (!p) return {-1, ""};
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
  int st = pclose(p);
  return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

Verdict determinism() {
  const char* bin = std::getenv("QSHUF_BIN");
  const char* data = std::getenv("QSHUF_DATA");
  if (!bin || !data) return {false, "QSHUF_BIN and QSHUF_DATA must point at the CLI and examples/quivers"};
  std::string d = data;
  std::vector<std::string> runs{
      "check-conjecture --quiver " + d + "/jordan.json --upto 5 --seed 7 --trials 3",
      "check-conjecture --quiver " + d + "/kronecker2.json --upto 3,3 --seed 7 --trials 3",
      "dims --quiver " + d + "/loops2.json --upto 4",
      "kac --quiver " + d + "/kronecker3.json --dim 2,1 --fields 2,3",
      "pbw --quiver " + d + "/jordan.json --word 0:2,0:0,0:1",
      "rmatrix-check --quiver " + d + "/jordan.json --hbound 2 --window 3",
  };
  int same = 0;
  std::string bad;
  for (auto& r : runs) {
    auto a = capture(std::string(bin) + " " + r + " --jobs 1");
    auto b = capture(std::string(bin) + " " + r + " --jobs 4");
    bool ok = a.first == 0 && a == b && !a.second.empty();
    same += ok;
    if (!ok) bad += " [" + r + "]";
  }
  return {same == int(runs.size()), std::to_string(same) + "/" + std::to_string(runs.size()) +
                                        " reports byte-identical for --jobs 1 vs 4" + bad};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    const char* tolerance;
    std::function<Verdict()> run;
  };
  std::vector<Criterion> all{
      {1, "conjecture reproduction", "exact, 3 seeds agreeing", conjecture},
      {2, "Jordan dimension table", "exact", jordan_table},
      {3, "Kac oracle equivalence", "exact", kac_equivalence},
      {4, "generator pairing", "exact", generator_pairing},
      {5, "wheel closure", "exact", wheel_closure},
      {6, "bialgebra pairing identity", "exact", bialgebra},
      {7, "PBW round-trip", "exact", pbw_roundtrip},
      {8, "slope-pairing orthogonality", "exact", orthogonality},
      {9, "R' factorization window", "exact", rprime},
      {10, "determinism across --jobs", "byte-identical", determinism},
  };
  int failed = 0;
  for (auto& c : all) {
    auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v = {false, std::string("error: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    failed += !v.pass;
    std::printf("%s criterion %d (%s) [tolerance: %s] %s (%.1f s)\n", v.pass ? "PASS" : "FAIL", c.id, c.name,
                c.tolerance, v.detail.c_str(), secs);
    std::fflush(stdout);
  }
  return failed ? 1 : 0;
}
