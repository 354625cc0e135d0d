// qshuf: command-line front end. Reports go to stdout (or --out) as JSON;
// timing and memory telemetry go to stderr so reports stay byte-identical.

#include "qshuf/qshuf.hpp"

#include <CLI11.hpp>

#include <sys/resource.h>

#include <chrono>
#include <fstream>
#include <iostream>

using namespace qshuf;

namespace {

struct RunConfig {
  std::string command;
  std::string quiver_path;
  std::string slope = "0";
  std::string theta = "1";
  std::string dim;
  std::string upto;
  std::string word;
  std::string fields;
  std::vector<std::string> inputs;
  uint64_t seed = 7;
  int trials = 3;
  int jobs = 1;
  bool exact = false;
  bool primitives = false;
  int window = 3;
  int hbound = 2;
  std::string out;
};

struct Outcome {
  json report;
  int code = 0;
};

std::vector<uint64_t> seed_list(const RunConfig& c) {
  if (c.trials < 1) throw qshuf_error("--trials must be at least 1");
  std::vector<uint64_t> s;
  for (int k = 0; k < c.trials; ++k) s.push_back(c.seed + uint64_t(k));
  return s;
}

json header(const RunConfig& c, const Quiver& Q) {
  return {{"command", c.command}, {"quiver", quiver_to_json(Q)}};
}

DimVector require_dim(const std::string& s, const char* flag, int vertices) {
  if (s.empty()) throw qshuf_error(std::string(flag) + " is required");
  DimVector n = parse_dim_list(s, flag);
  if (int(n.size()) == vertices) return n;
  if (n.size() == 1) return DimVector(vertices, n[0]);
  throw qshuf_error(std::string(flag) + ": expected " + std::to_string(vertices) + " entries");
}

Outcome cmd_dims(const RunConfig& c, const Quiver& Q) {
  int V = Q.vertex_count();
  SlopeVector m = resize_for(parse_rational_list(c.slope, "--slope"), V, "--slope");
  DimVector nmax = require_dim(c.upto, "--upto", V);
  Outcome o{header(c, Q)};
  o.report["slope"] = rational_vector_json(m);
  o.report["upto"] = nmax;
  json dims = json::object(), records = json::array();
  if (c.exact) {
    o.report["params"] = params_json(exact_params());
    Algebra<RatFunc> A(Q, exact_params());
    for (auto& n : box(nmax)) {
      auto B = slope_basis(A, m, n, Side::Plus);
      dims[dim_str(n)] = B.dim;
      records.push_back({{"n", n}, {"dim", B.dim}});
    }
  } else {
    auto seeds = seed_list(c);
    o.report["seeds"] = seeds;
    auto G = graded_character(Q, m, nmax, seeds, c.jobs);
    bool agree = true;
    long capped = 0;
    for (auto& r : G.records) {
      dims[dim_str(r.n)] = r.capped ? json(nullptr) : json(r.dim);
      records.push_back(dimension_record_json(r));
      agree = agree && r.agree;
      capped += r.capped;
    }
    o.report["seeds_agree"] = agree;
    o.report["capped"] = capped;
  }
  o.report["dims"] = dims;
  o.report["records"] = records;
  return o;
}

Outcome cmd_kac(const RunConfig& c, const Quiver& Q) {
  DimVector n = require_dim(c.dim, "--dim", Q.vertex_count());
  Outcome o{header(c, Q)};
  auto K = kac_hua(Q, n);
  o.report.update(kac_json(K));
  if (!c.fields.empty()) {
    json bf = json::array();
    bool all = true;
    for (int q : parse_dim_list(c.fields, "--fields")) {
      mpz_class b = kac_bruteforce_count(Q, n, q, c.jobs);
      mpz_class h = K.eval(q);
      bf.push_back({{"q", q}, {"bruteforce", b.get_str()}, {"hua", h.get_str()}, {"equal", b == h}});
      all = all && b == h;
    }
    o.report["bruteforce"] = bf;
    o.report["bruteforce_equal"] = all;
    if (!all) o.code = 2;
  }
  return o;
}

Outcome cmd_exp(const RunConfig& c, const Quiver& Q) {
  DimVector nmax = require_dim(c.upto, "--upto", Q.vertex_count());
  Outcome o{header(c, Q)};
  auto K = kac_hua_box(Q, nmax);
  TruncSeries A1(nmax);
  json at1 = json::object(), ex = json::object();
  for (size_t i = 1; i < A1.size(); ++i) A1.coef(i) = K[i].eval(1);
  auto E = plethystic_exp(A1);
  for (size_t i = 0; i < A1.size(); ++i) {
    std::string key = dim_str(A1.at_index(i));
    if (i) at1[key] = A1.coef(i).get_str();
    ex[key] = E.coef(i).get_str();
  }
  o.report["upto"] = nmax;
  o.report["kac_at_1"] = at1;
  o.report["exp"] = ex;
  return o;
}

Outcome cmd_check(const RunConfig& c, const Quiver& Q) {
  if (c.exact) throw qshuf_error("check-conjecture runs on seeded specializations; --exact is not supported");
  DimVector nmax = require_dim(c.upto, "--upto", Q.vertex_count());
  auto seeds = seed_list(c);
  Outcome o{header(c, Q)};
  o.report["upto"] = nmax;
  o.report["seeds"] = seeds;
  auto rep = check_conjecture(Q, nmax, seeds, c.jobs);
  json rows = json::array();
  for (size_t i = 0; i < rep.rows.size(); ++i) {
    const auto& r = rep.rows[i];
    json row = {{"n", r.n},
                {"lhs", r.capped ? json(nullptr) : json(r.lhs)},
                {"rhs", r.rhs.get_str()},
                {"equal", r.equal},
                {"capped", r.capped},
                {"kac", rep.kac[i].str()},
                {"record", dimension_record_json(r.record)}};
    rows.push_back(row);
  }
  o.report["rows"] = rows;
  o.report["all_equal"] = rep.all_equal;
  o.report["seeds_agree"] = rep.seeds_agree;
  o.report["capped"] = rep.capped;
  if (c.primitives) {
    Algebra<mpq_class> A(Q, specialized_params(Q, c.seed));
    Hopf<mpq_class> H(A);
    SlopeVector zero(Q.vertex_count(), mpq_class(0));
    json prim = json::object();
    for (auto& n : box(nmax))
      if (total(n) > 0) prim[dim_str(n)] = H.primitive_count(zero, n);
    o.report["primitives"] = prim;
  }
  if (!rep.all_equal || !rep.seeds_agree) o.code = 2;
  return o;
}

template <class S>
ShuffleElement<S> load_element(const std::string& path, int vertices) {
  return element_from_json<S>(read_json_file(path), vertices, path);
}

template <class S>
Outcome cmd_shuffle(const RunConfig& c, const Quiver& Q, const Algebra<S>& A, const ParamSpec& spec) {
  int V = Q.vertex_count();
  Outcome o{header(c, Q)};
  o.report["params"] = params_json(spec);
  ShuffleElement<S> F;
  if (!c.word.empty()) {
    if (!c.inputs.empty()) throw qshuf_error("shuffle takes either --word or --input files");
    Hopf<S> H(A);
    GeneratorWord w = parse_word(c.word, Side::Plus, V);
    F = H.expand(w);
    o.report["word"] = word_json(w);
  } else {
    if (c.inputs.empty() || c.inputs.size() > 2) throw qshuf_error("shuffle needs one or two --input files");
    F = load_element<S>(c.inputs[0], V);
    if (c.inputs.size() == 2) F = shuffle_product(A, F, load_element<S>(c.inputs[1], V));
  }
  auto W = wheel_check(A, F);
  o.report["result"] = element_to_json(F);
  o.report["wheel_ok"] = W.ok;
  if (W.witness) o.report["wheel_witness"] = {{"edge", W.witness->edge}, {"monomial", W.witness->monomial}};
  return o;
}

template <class S>
Outcome cmd_pair(const RunConfig& c, const Quiver& Q, const Algebra<S>& A, const ParamSpec& spec) {
  int V = Q.vertex_count();
  Hopf<S> H(A);
  Outcome o{header(c, Q)};
  o.report["params"] = params_json(spec);
  if (c.inputs.empty()) throw qshuf_error("pair needs --input with a plus-side element");
  auto F = load_element<S>(c.inputs[0], V);
  if (F.side != Side::Plus) throw qshuf_error(c.inputs[0] + ": first element must be plus-side");
  WordCombination<S> G;
  if (!c.word.empty()) {
    G = {{parse_word(c.word, Side::Minus, V), field_traits<S>::one()}};
  } else {
    if (c.inputs.size() != 2) throw qshuf_error("pair needs a second --input (minus side) or --word");
    auto M = load_element<S>(c.inputs[1], V);
    if (M.side != Side::Minus) throw qshuf_error(c.inputs[1] + ": second element must be minus-side");
    G = H.express_in_words(M);
  }
  json words = json::array();
  for (auto& [w, x] : G) words.push_back({{"word", word_json(w)}, {"coef", scalar_str(x)}});
  o.report["minus_words"] = words;
  o.report["value"] = scalar_str(H.pairing(F, G));
  return o;
}

template <class S>
Outcome cmd_pbw(const RunConfig& c, const Quiver& Q, const Algebra<S>& A, const ParamSpec& spec) {
  int V = Q.vertex_count();
  Hopf<S> H(A);
  SlopeVector m = resize_for(parse_rational_list(c.slope, "--slope"), V, "--slope");
  SlopeVector th = resize_for(parse_rational_list(c.theta, "--theta"), V, "--theta");
  Outcome o{header(c, Q)};
  o.report["params"] = params_json(spec);
  o.report["slope"] = rational_vector_json(m);
  o.report["theta"] = rational_vector_json(th);
  ShuffleElement<S> F;
  if (!c.word.empty()) {
    GeneratorWord w = parse_word(c.word, Side::Plus, V);
    F = H.expand(w);
    o.report["word"] = word_json(w);
  } else {
    if (c.inputs.size() != 1) throw qshuf_error("pbw needs one --input file or --word");
    F = load_element<S>(c.inputs[0], V);
  }
  o.report["input"] = element_to_json(F);
  SlopeFactorization<S> PF(H, m, th);
  auto D = PF.decompose(F);
  json terms = json::array();
  bool increasing = true;
  for (auto& t : D.terms) {
    json factors = json::array();
    for (size_t a = 0; a < t.factors.size(); ++a) {
      if (a && !(t.factors[a - 1].r < t.factors[a].r)) increasing = false;
      factors.push_back({{"r", t.factors[a].r.get_str()}, {"element", element_to_json(t.factors[a].element)}});
    }
    terms.push_back({{"coef", scalar_str(t.coefficient)}, {"factors", factors}});
  }
  bool roundtrip = PF.remultiply(D, F.shape()) == F;
  o.report["terms"] = terms;
  o.report["hinge_steps"] = D.hinge_steps;
  o.report["gamma_closed_form"] = {{"checked", D.closed_form_checks}, {"matched", D.closed_form_matches}};
  o.report["slopes_increase"] = increasing;
  o.report["roundtrip"] = roundtrip;
  if (!roundtrip || !increasing) o.code = 2;
  return o;
}

template <class S>
Outcome cmd_rmatrix(const RunConfig& c, const Quiver& Q, const Algebra<S>& A, const ParamSpec& spec) {
  int V = Q.vertex_count();
  Hopf<S> H(A);
  SlopeVector m = resize_for(parse_rational_list(c.slope, "--slope"), V, "--slope");
  SlopeVector th = resize_for(parse_rational_list(c.theta, "--theta"), V, "--theta");
  Outcome o{header(c, Q)};
  o.report["params"] = params_json(spec);
  o.report["slope"] = rational_vector_json(m);
  o.report["theta"] = rational_vector_json(th);
  auto R = rprime_window_check(H, m, th, c.hbound, c.window);
  o.report["hbound"] = R.hbound;
  o.report["window"] = R.window;
  o.report["window_semantics"] =
      "legs (r,k) whose basis exponent range meets [-window, window]; products with a leg in the next shell of "
      "width hbound are counted as discarded";
  o.report["legs"] = R.legs;
  o.report["products"] = R.products;
  o.report["discarded"] = R.discarded;
  o.report["orthogonality"] = {{"pairs", R.orthogonality_pairs}, {"failures", R.orthogonality_failures}};
  o.report["contraction"] = {{"test_words", R.test_words},
                             {"failures", R.reproduction_failures},
                             {"exact_reproductions", R.exact_reproductions}};
  o.report["shape_one"] = {{"checked", R.shape_one_checked}, {"failures", R.shape_one_failures}};
  o.report["failures"] = R.failures;
  o.report["passed"] = R.passed();
  if (!R.passed()) o.code = 2;
  return o;
}

template <class S>
Outcome dispatch_elements(const RunConfig& c, const Quiver& Q) {
  ParamSpec spec = c.exact ? exact_params() : specialized_params(Q, c.seed);
  Algebra<S> A(Q, spec);
  if (c.command == "shuffle") return cmd_shuffle(c, Q, A, spec);
  if (c.command == "pair") return cmd_pair(c, Q, A, spec);
  if (c.command == "pbw") return cmd_pbw(c, Q, A, spec);
  return cmd_rmatrix(c, Q, A, spec);
}

Outcome run(const RunConfig& c) {
  if (c.quiver_path.empty()) throw qshuf_error("--quiver is required");
  Quiver Q = load_quiver(c.quiver_path);
  if (c.jobs < 1) throw qshuf_error("--jobs must be at least 1");
  if (c.command == "dims") return cmd_dims(c, Q);
  if (c.command == "kac") return cmd_kac(c, Q);
  if (c.command == "exp") return cmd_exp(c, Q);
  if (c.command == "check-conjecture") return cmd_check(c, Q);
  if (c.exact) return dispatch_elements<RatFunc>(c, Q);
  return dispatch_elements<mpq_class>(c, Q);
}

long max_rss_kb() {
  rusage u{};
  getrusage(RUSAGE_SELF, &u);
  return u.ru_maxrss;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Shuffle algebras of quivers: slope subalgebras, Kac polynomials, pairings and PBW factorization"};
  app.require_subcommand(1);
  RunConfig cfg;
  auto common = [&](CLI::App* s) {
    s->add_option("--quiver", cfg.quiver_path, "quiver JSON file {\"vertices\": V, \"edges\": [[s,t],...]}")->required();
    s->add_option("--seed", cfg.seed, "base seed for parameter specialization");
    s->add_option("--jobs", cfg.jobs, "worker threads");
    s->add_option("--out", cfg.out, "write the report here instead of stdout");
  };
  struct Spec {
    const char* name;
    const char* help;
  };
  const Spec specs[] = {
      {"dims", "dimensions of slope subalgebras"},
      {"kac", "Kac polynomial from Hua's formula"},
      {"exp", "plethystic exponential of A_Q(1, z)"},
      {"check-conjecture", "compare dim B_0|n with Exp[A_Q(1, z)]"},
      {"shuffle", "shuffle product of input elements or expansion of a word"},
      {"pair", "pairing of a plus element with a minus element or word"},
      {"pbw", "factorization along slopes m + r theta"},
      {"rmatrix-check", "windowed slope factorization of the canonical tensor"},
  };
  for (auto& sp : specs) {
    auto* s = app.add_subcommand(sp.name, sp.help);
    common(s);
    std::string n = sp.name;
    if (n == "dims" || n == "pbw" || n == "rmatrix-check") s->add_option("--slope", cfg.slope, "slope m, e.g. \"0,1/2\"");
    if (n == "pbw" || n == "rmatrix-check") s->add_option("--theta", cfg.theta, "direction theta with positive entries");
    if (n == "kac") {
      s->add_option("--dim", cfg.dim, "dimension vector, e.g. \"2,1\"")->required();
      s->add_option("--fields", cfg.fields, "also count over F_q by brute force for these q (2, 3 or 4)");
    }
    if (n == "dims" || n == "exp" || n == "check-conjecture")
      s->add_option("--upto", cfg.upto, "upper corner of the dimension box")->required();
    if (n == "dims" || n == "check-conjecture") s->add_option("--trials", cfg.trials, "number of seeds");
    if (n == "check-conjecture") s->add_flag("--primitives", cfg.primitives, "also count primitive elements of B_0|n");
    if (n != "kac" && n != "exp")
      s->add_flag("--exact", cfg.exact, "formal parameters instead of a seeded specialization");
    if (n == "shuffle" || n == "pair" || n == "pbw") {
      s->add_option("--input", cfg.inputs, "element JSON file(s)");
      s->add_option("--word", cfg.word, "generator word \"i:d,i:d,...\"");
    }
    if (n == "rmatrix-check") {
      s->add_option("--hbound", cfg.hbound, "largest |n| of the products");
      s->add_option("--window", cfg.window, "exponent window");
    }
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }
  for (auto* s : app.get_subcommands()) cfg.command = s->get_name();
  auto t0 = std::chrono::steady_clock::now();
  try {
    Outcome o = run(cfg);
    std::string text = o.report.dump(2) + "\n";
    if (cfg.out.empty()) {
      std::cout << text;
    } else {
      std::ofstream f(cfg.out);
      if (!f) throw qshuf_error("cannot write '" + cfg.out + "'");
      f << text;
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cerr << "qshuf " << cfg.command << ": " << secs << " s, max rss " << max_rss_kb() << " kB\n";
    return o.code;
  } catch (const std::exception& e) {
    std::cerr << "qshuf " << cfg.command << ": error: " << e.what() << "\n";
    return 1;
  }
}
