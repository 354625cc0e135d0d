#pragma once
// JSON input and output: quivers, shuffle elements, comma-separated exact
// vectors, and report fragments. All rationals are written as strings.

#include "qshuf/hopf.hpp"
#include "qshuf/kac.hpp"
#include "qshuf/pbw.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace qshuf {

using json = nlohmann::json;

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw qshuf_error("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw qshuf_error(path + ": JSON parse error at byte " + std::to_string(e.byte) + ": " + e.what());
  }
}

inline Quiver quiver_from_json(const json& j, const std::string& where = "quiver") {
  if (!j.is_object()) throw qshuf_error(where + ": expected an object with \"vertices\" and \"edges\"");
  if (!j.contains("vertices") || !j["vertices"].is_number_integer())
    throw qshuf_error(where + ": \"vertices\" must be an integer");
  int V = j["vertices"].get<int>();
  std::vector<std::pair<int, int>> arrows;
  if (j.contains("edges")) {
    if (!j["edges"].is_array()) throw qshuf_error(where + ": \"edges\" must be an array");
    for (size_t e = 0; e < j["edges"].size(); ++e) {
      const auto& x = j["edges"][e];
      if (!x.is_array() || x.size() != 2 || !x[0].is_number_integer() || !x[1].is_number_integer())
        throw qshuf_error(where + ": edges[" + std::to_string(e) + "] must be a pair [source, target]");
      arrows.emplace_back(x[0].get<int>(), x[1].get<int>());
    }
  }
  return Quiver(V, arrows);
}

inline json quiver_to_json(const Quiver& Q) {
  json edges = json::array();
  for (auto& e : Q.edges()) edges.push_back({e.source, e.target});
  return {{"vertices", Q.vertex_count()}, {"edges", edges}};
}

inline Quiver load_quiver(const std::string& path) { return quiver_from_json(read_json_file(path), path); }

// "a,b,c" with each field an integer or p/q; errors name the field and its
// character offset.
inline std::vector<mpq_class> parse_rational_list(const std::string& s, const std::string& what) {
  std::vector<mpq_class> out;
  size_t pos = 0;
  while (true) {
    size_t comma = s.find(',', pos);
    std::string field = s.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    size_t a = field.find_first_not_of(' '), b = field.find_last_not_of(' ');
    std::string trimmed = a == std::string::npos ? "" : field.substr(a, b - a + 1);
    try {
      out.push_back(parse_rational(trimmed));
    } catch (const qshuf_error&) {
      throw qshuf_error(what + ": malformed entry '" + trimmed + "' at character " + std::to_string(pos + 1) +
                        " of \"" + s + "\"");
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

inline DimVector parse_dim_list(const std::string& s, const std::string& what) {
  DimVector out;
  size_t pos = 0;
  for (auto& x : parse_rational_list(s, what)) {
    if (x.get_den() != 1 || sgn(x) < 0 || x > 1000)
      throw qshuf_error(what + ": entry " + std::to_string(out.size() + 1) + " of \"" + s +
                        "\" is not a small nonnegative integer");
    out.push_back(int(x.get_num().get_si()));
    ++pos;
  }
  return out;
}

inline SlopeVector resize_for(const std::vector<mpq_class>& v, int vertices, const std::string& what) {
  if (int(v.size()) == vertices) return v;
  if (v.size() == 1) return SlopeVector(vertices, v[0]);
  throw qshuf_error(what + ": expected " + std::to_string(vertices) + " entries, got " + std::to_string(v.size()));
}

inline json rational_vector_json(const std::vector<mpq_class>& v) {
  json a = json::array();
  for (auto& x : v) a.push_back(x.get_str());
  return a;
}

template <class S>
std::string scalar_str(const S& v) {
  return field_traits<S>::str(v);
}

template <class S>
S parse_scalar(const json& j) {
  if (j.is_number_integer()) return field_traits<S>::from_int(j.get<long>());
  if (!j.is_string()) throw qshuf_error("coefficient must be a string \"p/q\" or an integer");
  return field_traits<S>::from_rational(parse_rational(j.get<std::string>()));
}

template <class S>
json element_to_json(const ShuffleElement<S>& F) {
  auto off = block_offsets(F.shape());
  json terms = json::array();
  for (auto& [k, c] : F.poly.terms()) {
    json exps = json::array();
    for (size_t i = 0; i + 1 < off.size(); ++i) exps.push_back(std::vector<int>(k.begin() + off[i], k.begin() + off[i + 1]));
    terms.push_back({{"exps", exps}, {"coef", scalar_str(c)}});
  }
  return {{"side", side_str(F.side)}, {"shape", F.shape()}, {"terms", terms}};
}

template <class S>
ShuffleElement<S> element_from_json(const json& j, int vertices, const std::string& where = "element") {
  if (!j.is_object()) throw qshuf_error(where + ": expected an object");
  Side side = Side::Plus;
  if (j.contains("side")) {
    auto s = j["side"].get<std::string>();
    if (s == "+")
      side = Side::Plus;
    else if (s == "-")
      side = Side::Minus;
    else
      throw qshuf_error(where + ": side must be \"+\" or \"-\"");
  }
  if (!j.contains("shape") || !j["shape"].is_array()) throw qshuf_error(where + ": missing \"shape\"");
  DimVector shape = j["shape"].get<DimVector>();
  if (int(shape.size()) != vertices) throw qshuf_error(where + ": shape length differs from the vertex count");
  for (int x : shape)
    if (x < 0) throw qshuf_error(where + ": negative shape entry");
  SymLaurent<S> p(shape);
  if (!j.contains("terms") || !j["terms"].is_array()) throw qshuf_error(where + ": missing \"terms\"");
  for (size_t t = 0; t < j["terms"].size(); ++t) {
    const auto& term = j["terms"][t];
    std::string at = where + ": terms[" + std::to_string(t) + "]";
    if (!term.contains("exps") || !term["exps"].is_array() || term["exps"].size() != shape.size())
      throw qshuf_error(at + ": \"exps\" must hold one list per vertex");
    ExpKey k;
    for (size_t i = 0; i < shape.size(); ++i) {
      auto blk = term["exps"][i].get<std::vector<int>>();
      if (int(blk.size()) != shape[i]) throw qshuf_error(at + ": block " + std::to_string(i) + " has the wrong length");
      k.insert(k.end(), blk.begin(), blk.end());
    }
    if (!term.contains("coef")) throw qshuf_error(at + ": missing \"coef\"");
    p.add(k, parse_scalar<S>(term["coef"]));
  }
  return {side, p};
}

// "i:d,i:d,..." as a generator word
inline GeneratorWord parse_word(const std::string& s, Side side, int vertices) {
  GeneratorWord w{side, {}};
  if (s.empty() || s == "1") return w;
  std::stringstream ss(s);
  std::string item;
  size_t pos = 0;
  while (std::getline(ss, item, ',')) {
    auto colon = item.find(':');
    try {
      if (colon == std::string::npos) throw std::invalid_argument("colon");
      size_t u = 0, v = 0;
      int i = std::stoi(item.substr(0, colon), &u);
      int d = std::stoi(item.substr(colon + 1), &v);
      if (u != colon || colon + 1 + v != item.size()) throw std::invalid_argument("trailing");
      if (i < 0 || i >= vertices) throw qshuf_error("word: vertex out of range in '" + item + "'");
      w.letters.push_back({i, d});
    } catch (const std::logic_error&) {
      throw qshuf_error("word: malformed letter '" + item + "' at character " + std::to_string(pos + 1) +
                        " (expected vertex:degree)");
    }
    pos += item.size() + 1;
  }
  return w;
}

inline json word_json(const GeneratorWord& w) {
  json l = json::array();
  for (auto& x : w.letters) l.push_back({x.vertex, x.d});
  return {{"side", side_str(w.side)}, {"letters", l}, {"text", w.str()}};
}

template <class S>
json mixed_tensor_json(const MixedTensor<S>& M) {
  json terms = json::array();
  for (auto& [k, c] : M.terms)
    terms.push_back({{"cartan", k.cartan.str(M.side)}, {"left", k.left}, {"right", k.right}, {"coef", scalar_str(c)}});
  return {{"left_shape", M.left_shape},
          {"right_shape", M.right_shape},
          {"left_degree", M.left_degree},
          {"right_degree", M.right_degree},
          {"terms", terms}};
}

inline json dimension_record_json(const DimensionRecord& r) {
  json j = {{"n", r.n}, {"dim", r.dim}, {"per_seed", r.per_seed}, {"agree", r.agree}, {"capped", r.capped}};
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

inline json kac_json(const KacPoly& K) {
  json c = json::array();
  for (auto& x : K.coef) c.push_back(x.get_str());
  return {{"n", K.n}, {"poly", c}, {"text", K.str()}, {"at_1", K.eval(1).get_str()}};
}

inline json params_json(const ParamSpec& spec) {
  if (spec.mode == ParamMode::ExactRational) return {{"mode", "exact"}};
  return {{"mode", "specialized"}, {"seed", spec.seed}, {"q", spec.q.get_str()}, {"t", rational_vector_json(spec.t)}};
}

}  // namespace qshuf
