#pragma once

#include <nlohmann/json.hpp>

#include <cstdint>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <variant>

#include "modframe/mra.hpp"
#include "modframe/symmetry.hpp"

namespace modframe::io {

using json = nlohmann::json;

[[noreturn]] inline void parse_fail(const std::string& what) { fail(ErrorCode::ParseError, what); }

inline const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) parse_fail(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

inline long as_long(const json& j, const char* what) {
  if (!j.is_number_integer()) parse_fail(std::string(what) + " must be an integer");
  return j.get<long>();
}

inline Rational as_rational(const json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  parse_fail("rational values are written as \"p/q\" strings");
}

inline long radicand_of(const json& j, long inherited) {
  if (j.is_object() && j.contains("q")) {
    long q = as_long(j.at("q"), "q");
    if (q < 1) parse_fail("radicand q must be a positive integer");
    return q;
  }
  return inherited;
}

// ---- scalars --------------------------------------------------------------------------

/// Components of a scalar as "re", "im", "re_s", "im_s" members of obj (zero parts omitted, "re" always).
inline void put_scalar(json& obj, const Scalar& s, bool per_term_q) {
  obj["re"] = rational_string(s.re());
  if (sgn(s.im()) != 0) obj["im"] = rational_string(s.im());
  if (sgn(s.re_s()) != 0) obj["re_s"] = rational_string(s.re_s());
  if (sgn(s.im_s()) != 0) obj["im_s"] = rational_string(s.im_s());
  if (per_term_q && s.radicand() != 1) obj["q"] = s.radicand();
}

inline Scalar get_scalar(const json& obj, long q) {
  q = radicand_of(obj, q);
  auto part = [&](const char* k) { return obj.contains(k) ? as_rational(obj.at(k)) : Rational(0); };
  Rational re_s = part("re_s"), im_s = part("im_s");
  if ((sgn(re_s) != 0 || sgn(im_s) != 0) && q == 1) parse_fail("surd components need a radicand \"q\"");
  return Scalar::with_surd(part("re"), part("im"), re_s, im_s, q);
}

/// Bare "p/q" string for rationals, object otherwise.
inline json scalar_value(const Scalar& s, bool per_term_q) {
  if (s.is_rational()) return rational_string(s.re());
  json o = json::object();
  put_scalar(o, s, per_term_q);
  return o;
}

inline Scalar scalar_from_value(const json& j, long q) {
  if (j.is_object()) return get_scalar(j, q);
  return Scalar(as_rational(j));
}

namespace detail {

/// Common radicand of a coefficient list; 0 when several occur.
template <class It>
long common_radicand(It first, It last) {
  std::set<long> qs;
  for (; first != last; ++first)
    if (first->radicand() != 1) qs.insert(first->radicand());
  if (qs.empty()) return 1;
  return qs.size() == 1 ? *qs.begin() : 0;
}

inline void put_radicand(json& j, long q) {
  if (q > 1) j["q"] = q;
}

}  // namespace detail

// ---- integer data ---------------------------------------------------------------------

inline json to_json(const Exponent& e) { return json(e); }

inline Exponent exponent_from_json(const json& j) {
  if (j.is_number_integer()) return {j.get<long>()};
  if (!j.is_array()) parse_fail("exponent must be an integer array");
  Exponent e;
  for (const auto& x : j) e.push_back(as_long(x, "exponent entry"));
  return e;
}

/// "1,0" or "1" style command line vectors.
inline Exponent parse_exponent(const std::string& text) {
  Exponent e;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      e.push_back(std::stol(item, &used));
      if (used != item.size() && item.find_first_not_of(' ', used) != std::string::npos) throw std::invalid_argument(item);
    } catch (const std::logic_error&) {
      parse_fail("bad integer vector \"" + text + "\"");
    }
  }
  if (e.empty()) parse_fail("empty integer vector");
  return e;
}

inline json to_json(const IntMatrix& m) { return json(m.rows()); }

inline IntMatrix int_matrix_from_json(const json& j) {
  if (j.is_number_integer()) return IntMatrix{{j.get<long>()}};
  if (!j.is_array() || j.empty()) parse_fail("integer matrix must be a nonempty array of rows");
  std::vector<std::vector<long>> rows;
  for (const auto& r : j) {
    if (!r.is_array() || r.size() != j.size()) parse_fail("integer matrix must be square");
    std::vector<long> row;
    for (const auto& x : r) row.push_back(as_long(x, "matrix entry"));
    rows.push_back(std::move(row));
  }
  return IntMatrix::from_rows(rows);
}

// ---- Laurent polynomials and matrices -------------------------------------------------

inline json to_json(const LaurentPoly& a) {
  std::vector<Scalar> cs;
  for (const auto& [g, c] : a.terms()) cs.push_back(c);
  long q = detail::common_radicand(cs.begin(), cs.end());
  json j = {{"n", a.dim()}, {"terms", json::array()}};
  detail::put_radicand(j, q);
  for (const auto& [g, c] : a.terms()) {
    json t = {{"exp", g}};
    put_scalar(t, c, q == 0);
    j["terms"].push_back(std::move(t));
  }
  return j;
}

inline LaurentPoly laurent_from_json(const json& j, long q = 1) {
  q = radicand_of(j, q);
  long n = as_long(field(j, "n"), "n");
  if (n < 1) parse_fail("Laurent dimension must be >= 1");
  LaurentPoly a(static_cast<std::size_t>(n));
  for (const auto& t : field(j, "terms")) {
    Exponent g = exponent_from_json(field(t, "exp"));
    if (g.size() != static_cast<std::size_t>(n)) parse_fail("exponent length differs from n");
    a.add_term(g, get_scalar(t, q));
  }
  return a;
}

inline json to_json(const LaurentMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json r = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) r.push_back(to_json(m(i, j)));
    rows.push_back(std::move(r));
  }
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", rows}};
}

inline LaurentMatrix laurent_matrix_from_json(const json& j, long q = 1) {
  q = radicand_of(j, q);
  std::vector<std::vector<LaurentPoly>> rows;
  for (const auto& r : field(j, "entries")) {
    std::vector<LaurentPoly> row;
    for (const auto& e : r) row.push_back(laurent_from_json(e, q));
    rows.push_back(std::move(row));
  }
  if (rows.empty()) parse_fail("empty Laurent matrix");
  return LaurentMatrix::from_rows(rows);
}

// ---- vectors --------------------------------------------------------------------------

inline json to_json(const FinSeq& v) {
  std::vector<Scalar> cs;
  for (const auto& [k, c] : v.entries()) cs.push_back(c);
  long q = detail::common_radicand(cs.begin(), cs.end());
  json j = {{"n", v.dim()}, {"entries", json::array()}};
  detail::put_radicand(j, q);
  for (const auto& [k, c] : v.entries()) {
    json t = {{"k", k}};
    put_scalar(t, c, q == 0);
    j["entries"].push_back(std::move(t));
  }
  return j;
}

inline FinSeq finseq_from_json(const json& j, long q = 1) {
  q = radicand_of(j, q);
  long n = as_long(field(j, "n"), "n");
  if (n < 1) parse_fail("sequence dimension must be >= 1");
  FinSeq v(static_cast<std::size_t>(n));
  for (const auto& t : field(j, "entries")) {
    Exponent k = exponent_from_json(field(t, "k"));
    if (k.size() != static_cast<std::size_t>(n)) parse_fail("index length differs from n");
    v.add(k, get_scalar(t, q));
  }
  return v;
}

inline json to_json(const PiecewisePoly& v) {
  std::vector<Scalar> cs;
  for (const auto& p : v.pieces()) cs.insert(cs.end(), p.begin(), p.end());
  long q = detail::common_radicand(cs.begin(), cs.end());
  json j = {{"breaks", json::array()}, {"pieces", json::array()}};
  detail::put_radicand(j, q);
  for (const auto& b : v.breaks()) j["breaks"].push_back(rational_string(b));
  for (const auto& p : v.pieces()) {
    json piece = json::array();
    for (const auto& c : p) piece.push_back(scalar_value(c, q == 0));
    j["pieces"].push_back(std::move(piece));
  }
  return j;
}

inline PiecewisePoly piecewise_from_json(const json& j, long q = 1) {
  q = radicand_of(j, q);
  std::vector<Rational> breaks;
  for (const auto& b : field(j, "breaks")) breaks.push_back(as_rational(b));
  std::vector<Poly> pieces;
  for (const auto& p : field(j, "pieces")) {
    if (!p.is_array()) parse_fail("each piece is an array of coefficients");
    Poly poly;
    for (const auto& c : p) poly.push_back(scalar_from_value(c, q));
    pieces.push_back(std::move(poly));
  }
  try {
    return PiecewisePoly::from_pieces(std::move(breaks), std::move(pieces));
  } catch (const Error& e) {
    parse_fail(e.what());
  }
}

/// Either backend, chosen by the shape of the JSON object.
using AnyVector = std::variant<FinSeq, PiecewisePoly>;

inline bool is_piecewise(const json& j) { return j.is_object() && j.contains("breaks"); }

inline AnyVector vector_from_json(const json& j, long q = 1) {
  if (is_piecewise(j)) return piecewise_from_json(j, q);
  return finseq_from_json(j, q);
}

inline json to_json(const AnyVector& v) {
  return std::visit([](const auto& x) { return to_json(x); }, v);
}

// ---- masks, families, pairs, groups ---------------------------------------------------

inline json to_json(const Mask& m) {
  json j = to_json(m.coeffs);
  j["A"] = to_json(m.dilation.matrix());
  return j;
}

inline Mask mask_from_json(const json& j, long q = 1) {
  FinSeq c = finseq_from_json(j, q);
  IntMatrix a = j.contains("A") ? int_matrix_from_json(j.at("A")) : IntMatrix{{2}};
  if (a.size() != c.dim()) parse_fail("mask dimension differs from its dilation");
  return Mask(std::move(c), Dilation(a));
}

template <ShiftSpace V>
json to_json(const GeneratorFamily<V>& f) {
  json gens = json::array();
  for (const auto& v : f.generators()) gens.push_back(to_json(v));
  return {{"generators", gens}, {"lattice", to_json(f.lattice())}};
}

template <ShiftSpace V>
V vector_as(const json& j, long q) {
  if constexpr (std::is_same_v<V, PiecewisePoly>)
    return piecewise_from_json(j, q);
  else
    return finseq_from_json(j, q);
}

template <ShiftSpace V>
std::vector<V> vectors_from_json(const json& arr, long q) {
  if (!arr.is_array() || arr.empty()) parse_fail("generator list must be a nonempty array");
  std::vector<V> out;
  for (const auto& g : arr) out.push_back(vector_as<V>(g, q));
  return out;
}

template <ShiftSpace V>
GeneratorFamily<V> family_from_json(const json& j, long q = 1) {
  q = radicand_of(j, q);
  auto gens = vectors_from_json<V>(field(j, "generators"), q);
  if (j.contains("lattice")) return GeneratorFamily<V>(std::move(gens), int_matrix_from_json(j.at("lattice")));
  return GeneratorFamily<V>(std::move(gens));
}

template <ShiftSpace V>
json to_json(const DualPair<V>& p) {
  json a = json::array(), b = json::array();
  for (const auto& v : p.primal.generators()) a.push_back(to_json(v));
  for (const auto& v : p.dual.generators()) b.push_back(to_json(v));
  return {{"primal", a}, {"dual", b}, {"lattice", to_json(p.lattice())}};
}

template <ShiftSpace V>
DualPair<V> pair_from_json(const json& j, long q = 1) {
  q = radicand_of(j, q);
  auto a = vectors_from_json<V>(field(j, "primal"), q);
  auto b = vectors_from_json<V>(field(j, "dual"), q);
  IntMatrix m = j.contains("lattice") ? int_matrix_from_json(j.at("lattice"))
                                      : IntMatrix::identity(dimension(a.front()));
  return DualPair<V>(GeneratorFamily<V>(std::move(a), m), GeneratorFamily<V>(std::move(b), m));
}

/// Backend of a family or pair document, read off its first generator.
inline bool document_is_piecewise(const json& j) {
  for (const char* key : {"generators", "primal"})
    if (j.is_object() && j.contains(key) && j.at(key).is_array() && !j.at(key).empty()) return is_piecewise(j.at(key)[0]);
  return is_piecewise(j);
}

inline json to_json(const PointGroup& g) {
  json e = json::array();
  for (const auto& h : g.elements()) e.push_back(to_json(h));
  return {{"elements", e}};
}

inline PointGroup group_from_json(const json& j) {
  std::vector<IntMatrix> ms;
  if (j.contains("generators")) {
    for (const auto& m : j.at("generators")) ms.push_back(int_matrix_from_json(m));
    return PointGroup::generated_by(ms);
  }
  for (const auto& m : field(j, "elements")) ms.push_back(int_matrix_from_json(m));
  return PointGroup(std::move(ms));
}

// ---- files ----------------------------------------------------------------------------

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) parse_fail("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    parse_fail(path + ": " + e.what());
  }
}

/// 64-bit FNV-1a of the bytes, hex encoded.
inline std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  std::ostringstream os;
  os << std::hex;
  os.width(16);
  os.fill('0');
  os << h;
  return os.str();
}

}  // namespace modframe::io
