#include "glmd/io/document.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <regex>
#include <sstream>

#include "glmd/error.hpp"
#include "glmd/unramified.hpp"

namespace glmd::io {

namespace {

using json = nlohmann::ordered_json;

int floor_div(int a, int b) { return a >= 0 ? a / b : -((-a + b - 1) / b); }

mpq_class parse_rational(const json& j, const std::string& where) {
  static const std::regex re("-?[0-9]+(/[0-9]+)?");
  if (!j.is_string()) throw ParseError(where + ": rationals are written as strings");
  const auto s = j.get<std::string>();
  if (!std::regex_match(s, re)) throw ParseError(where + ": malformed rational '" + s + "'");
  mpq_class q(s, 10);
  if (q.get_den() == 0) throw ParseError(where + ": zero denominator");
  q.canonicalize();
  return q;
}

int get_int(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key)) throw ParseError(where + ": missing '" + key + "'");
  const auto& v = j.at(key);
  if (!v.is_number_integer()) throw ParseError(where + ": '" + key + "' must be an integer");
  return v.get<int>();
}

int opt_int(const json& j, const char* key, int dflt, const std::string& where) {
  return j.contains(key) ? get_int(j, key, where) : dflt;
}

int l_degree(const StratumDocument& doc) { return doc.d > 1 ? doc.d : doc.center_degree; }

mpq_class p_power(std::int64_t p, int q) {
  mpz_class pz;
  mpz_pow_ui(pz.get_mpz_t(), mpz_class(static_cast<long>(p)).get_mpz_t(), static_cast<unsigned long>(q >= 0 ? q : -q));
  return q >= 0 ? mpq_class(pz) : mpq_class(1, pz);
}

// Reduces pi exponents to [0, d), merges terms and trims zeros.
EntryDoc canonical_entry(const EntryDoc& in, std::int64_t p, int d, int fl) {
  std::map<int, std::vector<mpq_class>> acc;
  for (auto& t : in) {
    const int q = floor_div(t.pi, d);
    const mpq_class scale = p_power(p, q);
    auto& c = acc[t.pi - q * d];
    c.resize(static_cast<std::size_t>(fl), 0);
    for (std::size_t i = 0; i < t.coeffs.size(); ++i) c[i] += t.coeffs[i] * scale;
  }
  EntryDoc out;
  for (auto& [i, c] : acc) {
    for (auto& q : c) q.canonicalize();
    while (!c.empty() && c.back() == 0) c.pop_back();
    if (!c.empty()) out.push_back({i, c});
  }
  return out;
}

EntryDoc parse_entry(const json& j, const std::string& where, std::int64_t p, int d, int fl) {
  EntryDoc e;
  if (j.is_string()) {
    e.push_back({0, {parse_rational(j, where)}});
  } else if (j.is_array()) {
    for (auto& t : j) {
      if (!t.is_object()) throw ParseError(where + ": terms are objects {\"pi\", \"L\"}");
      Term term;
      term.pi = opt_int(t, "pi", 0, where);
      if (!t.contains("L") || !t.at("L").is_array()) throw ParseError(where + ": term needs an 'L' coefficient array");
      for (auto& c : t.at("L")) term.coeffs.push_back(parse_rational(c, where));
      if (static_cast<int>(term.coeffs.size()) > fl)
        throw ParseError(where + ": L-coefficient has more than [L:Q_p] = " + std::to_string(fl) + " entries");
      e.push_back(std::move(term));
    }
  } else {
    throw ParseError(where + ": entry must be a rational string or an array of terms");
  }
  return canonical_entry(e, p, d, fl);
}

ElementDoc parse_element(const json& j, const std::string& where, const StratumDocument& doc) {
  if (!j.is_array() || static_cast<int>(j.size()) != doc.m) throw ParseError(where + ": expected " + std::to_string(doc.m) + " rows");
  ElementDoc e;
  e.m = doc.m;
  for (int i = 0; i < doc.m; ++i) {
    const auto& row = j.at(i);
    if (!row.is_array() || static_cast<int>(row.size()) != doc.m)
      throw ParseError(where + ": row " + std::to_string(i) + " needs " + std::to_string(doc.m) + " entries");
    for (int k = 0; k < doc.m; ++k)
      e.entries.push_back(parse_entry(row.at(k), where + "[" + std::to_string(i) + "][" + std::to_string(k) + "]", doc.p, doc.d,
                                      l_degree(doc)));
  }
  return e;
}

json entry_json(const EntryDoc& e) {
  if (e.empty()) return "0";
  if (e.size() == 1 && e[0].pi == 0 && e[0].coeffs.size() == 1) return e[0].coeffs[0].get_str();
  json a = json::array();
  for (auto& t : e) {
    json c = json::array();
    for (auto& q : t.coeffs) c.push_back(q.get_str());
    a.push_back(json{{"pi", t.pi}, {"L", c}});
  }
  return a;
}

}  // namespace

json element_to_json(const ElementDoc& e) {
  json rows = json::array();
  for (int i = 0; i < e.m; ++i) {
    json row = json::array();
    for (int k = 0; k < e.m; ++k) row.push_back(entry_json(e.entries[static_cast<std::size_t>(i * e.m + k)]));
    rows.push_back(row);
  }
  return rows;
}

int default_precision(std::int64_t p) { return std::min(20, max_precision(p)); }

StratumDocument parse_document(const json& j) {
  try {
    if (!j.is_object()) throw ParseError("document must be a JSON object");
    if (!j.contains("schema") || j.at("schema") != kStratumSchema)
      throw ParseError(std::string("document must declare \"schema\": \"") + kStratumSchema + "\"");
    StratumDocument doc;
    doc.p = j.contains("p") && j.at("p").is_number_integer() ? j.at("p").get<std::int64_t>() : 0;
    if (!is_prime(doc.p) || doc.p > 97) throw ParseError("p must be a prime below 100");
    doc.d = get_int(j, "d", "document");
    doc.m = get_int(j, "m", "document");
    doc.center_degree = opt_int(j, "center_degree", 1, "document");
    doc.precision = opt_int(j, "precision", 0, "document");
    if (doc.d < 1 || doc.m < 1 || doc.center_degree < 1) throw ParseError("d, m and center_degree must be positive");
    if (doc.d > 1 && doc.center_degree > 1) throw ParseError("center_degree > 1 needs d = 1");
    if (doc.precision < 0 || doc.precision > max_precision(doc.p))
      throw ParseError("precision must lie in [1, " + std::to_string(max_precision(doc.p)) + "]");
    if (j.contains("l_modulus")) {
      std::vector<std::uint32_t> h;
      for (auto& c : j.at("l_modulus")) h.push_back(c.get<std::uint32_t>());
      if (h != UnramifiedField::table_modulus(static_cast<std::uint32_t>(doc.p), l_degree(doc)))
        throw ParseError("l_modulus differs from the built-in table for this p and degree");
    }
    if (!j.contains("lattice") || !j.at("lattice").contains("profile")) throw ParseError("missing lattice.profile");
    const auto& prof = j.at("lattice").at("profile");
    if (!prof.is_array() || prof.empty()) throw ParseError("lattice.profile must be a non-empty array");
    for (auto& row : prof) {
      if (!row.is_array() || static_cast<int>(row.size()) != doc.m) throw ParseError("lattice.profile rows need m entries");
      std::vector<int> v;
      for (auto& c : row) {
        if (!c.is_number_integer()) throw ParseError("lattice.profile entries must be integers");
        v.push_back(c.get<int>());
      }
      doc.profile.push_back(std::move(v));
    }
    doc.n = get_int(j, "n", "document");
    doc.r = get_int(j, "r", "document");
    if (!j.contains("beta")) throw ParseError("missing beta");
    doc.beta = parse_element(j.at("beta"), "beta", doc);
    if (j.contains("defining_sequence")) {
      const auto& seq = j.at("defining_sequence");
      if (!seq.is_array()) throw ParseError("defining_sequence must be an array of elements");
      for (std::size_t i = 0; i < seq.size(); ++i)
        doc.defining_sequence.push_back(parse_element(seq.at(i), "defining_sequence[" + std::to_string(i) + "]", doc));
    }
    if (j.contains("claims")) {
      for (auto& c : j.at("claims")) {
        BlockClaim b{get_int(c, "dim_D", "claim"), get_int(c, "e", "claim"), get_int(c, "f", "claim")};
        if (b.dim_D < 1 || b.e < 1 || b.f < 1) throw ParseError("claims need positive dim_D, e, f");
        doc.claims.push_back(b);
      }
    }
    if (j.contains("element")) doc.element = parse_element(j.at("element"), "element", doc);
    return doc;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(e.what());
  }
}

StratumDocument parse_document_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(e.what());
  }
  return parse_document(j);
}

StratumDocument load_document(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_document_text(ss.str());
}

json to_json(const StratumDocument& doc) {
  json j;
  j["schema"] = kStratumSchema;
  j["p"] = doc.p;
  j["d"] = doc.d;
  j["m"] = doc.m;
  if (doc.center_degree != 1) j["center_degree"] = doc.center_degree;
  if (doc.precision != 0) j["precision"] = doc.precision;
  j["l_modulus"] = UnramifiedField::table_modulus(static_cast<std::uint32_t>(doc.p), l_degree(doc));
  j["lattice"] = json{{"profile", doc.profile}};
  j["n"] = doc.n;
  j["r"] = doc.r;
  j["beta"] = element_to_json(doc.beta);
  if (!doc.defining_sequence.empty()) {
    json seq = json::array();
    for (auto& e : doc.defining_sequence) seq.push_back(element_to_json(e));
    j["defining_sequence"] = seq;
  }
  if (!doc.claims.empty()) {
    json c = json::array();
    for (auto& b : doc.claims) c.push_back(json{{"dim_D", b.dim_D}, {"e", b.e}, {"f", b.f}});
    j["claims"] = c;
  }
  if (doc.element) j["element"] = element_to_json(*doc.element);
  return j;
}

mpq_class balanced_rational(const PadicScalar& x) {
  if (x.is_zero()) return 0;
  mpz_class mod, u = static_cast<long>(x.unit());
  mpz_ui_pow_ui(mod.get_mpz_t(), static_cast<unsigned long>(x.prime()), static_cast<unsigned long>(x.rel_precision()));
  if (2 * u > mod) u -= mod;
  mpq_class q = mpq_class(u) * p_power(x.prime(), x.valuation());
  q.canonicalize();
  return q;
}

ElementDoc approximate_element(const DivisionAlgebra& D, const MatD& x) {
  ElementDoc e;
  e.m = x.m;
  for (int i = 0; i < x.m; ++i)
    for (int k = 0; k < x.m; ++k) {
      EntryDoc entry;
      const auto& a = x.at(i, k).a;
      for (std::size_t j = 0; j < a.size(); ++j) {
        Term t{static_cast<int>(j), {}};
        for (auto& c : a[j].c) t.coeffs.push_back(balanced_rational(c));
        entry.push_back(std::move(t));
      }
      e.entries.push_back(canonical_entry(entry, D.p(), D.d(), D.fl()));
    }
  return e;
}

MatD build_element(const DivisionAlgebra& D, const ElementDoc& e) {
  MatD x = D.mzero(e.m);
  const auto& L = *D.L();
  for (int i = 0; i < e.m; ++i)
    for (int k = 0; k < e.m; ++k) {
      DElement acc = D.zero();
      for (auto& t : e.entries[static_cast<std::size_t>(i * e.m + k)]) {
        std::vector<PadicScalar> c;
        for (auto& q : t.coeffs) c.push_back(PadicScalar::from_rational(D.p(), D.cap(), q));
        c.resize(static_cast<std::size_t>(L.degree()), PadicScalar::zero(D.p(), D.cap()));
        acc = D.add(acc, D.mul(D.from_L(L.from_coeffs(c)), D.pi_power(t.pi)));
      }
      x.at(i, k) = acc;
    }
  return x;
}

BuiltStratum build(const StratumDocument& doc, int precision) {
  const int cap = precision > 0 ? precision : doc.precision > 0 ? doc.precision : default_precision(doc.p);
  if (cap > max_precision(doc.p)) throw InvalidArgument("precision exceeds the supported maximum for this p");
  BuiltStratum b;
  b.D = DivisionAlgebra::create(doc.p, doc.d, cap, doc.center_degree);
  LatticeSequence L(b.D, doc.profile);
  b.stratum = Stratum(L, doc.n, doc.r, build_element(*b.D, doc.beta));
  if (!doc.defining_sequence.empty()) {
    DefiningSequence seq;
    seq.strata.push_back(b.stratum);
    for (std::size_t j = 0; j < doc.defining_sequence.size(); ++j)
      seq.strata.emplace_back(L, doc.n, doc.r + static_cast<int>(j) + 1, build_element(*b.D, doc.defining_sequence[j]));
    b.sequence = std::move(seq);
  }
  if (doc.element) b.element = build_element(*b.D, *doc.element);
  return b;
}

}  // namespace glmd::io
