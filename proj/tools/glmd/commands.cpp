#include "commands.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "glmd/characters.hpp"
#include "glmd/endoparam.hpp"
#include "glmd/error.hpp"
#include "glmd/io/document.hpp"

namespace glmd::cli {

namespace {

using io::BuiltStratum;

std::string int_or_inf(int v) {
  if (v == kInfVal) return "inf";
  if (v == kNegInf) return "-inf";
  return std::to_string(v);
}

Report header(const std::string& command) {
  Report r;
  r["schema"] = io::kReportSchema;
  r["command"] = command;
  return r;
}

BuiltStratum load(const std::string& path, int precision) {
  if (path.empty()) throw InvalidArgument("--input is required");
  return io::build(io::load_document(path), precision);
}

Report stratum_summary(const Stratum& s) {
  const auto& D = *s.algebra();
  return Report{{"p", D.p()}, {"d", D.d()}, {"m", s.m()}, {"n", s.n}, {"r", s.r}, {"period_F", s.L.period_F()}};
}

// Evaluates f, recording a Undecidable/precision failure as text instead of aborting.
template <class F>
Report guarded(F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::InvalidInput) throw;
    return Report("undetermined: " + std::string(e.what()));
  }
}

Report verdict(Verdict v, const std::string& rule) { return Report{{"verdict", to_string(v)}, {"rule", rule}}; }

Report block_list(const Certification& c) {
  Report a = Report::array();
  for (auto& b : c.blocks)
    a.push_back(Report{{"dim_D", b.data.dim_D},
                       {"e", b.data.e},
                       {"f", b.data.f},
                       {"n_i", b.n_i},
                       {"k0", int_or_inf(b.k0)},
                       {"simple", b.simple}});
  return a;
}

MatD random_in(const LatticeSequence& L, int t, std::mt19937_64& rng) {
  const auto& D = *L.algebra();
  auto b = coordinate_bounds(D, L.m(), L.square_lattice(t));
  KVector v(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) {
    auto u = PadicScalar::from_int(D.p(), D.cap(), static_cast<std::int64_t>(rng() % 41) - 20);
    v[i] = u * PadicScalar::p_power(D.p(), D.cap(), b[i]);
  }
  return D.from_coords(L.m(), v);
}

// Rows of V = D^m on which the block idempotent is non-zero.
std::vector<int> block_slots(const DivisionAlgebra& D, const MatD& e) {
  std::vector<int> rows;
  for (int i = 0; i < e.m; ++i)
    for (int j = 0; j < e.m; ++j)
      if (!D.is_zero(e.at(i, j))) {
        rows.push_back(i);
        break;
      }
  return rows;
}

}  // namespace

Outcome cmd_classify(const Options& o) {
  auto b = load(o.input, o.precision);
  const auto& s = b.stratum;
  const auto doc = io::load_document(o.input);
  Outcome out;
  Report r = header("classify");
  r["stratum"] = stratum_summary(s);

  Classification c = classify(s);
  Verdict simple = c.simple, semisimple = c.semisimple;
  std::string simple_rule = c.method, semisimple_rule = c.method;
  if (semisimple == Verdict::Undecidable && b.sequence) {
    auto ind = strata_induction(s, *b.sequence);
    semisimple = ind.semisimple ? Verdict::True : Verdict::False;
    semisimple_rule = "strata induction: " + ind.method;
    if (!ind.semisimple) {
      simple = Verdict::False;
      simple_rule = semisimple_rule;
    }
  }

  const bool zero = s.n <= s.r || c.equiv_zero;
  Report fundamental;
  Report mu = nullptr;
  if (zero) {
    fundamental = Report{{"verdict", "false"}, {"rule", "zero stratum"}};
  } else if (s.n == s.r + 1) {
    fundamental = verdict(c.fundamental.value_or(false) ? Verdict::True : Verdict::False, "minimal polynomial of y(Delta)");
    if (c.mu) mu = c.mu->to_string();
  } else {
    Stratum mc = s.minimal_coarsening();
    fundamental = verdict(is_fundamental(mc) ? Verdict::True : Verdict::False, "minimal coarsening [n, n - 1]");
    mu = char_min_poly(mc).mu.to_string();
  }
  r["fundamental"] = fundamental;
  r["equivalent_to_simple"] = verdict(simple, simple_rule);
  r["equivalent_to_semisimple"] = verdict(semisimple, semisimple_rule);
  r["mu"] = mu;
  r["level"] = level(s).get_str();
  r["group_level"] = guarded([&] { return Report(int_or_inf(group_level(s))); });
  r["degree"] = guarded([&] { return Report(degree(s)); });
  r["k0"] = guarded([&] { return Report(int_or_inf(critical_exponent(s))); });
  std::optional<Certification> cert;
  r["blocks"] = guarded([&] {
    cert = certify(s);
    return block_list(*cert);
  });

  if (!doc.claims.empty()) {
    std::string status = "unchecked";
    if (cert) {
      std::vector<std::tuple<int, int, int>> claimed, found;
      for (auto& cl : doc.claims) claimed.emplace_back(cl.dim_D, cl.e, cl.f);
      for (auto& bl : cert->blocks) found.emplace_back(bl.data.dim_D, bl.data.e, bl.data.f);
      std::sort(claimed.begin(), claimed.end());
      std::sort(found.begin(), found.end());
      status = claimed == found ? "confirmed" : "contradicted";
    }
    r["claims"] = status;
  }

  if (o.trials > 0) {
    std::mt19937_64 rng(o.seed);
    int agree = 0, disagree = 0, undecided = 0;
    for (int t = 0; t < o.trials; ++t) {
      const auto& D = *s.algebra();
      Stratum s2(s.L, s.n, s.r, D.madd(s.beta, random_in(s.L, -s.r, rng)));
      try {
        Verdict v = classify(s2).semisimple;
        if (v == Verdict::Undecidable || semisimple == Verdict::Undecidable)
          ++undecided;
        else if (v == semisimple)
          ++agree;
        else
          ++disagree;
      } catch (const Error&) {
        ++undecided;
      }
    }
    r["perturbation_check"] = Report{{"seed", o.seed}, {"trials", o.trials}, {"agree", agree}, {"disagree", disagree}, {"undecided", undecided}};
  }

  std::string summary;
  if (zero) {
    summary = s.n <= s.r ? "zero stratum; semisimple" : "equivalent to the zero stratum; semisimple";
  } else if (semisimple == Verdict::Undecidable) {
    summary = "undecidable (" + semisimple_rule + ")";
  } else if (semisimple == Verdict::False) {
    summary = (fundamental["verdict"] == "false" ? "not fundamental; " : "") + std::string("not equivalent to semisimple");
  } else {
    summary = simple == Verdict::True ? "simple (" + simple_rule + ")" : "semisimple (" + semisimple_rule + ")";
    summary += ", level " + level(s).get_str();
    if (r["k0"].is_string() && r["k0"].get<std::string>().rfind("undetermined", 0) != 0)
      summary += ", k0 = " + r["k0"].get<std::string>();
  }
  r["summary"] = summary;
  out.report = r;
  out.exit_code = semisimple == Verdict::Undecidable ? 2 : 0;
  return out;
}

Outcome cmd_derive(const Options& o) {
  auto b = load(o.input, o.precision);
  const auto& s = b.stratum;
  if (!b.sequence) throw InvalidArgument("derive needs a defining_sequence in the document");
  validate_defining_sequence(s, *b.sequence);
  const auto& D = *s.algebra();
  Report r = header("derive");
  r["stratum"] = stratum_summary(s);
  r["sequence_k0"] = guarded([&] {
    Report k0s = Report::array();
    for (int k : sequence_k0(*b.sequence)) k0s.push_back(int_or_inf(k));
    return k0s;
  });
  r["jumps"] = guarded([&] { return Report(jump_sequence(*b.sequence)); });
  r["core_approximation"] = guarded([&] { return Report(core_approximation(*b.sequence)); });
  if (s.n <= s.r + 1) {
    r["derived"] = nullptr;
    r["note"] = "minimal depth: no derived stratum";
  } else {
    MatD gamma = certify(b.sequence->strata[1]).beta;
    auto tc = tame_corestriction(gamma, s.L);
    auto ds = derived_stratum(s, gamma, tc);
    r["gamma"] = io::element_to_json(io::approximate_element(D, gamma));
    r["lambda_exponents"] = tc.lambda_exponent;
    Report comps = Report::array();
    for (auto& c : ds.components) comps.push_back(Report{{"dim_Q_p", c.B.dim()}, {"e_E", c.e_E}, {"f", c.f}});
    Report dr{{"n", ds.n}, {"r", ds.r}, {"element", io::element_to_json(io::approximate_element(D, ds.element))}, {"components", comps}};
    dr["classification"] = guarded([&] {
      auto dc = classify_derived(ds);
      Report cv = Report::array();
      for (auto& v : dc.components)
        cv.push_back(Report{{"mu", v.mu.to_string()}, {"mult_ok", v.mult_ok}, {"simple", v.simple}, {"semisimple", v.semisimple}});
      return Report{{"summary", dc.summary()}, {"components", cv}};
    });
    r["derived"] = dr;
  }
  auto ind = strata_induction(s, *b.sequence);
  r["induction"] = Report{{"semisimple", ind.semisimple}, {"method", ind.method}};
  return {r, 0};
}

Outcome cmd_match(const Options& o) {
  auto a = load(o.input, o.precision);
  if (o.other.empty()) throw InvalidArgument("--other is required");
  auto b = io::build(io::load_document(o.other), o.precision);
  auto mt = matching(a.stratum, b.stratum);
  auto ca = certify(a.stratum), cb = certify(b.stratum);
  Report r = header("match");
  r["permutation"] = mt.zeta;
  Report pairs = Report::array();
  for (auto& p : mt.pairs)
    pairs.push_back(Report{{"i", p.i},
                           {"j", p.j},
                           {"slots_a", block_slots(*a.D, ca.blocks[p.i].data.idempotent)},
                           {"slots_b", block_slots(*b.D, cb.blocks[p.j].data.idempotent)},
                           {"dim_D", p.dim_D},
                           {"e", p.e},
                           {"f", p.f},
                           {"k0", int_or_inf(p.k0)}});
  r["pairs"] = pairs;
  // Slot k of the first stratum goes to slot_map[k] of the second, block by block in order.
  std::vector<int> slot_map(static_cast<std::size_t>(a.stratum.m()), -1);
  for (auto& p : pairs) {
    auto sa = p["slots_a"].get<std::vector<int>>();
    auto sb = p["slots_b"].get<std::vector<int>>();
    for (std::size_t k = 0; k < sa.size() && k < sb.size(); ++k) slot_map[static_cast<std::size_t>(sa[k])] = sb[k];
  }
  r["slot_map"] = slot_map;
  return {r, 0};
}

Outcome cmd_char_eval(const Options& o) {
  auto b = load(o.input, o.precision);
  if (!b.element) throw InvalidArgument("char-eval needs an 'element' in the document");
  Report r = header("char-eval");
  r["stratum"] = stratum_summary(b.stratum);
  r["in_singleton_range"] = in_singleton_range(b.stratum);
  r["value"] = singleton_character(b.stratum, *b.element).to_string();
  return {r, 0};
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, sep))
    if (!tok.empty()) out.push_back(tok);
  return out;
}

int to_int(const std::string& s, const std::string& what) {
  try {
    std::size_t pos = 0;
    int v = std::stoi(s, &pos);
    if (pos != s.size()) throw InvalidArgument(what);
    return v;
  } catch (const std::logic_error&) {
    throw InvalidArgument("malformed " + what + " '" + s + "'");
  }
}

// "degK" (totally ramified of degree K) or "ID:E:F".
SimpleEndoClassDescriptor parse_class(const std::string& tok) {
  SimpleEndoClassDescriptor c;
  auto parts = split(tok, ':');
  if (parts.size() == 1 && tok.rfind("deg", 0) == 0) {
    c.id = tok;
    c.degree = c.e = to_int(tok.substr(3), "class degree");
    c.f = 1;
  } else if (parts.size() == 3) {
    c.id = parts[0];
    c.e = to_int(parts[1], "ramification index");
    c.f = to_int(parts[2], "inertia degree");
    c.degree = c.e * c.f;
  } else {
    throw InvalidArgument("class '" + tok + "' must be degK or ID:E:F");
  }
  check_descriptor(c);
  return c;
}

EndoParameter parse_param(const Options& o) {
  if (o.param.empty()) throw InvalidArgument("--param is required");
  EndoParameter f;
  f.m = o.m;
  f.d = o.d;
  for (auto& tok : split(o.param, ',')) {
    auto eq = tok.find('=');
    if (eq == std::string::npos) throw InvalidArgument("parameter entry '" + tok + "' must be CLASS=MULT");
    f.add(parse_class(tok.substr(0, eq)), to_int(tok.substr(eq + 1), "multiplicity"));
  }
  return f;
}

Report param_json(const EndoParameter& f) {
  Report a = Report::array();
  for (auto& [id, en] : f.entries)
    a.push_back(Report{{"id", id}, {"degree", en.cls.degree}, {"e", en.cls.e}, {"f", en.cls.f}, {"multiplicity", en.multiplicity}});
  return a;
}

}  // namespace

Outcome cmd_endo(const std::string& sub, const Options& o) {
  Report r = header("endo " + sub);
  if (sub == "validate") {
    auto f = parse_param(o);
    auto v = validate(f, o.m, o.d);
    r["m"] = o.m;
    r["d"] = o.d;
    r["parameter"] = param_json(f);
    r["valid"] = v.valid;
    r["diagnostics"] = v.diagnostics;
  } else if (sub == "enumerate") {
    std::vector<SimpleEndoClassDescriptor> pal;
    for (auto& tok : split(o.palette, ',')) pal.push_back(parse_class(tok));
    if (pal.empty()) throw InvalidArgument("--palette is required");
    auto all = enumerate(o.m, o.d, pal);
    r["m"] = o.m;
    r["d"] = o.d;
    r["count"] = all.size();
    Report a = Report::array();
    for (auto& f : all) a.push_back(f.to_string());
    r["parameters"] = a;
  } else if (sub == "realize") {
    auto real = realize(parse_param(o));
    Report a = Report::array();
    for (auto& b : real.blocks)
      a.push_back(Report{{"id", b.cls.id}, {"module_dim_D", b.module_dim_D}, {"multiplicity", b.multiplicity}, {"first", b.first}});
    r["m"] = real.m;
    r["d"] = real.d;
    r["blocks"] = a;
  } else if (sub == "from-stratum") {
    auto b = load(o.input, o.precision);
    std::vector<SimpleEndoClassDescriptor> labels;
    for (auto& tok : split(o.labels, ',')) labels.push_back(parse_class(tok));
    EndoParameter f;
    if (labels.empty()) {
      int next = 0;
      f = from_stratum(b.stratum, [&](const StratumBlock& blk) {
        return SimpleEndoClassDescriptor{"c" + std::to_string(next++), blk.data.degree(), blk.data.e, blk.data.f, std::nullopt};
      });
    } else {
      f = from_stratum(b.stratum, labels);
    }
    r["m"] = f.m;
    r["d"] = f.d;
    r["parameter"] = param_json(f);
    r["degree"] = f.degree();
  } else {
    throw InvalidArgument("unknown endo subcommand '" + sub + "'");
  }
  return {r, 0};
}

namespace {

std::string scalar_text(const Report& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "none";
  return v.dump();
}

bool is_flat(const Report& v) {
  if (!v.is_array()) return !v.is_object();
  return std::all_of(v.begin(), v.end(), [](const Report& x) { return !x.is_object() && !x.is_array(); });
}

void render(const Report& v, int indent, std::ostringstream& os) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  if (v.is_object()) {
    for (auto it = v.begin(); it != v.end(); ++it) {
      if (it.key() == "schema") continue;
      const auto& x = it.value();
      if (is_flat(x) && !x.is_array()) {
        os << pad << it.key() << ": " << scalar_text(x) << "\n";
      } else if (is_flat(x)) {
        os << pad << it.key() << ": [";
        for (std::size_t i = 0; i < x.size(); ++i) os << (i ? ", " : "") << scalar_text(x[i]);
        os << "]\n";
      } else {
        os << pad << it.key() << ":\n";
        render(x, indent + 2, os);
      }
    }
  } else if (v.is_array()) {
    for (auto& x : v) {
      if (x.is_object()) {
        std::ostringstream inner;
        render(x, indent + 2, inner);
        std::string s = inner.str();
        if (s.size() >= static_cast<std::size_t>(indent + 2)) s.replace(static_cast<std::size_t>(indent), 2, "- ");
        os << s;
      } else {
        os << pad << "- " << scalar_text(x) << "\n";
      }
    }
  } else {
    os << pad << scalar_text(v) << "\n";
  }
}

}  // namespace

std::string render_human(const Report& r) {
  std::ostringstream os;
  render(r, 0, os);
  return os.str();
}

}  // namespace glmd::cli
