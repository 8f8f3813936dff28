#include "glmd/endoparam.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "glmd/error.hpp"
#include "glmd/filtered.hpp"

namespace glmd {

namespace {

int class_step(int deg, int d) { return d / std::gcd(deg, d); }

std::string invariants(const SimpleEndoClassDescriptor& c) {
  return "(deg " + std::to_string(c.degree) + ", e " + std::to_string(c.e) + ", f " + std::to_string(c.f) + ")";
}

void enumerate_from(const std::vector<SimpleEndoClassDescriptor>& pal, std::size_t i, int rest, int d,
                    std::vector<int>& mult, std::vector<std::vector<int>>& out) {
  if (rest == 0) {
    out.push_back(mult);
    return;
  }
  if (i == pal.size()) return;
  const int step = class_step(pal[i].degree, d);
  for (int k = 0; k * pal[i].degree <= rest; k += step) {
    mult[i] = k;
    enumerate_from(pal, i + 1, rest - k * pal[i].degree, d, mult, out);
  }
  mult[i] = 0;
}

}  // namespace

void check_descriptor(const SimpleEndoClassDescriptor& c) {
  if (c.id.empty()) throw InvalidArgument("endo-class descriptor without id");
  if (c.degree < 1 || c.e < 1 || c.f < 1 || c.e * c.f != c.degree)
    throw InvalidArgument("descriptor " + c.id + " has inconsistent invariants " + invariants(c));
}

void EndoParameter::add(const SimpleEndoClassDescriptor& c, int mult) {
  check_descriptor(c);
  auto it = entries.find(c.id);
  if (it == entries.end()) {
    entries.emplace(c.id, EndoEntry{c, mult});
    return;
  }
  if (!(it->second.cls == c))
    throw InconsistentLabeling("id " + c.id + " used for " + invariants(it->second.cls) + " and " + invariants(c));
  it->second.multiplicity += mult;
}

int EndoParameter::degree() const {
  int s = 0;
  for (auto& [id, en] : entries) s += en.multiplicity * en.cls.degree;
  return s;
}

std::vector<std::pair<std::string, int>> EndoParameter::key() const {
  std::vector<std::pair<std::string, int>> k;
  for (auto& [id, en] : entries) k.emplace_back(id, en.multiplicity);
  return k;
}

std::string EndoParameter::to_string() const {
  std::ostringstream os;
  os << "{";
  bool first = true;
  for (auto& [id, en] : entries) {
    os << (first ? "" : ", ") << id << " -> " << en.multiplicity;
    first = false;
  }
  os << "}";
  return os.str();
}

EndoValidation validate(const EndoParameter& f, int m, int d) {
  EndoValidation v;
  auto fail = [&](std::string msg) {
    v.valid = false;
    v.diagnostics.push_back(std::move(msg));
  };
  if (m < 1 || d < 1) fail("context: m and d must be positive");
  if (f.entries.empty()) fail("support: empty parameter");
  for (auto& [id, en] : f.entries) {
    const auto& c = en.cls;
    if (c.degree < 1 || c.e * c.f != c.degree) fail("descriptor: " + id + " has e f != deg " + invariants(c));
    if (en.multiplicity < 1) fail("multiplicity: f(" + id + ") = " + std::to_string(en.multiplicity) + " < 1");
    if (c.degree >= 1 && d >= 1) {
      const int step = class_step(c.degree, d);
      if (en.multiplicity % step != 0)
        fail("divisibility: f(" + id + ") = " + std::to_string(en.multiplicity) + " is not divisible by deg(D)/gcd(deg(c), deg(D)) = " +
             std::to_string(step));
    }
  }
  if (f.degree() != m * d)
    fail("degree: sum f(c) deg(c) = " + std::to_string(f.degree()) + " != m d = " + std::to_string(m * d));
  return v;
}

std::vector<EndoParameter> enumerate(int m, int d, const std::vector<SimpleEndoClassDescriptor>& palette) {
  if (m < 1 || d < 1) throw InvalidArgument("m and d must be positive");
  auto pal = palette;
  std::set<std::string> ids;
  for (auto& c : pal) {
    check_descriptor(c);
    if (!ids.insert(c.id).second) throw InvalidArgument("duplicate palette id " + c.id);
  }
  std::sort(pal.begin(), pal.end(), [](auto& a, auto& b) { return a.id < b.id; });
  std::vector<int> mult(pal.size(), 0);
  std::vector<std::vector<int>> raw;
  enumerate_from(pal, 0, m * d, d, mult, raw);
  std::vector<EndoParameter> out;
  for (auto& mv : raw) {
    EndoParameter f;
    f.m = m;
    f.d = d;
    for (std::size_t i = 0; i < pal.size(); ++i)
      if (mv[i] > 0) f.add(pal[i], mv[i]);
    out.push_back(std::move(f));
  }
  std::sort(out.begin(), out.end(), [](auto& a, auto& b) { return a.key() < b.key(); });
  return out;
}

EndoParameter from_stratum(const Stratum& s, const BlockLabeler& label) {
  if (s.r != 0) throw NotFull("endo-parameters are read off full strata (r = 0)");
  const auto& D = *s.algebra();
  if (D.center_degree() != 1) throw CertificationUnavailable("endo-parameters need centre Q_p");
  const int d = D.d();
  Certification cert = certify(s);
  if (!cert.semisimple) throw NotCertifiedSemisimple(cert.reason.empty() ? "stratum is not semisimple" : cert.reason);
  EndoParameter f;
  f.m = s.m();
  f.d = d;
  for (auto& b : cert.blocks) {
    const auto& sb = b.data;
    const int deg = sb.degree();
    const int md = sb.dim_D * d;
    if (md % deg != 0) throw CertificationUnavailable("block degree does not divide its dimension");
    FilteredAlgebra corner(s.L, corner_span(D, sb.idempotent), sb.idempotent);
    const int cdim = centralizer_in(corner, D.mmul(cert.beta, sb.idempotent)).dim();
    if (cdim * deg != md * md)
      throw CertificationUnavailable("centralizer dimension " + std::to_string(cdim) + " != (m_i d)^2 / [E_i:F]");
    SimpleEndoClassDescriptor c = label(b);
    check_descriptor(c);
    if (c.degree != deg || c.e != sb.e || c.f != sb.f)
      throw InconsistentLabeling("label " + c.id + " " + invariants(c) + " on a block with (deg " + std::to_string(deg) + ", e " +
                                 std::to_string(sb.e) + ", f " + std::to_string(sb.f) + ")");
    f.add(c, md / deg);
  }
  auto v = validate(f, f.m, d);
  if (!v.valid) throw CertificationUnavailable("block data gives an invalid parameter: " + v.diagnostics.front());
  return f;
}

EndoParameter from_stratum(const Stratum& s, const std::vector<SimpleEndoClassDescriptor>& labels) {
  std::size_t i = 0;
  auto f = from_stratum(s, [&](const StratumBlock&) {
    if (i >= labels.size()) throw InconsistentLabeling("fewer labels than blocks");
    return labels[i++];
  });
  if (i != labels.size()) throw InconsistentLabeling("more labels than blocks");
  return f;
}

BlockLabeler Realization::labeler() const {
  if (!stratum) throw InvalidParameter("labeling needs a realized stratum");
  auto D = stratum->algebra();
  auto layout = blocks;
  return [layout, D](const StratumBlock& b) {
    const auto& e = b.data.idempotent;
    std::optional<SimpleEndoClassDescriptor> found;
    for (auto& lb : layout) {
      const int hi = lb.first + lb.module_dim_D * lb.multiplicity;
      bool meets = false;
      for (int i = lb.first; i < hi && !meets; ++i)
        for (int j = 0; j < e.m && !meets; ++j) meets = !D->is_zero(e.at(i, j));
      if (!meets) continue;
      if (found && found->id != lb.cls.id)
        throw InconsistentLabeling("block meets layout blocks of " + found->id + " and " + lb.cls.id);
      found = lb.cls;
    }
    if (!found) throw InconsistentLabeling("block meets no layout block");
    return *found;
  };
}

Realization realize(const EndoParameter& f) {
  auto v = validate(f, f.m, f.d);
  if (!v.valid) throw InvalidParameter(v.diagnostics.front());
  Realization out;
  out.m = f.m;
  out.d = f.d;
  int first = 0;
  bool have_reps = true;
  for (auto& [id, en] : f.entries) {
    const int g = std::gcd(en.cls.degree, f.d);
    LayoutBlock lb{en.cls, en.cls.degree / g, en.multiplicity * g / f.d, first};
    first += lb.module_dim_D * lb.multiplicity;
    have_reps = have_reps && en.cls.representative.has_value();
    out.blocks.push_back(std::move(lb));
  }
  if (first != f.m) throw InvalidParameter("layout dimensions do not sum to m");
  if (!have_reps) return out;

  AlgebraPtr D = out.blocks.front().cls.representative->algebra();
  int period = 1;
  for (auto& lb : out.blocks) {
    const auto& rep = *lb.cls.representative;
    const auto& R = *rep.algebra();
    if (R.p() != D->p() || R.d() != D->d() || R.center_degree() != D->center_degree())
      throw InvalidParameter("representative of " + lb.cls.id + " lives over a different division algebra");
    if (rep.m() != lb.module_dim_D || rep.r != 0)
      throw InvalidParameter("representative of " + lb.cls.id + " must be a full stratum in M_" + std::to_string(lb.module_dim_D) + "(D)");
    period = std::lcm(period, rep.L.period_D());
  }
  std::optional<LatticeSequence> L;
  std::optional<MatD> beta;
  int n = 0;
  for (auto& lb : out.blocks) {
    const auto& rep = *lb.cls.representative;
    const int k = period / rep.L.period_D();
    LatticeSequence Lk = rep.L.scaled(k);
    n = std::max(n, k * rep.n);
    for (int c = 0; c < lb.multiplicity; ++c) {
      L = L ? LatticeSequence::direct_sum(*L, Lk) : Lk;
      beta = beta ? D->block_diag(*beta, rep.beta) : rep.beta;
    }
  }
  out.stratum = Stratum(*L, n, 0, *beta);
  return out;
}

}  // namespace glmd
