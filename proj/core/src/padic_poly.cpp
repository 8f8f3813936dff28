#include "glmd/padic_poly.hpp"

#include <algorithm>

#include "glmd/error.hpp"

namespace glmd {

PadicPoly poly_from_ints(std::int64_t p, int cap, const std::vector<std::int64_t>& c) {
  PadicPoly r;
  for (auto v : c) r.c.push_back(PadicScalar::from_int(p, cap, v));
  return r;
}

PadicPoly poly_trim(PadicPoly a) {
  while (!a.c.empty() && a.c.back().is_exact_zero()) a.c.pop_back();
  return a;
}

PadicPoly poly_mul(const PadicPoly& a, const PadicPoly& b) {
  if (a.c.empty() || b.c.empty()) return {};
  PadicPoly r;
  r.c.assign(a.c.size() + b.c.size() - 1, PadicScalar());
  for (std::size_t i = 0; i < a.c.size(); ++i)
    for (std::size_t j = 0; j < b.c.size(); ++j) r.c[i + j] += a.c[i] * b.c[j];
  return r;
}

PadicPoly poly_sub(const PadicPoly& a, const PadicPoly& b) {
  PadicPoly r;
  r.c.assign(std::max(a.c.size(), b.c.size()), PadicScalar());
  for (std::size_t i = 0; i < a.c.size(); ++i) r.c[i] += a.c[i];
  for (std::size_t i = 0; i < b.c.size(); ++i) r.c[i] -= b.c[i];
  return r;
}

PadicPoly poly_mod(const PadicPoly& a, const PadicPoly& m) {
  const int dm = m.degree();
  PadicPoly r = a;
  for (int i = r.degree(); i >= dm; --i) {
    PadicScalar c = r.c[i];
    for (int j = 0; j <= dm; ++j) r.c[i - dm + j] -= c * m.c[j];
  }
  if (r.degree() >= dm) r.c.resize(dm);
  return r;
}

ResiduePoly reduce_mod_p(const PadicPoly& a, const FieldPtr& fp) {
  std::vector<Fq> c;
  for (auto& s : a.c) c.push_back(s.residue());
  return ResiduePoly(fp, c);
}

PadicPoly lift_residue_poly(const ResiduePoly& a, std::int64_t p, int cap) {
  PadicPoly r;
  for (auto v : a.coeffs()) r.c.push_back(PadicScalar::from_int(p, cap, v));
  return r;
}

PadicPoly poly_shift(const PadicPoly& a, const PadicScalar& s) {
  // Horner in the shifted variable.
  PadicPoly r;
  for (int i = a.degree(); i >= 0; --i) {
    PadicPoly t;
    t.c.assign(r.c.size() + 1, PadicScalar());
    for (std::size_t j = 0; j < r.c.size(); ++j) {
      t.c[j + 1] += r.c[j];
      t.c[j] += r.c[j] * s;
    }
    t.c[0] += a.c[i];
    r = t;
  }
  return r;
}

std::vector<NewtonSegment> newton_polygon(const PadicPoly& P) {
  if (P.c.empty()) throw InvalidArgument("Newton polygon of the zero polynomial");
  // Leading zeros at the low end (exact or below precision) give roots of infinite valuation.
  int low = 0;
  while (low < static_cast<int>(P.c.size()) && P.c[low].is_zero()) ++low;
  std::vector<std::pair<int, int>> pts;
  for (int i = low; i <= P.degree(); ++i) {
    if (P.c[i].is_zero()) continue;
    pts.push_back({i, P.c[i].valuation()});
  }
  if (pts.empty()) throw InvalidArgument("Newton polygon of the zero polynomial");
  // Lower hull by monotone chain.
  std::vector<std::pair<int, int>> hull;
  for (auto& q : pts) {
    while (hull.size() >= 2) {
      auto& a = hull[hull.size() - 2];
      auto& b = hull[hull.size() - 1];
      long cross = static_cast<long>(b.first - a.first) * (q.second - a.second) -
                   static_cast<long>(b.second - a.second) * (q.first - a.first);
      if (cross <= 0)
        hull.pop_back();
      else
        break;
    }
    hull.push_back(q);
  }
  // Approximate zeros inside the hull range must lie on or above it.
  for (std::size_t k = 0; k + 1 < hull.size(); ++k)
    for (int i = hull[k].first + 1; i < hull[k + 1].first; ++i) {
      const auto& c = P.c[i];
      if (!c.is_zero() || c.is_exact_zero()) continue;
      mpq_class h(static_cast<long>(hull[k].second) * (hull[k + 1].first - i) +
                      static_cast<long>(hull[k + 1].second) * (i - hull[k].first),
                  hull[k + 1].first - hull[k].first);
      h.canonicalize();
      if (mpq_class(c.val_bound()) < h) throw IndeterminateValuation("Newton polygon undetermined at this precision");
    }
  std::vector<NewtonSegment> segs;
  for (std::size_t k = 0; k + 1 < hull.size(); ++k) {
    NewtonSegment s;
    s.length = hull[k + 1].first - hull[k].first;
    s.slope = mpq_class(hull[k].second - hull[k + 1].second, s.length);
    s.slope.canonicalize();
    segs.push_back(s);
  }
  if (low > 0) {
    NewtonSegment s;
    s.length = low;
    s.slope = kInfVal;
    segs.push_back(s);
  }
  return segs;
}

namespace {

using i128 = __int128;

struct ZPoly {
  std::vector<std::int64_t> c;
};

std::int64_t md(i128 a, std::int64_t m) {
  a %= m;
  if (a < 0) a += m;
  return static_cast<std::int64_t>(a);
}

ZPoly zmul(const ZPoly& a, const ZPoly& b, std::int64_t m) {
  ZPoly r;
  r.c.assign(a.c.size() + b.c.size() - 1, 0);
  for (std::size_t i = 0; i < a.c.size(); ++i)
    for (std::size_t j = 0; j < b.c.size(); ++j)
      r.c[i + j] = md(static_cast<i128>(a.c[i]) * b.c[j] + r.c[i + j], m);
  return r;
}

ZPoly to_z(const ResiduePoly& a) {
  ZPoly r;
  for (auto v : a.coeffs()) r.c.push_back(v);
  return r;
}

ResiduePoly to_res(const ZPoly& a, const FieldPtr& fp, std::int64_t p) {
  std::vector<Fq> c;
  for (auto v : a.c) c.push_back(static_cast<Fq>(md(v, p)));
  return ResiduePoly(fp, c);
}

// Two-factor linear Hensel lifting of f = g h mod p^N.
void lift_pair(const ZPoly& f, ZPoly& g, ZPoly& h, std::int64_t p, int N, const FieldPtr& fp) {
  ResiduePoly gb = to_res(g, fp, p), hb = to_res(h, fp, p);
  ResiduePoly G, s, t;
  xgcd(gb, hb, G, s, t);
  if (!G.is_one()) throw NonCoprimeFactors("factors share a common divisor mod p");
  std::int64_t pk = p;
  for (int k = 1; k < N; ++k) {
    const std::int64_t mod = pk * p;
    ZPoly gh = zmul(g, h, mod);
    std::vector<Fq> e(f.c.size(), 0);
    for (std::size_t i = 0; i < f.c.size(); ++i) {
      std::int64_t diff = md(static_cast<i128>(f.c[i]) - (i < gh.c.size() ? gh.c[i] : 0), mod);
      e[i] = static_cast<Fq>(diff / pk);
    }
    ResiduePoly eb(fp, e);
    ResiduePoly dg = (eb * t) % gb;
    ResiduePoly dh = (eb - dg * hb) / gb;
    g.c.resize(std::max<std::size_t>(g.c.size(), dg.coeffs().size()), 0);
    h.c.resize(std::max<std::size_t>(h.c.size(), dh.coeffs().size()), 0);
    for (std::size_t i = 0; i < dg.coeffs().size(); ++i) g.c[i] = md(g.c[i] + static_cast<i128>(dg.coeffs()[i]) * pk, mod);
    for (std::size_t i = 0; i < dh.coeffs().size(); ++i) h.c[i] = md(h.c[i] + static_cast<i128>(dh.coeffs()[i]) * pk, mod);
    pk = mod;
  }
}

}  // namespace

std::vector<PadicPoly> hensel_lift(const PadicPoly& P, const std::vector<ResiduePoly>& factors, int N) {
  if (P.c.empty()) throw InvalidArgument("Hensel lifting of the zero polynomial");
  const std::int64_t p = P.c[0].prime() ? P.c[0].prime() : P.lead().prime();
  const int cap = P.lead().cap();
  if (N < 1 || N > max_precision(p)) throw InvalidArgument("Hensel target precision out of range");
  FieldPtr fp = factors.empty() ? ResidueField::prime(static_cast<std::uint32_t>(p)) : factors[0].field();
  const std::int64_t mod = ipow(p, N);
  ZPoly f;
  for (auto& s : P.c) f.c.push_back(s.lift_mod(N));
  if (md(f.c.back() - 1, mod) != 0) throw InvalidArgument("Hensel lifting needs a monic polynomial");
  ResiduePoly prod = ResiduePoly::constant(fp, 1);
  for (auto& g : factors) {
    if (g.lead() != 1) throw InvalidArgument("Hensel factors must be monic");
    prod = prod * g;
  }
  if (prod != reduce_mod_p(P, fp)) throw InvalidArgument("factors do not multiply to P mod p");
  for (std::size_t i = 0; i < factors.size(); ++i)
    for (std::size_t j = i + 1; j < factors.size(); ++j)
      if (gcd(factors[i], factors[j]).degree() > 0)
        throw NonCoprimeFactors("factors " + std::to_string(i) + " and " + std::to_string(j) +
                                " are not coprime mod p");

  std::vector<PadicPoly> out;
  ZPoly rest = f;
  for (std::size_t i = 0; i + 1 < factors.size(); ++i) {
    ZPoly g = to_z(factors[i]);
    ResiduePoly others = ResiduePoly::constant(fp, 1);
    for (std::size_t j = i + 1; j < factors.size(); ++j) others = others * factors[j];
    ZPoly h = to_z(others);
    lift_pair(rest, g, h, p, N, fp);
    PadicPoly G;
    for (auto v : g.c) G.c.push_back(PadicScalar::from_int(p, cap, v).with_abs_precision(N));
    out.push_back(G);
    rest = h;
  }
  PadicPoly R;
  for (auto v : rest.c) R.c.push_back(PadicScalar::from_int(p, cap, v).with_abs_precision(N));
  out.push_back(R);
  return out;
}

}  // namespace glmd
