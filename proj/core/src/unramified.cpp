#include "glmd/unramified.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "glmd/error.hpp"

namespace glmd {

namespace {

const std::map<std::pair<std::uint32_t, int>, std::vector<std::uint32_t>>& conway_table() {
  static const std::map<std::pair<std::uint32_t, int>, std::vector<std::uint32_t>> t = {
      {{2, 1}, {1, 1}},
      {{2, 2}, {1, 1, 1}},
      {{2, 3}, {1, 1, 0, 1}},
      {{2, 4}, {1, 1, 0, 0, 1}},
      {{2, 5}, {1, 0, 1, 0, 0, 1}},
      {{2, 6}, {1, 1, 0, 1, 1, 0, 1}},
      {{3, 1}, {1, 1}},
      {{3, 2}, {2, 2, 1}},
      {{3, 3}, {1, 2, 0, 1}},
      {{3, 4}, {2, 0, 0, 2, 1}},
      {{3, 5}, {1, 2, 0, 0, 0, 1}},
      {{3, 6}, {2, 2, 1, 0, 2, 0, 1}},
      {{5, 1}, {3, 1}},
      {{5, 2}, {2, 4, 1}},
      {{5, 3}, {3, 3, 0, 1}},
      {{5, 4}, {2, 4, 4, 0, 1}},
      {{7, 1}, {4, 1}},
      {{7, 2}, {3, 6, 1}},
      {{7, 3}, {4, 0, 6, 1}},
      {{7, 4}, {3, 4, 5, 0, 1}},
  };
  return t;
}

}  // namespace

std::vector<std::uint32_t> UnramifiedField::table_modulus(std::uint32_t p, int f) {
  if (f == 1) return {0, 1};
  auto it = conway_table().find({p, f});
  if (it != conway_table().end()) return it->second;
  FieldPtr fp = ResidueField::prime(p);
  std::uint64_t total = 1;
  for (int i = 0; i < f; ++i) total *= p;
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    std::vector<Fq> c(f + 1, 0);
    std::uint64_t v = idx;
    for (int i = 0; i < f; ++i) {
      c[i] = static_cast<Fq>(v % p);
      v /= p;
    }
    c[f] = 1;
    if (c[0] == 0) continue;
    if (is_irreducible(ResiduePoly(fp, c))) return std::vector<std::uint32_t>(c.begin(), c.end());
  }
  throw InvalidArgument("no irreducible polynomial found");
}

std::shared_ptr<const UnramifiedField> UnramifiedField::create(std::int64_t p, int f, int cap) {
  if (!is_prime(p)) throw InvalidArgument("p must be prime");
  if (f < 1) throw InvalidArgument("unramified degree must be positive");
  if (cap < 1 || cap > max_precision(p))
    throw InvalidArgument("precision must lie in [1, " + std::to_string(max_precision(p)) + "]");
  std::shared_ptr<UnramifiedField> L(new UnramifiedField());
  L->p_ = p;
  L->f_ = f;
  L->cap_ = cap;
  L->h_ = table_modulus(static_cast<std::uint32_t>(p), f);
  for (auto c : L->h_) L->hc_.push_back(PadicScalar::from_int(p, cap, c));
  L->k_ = f == 1 ? ResidueField::prime(static_cast<std::uint32_t>(p))
                 : ResidueField::create(static_cast<std::uint32_t>(p), f, L->h_);

  // Power sums of the roots of h give Tr(x^j).
  L->power_traces_.assign(f, L->scalar_zero());
  L->power_traces_[0] = L->scalar(f);
  for (int k = 1; k < f; ++k) {
    PadicScalar s = L->hc_[f - k] * L->scalar(-k);
    for (int i = 1; i < k; ++i) s -= L->hc_[f - i] * L->power_traces_[k - i];
    L->power_traces_[k] = s;
  }

  // Frobenius: Newton-lift x^p to a root of h.
  L->frob_.clear();
  if (f == 1) {
    L->frob_.push_back(L->one());
    return L;
  }
  UnramifiedElement y = L->pow(L->gen(), static_cast<int>(p));
  std::vector<PadicScalar> dh(f);
  for (int i = 1; i <= f; ++i) dh[i - 1] = L->hc_[i] * L->scalar(i);
  for (int it = 0; it < 64; ++it) {
    UnramifiedElement hy = L->eval(L->hc_, y);
    if (L->is_zero(hy)) break;
    UnramifiedElement step = L->mul(hy, L->inv(L->eval(dh, y)));
    y = L->sub(y, step);
  }
  UnramifiedElement pw = L->one();
  for (int j = 0; j < f; ++j) {
    L->frob_.push_back(pw);
    pw = L->mul(pw, y);
  }
  return L;
}

UnramifiedElement UnramifiedField::zero() const {
  return UnramifiedElement{std::vector<PadicScalar>(f_, scalar_zero())};
}

UnramifiedElement UnramifiedField::gen() const {
  UnramifiedElement r = zero();
  if (f_ == 1)
    r.c[0] = scalar(-static_cast<std::int64_t>(h_[0]));
  else
    r.c[1] = scalar(1);
  return r;
}

UnramifiedElement UnramifiedField::from_int(std::int64_t v) const {
  UnramifiedElement r = zero();
  r.c[0] = scalar(v);
  return r;
}

UnramifiedElement UnramifiedField::from_scalar(const PadicScalar& s) const {
  UnramifiedElement r = zero();
  r.c[0] = s;
  return r;
}

UnramifiedElement UnramifiedField::from_residue(Fq a) const {
  UnramifiedElement r = zero();
  auto d = k_->digits(a);
  for (int i = 0; i < f_; ++i) r.c[i] = scalar(d[i]);
  return r;
}

UnramifiedElement UnramifiedField::from_coeffs(const std::vector<PadicScalar>& c) const {
  if (static_cast<int>(c.size()) > f_) return reduce(c);
  UnramifiedElement r = zero();
  for (std::size_t i = 0; i < c.size(); ++i) r.c[i] = c[i];
  return r;
}

UnramifiedElement UnramifiedField::add(const UnramifiedElement& a, const UnramifiedElement& b) const {
  UnramifiedElement r;
  r.c.resize(f_);
  for (int i = 0; i < f_; ++i) r.c[i] = a.c[i] + b.c[i];
  return r;
}

UnramifiedElement UnramifiedField::sub(const UnramifiedElement& a, const UnramifiedElement& b) const {
  UnramifiedElement r;
  r.c.resize(f_);
  for (int i = 0; i < f_; ++i) r.c[i] = a.c[i] - b.c[i];
  return r;
}

UnramifiedElement UnramifiedField::neg(const UnramifiedElement& a) const {
  UnramifiedElement r;
  r.c.resize(f_);
  for (int i = 0; i < f_; ++i) r.c[i] = -a.c[i];
  return r;
}

UnramifiedElement UnramifiedField::reduce(std::vector<PadicScalar> prod) const {
  for (int i = static_cast<int>(prod.size()) - 1; i >= f_; --i) {
    if (prod[i].is_exact_zero()) continue;
    PadicScalar c = prod[i];
    for (int j = 0; j < f_; ++j)
      if (!hc_[j].is_exact_zero()) prod[i - f_ + j] -= c * hc_[j];
  }
  prod.resize(f_, scalar_zero());
  return UnramifiedElement{std::move(prod)};
}

UnramifiedElement UnramifiedField::mul(const UnramifiedElement& a, const UnramifiedElement& b) const {
  if (f_ == 1) return UnramifiedElement{{a.c[0] * b.c[0]}};
  std::vector<PadicScalar> prod(2 * f_ - 1, scalar_zero());
  for (int i = 0; i < f_; ++i) {
    if (a.c[i].is_exact_zero()) continue;
    for (int j = 0; j < f_; ++j) {
      if (b.c[j].is_exact_zero()) continue;
      prod[i + j] += a.c[i] * b.c[j];
    }
  }
  return reduce(std::move(prod));
}

UnramifiedElement UnramifiedField::scale(const UnramifiedElement& a, const PadicScalar& s) const {
  UnramifiedElement r;
  r.c.resize(f_);
  for (int i = 0; i < f_; ++i) r.c[i] = a.c[i] * s;
  return r;
}

UnramifiedElement UnramifiedField::shift(const UnramifiedElement& a, int k) const {
  UnramifiedElement r;
  r.c.resize(f_);
  for (int i = 0; i < f_; ++i) r.c[i] = a.c[i].shifted(k);
  return r;
}

UnramifiedElement UnramifiedField::pow(const UnramifiedElement& a, int e) const {
  if (e < 0) return pow(inv(a), -e);
  UnramifiedElement r = one(), b = a;
  while (e) {
    if (e & 1) r = mul(r, b);
    e >>= 1;
    if (e) b = mul(b, b);
  }
  return r;
}

UnramifiedElement UnramifiedField::unit_inverse(const UnramifiedElement& u) const {
  UnramifiedElement z = from_residue(k_->inv(residue(u)));
  UnramifiedElement two = from_int(2);
  for (int prec = 1; prec < 2 * cap_ + 2; prec *= 2) z = mul(z, sub(two, mul(u, z)));
  return z;
}

UnramifiedElement UnramifiedField::inv(const UnramifiedElement& a) const {
  if (is_exact_zero(a)) throw NotInvertible("inverse of zero");
  int v = valuation(a);
  UnramifiedElement u = shift(a, -v);
  return shift(unit_inverse(u), -v);
}

UnramifiedElement UnramifiedField::frobenius(const UnramifiedElement& a, int k) const {
  k %= f_;
  if (k < 0) k += f_;
  UnramifiedElement r = a;
  for (int s = 0; s < k; ++s) {
    UnramifiedElement t = zero();
    for (int j = 0; j < f_; ++j) {
      if (r.c[j].is_exact_zero()) continue;
      t = add(t, scale(frob_[j], r.c[j]));
    }
    r = t;
  }
  return r;
}

UnramifiedElement UnramifiedField::eval(const std::vector<PadicScalar>& poly, const UnramifiedElement& a) const {
  UnramifiedElement r = zero();
  for (auto it = poly.rbegin(); it != poly.rend(); ++it) {
    r = mul(r, a);
    r.c[0] += *it;
  }
  return r;
}

PadicScalar UnramifiedField::trace(const UnramifiedElement& a) const {
  PadicScalar s = scalar_zero();
  for (int j = 0; j < f_; ++j) s += a.c[j] * power_traces_[j];
  return s;
}

PadicScalar UnramifiedField::norm(const UnramifiedElement& a) const {
  UnramifiedElement r = a;
  for (int k = 1; k < f_; ++k) r = mul(r, frobenius(a, k));
  return r.c[0];
}

bool UnramifiedField::is_zero(const UnramifiedElement& a) const {
  return std::all_of(a.c.begin(), a.c.end(), [](const PadicScalar& s) { return s.is_zero(); });
}

bool UnramifiedField::is_exact_zero(const UnramifiedElement& a) const {
  return std::all_of(a.c.begin(), a.c.end(), [](const PadicScalar& s) { return s.is_exact_zero(); });
}

int UnramifiedField::val_bound(const UnramifiedElement& a) const {
  int v = kInfVal;
  for (auto& s : a.c) v = std::min(v, s.val_bound());
  return v;
}

int UnramifiedField::valuation(const UnramifiedElement& a) const {
  int vmin = kInfVal, zmin = kInfVal;
  for (auto& s : a.c) {
    if (s.is_zero())
      zmin = std::min(zmin, s.val_bound());
    else
      vmin = std::min(vmin, s.valuation());
  }
  if (vmin <= zmin) return vmin;
  throw IndeterminateValuation("valuation undetermined at this precision");
}

Fq UnramifiedField::residue(const UnramifiedElement& a) const {
  std::vector<std::uint32_t> d(f_);
  for (int i = 0; i < f_; ++i) d[i] = a.c[i].residue();
  return k_->from_digits(d);
}

bool UnramifiedField::in_base(const UnramifiedElement& a) const {
  for (int i = 1; i < f_; ++i)
    if (!a.c[i].is_zero()) return false;
  return true;
}

std::string UnramifiedField::to_string(const UnramifiedElement& a) const {
  if (f_ == 1) return a.c[0].to_string();
  std::ostringstream os;
  os << "[";
  for (int i = 0; i < f_; ++i) os << (i ? ", " : "") << a.c[i].to_string();
  os << "]";
  return os.str();
}

}  // namespace glmd
