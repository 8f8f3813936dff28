#include "glmd/residue.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <sstream>

#include "glmd/error.hpp"

namespace glmd {

namespace {

std::vector<std::uint32_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint32_t> out;
  for (std::uint64_t q = 2; q * q <= n; ++q) {
    if (n % q == 0) {
      out.push_back(static_cast<std::uint32_t>(q));
      while (n % q == 0) n /= q;
    }
  }
  if (n > 1) out.push_back(static_cast<std::uint32_t>(n));
  return out;
}

}  // namespace

FieldPtr ResidueField::prime(std::uint32_t p) { return create(p, 1, {}); }

FieldPtr ResidueField::create(std::uint32_t p, int f, const std::vector<std::uint32_t>& modulus) {
  if (p < 2) throw InvalidArgument("residue characteristic must be prime");
  if (f < 1) throw InvalidArgument("residue degree must be positive");
  std::shared_ptr<ResidueField> k(new ResidueField());
  k->p_ = p;
  k->f_ = f;
  std::uint64_t q = 1;
  for (int i = 0; i < f; ++i) {
    q *= p;
    if (q > (1u << 22)) throw InvalidArgument("residue field too large");
  }
  k->q_ = static_cast<std::uint32_t>(q);
  k->pw_.resize(f + 1);
  k->pw_[0] = 1;
  for (int i = 1; i <= f; ++i) k->pw_[i] = k->pw_[i - 1] * p;

  std::vector<Fq> gen_poly;
  if (f == 1) {
    k->modulus_ = {0, 1};
  } else {
    if (static_cast<int>(modulus.size()) != f + 1 || modulus.back() != 1)
      throw InvalidArgument("residue modulus must be monic of the field degree");
    k->modulus_ = modulus;
    for (auto& c : k->modulus_) c %= p;
    FieldPtr fp = prime(p);
    ResiduePoly h(fp, std::vector<Fq>(k->modulus_.begin(), k->modulus_.end()));
    if (!is_irreducible(h)) throw InvalidArgument("residue modulus is not irreducible");
  }

  // Primitive element search through exponentiation in F_p[x]/(h).
  const std::uint64_t n = q - 1;
  const auto ell = prime_factors(n);
  FieldPtr fp = f == 1 ? nullptr : prime(p);
  Fq g = 0;
  for (Fq cand = 1; cand < q && g == 0; ++cand) {
    bool ok = true;
    if (f == 1) {
      for (auto l : ell) {
        std::uint64_t e = n / l, b = cand, r = 1;
        while (e) {
          if (e & 1) r = r * b % p;
          b = b * b % p;
          e >>= 1;
        }
        if (r == 1) ok = false;
      }
    } else {
      std::vector<Fq> d(f);
      Fq c = cand;
      for (int i = 0; i < f; ++i) {
        d[i] = c % p;
        c /= p;
      }
      ResiduePoly a(fp, d);
      if (a.is_zero()) continue;
      ResiduePoly h(fp, std::vector<Fq>(k->modulus_.begin(), k->modulus_.end()));
      for (auto l : ell)
        if (powmod(a, n / l, h).is_one()) ok = false;
    }
    if (ok) g = cand;
  }
  if (g == 0) throw InvalidArgument("no primitive element found");

  k->exp_.assign(n, 0);
  k->log_.assign(q, 0);
  std::vector<std::uint32_t> cur(f, 0), gd(f, 0);
  cur[0] = 1;
  {
    Fq c = g;
    for (int i = 0; i < f; ++i) {
      gd[i] = c % p;
      c /= p;
    }
  }
  for (std::uint64_t e = 0; e < n; ++e) {
    Fq code = 0;
    for (int i = f - 1; i >= 0; --i) code = code * p + cur[i];
    k->exp_[e] = code;
    k->log_[code] = static_cast<std::uint32_t>(e);
    std::vector<std::uint64_t> prod(2 * f, 0);
    for (int i = 0; i < f; ++i)
      for (int j = 0; j < f; ++j) prod[i + j] += static_cast<std::uint64_t>(cur[i]) * gd[j];
    for (auto& x : prod) x %= p;
    for (int i = 2 * f - 2; i >= f; --i) {
      std::uint64_t c = prod[i];
      if (!c) continue;
      for (int j = 0; j <= f; ++j)
        prod[i - f + j] = (prod[i - f + j] + (p - k->modulus_[j] % p) % p * c) % p;
    }
    for (int i = 0; i < f; ++i) cur[i] = static_cast<std::uint32_t>(prod[i] % p);
  }
  return k;
}

Fq ResidueField::add(Fq a, Fq b) const {
  if (f_ == 1) {
    Fq s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Fq r = 0;
  for (int i = 0; i < f_; ++i) {
    Fq s = a % p_ + b % p_;
    if (s >= p_) s -= p_;
    r += s * pw_[i];
    a /= p_;
    b /= p_;
  }
  return r;
}

Fq ResidueField::neg(Fq a) const {
  if (f_ == 1) return a == 0 ? 0 : p_ - a;
  Fq r = 0;
  for (int i = 0; i < f_; ++i) {
    Fq d = a % p_;
    r += (d == 0 ? 0 : p_ - d) * pw_[i];
    a /= p_;
  }
  return r;
}

Fq ResidueField::sub(Fq a, Fq b) const { return add(a, neg(b)); }

Fq ResidueField::mul(Fq a, Fq b) const {
  if (a == 0 || b == 0) return 0;
  if (f_ == 1) return static_cast<Fq>(static_cast<std::uint64_t>(a) * b % p_);
  std::uint64_t e = static_cast<std::uint64_t>(log_[a]) + log_[b];
  const std::uint64_t n = q_ - 1;
  if (e >= n) e -= n;
  return exp_[e];
}

Fq ResidueField::inv(Fq a) const {
  if (a == 0) throw NotInvertible("inverse of zero in residue field");
  const std::uint32_t n = q_ - 1;
  return exp_[(n - log_[a]) % n];
}

Fq ResidueField::pow(Fq a, std::uint64_t e) const {
  if (e == 0) return 1;
  if (a == 0) return 0;
  const std::uint64_t n = q_ - 1;
  return exp_[(static_cast<std::uint64_t>(log_[a]) * (e % n)) % n];
}

Fq ResidueField::from_int(std::int64_t v) const {
  std::int64_t r = v % static_cast<std::int64_t>(p_);
  if (r < 0) r += p_;
  return static_cast<Fq>(r);
}

std::vector<std::uint32_t> ResidueField::digits(Fq a) const {
  std::vector<std::uint32_t> d(f_);
  for (int i = 0; i < f_; ++i) {
    d[i] = a % p_;
    a /= p_;
  }
  return d;
}

Fq ResidueField::from_digits(const std::vector<std::uint32_t>& d) const {
  Fq r = 0;
  for (int i = std::min<int>(f_, d.size()) - 1; i >= 0; --i) r = r * p_ + d[i] % p_;
  return r;
}

std::string ResidueField::to_string(Fq a) const {
  if (f_ == 1) return std::to_string(a);
  auto d = digits(a);
  std::ostringstream os;
  bool first = true;
  for (int i = f_ - 1; i >= 0; --i) {
    if (!d[i]) continue;
    if (!first) os << "+";
    first = false;
    if (i == 0 || d[i] != 1) os << d[i];
    if (i >= 1) os << "x";
    if (i >= 2) os << "^" << i;
  }
  if (first) os << "0";
  return os.str();
}

ResiduePoly::ResiduePoly(FieldPtr k, std::vector<Fq> c) : k_(std::move(k)), c_(std::move(c)) { trim(); }

ResiduePoly ResiduePoly::constant(FieldPtr k, Fq c) { return ResiduePoly(std::move(k), {c}); }
ResiduePoly ResiduePoly::x(FieldPtr k) { return ResiduePoly(std::move(k), {0, 1}); }
ResiduePoly ResiduePoly::x_minus(FieldPtr k, Fq a) {
  Fq na = k->neg(a);
  return ResiduePoly(std::move(k), {na, 1});
}

void ResiduePoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

bool ResiduePoly::is_x_power() const {
  if (c_.empty() || c_.back() != 1) return false;
  for (std::size_t i = 0; i + 1 < c_.size(); ++i)
    if (c_[i]) return false;
  return true;
}

Fq ResiduePoly::eval(Fq a) const {
  Fq r = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = k_->add(k_->mul(r, a), *it);
  return r;
}

ResiduePoly ResiduePoly::operator+(const ResiduePoly& o) const {
  const FieldPtr& k = k_ ? k_ : o.k_;
  std::vector<Fq> r(std::max(c_.size(), o.c_.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = k->add(coeff(i), o.coeff(i));
  return ResiduePoly(k, r);
}

ResiduePoly ResiduePoly::operator-(const ResiduePoly& o) const {
  const FieldPtr& k = k_ ? k_ : o.k_;
  std::vector<Fq> r(std::max(c_.size(), o.c_.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = k->sub(coeff(i), o.coeff(i));
  return ResiduePoly(k, r);
}

ResiduePoly ResiduePoly::operator*(const ResiduePoly& o) const {
  const FieldPtr& k = k_ ? k_ : o.k_;
  if (c_.empty() || o.c_.empty()) return ResiduePoly(k, {});
  std::vector<Fq> r(c_.size() + o.c_.size() - 1, 0);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (!c_[i]) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] = k->add(r[i + j], k->mul(c_[i], o.c_[j]));
  }
  return ResiduePoly(k, r);
}

std::pair<ResiduePoly, ResiduePoly> divmod(const ResiduePoly& a, const ResiduePoly& b) {
  if (b.is_zero()) throw NotInvertible("polynomial division by zero");
  const FieldPtr& k = b.field();
  std::vector<Fq> r = a.coeffs();
  const int db = b.degree();
  if (static_cast<int>(r.size()) <= db) return {ResiduePoly(k, {}), ResiduePoly(k, r)};
  std::vector<Fq> q(r.size() - db, 0);
  const Fq li = k->inv(b.lead());
  for (int i = static_cast<int>(r.size()) - 1; i >= db; --i) {
    if (!r[i]) continue;
    Fq c = k->mul(r[i], li);
    q[i - db] = c;
    for (int j = 0; j <= db; ++j) r[i - db + j] = k->sub(r[i - db + j], k->mul(c, b.coeff(j)));
  }
  r.resize(db);
  return {ResiduePoly(k, q), ResiduePoly(k, r)};
}

ResiduePoly ResiduePoly::operator/(const ResiduePoly& o) const { return divmod(*this, o).first; }
ResiduePoly ResiduePoly::operator%(const ResiduePoly& o) const { return divmod(*this, o).second; }

bool ResiduePoly::operator<(const ResiduePoly& o) const {
  if (degree() != o.degree()) return degree() < o.degree();
  for (int i = degree(); i >= 0; --i)
    if (c_[i] != o.c_[i]) return c_[i] < o.c_[i];
  return false;
}

ResiduePoly ResiduePoly::scaled(Fq s) const {
  std::vector<Fq> r(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) r[i] = k_->mul(c_[i], s);
  return ResiduePoly(k_, r);
}

ResiduePoly ResiduePoly::monic() const {
  if (c_.empty()) return *this;
  return scaled(k_->inv(lead()));
}

ResiduePoly ResiduePoly::derivative() const {
  if (c_.size() <= 1) return ResiduePoly(k_, {});
  std::vector<Fq> r(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = k_->mul(c_[i], k_->from_int(static_cast<std::int64_t>(i)));
  return ResiduePoly(k_, r);
}

std::string ResiduePoly::to_string() const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    if (!c_[i]) continue;
    if (!first) os << " + ";
    first = false;
    std::string cs = k_->to_string(c_[i]);
    bool paren = k_->degree() > 1 && cs.find('+') != std::string::npos;
    if (i == 0 || c_[i] != 1) os << (paren ? "(" + cs + ")" : cs);
    if (i >= 1) os << "X";
    if (i >= 2) os << "^" << i;
  }
  return os.str();
}

ResiduePoly gcd(const ResiduePoly& a, const ResiduePoly& b) {
  ResiduePoly x = a, y = b;
  while (!y.is_zero()) {
    ResiduePoly r = x % y;
    x = y;
    y = r;
  }
  return x.monic();
}

void xgcd(const ResiduePoly& a, const ResiduePoly& b, ResiduePoly& g, ResiduePoly& s, ResiduePoly& t) {
  const FieldPtr& k = a.field() ? a.field() : b.field();
  ResiduePoly r0 = a, r1 = b;
  ResiduePoly s0 = ResiduePoly::constant(k, 1), s1(k, {});
  ResiduePoly t0(k, {}), t1 = ResiduePoly::constant(k, 1);
  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1);
    r0 = r1;
    r1 = r;
    ResiduePoly ns = s0 - q * s1;
    s0 = s1;
    s1 = ns;
    ResiduePoly nt = t0 - q * t1;
    t0 = t1;
    t1 = nt;
  }
  if (r0.is_zero()) {
    g = r0;
    s = s0;
    t = t0;
    return;
  }
  Fq li = k->inv(r0.lead());
  g = r0.scaled(li);
  s = s0.scaled(li);
  t = t0.scaled(li);
}

ResiduePoly lcm(const ResiduePoly& a, const ResiduePoly& b) {
  if (a.is_zero() || b.is_zero()) return ResiduePoly(a.field() ? a.field() : b.field(), {});
  return (a * (b / gcd(a, b))).monic();
}

ResiduePoly powmod(const ResiduePoly& a, std::uint64_t e, const ResiduePoly& m) {
  ResiduePoly r = ResiduePoly::constant(m.field(), 1) % m;
  ResiduePoly b = a % m;
  while (e) {
    if (e & 1) r = (r * b) % m;
    e >>= 1;
    if (e) b = (b * b) % m;
  }
  return r;
}

namespace {

ResiduePoly pth_root(const ResiduePoly& c) {
  const FieldPtr& k = c.field();
  const std::uint32_t p = k->p();
  std::vector<Fq> r(c.degree() / p + 1, 0);
  const std::uint64_t e = k->order() / p;
  for (int i = 0; i <= c.degree(); i += p) r[i / p] = k->pow(c.coeff(i), e);
  return ResiduePoly(k, r);
}

void squarefree_parts(const ResiduePoly& f, int mult, Factorization& out) {
  if (f.degree() <= 0) return;
  const std::uint32_t p = f.field()->p();
  ResiduePoly fp = f.derivative();
  if (fp.is_zero()) {
    squarefree_parts(pth_root(f), mult * p, out);
    return;
  }
  ResiduePoly c = gcd(f, fp);
  ResiduePoly w = f / c;
  int i = 1;
  while (!w.is_one() && w.degree() > 0) {
    ResiduePoly y = gcd(w, c);
    ResiduePoly z = w / y;
    if (z.degree() > 0) out.push_back({z.monic(), i * mult});
    ++i;
    w = y;
    c = c / y;
  }
  if (c.degree() > 0) squarefree_parts(pth_root(c.monic()), mult * p, out);
}

std::vector<std::pair<ResiduePoly, int>> distinct_degree(ResiduePoly f) {
  std::vector<std::pair<ResiduePoly, int>> out;
  const FieldPtr& k = f.field();
  const ResiduePoly X = ResiduePoly::x(k);
  ResiduePoly h = X % f;
  int d = 1;
  while (f.degree() >= 2 * d) {
    h = powmod(h, k->order(), f);
    ResiduePoly g = gcd(f, h - X);
    if (g.degree() > 0) {
      out.push_back({g, d});
      f = f / g;
      h = h % f;
    }
    ++d;
  }
  if (f.degree() > 0) out.push_back({f.monic(), f.degree()});
  return out;
}

void equal_degree(const ResiduePoly& f, int d, std::mt19937_64& rng, std::vector<ResiduePoly>& out) {
  if (f.degree() == d) {
    out.push_back(f.monic());
    return;
  }
  const FieldPtr& k = f.field();
  const std::uint32_t q = k->order();
  for (;;) {
    std::vector<Fq> c(f.degree());
    for (auto& x : c) x = static_cast<Fq>(rng() % q);
    ResiduePoly a(k, c);
    if (a.degree() <= 0) continue;
    ResiduePoly b;
    if (k->p() == 2) {
      ResiduePoly t = a, s = a;
      const int steps = k->degree() * d;
      for (int i = 1; i < steps; ++i) {
        t = (t * t) % f;
        s = s + t;
      }
      b = s;
    } else {
      ResiduePoly t = a, acc = a;
      for (int i = 1; i < d; ++i) {
        t = powmod(t, q, f);
        acc = (acc * t) % f;
      }
      b = powmod(acc, (q - 1) / 2, f) - ResiduePoly::constant(k, 1);
    }
    ResiduePoly g = gcd(f, b);
    if (g.degree() > 0 && g.degree() < f.degree()) {
      equal_degree(g, d, rng, out);
      equal_degree(f / g, d, rng, out);
      return;
    }
  }
}

}  // namespace

Factorization factor(const ResiduePoly& q) {
  if (q.is_zero()) throw InvalidArgument("cannot factor the zero polynomial");
  Factorization sq;
  squarefree_parts(q.monic(), 1, sq);
  std::mt19937_64 rng(0x9e3779b97f4a7c15ULL);
  std::map<std::vector<Fq>, std::pair<ResiduePoly, int>> acc;
  for (auto& [g, e] : sq) {
    for (auto& [h, d] : distinct_degree(g)) {
      std::vector<ResiduePoly> irr;
      equal_degree(h, d, rng, irr);
      for (auto& r : irr) {
        auto it = acc.find(r.coeffs());
        if (it == acc.end())
          acc.emplace(r.coeffs(), std::make_pair(r, e));
        else
          it->second.second += e;
      }
    }
  }
  Factorization out;
  for (auto& kv : acc) out.push_back(kv.second);
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

bool is_squarefree(const ResiduePoly& q) {
  if (q.degree() <= 0) return true;
  for (auto& fe : factor(q))
    if (fe.second > 1) return false;
  return true;
}

bool is_irreducible(const ResiduePoly& q) {
  if (q.degree() <= 0) return false;
  auto f = factor(q);
  return f.size() == 1 && f[0].second == 1;
}

ResiduePoly expand(const Factorization& fac, const FieldPtr& k) {
  ResiduePoly r = ResiduePoly::constant(k, 1);
  for (auto& [g, e] : fac)
    for (int i = 0; i < e; ++i) r = r * g;
  return r;
}

FqMatrix::FqMatrix(FieldPtr k, int rows, int cols)
    : k_(std::move(k)), r_(rows), c_(cols), a_(static_cast<std::size_t>(rows) * cols, 0) {}

FqMatrix FqMatrix::identity(FieldPtr k, int n) {
  FqMatrix m(std::move(k), n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

FqMatrix FqMatrix::operator*(const FqMatrix& o) const {
  if (c_ != o.r_) throw InvalidArgument("matrix dimension mismatch");
  FqMatrix m(k_, r_, o.c_);
  for (int i = 0; i < r_; ++i)
    for (int l = 0; l < c_; ++l) {
      Fq a = at(i, l);
      if (!a) continue;
      for (int j = 0; j < o.c_; ++j) m.at(i, j) = k_->add(m.at(i, j), k_->mul(a, o.at(l, j)));
    }
  return m;
}

FqMatrix FqMatrix::operator+(const FqMatrix& o) const {
  FqMatrix m(k_, r_, c_);
  for (std::size_t i = 0; i < a_.size(); ++i) m.a_[i] = k_->add(a_[i], o.a_[i]);
  return m;
}

bool FqMatrix::is_zero() const {
  return std::all_of(a_.begin(), a_.end(), [](Fq x) { return x == 0; });
}

std::vector<Fq> FqMatrix::apply(const std::vector<Fq>& v) const {
  std::vector<Fq> r(r_, 0);
  for (int i = 0; i < r_; ++i)
    for (int j = 0; j < c_; ++j) r[i] = k_->add(r[i], k_->mul(at(i, j), v[j]));
  return r;
}

namespace {

// Reduced row echelon form in place; returns pivot columns.
std::vector<int> rref(FqMatrix& m) {
  const auto& k = m.field();
  std::vector<int> piv;
  int row = 0;
  for (int col = 0; col < m.cols() && row < m.rows(); ++col) {
    int sel = -1;
    for (int i = row; i < m.rows(); ++i)
      if (m.at(i, col)) {
        sel = i;
        break;
      }
    if (sel < 0) continue;
    for (int j = 0; j < m.cols(); ++j) std::swap(m.at(sel, j), m.at(row, j));
    Fq inv = k->inv(m.at(row, col));
    for (int j = 0; j < m.cols(); ++j) m.at(row, j) = k->mul(m.at(row, j), inv);
    for (int i = 0; i < m.rows(); ++i) {
      if (i == row || !m.at(i, col)) continue;
      Fq c = m.at(i, col);
      for (int j = 0; j < m.cols(); ++j) m.at(i, j) = k->sub(m.at(i, j), k->mul(c, m.at(row, j)));
    }
    piv.push_back(col);
    ++row;
  }
  return piv;
}

}  // namespace

int FqMatrix::rank() const {
  FqMatrix m = *this;
  return static_cast<int>(rref(m).size());
}

FqMatrix FqMatrix::kernel() const {
  FqMatrix m = *this;
  auto piv = rref(m);
  std::vector<int> is_piv(c_, -1);
  for (std::size_t i = 0; i < piv.size(); ++i) is_piv[piv[i]] = static_cast<int>(i);
  std::vector<int> free;
  for (int j = 0; j < c_; ++j)
    if (is_piv[j] < 0) free.push_back(j);
  FqMatrix ker(k_, c_, static_cast<int>(free.size()));
  for (std::size_t t = 0; t < free.size(); ++t) {
    int fj = free[t];
    ker.at(fj, t) = 1;
    for (std::size_t i = 0; i < piv.size(); ++i) ker.at(piv[i], t) = k_->neg(m.at(i, fj));
  }
  return ker;
}

FqMatrix FqMatrix::eval_poly(const ResiduePoly& q) const {
  FqMatrix r(k_, r_, c_);
  for (int i = q.degree(); i >= 0; --i) {
    r = r * *this;
    for (int j = 0; j < r_; ++j) r.at(j, j) = k_->add(r.at(j, j), q.coeff(i));
  }
  return r;
}

ResiduePoly FqMatrix::charpoly() const {
  if (r_ != c_) throw InvalidArgument("charpoly of a non-square matrix");
  const int n = r_;
  FqMatrix h = *this;
  const auto& k = k_;
  for (int m = 1; m < n - 1; ++m) {
    int sel = -1;
    for (int i = m; i < n; ++i)
      if (h.at(i, m - 1)) {
        sel = i;
        break;
      }
    if (sel < 0) continue;
    if (sel != m) {
      for (int j = 0; j < n; ++j) std::swap(h.at(sel, j), h.at(m, j));
      for (int i = 0; i < n; ++i) std::swap(h.at(i, sel), h.at(i, m));
    }
    Fq tinv = k->inv(h.at(m, m - 1));
    for (int i = m + 1; i < n; ++i) {
      Fq u = k->mul(h.at(i, m - 1), tinv);
      if (!u) continue;
      for (int j = 0; j < n; ++j) h.at(i, j) = k->sub(h.at(i, j), k->mul(u, h.at(m, j)));
      for (int j = 0; j < n; ++j) h.at(j, m) = k->add(h.at(j, m), k->mul(u, h.at(j, i)));
    }
  }
  std::vector<ResiduePoly> P(n + 1);
  P[0] = ResiduePoly::constant(k, 1);
  for (int m = 1; m <= n; ++m) {
    P[m] = ResiduePoly::x_minus(k, h.at(m - 1, m - 1)) * P[m - 1];
    Fq t = 1;
    for (int i = 1; i < m; ++i) {
      t = k->mul(t, h.at(m - i, m - i - 1));
      Fq c = k->mul(t, h.at(m - i - 1, m - 1));
      if (c) P[m] = P[m] - P[m - i - 1].scaled(c);
    }
  }
  return P[n];
}

ResiduePoly FqMatrix::minpoly() const {
  if (r_ != c_) throw InvalidArgument("minpoly of a non-square matrix");
  const int n = r_;
  ResiduePoly acc = ResiduePoly::constant(k_, 1);
  for (int s = 0; s < n; ++s) {
    std::vector<Fq> e(n, 0);
    e[s] = 1;
    std::vector<std::vector<Fq>> kry{e};
    for (;;) {
      FqMatrix K(k_, n, static_cast<int>(kry.size()));
      for (std::size_t j = 0; j < kry.size(); ++j)
        for (int i = 0; i < n; ++i) K.at(i, j) = kry[j][i];
      if (K.rank() < static_cast<int>(kry.size())) {
        FqMatrix ker = K.kernel();
        std::vector<Fq> c(kry.size());
        for (std::size_t j = 0; j < kry.size(); ++j) c[j] = ker.at(j, 0);
        ResiduePoly loc = ResiduePoly(k_, c).monic();
        acc = lcm(acc, loc);
        break;
      }
      kry.push_back(apply(kry.back()));
    }
  }
  return acc;
}

}  // namespace glmd
