#include "glmd/padic.hpp"

#include <algorithm>
#include <sstream>

#include "glmd/error.hpp"

namespace glmd {

namespace {

using i128 = __int128;

std::int64_t mulmod(std::int64_t a, std::int64_t b, std::int64_t m) {
  return static_cast<std::int64_t>(static_cast<i128>(a) * b % m);
}

std::int64_t posmod(std::int64_t a, std::int64_t m) {
  a %= m;
  return a < 0 ? a + m : a;
}

std::int64_t adopt_p(std::int64_t a, std::int64_t b) {
  if (a == 0) return b;
  if (b != 0 && a != b) throw InvalidArgument("mixing p-adic numbers over different primes");
  return a;
}

int adopt_cap(int a, int b) {
  if (a == 0) return b;
  if (b == 0) return a;
  return std::min(a, b);
}

}  // namespace

std::int64_t ipow(std::int64_t p, int k) {
  std::int64_t r = 1;
  std::int64_t b = p;
  while (k > 0) {
    if (k & 1) r *= b;
    k >>= 1;
    if (k) b *= b;
  }
  return r;
}

int max_precision(std::int64_t p) {
  int n = 0;
  i128 v = 1;
  const i128 lim = static_cast<i128>(1) << 62;
  while (v * p < lim && n < 60) {
    v *= p;
    ++n;
  }
  return n;
}

bool is_prime(std::int64_t p) {
  if (p < 2) return false;
  for (std::int64_t q = 2; q * q <= p; ++q)
    if (p % q == 0) return false;
  return true;
}

std::int64_t inv_mod(std::int64_t a, std::int64_t m) {
  if (m == 1) return 0;
  i128 g = m, x = 0, g1 = posmod(a, m), x1 = 1;
  while (g1 != 0) {
    i128 q = g / g1;
    i128 t = g - q * g1;
    g = g1;
    g1 = t;
    t = x - q * x1;
    x = x1;
    x1 = t;
  }
  if (g != 1) throw NotInvertible("residue not invertible");
  return posmod(static_cast<std::int64_t>(x % m), m);
}

PadicScalar PadicScalar::zero(std::int64_t p, int cap) {
  PadicScalar r;
  r.p_ = p;
  r.cap_ = cap;
  return r;
}

PadicScalar PadicScalar::approx_zero(std::int64_t p, int cap, int abs_prec) {
  PadicScalar r = zero(p, cap);
  r.val_ = abs_prec;
  return r;
}

PadicScalar PadicScalar::make(std::int64_t p, int cap, int val, std::int64_t unit, int rel) {
  rel = std::min(rel, cap);
  if (rel <= 0) return approx_zero(p, cap, val + std::max(rel, 0));
  std::int64_t mod = ipow(p, rel);
  unit = posmod(unit, mod);
  if (unit == 0) return approx_zero(p, cap, val + rel);
  while (unit % p == 0) {
    unit /= p;
    ++val;
    --rel;
  }
  PadicScalar r;
  r.p_ = p;
  r.cap_ = cap;
  r.val_ = val;
  r.rel_ = rel;
  r.unit_ = unit % ipow(p, rel);
  return r;
}

PadicScalar PadicScalar::from_int(std::int64_t p, int cap, std::int64_t v) {
  if (v == 0) return zero(p, cap);
  int val = 0;
  while (v % p == 0) {
    v /= p;
    ++val;
  }
  return make(p, cap, val, posmod(v, ipow(p, cap)), cap);
}

PadicScalar PadicScalar::from_mpz(std::int64_t p, int cap, const mpz_class& v) {
  if (v == 0) return zero(p, cap);
  mpz_class u = v;
  mpz_class pz = static_cast<long>(p);
  int val = 0;
  while (mpz_divisible_p(u.get_mpz_t(), pz.get_mpz_t())) {
    u /= pz;
    ++val;
  }
  mpz_class mod;
  mpz_ui_pow_ui(mod.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(cap));
  mpz_class r;
  mpz_mod(r.get_mpz_t(), u.get_mpz_t(), mod.get_mpz_t());
  return make(p, cap, val, r.get_si(), cap);
}

PadicScalar PadicScalar::from_rational(std::int64_t p, int cap, const mpq_class& v) {
  mpq_class c = v;
  c.canonicalize();
  if (c == 0) return zero(p, cap);
  return from_mpz(p, cap, c.get_num()) / from_mpz(p, cap, c.get_den());
}

PadicScalar PadicScalar::p_power(std::int64_t p, int cap, int k) {
  return make(p, cap, k, 1, cap);
}

int PadicScalar::valuation() const {
  if (is_zero()) {
    if (is_exact_zero()) return kInfVal;
    throw IndeterminateValuation("valuation is at least " + std::to_string(val_) +
                                 " but undetermined at this precision");
  }
  return val_;
}

PadicScalar PadicScalar::operator-() const {
  if (is_zero()) return *this;
  PadicScalar r = *this;
  r.unit_ = ipow(p_, rel_) - unit_;
  return r;
}

PadicScalar PadicScalar::operator+(const PadicScalar& o) const {
  if (is_exact_zero()) {
    PadicScalar r = o;
    r.p_ = adopt_p(o.p_, p_);
    r.cap_ = adopt_cap(o.cap_, cap_);
    return r;
  }
  if (o.is_exact_zero()) {
    PadicScalar r = *this;
    r.p_ = adopt_p(p_, o.p_);
    r.cap_ = adopt_cap(cap_, o.cap_);
    return r;
  }
  const std::int64_t p = adopt_p(p_, o.p_);
  const int cap = adopt_cap(cap_, o.cap_);
  const int A = std::min(abs_precision(), o.abs_precision());
  const int v = std::min(val_, o.val_);
  if (A <= v) return approx_zero(p, cap, A);
  const int r = std::min(A - v, cap);
  const std::int64_t mod = ipow(p, r);
  auto part = [&](const PadicScalar& x) -> std::int64_t {
    if (x.rel_ == 0) return 0;
    int sh = x.val_ - v;
    if (sh >= r) return 0;
    std::int64_t u = x.unit_ % ipow(p, r - sh);
    return u * ipow(p, sh);
  };
  std::int64_t s = part(*this) + part(o);
  if (s >= mod) s -= mod;
  return make(p, cap, v, s, r);
}

PadicScalar PadicScalar::operator-(const PadicScalar& o) const { return *this + (-o); }

PadicScalar PadicScalar::operator*(const PadicScalar& o) const {
  const std::int64_t p = adopt_p(p_, o.p_);
  const int cap = adopt_cap(cap_, o.cap_);
  if (is_exact_zero() || o.is_exact_zero()) return zero(p, cap);
  const int val = val_ + o.val_;
  const int rel = std::min(rel_, o.rel_);
  if (rel == 0) return approx_zero(p, cap, val);
  const std::int64_t mod = ipow(p, rel);
  PadicScalar r;
  r.p_ = p;
  r.cap_ = cap;
  r.val_ = val;
  r.rel_ = rel;
  r.unit_ = mulmod(unit_ % mod, o.unit_ % mod, mod);
  return r;
}

PadicScalar PadicScalar::inverse() const {
  if (is_exact_zero()) throw NotInvertible("division by zero");
  if (is_zero()) throw InsufficientPrecision("division by a value indistinguishable from zero");
  PadicScalar r = *this;
  r.val_ = -val_;
  r.unit_ = inv_mod(unit_, ipow(p_, rel_));
  return r;
}

PadicScalar PadicScalar::operator/(const PadicScalar& o) const {
  PadicScalar inv = o.inverse();
  return *this * inv;
}

PadicScalar PadicScalar::shifted(int k) const {
  if (is_exact_zero()) return *this;
  PadicScalar r = *this;
  r.val_ += k;
  return r;
}

PadicScalar PadicScalar::with_abs_precision(int abs_prec) const {
  if (abs_precision() <= abs_prec) return *this;
  if (abs_prec <= val_) return approx_zero(p_, cap_, abs_prec);
  return make(p_, cap_, val_, unit_, abs_prec - val_);
}

std::uint32_t PadicScalar::residue() const {
  if (is_zero()) {
    if (is_exact_zero() || val_ >= 1) return 0;
    throw InsufficientPrecision("residue undetermined");
  }
  if (val_ < 0) throw NotIntegral("residue of a non-integral p-adic number");
  if (val_ > 0) return 0;
  return static_cast<std::uint32_t>(unit_ % p_);
}

std::int64_t PadicScalar::lift_mod(int k) const {
  if (k <= 0) return 0;
  std::int64_t mod = ipow(p_, k);
  if (is_exact_zero()) return 0;
  if (val_ >= k) return 0;
  if (val_ < 0) throw NotIntegral("lift of a non-integral p-adic number");
  if (abs_precision() < k) throw InsufficientPrecision("lift beyond known precision");
  std::int64_t u = unit_ % ipow(p_, k - val_);
  return mulmod(u, ipow(p_, val_), mod);
}

mpq_class PadicScalar::to_rational() const {
  if (is_zero()) return 0;
  mpz_class num = static_cast<long>(unit_);
  mpz_class pw;
  mpz_ui_pow_ui(pw.get_mpz_t(), static_cast<unsigned long>(p_),
                static_cast<unsigned long>(val_ < 0 ? -val_ : val_));
  mpq_class r;
  if (val_ >= 0)
    r = mpq_class(num * pw);
  else
    r = mpq_class(num, pw);
  r.canonicalize();
  return r;
}

std::string PadicScalar::to_string() const {
  std::ostringstream os;
  if (is_exact_zero()) return "0";
  if (is_zero()) {
    os << "O(" << p_ << "^" << val_ << ")";
    return os.str();
  }
  os << unit_;
  if (val_ != 0) os << "*" << p_ << "^" << val_;
  os << " + O(" << p_ << "^" << abs_precision() << ")";
  return os.str();
}

}  // namespace glmd
