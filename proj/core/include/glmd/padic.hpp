#pragma once

#include <cstdint>
#include <string>

#include <gmpxx.h>

namespace glmd {

// Valuation of an exact zero.
inline constexpr int kInfVal = 1 << 28;

std::int64_t ipow(std::int64_t p, int k);
// Largest N with p^N < 2^62, capped at 60.
int max_precision(std::int64_t p);
bool is_prime(std::int64_t p);

// Capped-relative p-adic number p^val * unit, where unit is known modulo p^rel.
// rel == 0 means the value is indistinguishable from zero at absolute precision val.
class PadicScalar {
 public:
  PadicScalar() = default;

  static PadicScalar zero(std::int64_t p, int cap);
  static PadicScalar from_int(std::int64_t p, int cap, std::int64_t v);
  static PadicScalar from_mpz(std::int64_t p, int cap, const mpz_class& v);
  static PadicScalar from_rational(std::int64_t p, int cap, const mpq_class& v);
  static PadicScalar approx_zero(std::int64_t p, int cap, int abs_prec);
  static PadicScalar p_power(std::int64_t p, int cap, int k);
  // p^val * unit with unit taken mod p^rel; normalizes a unit that is not prime to p.
  static PadicScalar make(std::int64_t p, int cap, int val, std::int64_t unit, int rel);

  std::int64_t prime() const { return p_; }
  int cap() const { return cap_; }
  bool is_zero() const { return rel_ == 0; }
  bool is_exact_zero() const { return val_ == kInfVal; }
  int valuation() const;
  // Valuation for nonzero values, absolute precision for approximate zeros.
  int val_bound() const { return val_; }
  int abs_precision() const { return is_exact_zero() ? kInfVal : val_ + rel_; }
  int rel_precision() const { return rel_; }
  std::int64_t unit() const { return unit_; }

  PadicScalar operator-() const;
  PadicScalar operator+(const PadicScalar& o) const;
  PadicScalar operator-(const PadicScalar& o) const;
  PadicScalar operator*(const PadicScalar& o) const;
  PadicScalar operator/(const PadicScalar& o) const;
  PadicScalar& operator+=(const PadicScalar& o) { return *this = *this + o; }
  PadicScalar& operator-=(const PadicScalar& o) { return *this = *this - o; }
  PadicScalar& operator*=(const PadicScalar& o) { return *this = *this * o; }

  PadicScalar shifted(int k) const;
  PadicScalar inverse() const;
  PadicScalar with_abs_precision(int abs_prec) const;

  bool is_integral() const { return is_zero() ? val_ >= 0 || is_exact_zero() : val_ >= 0; }
  std::uint32_t residue() const;
  // Representative of an integral value mod p^k in [0, p^k).
  std::int64_t lift_mod(int k) const;
  mpq_class to_rational() const;
  bool equals(const PadicScalar& o) const { return (*this - o).is_zero(); }
  std::string to_string() const;

 private:
  std::int64_t p_ = 0;
  std::int64_t unit_ = 0;
  int val_ = kInfVal;
  int rel_ = 0;
  int cap_ = 0;
};

std::int64_t inv_mod(std::int64_t a, std::int64_t m);

}  // namespace glmd
