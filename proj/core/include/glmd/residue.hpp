#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace glmd {

using Fq = std::uint32_t;

// GF(p^f) as F_p[x]/(h). Elements are encoded by their base-p digit strings.
class ResidueField {
 public:
  // modulus: monic, low-to-high coefficients, degree f. Ignored when f == 1.
  static std::shared_ptr<const ResidueField> create(std::uint32_t p, int f,
                                                    const std::vector<std::uint32_t>& modulus);
  static std::shared_ptr<const ResidueField> prime(std::uint32_t p);

  std::uint32_t p() const { return p_; }
  int degree() const { return f_; }
  std::uint32_t order() const { return q_; }
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }

  Fq add(Fq a, Fq b) const;
  Fq sub(Fq a, Fq b) const;
  Fq neg(Fq a) const;
  Fq mul(Fq a, Fq b) const;
  Fq inv(Fq a) const;
  Fq pow(Fq a, std::uint64_t e) const;
  Fq from_int(std::int64_t v) const;
  Fq gen() const { return f_ == 1 ? 0 : p_; }
  Fq frobenius(Fq a) const { return pow(a, p_); }
  std::vector<std::uint32_t> digits(Fq a) const;
  Fq from_digits(const std::vector<std::uint32_t>& d) const;
  std::string to_string(Fq a) const;

 private:
  ResidueField() = default;
  std::uint32_t p_ = 0;
  int f_ = 1;
  std::uint32_t q_ = 0;
  std::vector<std::uint32_t> modulus_;
  std::vector<std::uint32_t> pw_;
  std::vector<Fq> exp_;
  std::vector<std::uint32_t> log_;
};

using FieldPtr = std::shared_ptr<const ResidueField>;

// Polynomial over a residue field, low-to-high, no trailing zeros.
class ResiduePoly {
 public:
  ResiduePoly() = default;
  ResiduePoly(FieldPtr k, std::vector<Fq> c);
  static ResiduePoly constant(FieldPtr k, Fq c);
  static ResiduePoly x(FieldPtr k);
  static ResiduePoly x_minus(FieldPtr k, Fq a);

  const FieldPtr& field() const { return k_; }
  const std::vector<Fq>& coeffs() const { return c_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
  bool is_x_power() const;
  Fq lead() const { return c_.empty() ? 0 : c_.back(); }
  Fq coeff(int i) const { return i < static_cast<int>(c_.size()) ? c_[i] : 0; }
  Fq eval(Fq a) const;

  ResiduePoly operator+(const ResiduePoly& o) const;
  ResiduePoly operator-(const ResiduePoly& o) const;
  ResiduePoly operator*(const ResiduePoly& o) const;
  ResiduePoly operator/(const ResiduePoly& o) const;
  ResiduePoly operator%(const ResiduePoly& o) const;
  bool operator==(const ResiduePoly& o) const { return c_ == o.c_; }
  bool operator!=(const ResiduePoly& o) const { return c_ != o.c_; }
  bool operator<(const ResiduePoly& o) const;

  ResiduePoly scaled(Fq s) const;
  ResiduePoly monic() const;
  ResiduePoly derivative() const;
  std::string to_string() const;

 private:
  void trim();
  FieldPtr k_;
  std::vector<Fq> c_;
};

std::pair<ResiduePoly, ResiduePoly> divmod(const ResiduePoly& a, const ResiduePoly& b);
ResiduePoly gcd(const ResiduePoly& a, const ResiduePoly& b);
// Returns (g, s, t) with s a + t b = g monic.
void xgcd(const ResiduePoly& a, const ResiduePoly& b, ResiduePoly& g, ResiduePoly& s,
          ResiduePoly& t);
ResiduePoly lcm(const ResiduePoly& a, const ResiduePoly& b);
ResiduePoly powmod(const ResiduePoly& a, std::uint64_t e, const ResiduePoly& m);

using Factorization = std::vector<std::pair<ResiduePoly, int>>;

// Monic irreducible factors with multiplicities, sorted by (degree, coefficients).
Factorization factor(const ResiduePoly& q);
bool is_squarefree(const ResiduePoly& q);
bool is_irreducible(const ResiduePoly& q);
ResiduePoly expand(const Factorization& fac, const FieldPtr& k);

// Dense matrix over a residue field.
class FqMatrix {
 public:
  FqMatrix() = default;
  FqMatrix(FieldPtr k, int rows, int cols);
  static FqMatrix identity(FieldPtr k, int n);

  int rows() const { return r_; }
  int cols() const { return c_; }
  const FieldPtr& field() const { return k_; }
  Fq& at(int i, int j) { return a_[static_cast<std::size_t>(i) * c_ + j]; }
  Fq at(int i, int j) const { return a_[static_cast<std::size_t>(i) * c_ + j]; }

  FqMatrix operator*(const FqMatrix& o) const;
  FqMatrix operator+(const FqMatrix& o) const;
  bool operator==(const FqMatrix& o) const { return r_ == o.r_ && c_ == o.c_ && a_ == o.a_; }
  bool is_zero() const;
  std::vector<Fq> apply(const std::vector<Fq>& v) const;

  int rank() const;
  // Columns span the right kernel.
  FqMatrix kernel() const;
  FqMatrix eval_poly(const ResiduePoly& q) const;
  ResiduePoly charpoly() const;
  ResiduePoly minpoly() const;

 private:
  FieldPtr k_;
  int r_ = 0;
  int c_ = 0;
  std::vector<Fq> a_;
};

}  // namespace glmd
