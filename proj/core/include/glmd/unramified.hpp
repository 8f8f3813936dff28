#pragma once

#include <memory>
#include <string>
#include <vector>

#include "glmd/padic.hpp"
#include "glmd/residue.hpp"

namespace glmd {

// Coordinates with respect to 1, x, ..., x^{f-1}, where x is a root of the field modulus.
struct UnramifiedElement {
  std::vector<PadicScalar> c;
};

// Unramified extension of Q_p of degree f.
class UnramifiedField {
 public:
  static std::shared_ptr<const UnramifiedField> create(std::int64_t p, int f, int cap);
  // Monic modulus over F_p used for degree f: a Conway polynomial when tabulated, otherwise the
  // lexicographically first irreducible polynomial.
  static std::vector<std::uint32_t> table_modulus(std::uint32_t p, int f);

  std::int64_t p() const { return p_; }
  int degree() const { return f_; }
  int cap() const { return cap_; }
  const FieldPtr& residue_field() const { return k_; }
  const std::vector<std::uint32_t>& modulus() const { return h_; }

  PadicScalar scalar(std::int64_t v) const { return PadicScalar::from_int(p_, cap_, v); }
  PadicScalar scalar_zero() const { return PadicScalar::zero(p_, cap_); }
  UnramifiedElement zero() const;
  UnramifiedElement one() const { return from_int(1); }
  UnramifiedElement gen() const;
  UnramifiedElement from_int(std::int64_t v) const;
  UnramifiedElement from_scalar(const PadicScalar& s) const;
  UnramifiedElement from_residue(Fq a) const;
  UnramifiedElement from_coeffs(const std::vector<PadicScalar>& c) const;

  UnramifiedElement add(const UnramifiedElement& a, const UnramifiedElement& b) const;
  UnramifiedElement sub(const UnramifiedElement& a, const UnramifiedElement& b) const;
  UnramifiedElement neg(const UnramifiedElement& a) const;
  UnramifiedElement mul(const UnramifiedElement& a, const UnramifiedElement& b) const;
  UnramifiedElement scale(const UnramifiedElement& a, const PadicScalar& s) const;
  UnramifiedElement shift(const UnramifiedElement& a, int k) const;
  UnramifiedElement inv(const UnramifiedElement& a) const;
  UnramifiedElement pow(const UnramifiedElement& a, int e) const;
  UnramifiedElement frobenius(const UnramifiedElement& a, int k = 1) const;
  // Evaluates a polynomial with p-adic coefficients (low to high) at a.
  UnramifiedElement eval(const std::vector<PadicScalar>& poly, const UnramifiedElement& a) const;

  PadicScalar trace(const UnramifiedElement& a) const;
  PadicScalar norm(const UnramifiedElement& a) const;
  bool is_zero(const UnramifiedElement& a) const;
  bool is_exact_zero(const UnramifiedElement& a) const;
  bool equals(const UnramifiedElement& a, const UnramifiedElement& b) const { return is_zero(sub(a, b)); }
  // Exact valuation; throws IndeterminateValuation when precision does not decide it.
  int valuation(const UnramifiedElement& a) const;
  int val_bound(const UnramifiedElement& a) const;
  Fq residue(const UnramifiedElement& a) const;
  bool in_base(const UnramifiedElement& a) const;
  std::string to_string(const UnramifiedElement& a) const;

 private:
  UnramifiedField() = default;
  UnramifiedElement reduce(std::vector<PadicScalar> prod) const;
  UnramifiedElement unit_inverse(const UnramifiedElement& u) const;

  std::int64_t p_ = 0;
  int f_ = 1;
  int cap_ = 0;
  std::vector<std::uint32_t> h_;
  std::vector<PadicScalar> hc_;
  FieldPtr k_;
  std::vector<UnramifiedElement> frob_;
  std::vector<PadicScalar> power_traces_;
};

using LFieldPtr = std::shared_ptr<const UnramifiedField>;

}  // namespace glmd
