#pragma once

#include <memory>
#include <string>
#include <vector>

#include "glmd/kmatrix.hpp"
#include "glmd/unramified.hpp"

namespace glmd {

// Sum of a_i pi^i, i = 0..d-1, with coefficients on the left.
struct DElement {
  std::vector<UnramifiedElement> a;
};

// m x m matrix over D, row-major.
struct MatD {
  int m = 0;
  std::vector<DElement> e;
  DElement& at(int i, int j) { return e[static_cast<std::size_t>(i) * m + j]; }
  const DElement& at(int i, int j) const { return e[static_cast<std::size_t>(i) * m + j]; }
};

using LMatrix = std::vector<std::vector<UnramifiedElement>>;

// D = L[pi] with pi a pi^{-1} = sigma(a) and pi^d = p, over the centre K.
// K is Q_p, or (only when d = 1) the unramified extension of degree center_degree.
class DivisionAlgebra {
 public:
  static std::shared_ptr<const DivisionAlgebra> create(std::int64_t p, int d, int cap, int center_degree = 1);

  std::int64_t p() const { return p_; }
  int d() const { return d_; }
  int cap() const { return cap_; }
  int center_degree() const { return fk_; }
  // Degree of L over Q_p.
  int fl() const { return L_->degree(); }
  const LFieldPtr& L() const { return L_; }
  const FieldPtr& residue_field_K() const { return kK_; }
  const FieldPtr& prime_field() const { return fp_; }

  // Elements of D.
  DElement zero() const;
  DElement one() const { return from_int(1); }
  DElement from_int(std::int64_t v) const;
  DElement from_scalar(const PadicScalar& s) const;
  DElement from_L(const UnramifiedElement& a) const;
  DElement pi_power(int k) const;
  DElement add(const DElement& x, const DElement& y) const;
  DElement sub(const DElement& x, const DElement& y) const;
  DElement neg(const DElement& x) const;
  DElement mul(const DElement& x, const DElement& y) const;
  DElement scale(const DElement& x, const PadicScalar& s) const;
  DElement inv(const DElement& x) const;
  UnramifiedElement sigma(const UnramifiedElement& a, int k = 1) const;
  bool is_zero(const DElement& x) const;
  bool is_exact_zero(const DElement& x) const;
  int valuation(const DElement& x) const;
  std::string to_string(const DElement& x) const;

  // Elements of A = M_m(D).
  MatD mzero(int m) const;
  MatD midentity(int m) const;
  MatD mscalar(int m, const DElement& x) const;
  MatD madd(const MatD& x, const MatD& y) const;
  MatD msub(const MatD& x, const MatD& y) const;
  MatD mneg(const MatD& x) const;
  MatD mmul(const MatD& x, const MatD& y) const;
  MatD mscale(const MatD& x, const PadicScalar& s) const;
  MatD mpow(const MatD& x, int e) const;
  MatD minv(const MatD& x) const;
  MatD block_diag(const MatD& x, const MatD& y) const;
  bool mis_zero(const MatD& x) const;
  bool mequals(const MatD& x, const MatD& y) const { return mis_zero(msub(x, y)); }
  std::string to_string(const MatD& x) const;

  // Q_p-coordinates of A: index ((k m + l) d + i) fl + a.
  int coord_dim(int m) const { return m * m * d_ * fl(); }
  KVector coords(const MatD& x) const;
  MatD from_coords(int m, const KVector& v) const;
  KMatrix left_mul_matrix(const MatD& x) const;
  KMatrix right_mul_matrix(const MatD& x) const;
  KMatrix ad_matrix(const MatD& x) const;

  // Q_p-coordinates of V = D^m: index (k d + i) fl + a.
  int v_dim(int m) const { return m * d_ * fl(); }
  // Matrix of x acting on V over Q_p.
  KMatrix restrict_to_F(const MatD& x) const;
  // Inverse of restrict_to_F for operators commuting with the right D-action.
  MatD from_v_operator(int m, const KMatrix& T) const;

  // Left regular representation on the right L-basis e_k pi^s of V.
  LMatrix split_to_L(const MatD& x) const;
  UnramifiedElement trd(const MatD& x) const;
  UnramifiedElement nrd(const MatD& x) const;
  // Tr_{K/Q_p} of the reduced trace.
  PadicScalar trd_Qp(const MatD& x) const;

  LMatrix lmul(const LMatrix& a, const LMatrix& b) const;
  UnramifiedElement ltrace(const LMatrix& a) const;
  UnramifiedElement ldet(LMatrix a) const;

 private:
  DivisionAlgebra() = default;
  std::int64_t p_ = 0;
  int d_ = 1;
  int cap_ = 0;
  int fk_ = 1;
  LFieldPtr L_;
  FieldPtr kK_;
  FieldPtr fp_;
};

using AlgebraPtr = std::shared_ptr<const DivisionAlgebra>;

}  // namespace glmd
