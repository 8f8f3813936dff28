#pragma once

#include <optional>
#include <vector>

#include "glmd/padic.hpp"
#include "glmd/padic_poly.hpp"
#include "glmd/residue.hpp"

namespace glmd {

using KVector = std::vector<PadicScalar>;

// Dense matrix over Q_p.
class KMatrix {
 public:
  KMatrix() = default;
  KMatrix(std::int64_t p, int cap, int rows, int cols);
  static KMatrix identity(std::int64_t p, int cap, int n);
  static KMatrix from_columns(std::int64_t p, int cap, int rows, const std::vector<KVector>& cols);

  std::int64_t prime() const { return p_; }
  int cap() const { return cap_; }
  int rows() const { return r_; }
  int cols() const { return c_; }
  PadicScalar& at(int i, int j) { return a_[static_cast<std::size_t>(i) * c_ + j]; }
  const PadicScalar& at(int i, int j) const { return a_[static_cast<std::size_t>(i) * c_ + j]; }

  KVector column(int j) const;
  void set_column(int j, const KVector& v);
  KMatrix operator*(const KMatrix& o) const;
  KMatrix operator+(const KMatrix& o) const;
  KMatrix operator-(const KMatrix& o) const;
  KMatrix scaled(const PadicScalar& s) const;
  KMatrix transpose() const;
  KMatrix hcat(const KMatrix& o) const;
  KMatrix vcat(const KMatrix& o) const;
  KMatrix block(int r0, int c0, int nr, int nc) const;
  KVector apply(const KVector& v) const;
  bool is_zero() const;
  PadicScalar zero() const { return PadicScalar::zero(p_, cap_); }

 private:
  std::int64_t p_ = 0;
  int cap_ = 0;
  int r_ = 0;
  int c_ = 0;
  std::vector<PadicScalar> a_;
};

int rank(const KMatrix& M);
// Columns form a basis of the kernel; each column is primitive.
KMatrix kernel(const KMatrix& M);
std::optional<KVector> solve(const KMatrix& M, const KVector& b);
KMatrix inverse(const KMatrix& M);
PadicPoly charpoly(const KMatrix& M);
KMatrix eval_poly(const PadicPoly& P, const KMatrix& M);
// Reduction mod p of an integral matrix.
FqMatrix reduce_mod_p(const KMatrix& M, const FieldPtr& fp);

// Full-rank o-lattice (of any rank) inside Q_p^N, kept in column echelon form.
class OLattice {
 public:
  OLattice() = default;
  static OLattice from_generators(const KMatrix& G);
  static OLattice monomial(std::int64_t p, int cap, const std::vector<int>& bounds);
  static OLattice zero(std::int64_t p, int cap, int ambient);

  int ambient_dim() const { return basis_.rows(); }
  int rank() const { return basis_.cols(); }
  const KMatrix& basis() const { return basis_; }
  KVector generator(int j) const { return basis_.column(j); }

  std::optional<KVector> coordinates(const KVector& x) const;
  bool contains(const KVector& x) const { return coordinates(x).has_value(); }
  bool contains(const OLattice& o) const;
  bool operator==(const OLattice& o) const { return contains(o) && o.contains(*this); }

  OLattice sum(const OLattice& o) const;
  OLattice intersect(const OLattice& o) const;
  OLattice scaled(int k) const;
  OLattice image(const KMatrix& M) const;
  // Span over Q_p intersected with this lattice.
  OLattice meet_subspace(const KMatrix& span) const;

 private:
  KMatrix basis_;
  std::vector<int> piv_;
};

// {x in L0 : M x in L}.
OLattice preimage(const KMatrix& M, const OLattice& L0, const OLattice& L);
// Basis of colspace(M) intersected with Z_p^N.
KMatrix saturate(const KMatrix& M);

// The F_p-space big/small for lattices with p*big inside small inside big.
class LatticeQuotient {
 public:
  LatticeQuotient(const OLattice& big, const OLattice& small);
  int dim() const { return static_cast<int>(free_.size()); }
  std::vector<Fq> coords(const KVector& x) const;
  KVector lift(int i) const;
  const OLattice& big() const { return big_; }

 private:
  OLattice big_;
  FieldPtr fp_;
  FqMatrix rref_;
  std::vector<int> pivots_;
  std::vector<int> free_;
};

}  // namespace glmd
