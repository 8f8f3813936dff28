#pragma once

#include <vector>

#include "glmd/csa.hpp"
#include "glmd/kmatrix.hpp"
#include "glmd/residue.hpp"

namespace glmd {

// Exponents alpha_{kl}: x lies in the square lattice iff nu_D(x_{kl}) >= alpha_{kl}.
using SquareLattice = std::vector<std::vector<int>>;

// Split o_D-lattice sequence in V = D^m: Lambda_j = sum_k e_k p_D^{c_k(j)} o_D,
// with c_k(j + e_D) = c_k(j) + 1.
class LatticeSequence {
 public:
  LatticeSequence() = default;
  // profile[j][k] = c_k(j) for j = 0..e_D-1.
  LatticeSequence(AlgebraPtr D, std::vector<std::vector<int>> profile);
  // Lambda_j = p_D^j o_D^m.
  static LatticeSequence standard(AlgebraPtr D, int m);

  const AlgebraPtr& algebra() const { return D_; }
  int m() const { return m_; }
  int period_D() const { return static_cast<int>(c_.size()); }
  int period_F() const { return D_->d() * period_D(); }
  const std::vector<std::vector<int>>& profile() const { return c_; }
  int c(int k, int j) const;
  bool is_strict() const;

  int alpha(int k, int l, int t) const;
  SquareLattice square_lattice(int t) const;
  // Q_p-lattices: a_t inside A, and Lambda_j inside V.
  OLattice a_lattice(int t) const;
  OLattice v_lattice(int j) const;

  // (Lambda - i)_j = Lambda_{j+i}.
  LatticeSequence translated(int i) const;
  // (k Lambda)_j = Lambda_{ceil(j/k)}.
  LatticeSequence scaled(int k) const;
  static LatticeSequence direct_sum(const LatticeSequence& a, const LatticeSequence& b);

  bool operator==(const LatticeSequence& o) const { return m_ == o.m_ && c_ == o.c_; }

 private:
  AlgebraPtr D_;
  int m_ = 0;
  std::vector<std::vector<int>> c_;
};

// Bounds on the Q_p-coordinates of an element of A forced by a_t.
std::vector<int> coordinate_bounds(const DivisionAlgebra& D, int m, const SquareLattice& a);

// x in a_t; throws InsufficientPrecision when undecided.
bool in_square_lattice(const MatD& x, const LatticeSequence& L, int t);
// Largest t with x in a_t, or kInfVal for x = 0.
int val_Lambda(const MatD& x, const LatticeSequence& L);
// Equality of a_s and a'_s for all s <= s_max; requires equal periods.
bool same_filtration_upto(const LatticeSequence& L, const LatticeSequence& M, int s_max);

// Action of x in a_0 on M = sum_{j < e_D} Lambda_j / Lambda_{j+1}, as an F_p-matrix of size m * fl.
FqMatrix quotient_action(const MatD& x, const LatticeSequence& L);

}  // namespace glmd
