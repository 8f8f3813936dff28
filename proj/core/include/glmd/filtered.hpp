#pragma once

#include <vector>

#include "glmd/csa.hpp"
#include "glmd/kmatrix.hpp"
#include "glmd/lattice.hpp"
#include "glmd/residue.hpp"

namespace glmd {

inline constexpr int kNegInf = -kInfVal;

// A unital subalgebra S of A (possibly A itself) with the filtration s_t = a_t ∩ S.
class FilteredAlgebra {
 public:
  FilteredAlgebra() = default;
  explicit FilteredAlgebra(LatticeSequence L);
  // span: Q_p-basis of S in A-coordinates; unit: the identity element of S.
  FilteredAlgebra(LatticeSequence L, KMatrix span, MatD unit);

  const LatticeSequence& lattice() const { return L_; }
  const AlgebraPtr& algebra() const { return L_.algebra(); }
  bool is_whole() const { return whole_; }
  const KMatrix& span() const { return span_; }
  const MatD& unit() const { return unit_; }
  int dim() const { return whole_ ? algebra()->coord_dim(L_.m()) : span_.cols(); }
  bool contains(const MatD& x) const;

  OLattice level(int t) const;
  // Left multiplication by x as a map s_t/s_{t+1} -> s_{t+k}/s_{t+k+1}, over F_p.
  FqMatrix graded_mult(const MatD& x, int t, int k) const;
  // Minimal polynomial of y in s_0 acting on s_0/s_1 (over the residue field of the centre
  // when S = A, otherwise over F_p).
  ResiduePoly residue_minpoly(const MatD& y) const;
  ResiduePoly residue_charpoly(const MatD& y) const;
  // ker(m_{t+1}) ∩ im(m_t) = 0 for the maps m_t: s_{-tn}/s_{1-tn} -> s_{-(t+1)n}/s_{1-(t+1)n}
  // given by beta, for t in [t_begin, t_end).
  bool mult_map_condition(const MatD& beta, int n, int t_begin, int t_end) const;
  // Same, over one period of the maps: t in [0, e/gcd(e, n)).
  bool mult_map_condition(const MatD& beta, int n) const;

  // p^{n/g} beta^{e/g} with g = gcd(e, n), e the F-period.
  MatD y_element(const MatD& beta, int n) const;

 private:
  FqMatrix residue_action(const MatD& y) const;

  LatticeSequence L_;
  bool whole_ = true;
  KMatrix span_;
  MatD unit_;
};

// Residue action of y in a_0 on sum Lambda_j/Lambda_{j+1}, over the residue field of the centre.
FqMatrix quotient_action_center(const MatD& y, const LatticeSequence& L);

// Q_p-span of x A x' for idempotents.
KMatrix corner_span(const DivisionAlgebra& D, const MatD& e);
// Centralizer of x inside S.
FilteredAlgebra centralizer_in(const FilteredAlgebra& S, const MatD& x);

// max(nu, sup{k : n_k ⊄ (s_0 ∩ C_S(beta)) + s_1}) with n_k = {x in s_0 : [beta, x] in a_k}.
// Returns kNegInf for beta central in S (in particular beta = 0); throws ThresholdOutOfWindow when the containment fails at k = 0.
int critical_exponent_in(const FilteredAlgebra& S, const MatD& beta);

}  // namespace glmd
