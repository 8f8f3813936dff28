#pragma once

#include <string>
#include <vector>

#include <gmpxx.h>

#include "glmd/corestrict.hpp"
#include "glmd/stratum.hpp"

namespace glmd {

// An element of Q/Z, kept in [0, 1).
class CharacterValue {
 public:
  CharacterValue() = default;
  explicit CharacterValue(mpq_class q);

  const mpq_class& value() const { return q_; }
  bool is_trivial() const { return q_ == 0; }
  CharacterValue operator+(const CharacterValue& o) const { return CharacterValue(q_ + o.q_); }
  CharacterValue operator-(const CharacterValue& o) const { return CharacterValue(q_ - o.q_); }
  bool operator==(const CharacterValue& o) const { return q_ == o.q_; }
  bool operator!=(const CharacterValue& o) const { return q_ != o.q_; }
  std::string to_string() const { return q_.get_str(); }

 private:
  mpq_class q_ = 0;
};

// psi_F(y) = {y/p}: trivial on p Z_p, non-trivial on Z_p.
CharacterValue psi_F(const PadicScalar& y);
// psi_F(trd(x)).
CharacterValue psi_A(const DivisionAlgebra& D, const MatD& x);
// psi_A(c(x - 1)).
CharacterValue psi_c(const DivisionAlgebra& D, const MatD& c, const MatD& x);

// The o_F-lattice h (or j) of H(beta, Lambda) (or J) and its levels h^i = h ∩ a_i.
struct OrderFiltration {
  LatticeSequence L;
  OLattice order;
  // beta and k0 at each step of the recursion, outermost first.
  std::vector<std::string> provenance;

  OLattice level(int i) const { return order.intersect(L.a_lattice(i)); }
  // g - 1 in h^i.
  bool contains_unit(const MatD& g, int i) const;
};

// Requires a valid defining sequence whose first member is semi-pure.
OrderFiltration h_order(const Stratum& s, const DefiningSequence& seq);
OrderFiltration j_order(const Stratum& s, const DefiningSequence& seq);

// r >= floor(n/2) + 1.
bool in_singleton_range(const Stratum& s);
// psi_beta(x) for x in 1 + a_{r+1}; throws OutOfSingletonRange below the range.
CharacterValue singleton_character(const Stratum& s, const MatD& x);
// psi_beta(g^{-1} h g) = psi_beta'(h) for h = 1 + x, x running over o_F-generators of
// g a_{r+1} g^{-1} ∩ a'_{r'+1}.
bool intertwines_singleton(const MatD& g, const Stratum& a, const Stratum& b);

}  // namespace glmd
