#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "glmd/filtered.hpp"
#include "glmd/semipure.hpp"
#include "glmd/stratum.hpp"

namespace glmd {

// s = sum_j lambda_j P with P the trd-orthogonal projection A -> B = C_A(gamma).
struct TameCorestriction {
  MatD gamma;
  LatticeSequence L;
  SemiPureData blocks;
  // C_A(gamma), and its summands C_{1^j A 1^j}(gamma 1^j).
  FilteredAlgebra B;
  std::vector<FilteredAlgebra> B_blocks;
  // Matrix of P in A-coordinates.
  KMatrix projection;
  // Matrix of s in A-coordinates.
  KMatrix matrix;
  std::vector<MatD> lambda;
  // lambda_j = pi_{E_j}^{lambda_exponent[j]}.
  std::vector<int> lambda_exponent;

  MatD apply(const MatD& x) const;
};

// Throws NormalizationFailed when no pi_E^k, |k| <= 3, gives s(a_i) = b_i on a period.
TameCorestriction tame_corestriction(const MatD& gamma, const LatticeSequence& L);

struct DerivedComponent {
  FilteredAlgebra B;
  MatD element;
  MatD pi_E;
  MatD unit_gen;
  int e_E = 1;
  int f = 1;
};

// [j_E(Lambda), n, r, s(beta - gamma)] with the filtration b_t = a_t ∩ B.
struct DerivedStratum {
  int n = 0;
  int r = 0;
  MatD element;
  std::vector<DerivedComponent> components;
  bool is_zero() const { return n == r; }
};

// Throws DepthMismatch unless n > r and beta - gamma lies in a_{-(r+1)}.
DerivedStratum derived_stratum(const Stratum& s, const MatD& gamma, const TameCorestriction& c);

struct DerivedComponentVerdict {
  bool equiv_zero = false;
  // Minimal polynomial of y_E on b_0/b_1 over the residue field of E.
  ResiduePoly mu;
  bool mult_ok = false;
  bool simple = false;
  bool semisimple = false;
};

struct DerivedClassification {
  std::vector<DerivedComponentVerdict> components;
  bool equiv_zero = false;
  bool simple = false;
  bool semisimple = false;
  // "zero", "simple", "semisimple" or "neither".
  std::string summary() const;
};

// Minimal criteria in each summand of B; throws Undecidable when n > r + 1.
DerivedClassification classify_derived(const DerivedStratum& d);

struct DefiningSequence {
  // strata[j] = [Lambda, n, r + j, beta(j)].
  std::vector<Stratum> strata;
};

// Throws InvalidArgument when a member has the wrong shape, is not equivalent to Delta(j+),
// is not certified semisimple (j >= 1) or is not split by the previous member.
void validate_defining_sequence(const Stratum& s, const DefiningSequence& seq);
// [Delta, [Lambda, n, n, 0]] for n = r + 1.
DefiningSequence minimal_defining_sequence(const Stratum& s);
// A semisimple beta' in beta + a_{1-n} for a stratum with n = r + 1, found among
// beta + (digit lifts of a_{1-n}/a_{2-n}). Throws Undecidable after max_candidates tries.
MatD semisimple_witness(const Stratum& s, std::size_t max_candidates = 4096);

struct InductionResult {
  bool semisimple = false;
  std::string method;
  std::vector<DerivedClassification> derived;
};
InductionResult strata_induction(const Stratum& s, const DefiningSequence& seq);
bool strata_induction_decide(const Stratum& s, const DefiningSequence& seq);

// k0 of each member of the sequence.
std::vector<int> sequence_k0(const DefiningSequence& seq);
// r followed by the r + j with k0(Delta(j-1)) > k0(Delta(j)), in increasing order.
std::vector<int> jump_sequence(const DefiningSequence& seq);
// Index j of the core approximation Delta(j); 0 when Delta is its own core approximation.
int core_approximation(const DefiningSequence& seq);

// Ranks in n_{-r} ∩ a_{-r-k0} -> a_{-r}/a_{1-r} -> b_{-r}/b_{1-r} -> 0, over F_p.
struct ExactnessRanks {
  int rank_ad = 0;
  int rank_s = 0;
  int dim_a = 0;
  int dim_b = 0;
  bool composite_zero = false;
  bool exact() const { return composite_zero && rank_ad + rank_s == dim_a && rank_s == dim_b; }
};
// Uses the certified representative of s.
ExactnessRanks exactness_ranks(const Stratum& s);

}  // namespace glmd
