#pragma once

#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "glmd/csa.hpp"
#include "glmd/filtered.hpp"
#include "glmd/lattice.hpp"
#include "glmd/residue.hpp"
#include "glmd/semipure.hpp"

namespace glmd {

// [Lambda, n, r, beta] with beta in a_{-n} and 0 <= r <= n.
struct Stratum {
  LatticeSequence L;
  int n = 0;
  int r = 0;
  MatD beta;

  Stratum() = default;
  Stratum(LatticeSequence L, int n, int r, MatD beta);

  const AlgebraPtr& algebra() const { return L.algebra(); }
  int m() const { return L.m(); }
  bool is_zero_stratum() const;
  // [Lambda, n, r', beta].
  Stratum with_r(int r2) const;
  // [Lambda, n, n - 1, beta].
  Stratum minimal_coarsening() const;
};

bool is_equivalent(const Stratum& a, const Stratum& b);
// beta in a_{-r}.
bool is_equiv_zero(const Stratum& s);

MatD y_element(const Stratum& s);
struct CharMinPoly {
  ResiduePoly chi;
  ResiduePoly mu;
};
// chi from the action on sum Lambda_j/Lambda_{j+1}; requires n = r + 1.
CharMinPoly char_min_poly(const Stratum& s);
bool is_fundamental(const Stratum& s);
bool mult_map_condition(const Stratum& s);
bool mult_map_condition_range(const Stratum& s, int t_begin, int t_end);

// Minimal criteria inside a filtered algebra S for [n, r] with n <= r + 1 and beta in S.
struct MinimalAnalysis {
  bool equiv_zero = false;
  ResiduePoly mu;
  bool fundamental = false;
  bool mult_ok = false;
  bool simple = false;
  bool semisimple = false;
};
MinimalAnalysis analyze_minimal(const FilteredAlgebra& S, const MatD& beta, int n, int r);

bool is_equiv_simple_minimal(const Stratum& s);
bool is_equiv_semisimple_minimal(const Stratum& s);

mpq_class level(const Stratum& s);
// kInfVal for zero strata.
int group_level(const Stratum& s);
int degree(const Stratum& s);
// gcd of e(Lambda^i | E_i) over the blocks of beta.
int e_lambda_E(const Stratum& s);

FilteredAlgebra centralizer(const MatD& beta, const LatticeSequence& L);
int critical_exponent(const Stratum& s);

// A block of a certified stratum. Blocks whose element lies in a_{-r} are merged into one zero block.
struct StratumBlock {
  SemiPureBlock data;
  int n_i = 0;
  int k0 = kNegInf;
  bool simple = false;
};

struct Certification {
  std::vector<StratumBlock> blocks;
  // Equivalent representative: beta with the merged blocks removed.
  MatD beta;
  bool semisimple = false;
  std::string reason;
  bool simple() const { return semisimple && blocks.size() == 1; }
};
// Throws NotSemiPure or CertificationUnavailable when beta has no usable block structure.
Certification certify(const Stratum& s);

enum class Verdict { False, True, Undecidable };
std::string to_string(Verdict v);

struct Classification {
  bool minimal = false;
  bool equiv_zero = false;
  std::optional<bool> fundamental;
  std::optional<ResiduePoly> mu;
  std::optional<ResiduePoly> chi;
  Verdict simple = Verdict::Undecidable;
  Verdict semisimple = Verdict::Undecidable;
  std::string method;
};
Classification classify(const Stratum& s);

Stratum direct_sum(const Stratum& a, const Stratum& b);
// [e' Lambda ⊕ e Lambda', max(n e', n' e), max(r e', r' e), beta ⊕ beta'].
Stratum scaled_direct_sum(const Stratum& a, const Stratum& b);
Stratum dagger(const Stratum& s);
// Requires a certified simple stratum.
Stratum ddagger(const Stratum& s);
// Restriction of scalars to the centre Q_p.
Stratum res_F(const Stratum& s);
// Base change to the unramified extension of degree d * k of Q_p, split over it.
Stratum tensor_L(const Stratum& s, int k = 1);

// g(beta + a_{-r})g^{-1} meets beta' + a'_{-r'}.
bool intertwines(const MatD& g, const Stratum& a, const Stratum& b);

struct IntertwiningLattice {
  OLattice m;
  int k0 = kNegInf;
  std::string description;
};
IntertwiningLattice intertwining_lattice(const Stratum& s);

struct BlockMatch {
  int i = 0;
  int j = 0;
  int dim_D = 0;
  int e = 1;
  int f = 1;
  int k0 = kNegInf;
};
struct Matching {
  std::vector<int> zeta;
  std::vector<BlockMatch> pairs;
};
Matching matching(const Stratum& a, const Stratum& b);

}  // namespace glmd
