#pragma once

#include <vector>

#include "glmd/csa.hpp"
#include "glmd/kmatrix.hpp"
#include "glmd/lattice.hpp"

namespace glmd {

// One block of a certified semi-pure element: beta restricted to V^i generates the field E_i.
struct SemiPureBlock {
  MatD idempotent;
  // Q_p-basis of V^i in V-coordinates.
  KMatrix basis;
  int dim_D = 0;
  // beta 1^i = shift 1^i + (nilpotent-free part generating E_i over F).
  PadicScalar shift;
  bool zero = false;
  bool scalar = false;
  int e = 1;
  int f = 1;
  // nu_Lambda(beta 1^i), or kInfVal for a zero block.
  int nu = kInfVal;
  // e(Lambda^i | E_i).
  int e_Lambda_E = 1;
  MatD pi_E;
  MatD unit_gen;
  // o_F-basis of o_E (times 1^i).
  std::vector<MatD> oE_basis;
  // Minimal polynomial over Q_p of (beta - shift) on V^i.
  PadicPoly minpoly;

  int degree() const { return e * f; }
};

struct SemiPureData {
  std::vector<SemiPureBlock> blocks;
};

// Decomposes beta into blocks generating fields and checks that Lambda splits into
// o_{E_i}-lattice sequences. Throws NotSemiPure when beta is not semi-pure for Lambda,
// CertificationUnavailable when the field structure cannot be certified.
SemiPureData certify_semipure(const MatD& beta, const LatticeSequence& L);

// Restriction of a Q_p-operator T to the T-invariant subspace spanned by the columns of W.
KMatrix restrict_operator(const KMatrix& T, const KMatrix& W);
// Minimal polynomial of T (monic, low to high) from Krylov sequences; nullopt if not certified.
std::optional<PadicPoly> krylov_minpoly(const KMatrix& T);
// Irreducibility by a single Newton slope v/e with irreducible residual polynomial.
// Returns (e, f, v) on success.
struct OreData {
  int e = 1;
  int f = 1;
  int v = 0;
};
std::optional<OreData> ore_irreducible(const PadicPoly& Q);

}  // namespace glmd
