#include "glmd/semipure.hpp"

#include <numeric>

#include "glmd/error.hpp"
#include "glmd/padic_poly.hpp"

namespace glmd {

KMatrix restrict_operator(const KMatrix& T, const KMatrix& W) {
  KMatrix R(T.prime(), T.cap(), W.cols(), W.cols());
  KMatrix TW = T * W;
  for (int j = 0; j < W.cols(); ++j) {
    auto y = solve(W, TW.column(j));
    if (!y) throw InsufficientPrecision("subspace is not invariant at this precision");
    R.set_column(j, *y);
  }
  return R;
}

std::optional<PadicPoly> krylov_minpoly(const KMatrix& T) {
  const int k = T.rows();
  const std::int64_t p = T.prime();
  const int cap = T.cap();
  std::optional<PadicPoly> best;
  for (int start = 0; start < k; ++start) {
    std::vector<KVector> seq;
    KVector v(k, PadicScalar::zero(p, cap));
    v[start] = PadicScalar::from_int(p, cap, 1);
    seq.push_back(v);
    for (int s = 1; s <= k; ++s) {
      KVector w = T.apply(seq.back());
      KMatrix M = KMatrix::from_columns(p, cap, k, seq);
      auto a = solve(M, w);
      if (a) {
        PadicPoly Q;
        for (auto& x : *a) Q.c.push_back(-x);
        Q.c.push_back(PadicScalar::from_int(p, cap, 1));
        if (!best || Q.degree() > best->degree()) best = Q;
        break;
      }
      seq.push_back(w);
    }
    if (best && best->degree() == k) break;
  }
  if (!best) return std::nullopt;
  if (!eval_poly(*best, T).is_zero()) return std::nullopt;
  return best;
}

std::optional<OreData> ore_irreducible(const PadicPoly& Q) {
  const int N = Q.degree();
  if (N < 1) return std::nullopt;
  auto segs = newton_polygon(Q);
  if (segs.size() != 1 || segs[0].slope >= kInfVal) return std::nullopt;
  const mpq_class& s = segs[0].slope;
  const int e = static_cast<int>(s.get_den().get_si());
  const int v = static_cast<int>(s.get_num().get_si());
  if (N % e) return std::nullopt;
  const int f = N / e;
  auto fp = ResidueField::prime(static_cast<std::uint32_t>(Q.lead().prime()));
  std::vector<Fq> r(f + 1);
  for (int j = 0; j <= f; ++j) r[f - j] = Q.c[N - j * e].shifted(-j * v).residue();
  ResiduePoly R(fp, r);
  if (!is_irreducible(R)) return std::nullopt;
  return OreData{e, f, v};
}

namespace {

struct Leaf {
  KMatrix W;
  PadicScalar shift;
  bool scalar = false;
  OreData ore;
  PadicPoly minpoly;
};

KMatrix kpow(const KMatrix& T, int e) {
  KMatrix r = KMatrix::identity(T.prime(), T.cap(), T.rows());
  for (int i = 0; i < e; ++i) r = r * T;
  return r;
}

int poly_precision(const PadicPoly& P) {
  int N = P.lead().cap();
  for (auto& c : P.c) N = std::min(N, c.abs_precision());
  return N;
}

// Invariant subspaces of Z from the factorization of its characteristic polynomial mod p.
// Z must have integral eigenvalues.
std::vector<KMatrix> fitting_split(const KMatrix& Z) {
  const std::int64_t p = Z.prime();
  PadicPoly P = charpoly(Z);
  auto fp = ResidueField::prime(static_cast<std::uint32_t>(p));
  ResiduePoly R = reduce_mod_p(P, fp);
  auto fac = factor(R);
  if (fac.size() <= 1) return {KMatrix::identity(p, Z.cap(), Z.rows())};
  std::vector<ResiduePoly> groups;
  for (auto& [phi, k] : fac) {
    ResiduePoly g = ResiduePoly::constant(fp, 1);
    for (int i = 0; i < k; ++i) g = g * phi;
    groups.push_back(g);
  }
  const int N = poly_precision(P);
  if (N < 1) throw InsufficientPrecision("characteristic polynomial has no precision left");
  auto lifted = hensel_lift(P, groups, N);
  std::vector<KMatrix> out;
  int total = 0;
  for (auto& G : lifted) {
    KMatrix K = kernel(eval_poly(G, Z));
    total += K.cols();
    out.push_back(K);
  }
  if (total != Z.rows()) throw InsufficientPrecision("Fitting decomposition lost precision");
  return out;
}

void certify_sub(const KMatrix& W, const KMatrix& T, const PadicScalar& shift, int depth, std::vector<Leaf>& out) {
  const int k = T.rows();
  if (k == 0) return;
  const std::int64_t p = T.prime();
  const int cap = T.cap();
  if (depth > cap) throw CertificationUnavailable("scalar shifting did not terminate");
  {
    PadicScalar c0 = T.at(0, 0);
    KMatrix S = T - KMatrix::identity(p, cap, k).scaled(c0);
    if (S.is_zero()) {
      Leaf l;
      l.W = W;
      l.shift = shift + c0;
      l.scalar = true;
      out.push_back(l);
      return;
    }
  }
  auto recurse_pieces = [&](const std::vector<KMatrix>& pieces) {
    for (auto& K : pieces) certify_sub(W * K, restrict_operator(T, K), shift, depth + 1, out);
  };
  PadicPoly P = charpoly(T);
  auto segs = newton_polygon(P);
  if (segs.empty()) throw InsufficientPrecision("characteristic polynomial undetermined");
  // Smallest root valuation.
  const NewtonSegment* low = nullptr;
  for (auto& sg : segs)
    if (sg.slope < kInfVal && (!low || sg.slope < low->slope)) low = &sg;
  if (!low) throw NotSemiPure("beta has a non-zero nilpotent part");
  const int e = static_cast<int>(low->slope.get_den().get_si());
  const int v = static_cast<int>(low->slope.get_num().get_si());
  KMatrix Z = kpow(T, e).scaled(PadicScalar::p_power(p, cap, -v));
  auto pieces = fitting_split(Z);
  if (pieces.size() > 1) {
    recurse_pieces(pieces);
    return;
  }
  if (segs.size() > 1) throw InsufficientPrecision("slope splitting failed");
  auto Q = krylov_minpoly(T);
  if (Q) {
    if (auto ore = ore_irreducible(*Q)) {
      Leaf l;
      l.W = W;
      l.shift = shift;
      l.ore = *ore;
      l.minpoly = *Q;
      out.push_back(l);
      return;
    }
  }
  if (e == 1) {
    auto fp = ResidueField::prime(static_cast<std::uint32_t>(p));
    auto fac = factor(reduce_mod_p(charpoly(Z), fp));
    if (fac.size() == 1 && fac[0].first.degree() == 1) {
      Fq a = fp->neg(fac[0].first.coeff(0));
      PadicScalar c = PadicScalar::from_int(p, cap, a) * PadicScalar::p_power(p, cap, v);
      KMatrix T2 = T - KMatrix::identity(p, cap, k).scaled(c);
      certify_sub(W, T2, shift + c, depth + 1, out);
      return;
    }
  }
  throw CertificationUnavailable("field structure of a block cannot be certified by slope and residue data");
}

MatD block_power(const DivisionAlgebra& D, const MatD& x, int k, const MatD& idem) {
  MatD r = idem;
  for (int i = 0; i < k; ++i) r = D.mmul(r, x);
  return r;
}

}  // namespace

SemiPureData certify_semipure(const MatD& beta, const LatticeSequence& L) {
  const auto& D = *L.algebra();
  if (D.center_degree() != 1) throw CertificationUnavailable("semi-pure certification needs centre Q_p");
  const std::int64_t p = D.p();
  const int cap = D.cap();
  const int m = beta.m;
  KMatrix T = D.restrict_to_F(beta);
  const int N = T.rows();
  std::vector<Leaf> leaves;
  certify_sub(KMatrix::identity(p, cap, N), T, PadicScalar::zero(p, cap), 0, leaves);

  KMatrix Bmat(p, cap, N, 0);
  for (auto& l : leaves) Bmat = Bmat.hcat(l.W);
  if (Bmat.cols() != N) throw InsufficientPrecision("block decomposition is incomplete");
  KMatrix Binv = inverse(Bmat);

  SemiPureData out;
  const int eF = L.period_F();
  int offset = 0;
  bool seen_zero = false;
  for (auto& l : leaves) {
    const int k = l.W.cols();
    KMatrix proj = l.W * Binv.block(offset, 0, k, N);
    offset += k;
    SemiPureBlock b;
    b.idempotent = D.from_v_operator(m, proj);
    b.basis = l.W;
    b.dim_D = k / (D.d() * D.fl());
    b.shift = l.shift;
    if (!in_square_lattice(b.idempotent, L, 0)) throw NotSemiPure("the lattice sequence is not split by the blocks of beta");
    const MatD& one = b.idempotent;
    MatD pe = D.mscale(one, PadicScalar::from_int(p, cap, p));
    if (l.scalar) {
      b.scalar = true;
      b.zero = l.shift.is_zero();
      b.pi_E = pe;
      b.unit_gen = one;
      b.oE_basis = {one};
      b.minpoly.c = {PadicScalar::zero(p, cap), PadicScalar::from_int(p, cap, 1)};
      if (b.zero) {
        if (seen_zero) throw NotSemiPure("two zero blocks");
        seen_zero = true;
      }
    } else {
      b.e = l.ore.e;
      b.f = l.ore.f;
      b.minpoly = l.minpoly;
      MatD shifted = D.mmul(D.msub(beta, D.mscalar(m, D.from_scalar(l.shift))), one);
      int a = 0;
      while ((a * l.ore.v - 1) % b.e != 0) ++a;
      const int bexp = (1 - a * l.ore.v) / b.e;
      b.pi_E = D.mscale(block_power(D, shifted, a, one), PadicScalar::p_power(p, cap, bexp));
      b.unit_gen = D.mscale(block_power(D, shifted, b.e, one), PadicScalar::p_power(p, cap, -l.ore.v));
      MatD yi = one;
      for (int i = 0; i < b.f; ++i) {
        MatD t = yi;
        for (int j = 0; j < b.e; ++j) {
          b.oE_basis.push_back(t);
          t = D.mmul(t, b.pi_E);
        }
        yi = D.mmul(yi, b.unit_gen);
      }
    }
    for (auto& x : b.oE_basis)
      if (!in_square_lattice(x, L, 0)) throw NotSemiPure("a block lattice sequence is not an o_E-lattice sequence");
    if (eF % b.e) throw NotSemiPure("e(E|F) does not divide the period of the lattice sequence");
    b.e_Lambda_E = eF / b.e;
    if (val_Lambda(b.pi_E, L) != b.e_Lambda_E) throw NotSemiPure("uniformizer of E_i has the wrong valuation");
    MatD comp = D.msub(D.midentity(m), one);
    MatD pinv = D.mmul(D.minv(D.madd(b.pi_E, comp)), one);
    if (val_Lambda(pinv, L) != -b.e_Lambda_E) throw NotSemiPure("block lattice sequence is not o_E-periodic");
    b.nu = b.zero ? kInfVal : val_Lambda(D.mmul(beta, one), L);
    out.blocks.push_back(std::move(b));
  }
  return out;
}

}  // namespace glmd
