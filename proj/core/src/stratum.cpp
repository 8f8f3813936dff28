#include "glmd/stratum.hpp"

#include <numeric>

#include "glmd/error.hpp"
#include "glmd/unramified.hpp"

namespace glmd {

namespace {

int floor_div(int a, int b) { return a >= 0 ? a / b : -((-a + b - 1) / b); }
int ceil_div(int a, int b) { return -floor_div(-a, b); }

void require_same_algebra(const DivisionAlgebra& a, const DivisionAlgebra& b) {
  if (a.p() != b.p() || a.d() != b.d() || a.center_degree() != b.center_degree())
    throw InvalidArgument("strata live in different algebras");
}

MatD from_qp_matrix(const DivisionAlgebra& D1, const KMatrix& T) {
  MatD x = D1.mzero(T.rows());
  for (int i = 0; i < T.rows(); ++i)
    for (int j = 0; j < T.cols(); ++j) x.at(i, j).a[0].c[0] = T.at(i, j);
  return x;
}

SemiPureBlock zero_block(const DivisionAlgebra& D, const MatD& idem, const KMatrix& basis, int dim_D, int eF) {
  SemiPureBlock b;
  b.idempotent = idem;
  b.basis = basis;
  b.dim_D = dim_D;
  b.shift = PadicScalar::zero(D.p(), D.cap());
  b.zero = true;
  b.scalar = true;
  b.e_Lambda_E = eF;
  b.pi_E = D.mscale(idem, PadicScalar::from_int(D.p(), D.cap(), D.p()));
  b.unit_gen = idem;
  b.oE_basis = {idem};
  b.minpoly.c = {PadicScalar::zero(D.p(), D.cap()), PadicScalar::from_int(D.p(), D.cap(), 1)};
  return b;
}

// k0 in a corner, with ThresholdOutOfWindow reported as nullopt.
std::optional<int> corner_k0(const LatticeSequence& L, const MatD& idem, const MatD& beta) {
  const auto& D = *L.algebra();
  FilteredAlgebra S(L, corner_span(D, idem), idem);
  try {
    return critical_exponent_in(S, D.mmul(beta, idem));
  } catch (const ThresholdOutOfWindow&) {
    return std::nullopt;
  }
}

// Root of the modulus of L inside the unramified field Lt.
UnramifiedElement embed_generator(const UnramifiedField& L, const UnramifiedField& Lt) {
  const std::int64_t p = L.p();
  const int cap = Lt.cap();
  std::vector<PadicScalar> h;
  for (auto c : L.modulus()) h.push_back(PadicScalar::from_int(p, cap, c));
  const auto& k = Lt.residue_field();
  std::vector<Fq> hr;
  for (auto c : L.modulus()) hr.push_back(k->from_int(c));
  ResiduePoly hres(k, hr);
  for (Fq a = 0; a < k->order(); ++a) {
    if (hres.eval(a) != 0) continue;
    std::vector<PadicScalar> dh;
    for (std::size_t i = 1; i < h.size(); ++i) dh.push_back(h[i] * PadicScalar::from_int(p, cap, static_cast<std::int64_t>(i)));
    UnramifiedElement z = Lt.from_residue(a);
    for (int it = 0; it < 2 * cap + 2; ++it) {
      UnramifiedElement hz = Lt.eval(h, z);
      if (Lt.is_zero(hz)) break;
      z = Lt.sub(z, Lt.mul(hz, Lt.inv(Lt.eval(dh, z))));
    }
    return z;
  }
  throw InvalidArgument("the residue field of L does not embed");
}

}  // namespace

Stratum::Stratum(LatticeSequence L_, int n_, int r_, MatD beta_)
    : L(std::move(L_)), n(n_), r(r_), beta(std::move(beta_)) {
  if (r < 0 || r > n) throw InvalidArgument("a stratum needs 0 <= r <= n");
  if (beta.m != L.m()) throw InvalidArgument("beta and the lattice sequence have different sizes");
  if (!in_square_lattice(beta, L, -n)) throw InvalidArgument("beta does not lie in a_{-n}");
}

bool Stratum::is_zero_stratum() const { return n == r && algebra()->mis_zero(beta); }

Stratum Stratum::with_r(int r2) const { return Stratum(L, n, r2, beta); }

Stratum Stratum::minimal_coarsening() const {
  if (n == 0) return *this;
  return Stratum(L, n, n - 1, beta);
}

bool is_equivalent(const Stratum& a, const Stratum& b) {
  require_same_algebra(*a.algebra(), *b.algebra());
  if (a.m() != b.m() || a.r != b.r) return false;
  if (!same_filtration_upto(a.L, b.L, -a.r)) return false;
  return in_square_lattice(a.algebra()->msub(a.beta, b.beta), a.L, -a.r);
}

bool is_equiv_zero(const Stratum& s) { return in_square_lattice(s.beta, s.L, -s.r); }

MatD y_element(const Stratum& s) { return FilteredAlgebra(s.L).y_element(s.beta, s.n); }

CharMinPoly char_min_poly(const Stratum& s) {
  if (s.n != s.r + 1) throw InvalidArgument("characteristic polynomial needs n = r + 1");
  FqMatrix M = quotient_action_center(y_element(s), s.L);
  return {M.charpoly(), M.minpoly()};
}

bool is_fundamental(const Stratum& s) { return !char_min_poly(s).mu.is_x_power(); }

bool mult_map_condition(const Stratum& s) { return FilteredAlgebra(s.L).mult_map_condition(s.beta, s.n); }

bool mult_map_condition_range(const Stratum& s, int t_begin, int t_end) {
  return FilteredAlgebra(s.L).mult_map_condition(s.beta, s.n, t_begin, t_end);
}

MinimalAnalysis analyze_minimal(const FilteredAlgebra& S, const MatD& beta, int n, int r) {
  if (n > r + 1) throw InvalidArgument("minimal criteria need n <= r + 1");
  MinimalAnalysis a;
  const auto& k = S.is_whole() ? S.algebra()->residue_field_K() : S.algebra()->prime_field();
  a.equiv_zero = in_square_lattice(beta, S.lattice(), -r);
  if (n <= r) {
    a.mu = ResiduePoly::x(k);
    a.mult_ok = true;
    a.simple = a.semisimple = true;
    return a;
  }
  a.mu = S.residue_minpoly(S.y_element(beta, n));
  a.fundamental = !a.mu.is_x_power();
  a.mult_ok = S.mult_map_condition(beta, n);
  const bool irreducible_not_x = is_irreducible(a.mu) && a.mu != ResiduePoly::x(a.mu.field());
  a.simple = a.equiv_zero || irreducible_not_x;
  a.semisimple = a.equiv_zero || (is_squarefree(a.mu) && a.mult_ok);
  return a;
}

bool is_equiv_simple_minimal(const Stratum& s) { return analyze_minimal(FilteredAlgebra(s.L), s.beta, s.n, s.r).simple; }

bool is_equiv_semisimple_minimal(const Stratum& s) {
  return analyze_minimal(FilteredAlgebra(s.L), s.beta, s.n, s.r).semisimple;
}

mpq_class level(const Stratum& s) {
  mpq_class q(s.n, s.L.period_F());
  q.canonicalize();
  return q;
}

int e_lambda_E(const Stratum& s) {
  auto sp = certify_semipure(s.beta, s.L);
  int g = 0;
  for (auto& b : sp.blocks) g = std::gcd(g, b.e_Lambda_E);
  return g;
}

int group_level(const Stratum& s) {
  if (s.is_zero_stratum()) return kInfVal;
  return floor_div(s.r, e_lambda_E(s));
}

int degree(const Stratum& s) {
  auto sp = certify_semipure(s.beta, s.L);
  int deg = 0;
  for (auto& b : sp.blocks) deg += b.degree();
  return deg;
}

FilteredAlgebra centralizer(const MatD& beta, const LatticeSequence& L) {
  return centralizer_in(FilteredAlgebra(L), beta);
}

int critical_exponent(const Stratum& s) {
  certify_semipure(s.beta, s.L);
  return critical_exponent_in(FilteredAlgebra(s.L), s.beta);
}

Certification certify(const Stratum& s) {
  const auto& D = *s.algebra();
  const int m = s.m();
  auto sp = certify_semipure(s.beta, s.L);
  Certification c;
  c.beta = s.beta;
  MatD zidem = D.mzero(m);
  KMatrix zbasis(D.p(), D.cap(), D.v_dim(m), 0);
  int zdim = 0;
  std::vector<SemiPureBlock> kept;
  for (auto& b : sp.blocks) {
    if (b.zero || b.nu >= -s.r) {
      zidem = D.madd(zidem, b.idempotent);
      zbasis = zbasis.hcat(b.basis);
      zdim += b.dim_D;
      if (!b.zero) c.beta = D.msub(c.beta, D.mmul(s.beta, b.idempotent));
    } else {
      kept.push_back(b);
    }
  }
  bool ok = true;
  for (auto& b : kept) {
    StratumBlock sb;
    sb.n_i = -b.nu;
    auto k0 = corner_k0(s.L, b.idempotent, c.beta);
    sb.k0 = k0 ? *k0 : 0;
    sb.simple = k0 && *k0 < -s.r;
    if (!sb.simple) {
      ok = false;
      if (c.reason.empty()) c.reason = "a block is not simple at depth r";
    }
    sb.data = std::move(b);
    c.blocks.push_back(std::move(sb));
  }
  if (zdim > 0) {
    StratumBlock sb;
    sb.data = zero_block(D, zidem, zbasis, zdim, s.L.period_F());
    sb.n_i = s.r;
    sb.simple = true;
    c.blocks.push_back(std::move(sb));
  }
  for (std::size_t i = 0; ok && i < c.blocks.size(); ++i)
    for (std::size_t j = i + 1; ok && j < c.blocks.size(); ++j) {
      MatD e = D.madd(c.blocks[i].data.idempotent, c.blocks[j].data.idempotent);
      auto k0 = corner_k0(s.L, e, c.beta);
      if (!k0 || *k0 >= -s.r) {
        ok = false;
        c.reason = "blocks " + std::to_string(i) + " and " + std::to_string(j) + " together are not semisimple";
      }
    }
  c.semisimple = ok;
  return c;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::False:
      return "false";
    case Verdict::True:
      return "true";
    default:
      return "undecidable";
  }
}

Classification classify(const Stratum& s) {
  Classification c;
  c.equiv_zero = is_equiv_zero(s);
  auto tri = [](bool b) { return b ? Verdict::True : Verdict::False; };
  if (s.n <= s.r + 1) {
    c.minimal = true;
    auto a = analyze_minimal(FilteredAlgebra(s.L), s.beta, s.n, s.r);
    if (s.n == s.r + 1) {
      auto cm = char_min_poly(s);
      c.fundamental = a.fundamental;
      c.mu = cm.mu;
      c.chi = cm.chi;
    }
    c.simple = tri(a.simple);
    c.semisimple = tri(a.semisimple);
    c.method = "minimal criteria";
    return c;
  }
  if (c.equiv_zero) {
    c.simple = c.semisimple = Verdict::True;
    c.method = "equivalent to the zero stratum";
    return c;
  }
  try {
    auto cert = certify(s);
    if (cert.semisimple) {
      c.semisimple = Verdict::True;
      c.simple = tri(cert.blocks.size() == 1);
      c.method = "certified semisimple representative";
      return c;
    }
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::Undecidable) throw;
  }
  auto a = analyze_minimal(FilteredAlgebra(s.L), s.beta, s.n, s.n - 1);
  if (!a.semisimple) {
    c.simple = c.semisimple = Verdict::False;
    c.method = "minimal coarsening is not semisimple";
  } else if (!a.simple) {
    c.simple = Verdict::False;
    c.method = "minimal coarsening is not simple";
  } else {
    c.method = "undecided without a defining sequence";
  }
  return c;
}

Stratum direct_sum(const Stratum& a, const Stratum& b) {
  require_same_algebra(*a.algebra(), *b.algebra());
  if (a.r != b.r) throw InvalidArgument("direct sum needs equal r");
  auto L = LatticeSequence::direct_sum(a.L, b.L);
  return Stratum(L, std::max(a.n, b.n), a.r, a.algebra()->block_diag(a.beta, b.beta));
}

Stratum scaled_direct_sum(const Stratum& a, const Stratum& b) {
  require_same_algebra(*a.algebra(), *b.algebra());
  const int ea = e_lambda_E(a), eb = e_lambda_E(b);
  const int g = std::gcd(ea, eb);
  const int e = ea / g, e2 = eb / g;
  auto L = LatticeSequence::direct_sum(a.L.scaled(e2), b.L.scaled(e));
  return Stratum(L, std::max(a.n * e2, b.n * e), std::max(a.r * e2, b.r * e), a.algebra()->block_diag(a.beta, b.beta));
}

Stratum dagger(const Stratum& s) {
  const auto& D = *s.algebra();
  LatticeSequence L = s.L;
  MatD beta = s.beta;
  for (int i = 1; i < s.L.period_F(); ++i) {
    L = LatticeSequence::direct_sum(L, s.L.translated(i));
    beta = D.block_diag(beta, s.beta);
  }
  return Stratum(L, s.n, s.r, beta);
}

Stratum ddagger(const Stratum& s) {
  if (!certify(s).simple()) throw NotCertifiedSemisimple("the sound construction needs a certified simple stratum");
  return dagger(s);
}

Stratum res_F(const Stratum& s) {
  const auto& D = *s.algebra();
  if (D.d() == 1) return s;
  auto D1 = DivisionAlgebra::create(D.p(), 1, D.cap());
  const int d = D.d(), fl = D.fl(), m = s.m();
  const int period = d * s.L.period_D();
  std::vector<std::vector<int>> prof(period, std::vector<int>(m * d * fl));
  for (int j = 0; j < period; ++j)
    for (int k = 0; k < m; ++k)
      for (int i = 0; i < d; ++i)
        for (int a = 0; a < fl; ++a) prof[j][(k * d + i) * fl + a] = ceil_div(s.L.c(k, j) - i, d);
  LatticeSequence L(D1, prof);
  return Stratum(L, s.n, s.r, from_qp_matrix(*D1, D.restrict_to_F(s.beta)));
}

Stratum tensor_L(const Stratum& s, int k) {
  if (k < 1) throw InvalidArgument("extension degree must be positive");
  const auto& D = *s.algebra();
  const int d = D.d(), m = s.m();
  auto Dt = DivisionAlgebra::create(D.p(), 1, D.cap(), D.fl() * k);
  const auto& Lt = *Dt->L();
  UnramifiedElement z = embed_generator(*D.L(), Lt);
  const int period = d * s.L.period_D();
  std::vector<std::vector<int>> prof(period, std::vector<int>(m * d));
  for (int j = 0; j < period; ++j)
    for (int kk = 0; kk < m; ++kk)
      for (int i = 0; i < d; ++i) prof[j][kk * d + i] = ceil_div(s.L.c(kk, j) - i, d);
  LatticeSequence L(Dt, prof);
  LMatrix X = D.split_to_L(s.beta);
  MatD beta = Dt->mzero(m * d);
  for (int i = 0; i < m * d; ++i)
    for (int j = 0; j < m * d; ++j) beta.at(i, j).a[0] = Lt.eval(X[i][j].c, z);
  return Stratum(L, s.n, s.r, beta);
}

bool intertwines(const MatD& g, const Stratum& a, const Stratum& b) {
  require_same_algebra(*a.algebra(), *b.algebra());
  if (a.m() != b.m()) throw InvalidArgument("strata in different algebras");
  const auto& D = *a.algebra();
  MatD gi = D.minv(g);
  KMatrix conj = D.left_mul_matrix(g) * D.right_mul_matrix(gi);
  OLattice lat = a.L.a_lattice(-a.r).image(conj).sum(b.L.a_lattice(-b.r));
  MatD x = D.msub(D.mmul(D.mmul(g, a.beta), gi), b.beta);
  return lat.contains(D.coords(x));
}

IntertwiningLattice intertwining_lattice(const Stratum& s) {
  auto cert = certify(s);
  if (!cert.semisimple) throw NotCertifiedSemisimple(cert.reason);
  const auto& D = *s.algebra();
  IntertwiningLattice out;
  out.k0 = critical_exponent_in(FilteredAlgebra(s.L), cert.beta);
  OLattice nr = preimage(D.ad_matrix(cert.beta), s.L.a_lattice(0), s.L.a_lattice(-s.r));
  out.m = out.k0 == kNegInf ? nr : nr.intersect(s.L.a_lattice(-(s.r + out.k0)));
  out.description = "(1 + m) C(beta)^x (1 + m)";
  return out;
}

Matching matching(const Stratum& a, const Stratum& b) {
  require_same_algebra(*a.algebra(), *b.algebra());
  if (a.n != b.n || a.r != b.r) throw InvalidArgument("matching needs equal n and r");
  if (a.L.period_D() != b.L.period_D()) throw PeriodMismatch("matching needs equal periods");
  if (a.n > a.r + 1) throw Undecidable("matching beyond the minimal case needs defining sequences");
  auto ca = certify(a), cb = certify(b);
  if (!ca.semisimple || !cb.semisimple) throw NotCertifiedSemisimple("matching needs certified semisimple strata");
  const auto& D = *a.algebra();
  Stratum sum = direct_sum(Stratum(a.L, a.n, a.r, ca.beta), Stratum(b.L, b.n, b.r, cb.beta));
  const int na = ca.blocks.size(), nb = cb.blocks.size();
  std::vector<std::vector<bool>> ok(na, std::vector<bool>(nb, false));
  for (int i = 0; i < na; ++i)
    for (int j = 0; j < nb; ++j) {
      const auto& bi = ca.blocks[i].data;
      const auto& bj = cb.blocks[j].data;
      if (bi.dim_D != bj.dim_D) continue;
      MatD e = D.block_diag(bi.idempotent, D.mzero(b.m()));
      e = D.madd(e, D.block_diag(D.mzero(a.m()), bj.idempotent));
      FilteredAlgebra S(sum.L, corner_span(D, e), e);
      ok[i][j] = analyze_minimal(S, D.mmul(sum.beta, e), sum.n, sum.r).simple;
    }
  Matching out;
  out.zeta.assign(na, -1);
  std::vector<int> hit(nb, 0);
  for (int i = 0; i < na; ++i)
    for (int j = 0; j < nb; ++j)
      if (ok[i][j]) {
        if (out.zeta[i] >= 0) throw NoMatching("block " + std::to_string(i) + " matches several blocks");
        out.zeta[i] = j;
        ++hit[j];
      }
  for (int i = 0; i < na; ++i)
    if (out.zeta[i] < 0) throw NoMatching("block " + std::to_string(i) + " has no partner");
  for (int j = 0; j < nb; ++j)
    if (hit[j] != 1) throw NoMatching("the block correspondence is not a bijection");
  for (int i = 0; i < na; ++i) {
    const auto& x = ca.blocks[i];
    const auto& y = cb.blocks[out.zeta[i]];
    if (x.data.e_Lambda_E != y.data.e_Lambda_E || x.data.e != y.data.e || x.data.f != y.data.f || x.k0 != y.k0)
      throw NoMatching("matched blocks have different invariants");
    out.pairs.push_back({i, out.zeta[i], x.data.dim_D, x.data.e, x.data.f, x.k0});
  }
  return out;
}

}  // namespace glmd
