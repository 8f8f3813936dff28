#include "glmd/corestrict.hpp"

#include <numeric>

#include "glmd/error.hpp"

namespace glmd {

namespace {

int floor_div(int a, int b) { return a >= 0 ? a / b : -((-a + b - 1) / b); }

// Gram matrix of (x, y) -> trd(xy) in A-coordinates.
KMatrix trace_form(const DivisionAlgebra& D, int m) {
  const int N = D.coord_dim(m);
  std::vector<MatD> basis;
  for (int a = 0; a < N; ++a) {
    KVector v(N, PadicScalar::zero(D.p(), D.cap()));
    v[a] = PadicScalar::from_int(D.p(), D.cap(), 1);
    basis.push_back(D.from_coords(m, v));
  }
  KMatrix T(D.p(), D.cap(), N, N);
  for (int a = 0; a < N; ++a)
    for (int b = a; b < N; ++b) T.at(a, b) = T.at(b, a) = D.trd_Qp(D.mmul(basis[a], basis[b]));
  return T;
}

// Inverse of x inside the corner e A e.
MatD corner_inverse(const DivisionAlgebra& D, const MatD& x, const MatD& e) {
  MatD one = D.midentity(x.m);
  return D.mmul(D.minv(D.madd(x, D.msub(one, e))), e);
}

MatD corner_power(const DivisionAlgebra& D, const MatD& x, int k, const MatD& e) {
  MatD base = k >= 0 ? x : corner_inverse(D, x, e);
  MatD y = e;
  for (int i = 0; i < (k >= 0 ? k : -k); ++i) y = D.mmul(y, base);
  return y;
}

std::vector<Fq> flatten(const FqMatrix& M) {
  std::vector<Fq> v;
  v.reserve(static_cast<std::size_t>(M.rows()) * M.cols());
  for (int i = 0; i < M.rows(); ++i)
    for (int j = 0; j < M.cols(); ++j) v.push_back(M.at(i, j));
  return v;
}

// Minimal polynomial of Y over the field generated by Z, both acting on one F_p-space,
// with Z of degree f generating a field that commutes with Y.
ResiduePoly relative_minpoly(const FqMatrix& Y, const FqMatrix& Z, int f) {
  const auto& fp = Y.field();
  ResiduePoly phi = Z.minpoly();
  if (phi.degree() != f || !is_irreducible(phi))
    throw CertificationUnavailable("residue of the unit generator does not generate the residue field");
  std::vector<std::uint32_t> modulus(phi.coeffs().begin(), phi.coeffs().end());
  auto kE = ResidueField::create(fp->p(), f, modulus);
  std::vector<FqMatrix> zpow{FqMatrix::identity(fp, Y.rows())};
  for (int a = 1; a < f; ++a) zpow.push_back(zpow.back() * Z);
  std::vector<std::vector<Fq>> cols;
  FqMatrix ypow = FqMatrix::identity(fp, Y.rows());
  for (int k = 0;; ++k) {
    const std::size_t len = static_cast<std::size_t>(Y.rows()) * Y.rows();
    FqMatrix M(fp, static_cast<int>(len), static_cast<int>(cols.size()) + 1);
    for (std::size_t c = 0; c < cols.size(); ++c)
      for (std::size_t i = 0; i < len; ++i) M.at(static_cast<int>(i), static_cast<int>(c)) = cols[c][i];
    auto target = flatten(ypow);
    for (std::size_t i = 0; i < len; ++i) M.at(static_cast<int>(i), static_cast<int>(cols.size())) = target[i];
    FqMatrix ker = M.kernel();
    if (ker.cols() > 0) {
      // One relation; scale it so the Y^k coefficient is 1.
      const int last = static_cast<int>(cols.size());
      Fq inv = fp->inv(ker.at(last, 0));
      std::vector<Fq> coeffs;
      for (int i = 0; i < k; ++i) {
        std::vector<std::uint32_t> dig(f);
        for (int a = 0; a < f; ++a) dig[a] = fp->mul(ker.at(i * f + a, 0), inv);
        coeffs.push_back(kE->from_digits(dig));
      }
      coeffs.push_back(kE->from_int(1));
      return ResiduePoly(kE, coeffs);
    }
    for (int a = 0; a < f; ++a) cols.push_back(flatten(zpow[a] * ypow));
    ypow = ypow * Y;
  }
}

bool is_undecidable(const Error& e) { return e.kind() == ErrorKind::Undecidable; }

}  // namespace

MatD TameCorestriction::apply(const MatD& x) const {
  const auto& D = *L.algebra();
  return D.from_coords(x.m, matrix.apply(D.coords(x)));
}

TameCorestriction tame_corestriction(const MatD& gamma, const LatticeSequence& L) {
  const auto& D = *L.algebra();
  const int m = L.m();
  const int N = D.coord_dim(m);
  TameCorestriction c;
  c.gamma = gamma;
  c.L = L;
  c.blocks = certify_semipure(gamma, L);
  KMatrix span(D.p(), D.cap(), N, 0);
  for (auto& b : c.blocks.blocks) {
    FilteredAlgebra S(L, corner_span(D, b.idempotent), b.idempotent);
    c.B_blocks.push_back(centralizer_in(S, D.mmul(gamma, b.idempotent)));
    span = span.hcat(c.B_blocks.back().span());
  }
  c.B = FilteredAlgebra(L, span, D.midentity(m));
  KMatrix T = trace_form(D, m);
  KMatrix BtT = span.transpose() * T;
  c.projection = span * inverse(BtT * span) * BtT;

  c.matrix = KMatrix(D.p(), D.cap(), N, N);
  const int eF = L.period_F();
  for (std::size_t j = 0; j < c.blocks.blocks.size(); ++j) {
    const auto& b = c.blocks.blocks[j];
    FilteredAlgebra S(L, corner_span(D, b.idempotent), b.idempotent);
    bool found = false;
    for (int k : {0, 1, -1, 2, -2, 3, -3}) {
      MatD lambda = corner_power(D, b.pi_E, k, b.idempotent);
      KMatrix M = D.left_mul_matrix(lambda) * c.projection;
      bool ok = true;
      for (int i = 0; ok && i < eF; ++i) ok = S.level(i).image(M) == c.B_blocks[j].level(i);
      if (ok) {
        c.lambda.push_back(lambda);
        c.lambda_exponent.push_back(k);
        c.matrix = c.matrix + M;
        found = true;
        break;
      }
    }
    if (!found)
      throw NormalizationFailed("no power pi_E^k with |k| <= 3 maps a_i onto b_i for block " + std::to_string(j));
  }
  return c;
}

DerivedStratum derived_stratum(const Stratum& s, const MatD& gamma, const TameCorestriction& c) {
  const auto& D = *s.algebra();
  if (!(c.L == s.L)) throw InvalidArgument("corestriction and stratum use different lattice sequences");
  if (s.n <= s.r) throw DepthMismatch("a zero-depth stratum has no derived stratum");
  MatD diff = D.msub(s.beta, gamma);
  if (!in_square_lattice(diff, s.L, -(s.r + 1)))
    throw DepthMismatch("beta - gamma does not lie in a_{-(r+1)}");
  DerivedStratum d;
  d.r = s.r;
  const int nu = D.mis_zero(diff) ? kInfVal : val_Lambda(diff, s.L);
  d.n = nu == kInfVal ? s.r : std::max(s.r, std::min(s.n, -nu));
  d.element = c.apply(diff);
  for (std::size_t j = 0; j < c.blocks.blocks.size(); ++j) {
    const auto& b = c.blocks.blocks[j];
    DerivedComponent comp;
    comp.B = c.B_blocks[j];
    comp.element = D.mmul(d.element, b.idempotent);
    comp.pi_E = b.pi_E;
    comp.unit_gen = b.unit_gen;
    comp.e_E = b.e_Lambda_E;
    comp.f = b.f;
    d.components.push_back(std::move(comp));
  }
  return d;
}

std::string DerivedClassification::summary() const {
  if (equiv_zero) return "zero";
  if (simple) return "simple";
  if (semisimple) return "semisimple";
  return "neither";
}

DerivedClassification classify_derived(const DerivedStratum& d) {
  if (d.n > d.r + 1) throw Undecidable("derived stratum is not of minimal depth");
  DerivedClassification out;
  out.equiv_zero = out.semisimple = true;
  for (const auto& comp : d.components) {
    const auto& B = comp.B;
    const auto& D = *B.algebra();
    DerivedComponentVerdict v;
    v.equiv_zero = in_square_lattice(comp.element, B.lattice(), -d.r);
    if (d.n <= d.r) {
      v.mu = ResiduePoly::x(D.prime_field());
      v.mult_ok = v.simple = v.semisimple = true;
    } else {
      const int g = std::gcd(comp.e_E, d.n);
      MatD y = corner_power(D, comp.pi_E, d.n / g, B.unit());
      for (int i = 0; i < comp.e_E / g; ++i) y = D.mmul(y, comp.element);
      FqMatrix Y = B.graded_mult(y, 0, 0);
      ResiduePoly mu_p = Y.minpoly();
      v.mu = comp.f == 1 ? mu_p : relative_minpoly(Y, B.graded_mult(comp.unit_gen, 0, 0), comp.f);
      v.mult_ok = B.mult_map_condition(comp.element, d.n, 0, comp.e_E / g);
      v.simple = v.equiv_zero || (is_irreducible(v.mu) && v.mu != ResiduePoly::x(v.mu.field()));
      v.semisimple = v.equiv_zero || (is_squarefree(mu_p) && v.mult_ok);
    }
    out.equiv_zero = out.equiv_zero && v.equiv_zero;
    out.semisimple = out.semisimple && v.semisimple;
    out.components.push_back(std::move(v));
  }
  out.simple = out.equiv_zero || (out.components.size() == 1 && out.components[0].simple);
  return out;
}

void validate_defining_sequence(const Stratum& s, const DefiningSequence& seq) {
  const auto& D = *s.algebra();
  if (static_cast<int>(seq.strata.size()) != s.n - s.r + 1)
    throw InvalidArgument("a defining sequence needs n - r + 1 members");
  std::vector<MatD> prev_idem;
  for (int j = 0; j <= s.n - s.r; ++j) {
    const auto& t = seq.strata[j];
    if (!(t.L == s.L) || t.n != s.n || t.r != s.r + j)
      throw InvalidArgument("member " + std::to_string(j) + " is not of the form [Lambda, n, r + j, beta(j)]");
    if (!is_equivalent(s.with_r(s.r + j), t))
      throw InvalidArgument("member " + std::to_string(j) + " is not equivalent to Delta(j+)");
    if (j == 0) continue;
    try {
      if (!certify(t).semisimple) throw InvalidArgument("member " + std::to_string(j) + " is not semisimple");
    } catch (const Error& e) {
      if (!is_undecidable(e)) throw;
      throw InvalidArgument("member " + std::to_string(j) + " is not certified semisimple: " + e.what());
    }
    for (const auto& e : prev_idem)
      if (!D.mequals(D.mmul(e, t.beta), D.mmul(t.beta, e)))
        throw InvalidArgument("member " + std::to_string(j) + " is not split by the previous member");
    prev_idem.clear();
    for (auto& b : certify_semipure(t.beta, t.L).blocks) prev_idem.push_back(b.idempotent);
  }
}

DefiningSequence minimal_defining_sequence(const Stratum& s) {
  if (s.n != s.r + 1) throw InvalidArgument("minimal defining sequences need n = r + 1");
  return {{s, Stratum(s.L, s.n, s.n, s.algebra()->mzero(s.m()))}};
}

MatD semisimple_witness(const Stratum& s, std::size_t max_candidates) {
  const auto& D = *s.algebra();
  if (s.n != s.r + 1) throw InvalidArgument("semisimple witnesses are searched only for n = r + 1");
  if (!is_equiv_semisimple_minimal(s)) throw NotCertifiedSemisimple("stratum is not equivalent to a semisimple stratum");
  LatticeQuotient Q(s.L.a_lattice(1 - s.n), s.L.a_lattice(2 - s.n));
  const int q = Q.dim();
  const auto p = static_cast<std::uint32_t>(D.p());
  std::vector<std::uint32_t> digits(q, 0);
  for (std::size_t tries = 0; tries < max_candidates; ++tries) {
    KVector v = D.coords(s.beta);
    for (int i = 0; i < q; ++i) {
      if (digits[i] == 0) continue;
      auto l = Q.lift(i);
      auto c = PadicScalar::from_int(D.p(), D.cap(), digits[i]);
      for (std::size_t a = 0; a < v.size(); ++a) v[a] = v[a] + l[a] * c;
    }
    MatD cand = D.from_coords(s.m(), v);
    try {
      if (certify(Stratum(s.L, s.n, s.r, cand)).semisimple) return cand;
    } catch (const Error& e) {
      if (!is_undecidable(e)) throw;
    }
    int i = 0;
    while (i < q && ++digits[i] == p) digits[i++] = 0;
    if (i == q) break;
  }
  throw Undecidable("no semisimple witness among the searched digit lifts");
}

InductionResult strata_induction(const Stratum& s, const DefiningSequence& seq) {
  validate_defining_sequence(s, seq);
  InductionResult res;
  if (s.n <= s.r) {
    res.semisimple = true;
    res.method = "zero stratum";
    return res;
  }
  if (s.n == s.r + 1) {
    res.semisimple = is_equiv_semisimple_minimal(s);
    res.method = "minimal criteria";
    return res;
  }
  MatD gamma = certify(seq.strata[1]).beta;
  auto c = tame_corestriction(gamma, s.L);
  auto d = derived_stratum(s, gamma, c);
  res.derived.push_back(classify_derived(d));
  res.semisimple = res.derived.back().semisimple;
  res.method = "derived stratum";
  return res;
}

bool strata_induction_decide(const Stratum& s, const DefiningSequence& seq) {
  return strata_induction(s, seq).semisimple;
}

std::vector<int> sequence_k0(const DefiningSequence& seq) {
  std::vector<int> k0;
  for (const auto& t : seq.strata) k0.push_back(critical_exponent(t));
  return k0;
}

std::vector<int> jump_sequence(const DefiningSequence& seq) {
  if (seq.strata.empty()) throw InvalidArgument("empty defining sequence");
  auto k0 = sequence_k0(seq);
  const int r = seq.strata[0].r;
  std::vector<int> jumps{r};
  for (std::size_t j = 1; j < k0.size(); ++j)
    if (k0[j - 1] > k0[j]) jumps.push_back(r + static_cast<int>(j));
  return jumps;
}

int core_approximation(const DefiningSequence& seq) {
  if (seq.strata.empty()) throw InvalidArgument("empty defining sequence");
  auto k0 = sequence_k0(seq);
  const int r = seq.strata[0].r;
  int best = 0;
  for (std::size_t j = 1; j < k0.size(); ++j) {
    if (!(k0[j - 1] > k0[j])) continue;
    if (r >= floor_div(-k0[j - 1], 2)) best = static_cast<int>(j);
  }
  return best;
}

ExactnessRanks exactness_ranks(const Stratum& s0) {
  const auto& D = *s0.algebra();
  auto cert = certify(s0);
  if (!cert.semisimple) throw NotCertifiedSemisimple("exact sequence needs a semisimple stratum");
  Stratum s(s0.L, s0.n, s0.r, cert.beta);
  auto c = tame_corestriction(s.beta, s.L);
  const int k0 = critical_exponent(s);
  const auto& fp = D.prime_field();
  LatticeQuotient Aq(s.L.a_lattice(-s.r), s.L.a_lattice(1 - s.r));
  LatticeQuotient Bq(c.B.level(-s.r), c.B.level(1 - s.r));
  ExactnessRanks out;
  out.dim_a = Aq.dim();
  out.dim_b = Bq.dim();

  KMatrix ad = D.ad_matrix(s.beta);
  FqMatrix M(fp, Aq.dim(), 0);
  if (k0 != kNegInf) {
    OLattice src = preimage(ad, s.L.a_lattice(-s.r - k0), s.L.a_lattice(-s.r));
    M = FqMatrix(fp, Aq.dim(), src.rank());
    for (int i = 0; i < src.rank(); ++i) {
      auto col = Aq.coords(ad.apply(src.generator(i)));
      for (int a = 0; a < Aq.dim(); ++a) M.at(a, i) = col[a];
    }
    out.rank_ad = M.rank();
  }
  FqMatrix S(fp, Bq.dim(), Aq.dim());
  for (int i = 0; i < Aq.dim(); ++i) {
    auto col = Bq.coords(c.matrix.apply(Aq.lift(i)));
    for (int a = 0; a < Bq.dim(); ++a) S.at(a, i) = col[a];
  }
  out.rank_s = S.rank();
  out.composite_zero = M.cols() == 0 || (S * M).is_zero();
  return out;
}

}  // namespace glmd
