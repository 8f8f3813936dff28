#include "glmd/characters.hpp"

#include "glmd/error.hpp"

namespace glmd {

namespace {

int floor_div(int a, int b) { return a >= 0 ? a / b : -((-a + b - 1) / b); }

enum class OrderKind { H, J };

// h(beta) = b_0 + h(gamma) ∩ a_{floor(t/2)+1} with t = -k0(beta) and [Lambda, n, t, gamma]
// the certified member of the sequence at depth t (a_{floor((t+1)/2)} for j).
OLattice order_step(const DefiningSequence& seq, const MatD& beta, int r, OrderKind kind,
                    std::vector<std::string>& prov) {
  const auto& L = seq.strata[0].L;
  const int k0 = critical_exponent_in(FilteredAlgebra(L), beta);
  prov.push_back("depth " + std::to_string(r) + ": k0 = " + (k0 == kNegInf ? std::string("-inf") : std::to_string(k0)));
  OLattice b0 = centralizer(beta, L).level(0);
  if (k0 == kNegInf) return b0;
  const int t = -k0;
  const int j = t - seq.strata[0].r;
  if (t <= r || j >= static_cast<int>(seq.strata.size()))
    throw ThresholdOutOfWindow("critical exponent outside the defining sequence");
  MatD gamma = certify(seq.strata[j]).beta;
  OLattice inner = order_step(seq, gamma, t, kind, prov);
  const int cut = kind == OrderKind::H ? floor_div(t, 2) + 1 : floor_div(t + 1, 2);
  return b0.sum(inner.intersect(L.a_lattice(cut)));
}

OrderFiltration make_order(const Stratum& s, const DefiningSequence& seq, OrderKind kind) {
  validate_defining_sequence(s, seq);
  OrderFiltration f;
  f.L = s.L;
  if (s.n == s.r) {
    f.order = s.L.a_lattice(0);
    f.provenance.push_back("zero stratum");
    return f;
  }
  f.order = order_step(seq, s.beta, s.r, kind, f.provenance);
  return f;
}

}  // namespace

CharacterValue::CharacterValue(mpq_class q) : q_(std::move(q)) {
  q_.canonicalize();
  mpz_class fl;
  mpz_fdiv_q(fl.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
  q_ -= fl;
  q_.canonicalize();
}

CharacterValue psi_F(const PadicScalar& y) {
  if (y.is_exact_zero()) return CharacterValue();
  PadicScalar z = y.shifted(-1);
  if (z.abs_precision() < 0) throw InsufficientPrecision("fractional part undetermined at this precision");
  if (z.is_zero()) return CharacterValue();
  const int v = z.valuation();
  if (v >= 0) return CharacterValue();
  const std::int64_t mod = ipow(z.prime(), -v);
  std::int64_t u = z.unit() % mod;
  if (u < 0) u += mod;
  return CharacterValue(mpq_class(static_cast<long>(u), static_cast<long>(mod)));
}

CharacterValue psi_A(const DivisionAlgebra& D, const MatD& x) { return psi_F(D.trd_Qp(x)); }

CharacterValue psi_c(const DivisionAlgebra& D, const MatD& c, const MatD& x) {
  return psi_A(D, D.mmul(c, D.msub(x, D.midentity(x.m))));
}

bool OrderFiltration::contains_unit(const MatD& g, int i) const {
  const auto& D = *L.algebra();
  return level(i).contains(D.coords(D.msub(g, D.midentity(g.m))));
}

OrderFiltration h_order(const Stratum& s, const DefiningSequence& seq) { return make_order(s, seq, OrderKind::H); }
OrderFiltration j_order(const Stratum& s, const DefiningSequence& seq) { return make_order(s, seq, OrderKind::J); }

bool in_singleton_range(const Stratum& s) { return s.r >= floor_div(s.n, 2) + 1; }

CharacterValue singleton_character(const Stratum& s, const MatD& x) {
  if (!in_singleton_range(s)) throw OutOfSingletonRange("C(Delta) is a singleton only for r >= floor(n/2) + 1");
  const auto& D = *s.algebra();
  if (!in_square_lattice(D.msub(x, D.midentity(x.m)), s.L, s.r + 1))
    throw InvalidArgument("x does not lie in 1 + a_{r+1}");
  return psi_c(D, s.beta, x);
}

bool intertwines_singleton(const MatD& g, const Stratum& a, const Stratum& b) {
  if (!in_singleton_range(a) || !in_singleton_range(b))
    throw OutOfSingletonRange("intertwining of characters is only evaluated in the singleton range");
  const auto& D = *a.algebra();
  if (a.m() != b.m()) throw InvalidArgument("strata in different algebras");
  MatD gi = D.minv(g);
  KMatrix conj = D.left_mul_matrix(g) * D.right_mul_matrix(gi);
  OLattice M = a.L.a_lattice(a.r + 1).image(conj).intersect(b.L.a_lattice(b.r + 1));
  MatD one = D.midentity(a.m());
  for (int i = 0; i < M.rank(); ++i) {
    MatD h = D.madd(one, D.from_coords(a.m(), M.generator(i)));
    MatD pulled = D.mmul(D.mmul(gi, h), g);
    if (psi_c(D, a.beta, pulled) != psi_c(D, b.beta, h)) return false;
  }
  return true;
}

}  // namespace glmd
