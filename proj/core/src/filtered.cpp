#include "glmd/filtered.hpp"

#include <numeric>

#include "glmd/error.hpp"

namespace glmd {

FilteredAlgebra::FilteredAlgebra(LatticeSequence L) : L_(std::move(L)) {
  unit_ = algebra()->midentity(L_.m());
}

FilteredAlgebra::FilteredAlgebra(LatticeSequence L, KMatrix span, MatD unit)
    : L_(std::move(L)), whole_(false), span_(std::move(span)), unit_(std::move(unit)) {
  if (span_.rows() != algebra()->coord_dim(L_.m())) throw InvalidArgument("subalgebra span has the wrong ambient dimension");
}

bool FilteredAlgebra::contains(const MatD& x) const {
  if (whole_) return true;
  KVector v = algebra()->coords(x);
  return solve(span_, v).has_value();
}

OLattice FilteredAlgebra::level(int t) const {
  OLattice a = L_.a_lattice(t);
  return whole_ ? a : a.meet_subspace(span_);
}

FqMatrix FilteredAlgebra::graded_mult(const MatD& x, int t, int k) const {
  const auto& D = *algebra();
  LatticeQuotient src(level(t), level(t + 1));
  LatticeQuotient dst(level(t + k), level(t + k + 1));
  FqMatrix M(D.prime_field(), dst.dim(), src.dim());
  for (int i = 0; i < src.dim(); ++i) {
    MatD X = D.from_coords(L_.m(), src.lift(i));
    auto col = dst.coords(D.coords(D.mmul(x, X)));
    for (int j = 0; j < dst.dim(); ++j) M.at(j, i) = col[j];
  }
  return M;
}

FqMatrix FilteredAlgebra::residue_action(const MatD& y) const {
  if (whole_) return quotient_action_center(y, L_);
  return graded_mult(y, 0, 0);
}

ResiduePoly FilteredAlgebra::residue_minpoly(const MatD& y) const { return residue_action(y).minpoly(); }
ResiduePoly FilteredAlgebra::residue_charpoly(const MatD& y) const { return residue_action(y).charpoly(); }

bool FilteredAlgebra::mult_map_condition(const MatD& beta, int n, int t_begin, int t_end) const {
  for (int t = t_begin; t < t_end; ++t) {
    FqMatrix m0 = graded_mult(beta, -t * n, -n);
    FqMatrix m1 = graded_mult(beta, -(t + 1) * n, -n);
    const int r0 = m0.rank();
    if (r0 == 0) continue;
    if ((m1 * m0).rank() != r0) return false;
  }
  return true;
}

bool FilteredAlgebra::mult_map_condition(const MatD& beta, int n) const {
  const int e = L_.period_F();
  const int g = std::gcd(e, n);
  return mult_map_condition(beta, n, 0, n == 0 ? 1 : e / g);
}

MatD FilteredAlgebra::y_element(const MatD& beta, int n) const {
  const auto& D = *algebra();
  const int e = L_.period_F();
  const int g = std::gcd(e, n);
  MatD y = unit_;
  for (int i = 0; i < e / g; ++i) y = D.mmul(y, beta);
  return D.mscale(y, PadicScalar::p_power(D.p(), D.cap(), n / g));
}

FqMatrix quotient_action_center(const MatD& y, const LatticeSequence& L) {
  FqMatrix M = quotient_action(y, L);
  const auto& D = *L.algebra();
  if (D.center_degree() == 1) return M;
  // d = 1 here: the slots carry a K-structure with F_p-basis x^a.
  const auto& k = D.residue_field_K();
  const int f = D.center_degree();
  const int s = M.rows() / f;
  FqMatrix R(k, s, s);
  for (int i = 0; i < s; ++i)
    for (int j = 0; j < s; ++j) {
      std::vector<std::uint32_t> dig(f);
      for (int a = 0; a < f; ++a) dig[a] = M.at(i * f + a, j * f);
      R.at(i, j) = k->from_digits(dig);
    }
  return R;
}

KMatrix corner_span(const DivisionAlgebra& D, const MatD& e) {
  return saturate(D.left_mul_matrix(e) * D.right_mul_matrix(e));
}

FilteredAlgebra centralizer_in(const FilteredAlgebra& S, const MatD& x) {
  const auto& D = *S.algebra();
  KMatrix ad = D.ad_matrix(x);
  KMatrix span = S.is_whole() ? kernel(ad) : S.span() * kernel(ad * S.span());
  return FilteredAlgebra(S.lattice(), span, S.unit());
}

int critical_exponent_in(const FilteredAlgebra& S, const MatD& beta) {
  const auto& D = *S.algebra();
  const auto& L = S.lattice();
  if (D.mis_zero(beta)) return kNegInf;
  const int nu = val_Lambda(beta, L);
  FilteredAlgebra B = centralizer_in(S, beta);
  if (B.dim() == S.dim()) return kNegInf;
  OLattice target = B.level(0).sum(S.level(1));
  KMatrix ad = D.ad_matrix(beta);
  OLattice s0 = S.level(0);
  auto contained = [&](int k) { return target.contains(preimage(ad, s0, L.a_lattice(k))); };
  if (!contained(0)) throw ThresholdOutOfWindow("critical exponent is at least 0");
  for (int k = -1; k > nu; --k)
    if (!contained(k)) return k;
  return nu;
}

}  // namespace glmd
