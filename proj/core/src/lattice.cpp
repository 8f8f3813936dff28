#include "glmd/lattice.hpp"

#include <algorithm>

#include "glmd/error.hpp"

namespace glmd {

namespace {

int floor_div(int a, int b) { return a >= 0 ? a / b : -((-a + b - 1) / b); }
int ceil_div(int a, int b) { return -floor_div(-a, b); }

}  // namespace

LatticeSequence::LatticeSequence(AlgebraPtr D, std::vector<std::vector<int>> profile)
    : D_(std::move(D)), c_(std::move(profile)) {
  if (c_.empty()) throw InvalidArgument("lattice sequence needs a positive period");
  m_ = static_cast<int>(c_[0].size());
  if (m_ < 1) throw InvalidArgument("lattice sequence needs m >= 1");
  const int e = period_D();
  for (auto& row : c_)
    if (static_cast<int>(row.size()) != m_) throw InvalidArgument("ragged lattice profile");
  for (int j = 0; j < e; ++j)
    for (int k = 0; k < m_; ++k)
      if (c(k, j + 1) < c(k, j)) throw InvalidArgument("lattice profile is not decreasing");
}

LatticeSequence LatticeSequence::standard(AlgebraPtr D, int m) {
  return LatticeSequence(std::move(D), {std::vector<int>(m, 0)});
}

int LatticeSequence::c(int k, int j) const {
  const int e = period_D();
  const int q = floor_div(j, e);
  return c_[j - q * e][k] + q;
}

bool LatticeSequence::is_strict() const {
  for (int j = 0; j < period_D(); ++j) {
    bool grows = false;
    for (int k = 0; k < m_; ++k) grows = grows || c(k, j + 1) > c(k, j);
    if (!grows) return false;
  }
  return true;
}

int LatticeSequence::alpha(int k, int l, int t) const {
  int a = c(k, t) - c(l, 0);
  for (int j = 1; j < period_D(); ++j) a = std::max(a, c(k, j + t) - c(l, j));
  return a;
}

SquareLattice LatticeSequence::square_lattice(int t) const {
  SquareLattice a(m_, std::vector<int>(m_));
  for (int k = 0; k < m_; ++k)
    for (int l = 0; l < m_; ++l) a[k][l] = alpha(k, l, t);
  return a;
}

std::vector<int> coordinate_bounds(const DivisionAlgebra& D, int m, const SquareLattice& a) {
  const int d = D.d(), f = D.fl();
  std::vector<int> b(D.coord_dim(m));
  for (int k = 0; k < m; ++k)
    for (int l = 0; l < m; ++l)
      for (int i = 0; i < d; ++i)
        for (int x = 0; x < f; ++x) b[((k * m + l) * d + i) * f + x] = ceil_div(a[k][l] - i, d);
  return b;
}

OLattice LatticeSequence::a_lattice(int t) const {
  return OLattice::monomial(D_->p(), D_->cap(), coordinate_bounds(*D_, m_, square_lattice(t)));
}

OLattice LatticeSequence::v_lattice(int j) const {
  const int d = D_->d(), f = D_->fl();
  std::vector<int> b(D_->v_dim(m_));
  for (int k = 0; k < m_; ++k)
    for (int i = 0; i < d; ++i)
      for (int x = 0; x < f; ++x) b[(k * d + i) * f + x] = ceil_div(c(k, j) - i, d);
  return OLattice::monomial(D_->p(), D_->cap(), b);
}

LatticeSequence LatticeSequence::translated(int i) const {
  std::vector<std::vector<int>> p(period_D(), std::vector<int>(m_));
  for (int j = 0; j < period_D(); ++j)
    for (int k = 0; k < m_; ++k) p[j][k] = c(k, j + i);
  return LatticeSequence(D_, p);
}

LatticeSequence LatticeSequence::scaled(int s) const {
  if (s < 1) throw InvalidArgument("scaling factor must be positive");
  std::vector<std::vector<int>> p(s * period_D(), std::vector<int>(m_));
  for (int j = 0; j < s * period_D(); ++j)
    for (int k = 0; k < m_; ++k) p[j][k] = c(k, ceil_div(j, s));
  return LatticeSequence(D_, p);
}

LatticeSequence LatticeSequence::direct_sum(const LatticeSequence& a, const LatticeSequence& b) {
  if (a.period_D() != b.period_D()) throw PeriodMismatch("direct sum of lattice sequences with different periods");
  std::vector<std::vector<int>> p(a.period_D());
  for (int j = 0; j < a.period_D(); ++j) {
    p[j] = a.c_[j];
    p[j].insert(p[j].end(), b.c_[j].begin(), b.c_[j].end());
  }
  return LatticeSequence(a.D_, p);
}

namespace {

// Smallest D-valuation certified for the entry, and whether it is exact.
struct EntryVal {
  int v;
  bool exact;
};

EntryVal entry_valuation(const DivisionAlgebra& D, const DElement& x) {
  const int d = D.d();
  int e = kInfVal, b = kInfVal;
  for (int i = 0; i < d; ++i)
    for (auto& s : x.a[i].c) {
      if (s.is_exact_zero()) continue;
      if (s.is_zero())
        b = std::min(b, d * s.val_bound() + i);
      else
        e = std::min(e, d * s.valuation() + i);
    }
  if (e < b) return {e, true};
  return {b, b == kInfVal};
}

}  // namespace

bool in_square_lattice(const MatD& x, const LatticeSequence& L, int t) {
  const auto& D = *L.algebra();
  for (int k = 0; k < x.m; ++k)
    for (int l = 0; l < x.m; ++l) {
      auto ev = entry_valuation(D, x.at(k, l));
      const int a = L.alpha(k, l, t);
      if (ev.v >= a) continue;
      if (ev.exact) return false;
      throw InsufficientPrecision("square lattice membership undetermined at this precision");
    }
  return true;
}

int val_Lambda(const MatD& x, const LatticeSequence& L) {
  const auto& D = *L.algebra();
  const int e = L.period_D();
  int best = kInfVal;
  bool approx = false;
  int approx_best = kInfVal;
  for (int k = 0; k < x.m; ++k)
    for (int l = 0; l < x.m; ++l) {
      auto ev = entry_valuation(D, x.at(k, l));
      if (ev.v == kInfVal) continue;
      int t = e * (ev.v - L.c(k, 0) + L.c(l, 0)) + 2 * e;
      while (L.alpha(k, l, t) <= ev.v) ++t;
      while (L.alpha(k, l, t) > ev.v) --t;
      if (ev.exact) {
        best = std::min(best, t);
      } else {
        approx = true;
        approx_best = std::min(approx_best, t);
      }
    }
  if (approx && approx_best <= best) throw InsufficientPrecision("valuation with respect to the lattice sequence undetermined");
  return best;
}

bool same_filtration_upto(const LatticeSequence& L, const LatticeSequence& M, int s_max) {
  if (L.m() != M.m()) return false;
  if (L.period_D() != M.period_D()) return false;
  for (int s = s_max - L.period_D() + 1; s <= s_max; ++s)
    if (L.square_lattice(s) != M.square_lattice(s)) return false;
  return true;
}

FqMatrix quotient_action(const MatD& x, const LatticeSequence& L) {
  if (!in_square_lattice(x, L, 0)) throw NotIntegral("element does not lie in a_0");
  const auto& D = *L.algebra();
  const int d = D.d(), f = D.fl(), m = L.m(), e = L.period_D();
  // Basis slots (j, k) with Lambda_j / Lambda_{j+1} nonzero in slot k.
  std::vector<std::pair<int, int>> slots;
  for (int j = 0; j < e; ++j)
    for (int k = 0; k < m; ++k)
      if (L.c(k, j + 1) > L.c(k, j)) slots.emplace_back(j, k);
  const int n = static_cast<int>(slots.size()) * f;
  FqMatrix R(D.prime_field(), n, n);
  for (std::size_t s = 0; s < slots.size(); ++s) {
    auto [j, l] = slots[s];
    const int cl = L.c(l, j);
    for (int a = 0; a < f; ++a) {
      DElement basis = D.zero();
      basis.a[0].c[a] = PadicScalar::from_int(D.p(), D.cap(), 1);
      DElement v = D.mul(basis, D.pi_power(cl));
      for (std::size_t s2 = 0; s2 < slots.size(); ++s2) {
        auto [j2, k] = slots[s2];
        if (j2 != j) continue;
        if (D.is_exact_zero(x.at(k, l))) continue;
        DElement y = D.mul(x.at(k, l), v);
        const int ck = L.c(k, j);
        const int q = floor_div(ck, d), i = ck - q * d;
        for (int a2 = 0; a2 < f; ++a2) {
          const PadicScalar& coef = y.a[i].c[a2];
          if (coef.is_exact_zero()) continue;
          R.at(static_cast<int>(s2) * f + a2, static_cast<int>(s) * f + a) = coef.shifted(-q).residue();
        }
      }
    }
  }
  return R;
}

}  // namespace glmd
