#include "glmd/kmatrix.hpp"

#include <algorithm>

#include "glmd/error.hpp"

namespace glmd {

KMatrix::KMatrix(std::int64_t p, int cap, int rows, int cols)
    : p_(p), cap_(cap), r_(rows), c_(cols),
      a_(static_cast<std::size_t>(rows) * cols, PadicScalar::zero(p, cap)) {}

KMatrix KMatrix::identity(std::int64_t p, int cap, int n) {
  KMatrix m(p, cap, n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = PadicScalar::from_int(p, cap, 1);
  return m;
}

KMatrix KMatrix::from_columns(std::int64_t p, int cap, int rows, const std::vector<KVector>& cols) {
  KMatrix m(p, cap, rows, static_cast<int>(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j) m.set_column(static_cast<int>(j), cols[j]);
  return m;
}

KVector KMatrix::column(int j) const {
  KVector v(r_);
  for (int i = 0; i < r_; ++i) v[i] = at(i, j);
  return v;
}

void KMatrix::set_column(int j, const KVector& v) {
  for (int i = 0; i < r_; ++i) at(i, j) = v[i];
}

KMatrix KMatrix::operator*(const KMatrix& o) const {
  if (c_ != o.r_) throw InvalidArgument("matrix dimension mismatch");
  KMatrix m(p_, cap_, r_, o.c_);
  for (int i = 0; i < r_; ++i)
    for (int l = 0; l < c_; ++l) {
      const PadicScalar& a = at(i, l);
      if (a.is_exact_zero()) continue;
      for (int j = 0; j < o.c_; ++j) {
        const PadicScalar& b = o.at(l, j);
        if (b.is_exact_zero()) continue;
        m.at(i, j) += a * b;
      }
    }
  return m;
}

KMatrix KMatrix::operator+(const KMatrix& o) const {
  KMatrix m = *this;
  for (std::size_t i = 0; i < a_.size(); ++i) m.a_[i] += o.a_[i];
  return m;
}

KMatrix KMatrix::operator-(const KMatrix& o) const {
  KMatrix m = *this;
  for (std::size_t i = 0; i < a_.size(); ++i) m.a_[i] -= o.a_[i];
  return m;
}

KMatrix KMatrix::scaled(const PadicScalar& s) const {
  KMatrix m = *this;
  for (auto& x : m.a_) x *= s;
  return m;
}

KMatrix KMatrix::transpose() const {
  KMatrix m(p_, cap_, c_, r_);
  for (int i = 0; i < r_; ++i)
    for (int j = 0; j < c_; ++j) m.at(j, i) = at(i, j);
  return m;
}

KMatrix KMatrix::hcat(const KMatrix& o) const {
  KMatrix m(p_ ? p_ : o.p_, cap_ ? cap_ : o.cap_, r_, c_ + o.c_);
  for (int i = 0; i < r_; ++i) {
    for (int j = 0; j < c_; ++j) m.at(i, j) = at(i, j);
    for (int j = 0; j < o.c_; ++j) m.at(i, c_ + j) = o.at(i, j);
  }
  return m;
}

KMatrix KMatrix::vcat(const KMatrix& o) const {
  KMatrix m(p_ ? p_ : o.p_, cap_ ? cap_ : o.cap_, r_ + o.r_, c_);
  for (int j = 0; j < c_; ++j) {
    for (int i = 0; i < r_; ++i) m.at(i, j) = at(i, j);
    for (int i = 0; i < o.r_; ++i) m.at(r_ + i, j) = o.at(i, j);
  }
  return m;
}

KMatrix KMatrix::block(int r0, int c0, int nr, int nc) const {
  KMatrix m(p_, cap_, nr, nc);
  for (int i = 0; i < nr; ++i)
    for (int j = 0; j < nc; ++j) m.at(i, j) = at(r0 + i, c0 + j);
  return m;
}

KVector KMatrix::apply(const KVector& v) const {
  KVector r(r_, zero());
  for (int i = 0; i < r_; ++i)
    for (int j = 0; j < c_; ++j) {
      if (at(i, j).is_exact_zero() || v[j].is_exact_zero()) continue;
      r[i] += at(i, j) * v[j];
    }
  return r;
}

bool KMatrix::is_zero() const {
  return std::all_of(a_.begin(), a_.end(), [](const PadicScalar& s) { return s.is_zero(); });
}

namespace {

struct ColEchelon {
  KMatrix E;
  KMatrix T;
  std::vector<int> piv;
};

void swap_cols(KMatrix& M, int a, int b) {
  if (a == b) return;
  for (int i = 0; i < M.rows(); ++i) std::swap(M.at(i, a), M.at(i, b));
}

void axpy_col(KMatrix& M, int dst, int src, const PadicScalar& f) {
  for (int i = 0; i < M.rows(); ++i) {
    if (M.at(i, src).is_exact_zero()) continue;
    M.at(i, dst) -= f * M.at(i, src);
  }
}

// Column echelon form by unimodular column operations with minimal-valuation pivots.
ColEchelon col_echelon(const KMatrix& M, bool track) {
  ColEchelon r{M, track ? KMatrix::identity(M.prime(), M.cap(), M.cols()) : KMatrix(), {}};
  int cur = 0;
  const int n = M.cols();
  for (int i = 0; i < M.rows() && cur < n; ++i) {
    int sel = -1, best = kInfVal;
    for (int j = cur; j < n; ++j) {
      const auto& x = r.E.at(i, j);
      if (x.is_zero()) continue;
      if (x.valuation() < best) {
        best = x.valuation();
        sel = j;
      }
    }
    if (sel < 0) continue;
    swap_cols(r.E, cur, sel);
    if (track) swap_cols(r.T, cur, sel);
    const PadicScalar pivinv = r.E.at(i, cur).inverse();
    for (int j = cur + 1; j < n; ++j) {
      if (r.E.at(i, j).is_zero()) {
        r.E.at(i, j) = PadicScalar::zero(M.prime(), M.cap());
        continue;
      }
      PadicScalar f = r.E.at(i, j) * pivinv;
      axpy_col(r.E, j, cur, f);
      if (track) axpy_col(r.T, j, cur, f);
      r.E.at(i, j) = PadicScalar::zero(M.prime(), M.cap());
    }
    r.piv.push_back(i);
    ++cur;
  }
  return r;
}

KVector primitive(KVector v) {
  int m = kInfVal;
  for (auto& x : v)
    if (!x.is_zero()) m = std::min(m, x.valuation());
  if (m == kInfVal || m == 0) return v;
  for (auto& x : v) x = x.shifted(-m);
  return v;
}

bool integral_checked(const PadicScalar& c) {
  if (c.is_exact_zero()) return true;
  if (c.is_zero()) {
    if (c.val_bound() >= 0) return true;
    throw InsufficientPrecision("lattice membership undetermined at this precision");
  }
  return c.valuation() >= 0;
}

}  // namespace

int rank(const KMatrix& M) { return static_cast<int>(col_echelon(M, false).piv.size()); }

KMatrix kernel(const KMatrix& M) {
  auto ce = col_echelon(M, true);
  const int rk = static_cast<int>(ce.piv.size());
  std::vector<KVector> cols;
  for (int j = rk; j < M.cols(); ++j) cols.push_back(primitive(ce.T.column(j)));
  return KMatrix::from_columns(M.prime(), M.cap(), M.cols(), cols);
}

std::optional<KVector> solve(const KMatrix& M, const KVector& b0) {
  auto ce = col_echelon(M, true);
  KVector b = b0;
  const int rk = static_cast<int>(ce.piv.size());
  KVector y(M.cols(), M.zero());
  for (int k = 0; k < rk; ++k) {
    int i = ce.piv[k];
    if (b[i].is_zero()) continue;
    y[k] = b[i] / ce.E.at(i, k);
    for (int l = 0; l < M.rows(); ++l)
      if (!ce.E.at(l, k).is_exact_zero()) b[l] -= y[k] * ce.E.at(l, k);
  }
  for (auto& x : b)
    if (!x.is_zero()) return std::nullopt;
  return ce.T.apply(y);
}

KMatrix inverse(const KMatrix& M) {
  if (M.rows() != M.cols()) throw InvalidArgument("inverse of a non-square matrix");
  const int n = M.rows();
  auto ce = col_echelon(M, true);
  if (static_cast<int>(ce.piv.size()) < n) throw NotInvertible("singular matrix");
  KMatrix R(M.prime(), M.cap(), n, n);
  KMatrix I = KMatrix::identity(M.prime(), M.cap(), n);
  for (int c = 0; c < n; ++c) {
    KVector b = I.column(c);
    KVector y(n, M.zero());
    for (int k = 0; k < n; ++k) {
      int i = ce.piv[k];
      if (b[i].is_zero()) continue;
      y[k] = b[i] / ce.E.at(i, k);
      for (int l = 0; l < n; ++l)
        if (!ce.E.at(l, k).is_exact_zero()) b[l] -= y[k] * ce.E.at(l, k);
    }
    R.set_column(c, ce.T.apply(y));
  }
  return R;
}

PadicPoly charpoly(const KMatrix& A) {
  const int n = A.rows();
  std::vector<PadicScalar> p{PadicScalar::from_int(A.prime(), A.cap(), 1)};
  for (int k = 0; k < n; ++k) {
    std::vector<PadicScalar> col{PadicScalar::from_int(A.prime(), A.cap(), 1), -A.at(k, k)};
    KVector v(k);
    for (int i = 0; i < k; ++i) v[i] = A.at(i, k);
    for (int j = 0; j < k; ++j) {
      PadicScalar s = A.zero();
      for (int i = 0; i < k; ++i) s += A.at(k, i) * v[i];
      col.push_back(-s);
      KVector w(k, A.zero());
      for (int i = 0; i < k; ++i)
        for (int l = 0; l < k; ++l) w[i] += A.at(i, l) * v[l];
      v = w;
    }
    std::vector<PadicScalar> np(k + 2, A.zero());
    for (int i = 0; i < k + 2; ++i)
      for (int j = 0; j <= i && j < k + 1; ++j) np[i] += col[i - j] * p[j];
    p = np;
  }
  PadicPoly r;
  r.c.assign(p.rbegin(), p.rend());
  return r;
}

KMatrix eval_poly(const PadicPoly& P, const KMatrix& M) {
  const int n = M.rows();
  KMatrix r(M.prime(), M.cap(), n, n);
  for (int i = P.degree(); i >= 0; --i) {
    r = r * M;
    for (int j = 0; j < n; ++j) r.at(j, j) += P.c[i];
  }
  return r;
}

FqMatrix reduce_mod_p(const KMatrix& M, const FieldPtr& fp) {
  FqMatrix r(fp, M.rows(), M.cols());
  for (int i = 0; i < M.rows(); ++i)
    for (int j = 0; j < M.cols(); ++j) r.at(i, j) = M.at(i, j).residue();
  return r;
}

OLattice OLattice::from_generators(const KMatrix& G) {
  auto ce = col_echelon(G, false);
  OLattice L;
  const int rk = static_cast<int>(ce.piv.size());
  L.basis_ = ce.E.block(0, 0, G.rows(), rk);
  L.piv_ = ce.piv;
  // Normalize pivots to exact powers of p.
  for (int k = 0; k < rk; ++k) {
    const PadicScalar& x = L.basis_.at(L.piv_[k], k);
    PadicScalar u = x.shifted(-x.valuation()).inverse();
    for (int i = 0; i < G.rows(); ++i)
      if (!L.basis_.at(i, k).is_exact_zero()) L.basis_.at(i, k) *= u;
  }
  return L;
}

OLattice OLattice::monomial(std::int64_t p, int cap, const std::vector<int>& bounds) {
  OLattice L;
  int n = static_cast<int>(bounds.size());
  int r = 0;
  for (int b : bounds)
    if (b < kInfVal) ++r;
  L.basis_ = KMatrix(p, cap, n, r);
  int k = 0;
  for (int i = 0; i < n; ++i) {
    if (bounds[i] >= kInfVal) continue;
    L.basis_.at(i, k) = PadicScalar::p_power(p, cap, bounds[i]);
    L.piv_.push_back(i);
    ++k;
  }
  return L;
}

OLattice OLattice::zero(std::int64_t p, int cap, int ambient) {
  OLattice L;
  L.basis_ = KMatrix(p, cap, ambient, 0);
  return L;
}

std::optional<KVector> OLattice::coordinates(const KVector& x0) const {
  KVector x = x0;
  const int r = rank();
  KVector c(r, basis_.zero());
  for (int k = 0; k < r; ++k) {
    int i = piv_[k];
    if (x[i].is_zero()) {
      c[k] = basis_.zero();
      if (!x[i].is_exact_zero()) {
        PadicScalar q = x[i] / basis_.at(i, k);
        if (!integral_checked(q)) return std::nullopt;
      }
      continue;
    }
    c[k] = x[i] / basis_.at(i, k);
    if (!integral_checked(c[k])) return std::nullopt;
    for (int l = 0; l < ambient_dim(); ++l)
      if (!basis_.at(l, k).is_exact_zero()) x[l] -= c[k] * basis_.at(l, k);
  }
  for (auto& v : x)
    if (!v.is_zero()) return std::nullopt;
  return c;
}

bool OLattice::contains(const OLattice& o) const {
  for (int j = 0; j < o.rank(); ++j)
    if (!contains(o.basis_.column(j))) return false;
  return true;
}

OLattice OLattice::sum(const OLattice& o) const { return from_generators(basis_.hcat(o.basis_)); }

OLattice OLattice::scaled(int k) const {
  OLattice L = *this;
  for (int i = 0; i < L.basis_.rows(); ++i)
    for (int j = 0; j < L.basis_.cols(); ++j) L.basis_.at(i, j) = L.basis_.at(i, j).shifted(k);
  return L;
}

OLattice OLattice::image(const KMatrix& M) const { return from_generators(M * basis_); }

KMatrix saturate(const KMatrix& M) {
  auto ce = col_echelon(M, false);
  const int k = static_cast<int>(ce.piv.size());
  const int N = M.rows();
  KMatrix B = ce.E.block(0, 0, N, k);
  KMatrix W = B;
  for (int j = 0; j < k; ++j) {
    int sel = -1, best = kInfVal;
    for (int i = j; i < N; ++i) {
      const auto& x = W.at(i, j);
      if (x.is_zero()) continue;
      if (x.valuation() < best) {
        best = x.valuation();
        sel = i;
      }
    }
    if (sel < 0) throw InsufficientPrecision("rank drop while saturating a lattice");
    if (sel != j)
      for (int c = 0; c < k; ++c) std::swap(W.at(sel, c), W.at(j, c));
    PadicScalar inv = W.at(j, j).inverse();
    for (int i = j + 1; i < N; ++i) {
      if (W.at(i, j).is_zero()) continue;
      PadicScalar f = W.at(i, j) * inv;
      for (int c = j; c < k; ++c) W.at(i, c) -= f * W.at(j, c);
    }
  }
  KMatrix X(M.prime(), M.cap(), N, k);
  for (int j = 0; j < k; ++j) {
    KVector col = B.column(j);
    for (int i = 0; i < j; ++i) {
      if (W.at(i, j).is_zero()) continue;
      for (int l = 0; l < N; ++l) col[l] -= X.at(l, i) * W.at(i, j);
    }
    PadicScalar inv = W.at(j, j).inverse();
    for (int l = 0; l < N; ++l) X.at(l, j) = col[l] * inv;
  }
  return X;
}

OLattice OLattice::intersect(const OLattice& o) const {
  const int r1 = rank(), r2 = o.rank();
  if (r1 == 0 || r2 == 0) return zero(basis_.prime(), basis_.cap(), ambient_dim());
  KMatrix M = basis_.hcat(o.basis_.scaled(PadicScalar::from_int(basis_.prime(), basis_.cap(), -1)));
  KMatrix K = kernel(M);
  if (K.cols() == 0) return zero(basis_.prime(), basis_.cap(), ambient_dim());
  KMatrix S = saturate(K);
  return from_generators(basis_ * S.block(0, 0, r1, S.cols()));
}

OLattice OLattice::meet_subspace(const KMatrix& span) const {
  const int r1 = rank();
  if (r1 == 0 || span.cols() == 0) return zero(basis_.prime(), basis_.cap(), ambient_dim());
  KMatrix M = basis_.hcat(span.scaled(PadicScalar::from_int(basis_.prime(), basis_.cap(), -1)));
  KMatrix K = kernel(M);
  if (K.cols() == 0) return zero(basis_.prime(), basis_.cap(), ambient_dim());
  KMatrix S = saturate(K.block(0, 0, r1, K.cols()));
  return from_generators(basis_ * S);
}

OLattice preimage(const KMatrix& M, const OLattice& L0, const OLattice& L) {
  const int r0 = L0.rank(), rl = L.rank();
  KMatrix MB = M * L0.basis();
  KMatrix big = rl ? MB.hcat(L.basis().scaled(PadicScalar::from_int(M.prime(), M.cap(), -1))) : MB;
  KMatrix K = kernel(big);
  if (K.cols() == 0) return OLattice::zero(M.prime(), M.cap(), L0.ambient_dim());
  KMatrix S = saturate(K);
  return OLattice::from_generators(L0.basis() * S.block(0, 0, r0, S.cols()));
}

LatticeQuotient::LatticeQuotient(const OLattice& big, const OLattice& small) : big_(big) {
  fp_ = ResidueField::prime(static_cast<std::uint32_t>(big.basis().prime()));
  const int r = big.rank();
  FqMatrix W(fp_, small.rank(), r);
  for (int j = 0; j < small.rank(); ++j) {
    auto c = big.coordinates(small.generator(j));
    if (!c) throw InvalidArgument("quotient of lattices that are not nested");
    for (int i = 0; i < r; ++i) W.at(j, i) = (*c)[i].residue();
  }
  // Row reduce W.
  std::vector<int> piv;
  int row = 0;
  for (int col = 0; col < r && row < W.rows(); ++col) {
    int sel = -1;
    for (int i = row; i < W.rows(); ++i)
      if (W.at(i, col)) {
        sel = i;
        break;
      }
    if (sel < 0) continue;
    for (int j = 0; j < r; ++j) std::swap(W.at(sel, j), W.at(row, j));
    Fq inv = fp_->inv(W.at(row, col));
    for (int j = 0; j < r; ++j) W.at(row, j) = fp_->mul(W.at(row, j), inv);
    for (int i = 0; i < W.rows(); ++i) {
      if (i == row || !W.at(i, col)) continue;
      Fq c = W.at(i, col);
      for (int j = 0; j < r; ++j) W.at(i, j) = fp_->sub(W.at(i, j), fp_->mul(c, W.at(row, j)));
    }
    piv.push_back(col);
    ++row;
  }
  rref_ = W;
  pivots_ = piv;
  std::vector<bool> isp(r, false);
  for (int c : piv) isp[c] = true;
  for (int i = 0; i < r; ++i)
    if (!isp[i]) free_.push_back(i);
}

std::vector<Fq> LatticeQuotient::coords(const KVector& x) const {
  auto c = big_.coordinates(x);
  if (!c) throw NotIntegral("element outside the lattice");
  const int r = big_.rank();
  std::vector<Fq> v(r);
  for (int i = 0; i < r; ++i) v[i] = (*c)[i].residue();
  for (std::size_t k = 0; k < pivots_.size(); ++k) {
    Fq a = v[pivots_[k]];
    if (!a) continue;
    for (int j = 0; j < r; ++j) v[j] = fp_->sub(v[j], fp_->mul(a, rref_.at(static_cast<int>(k), j)));
  }
  std::vector<Fq> out(free_.size());
  for (std::size_t i = 0; i < free_.size(); ++i) out[i] = v[free_[i]];
  return out;
}

KVector LatticeQuotient::lift(int i) const { return big_.generator(free_[i]); }

}  // namespace glmd
