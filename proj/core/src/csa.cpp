#include "glmd/csa.hpp"

#include <sstream>

#include "glmd/error.hpp"

namespace glmd {

std::shared_ptr<const DivisionAlgebra> DivisionAlgebra::create(std::int64_t p, int d, int cap, int center_degree) {
  if (d < 1) throw InvalidArgument("degree d must be at least 1");
  if (center_degree < 1) throw InvalidArgument("centre degree must be at least 1");
  if (d > 1 && center_degree > 1)
    throw InvalidArgument("an unramified centre is only supported for d = 1");
  std::shared_ptr<DivisionAlgebra> D(new DivisionAlgebra());
  D->p_ = p;
  D->d_ = d;
  D->cap_ = cap;
  D->fk_ = center_degree;
  D->L_ = UnramifiedField::create(p, d > 1 ? d : center_degree, cap);
  D->fp_ = ResidueField::prime(static_cast<std::uint32_t>(p));
  D->kK_ = center_degree > 1 ? D->L_->residue_field() : D->fp_;
  return D;
}

DElement DivisionAlgebra::zero() const { return DElement{std::vector<UnramifiedElement>(d_, L_->zero())}; }

DElement DivisionAlgebra::from_int(std::int64_t v) const {
  DElement x = zero();
  x.a[0] = L_->from_int(v);
  return x;
}

DElement DivisionAlgebra::from_scalar(const PadicScalar& s) const {
  DElement x = zero();
  x.a[0] = L_->from_scalar(s);
  return x;
}

DElement DivisionAlgebra::from_L(const UnramifiedElement& a) const {
  DElement x = zero();
  x.a[0] = a;
  return x;
}

DElement DivisionAlgebra::pi_power(int k) const {
  int q = k >= 0 ? k / d_ : -((-k + d_ - 1) / d_);
  int r = k - q * d_;
  DElement x = zero();
  x.a[r] = L_->from_scalar(PadicScalar::p_power(p_, cap_, q));
  return x;
}

UnramifiedElement DivisionAlgebra::sigma(const UnramifiedElement& a, int k) const {
  if (d_ == 1) return a;
  return L_->frobenius(a, k);
}

DElement DivisionAlgebra::add(const DElement& x, const DElement& y) const {
  DElement r;
  r.a.resize(d_);
  for (int i = 0; i < d_; ++i) r.a[i] = L_->add(x.a[i], y.a[i]);
  return r;
}

DElement DivisionAlgebra::sub(const DElement& x, const DElement& y) const {
  DElement r;
  r.a.resize(d_);
  for (int i = 0; i < d_; ++i) r.a[i] = L_->sub(x.a[i], y.a[i]);
  return r;
}

DElement DivisionAlgebra::neg(const DElement& x) const {
  DElement r;
  r.a.resize(d_);
  for (int i = 0; i < d_; ++i) r.a[i] = L_->neg(x.a[i]);
  return r;
}

DElement DivisionAlgebra::mul(const DElement& x, const DElement& y) const {
  DElement r = zero();
  for (int i = 0; i < d_; ++i) {
    if (L_->is_exact_zero(x.a[i])) continue;
    for (int j = 0; j < d_; ++j) {
      if (L_->is_exact_zero(y.a[j])) continue;
      UnramifiedElement t = L_->mul(x.a[i], sigma(y.a[j], i));
      int idx = i + j;
      if (idx >= d_) {
        idx -= d_;
        t = L_->shift(t, 1);
      }
      r.a[idx] = L_->add(r.a[idx], t);
    }
  }
  return r;
}

DElement DivisionAlgebra::scale(const DElement& x, const PadicScalar& s) const {
  DElement r;
  r.a.resize(d_);
  for (int i = 0; i < d_; ++i) r.a[i] = L_->scale(x.a[i], s);
  return r;
}

DElement DivisionAlgebra::inv(const DElement& x) const {
  if (is_exact_zero(x)) throw NotInvertible("inverse of zero in D");
  MatD X = mzero(1);
  X.at(0, 0) = x;
  KMatrix M = left_mul_matrix(X);
  auto sol = solve(M, coords(midentity(1)));
  if (!sol) throw InsufficientPrecision("element of D not invertible at this precision");
  return from_coords(1, *sol).at(0, 0);
}

bool DivisionAlgebra::is_zero(const DElement& x) const {
  for (auto& a : x.a)
    if (!L_->is_zero(a)) return false;
  return true;
}

bool DivisionAlgebra::is_exact_zero(const DElement& x) const {
  for (auto& a : x.a)
    if (!L_->is_exact_zero(a)) return false;
  return true;
}

int DivisionAlgebra::valuation(const DElement& x) const {
  int e = kInfVal, b = kInfVal;
  for (int i = 0; i < d_; ++i) {
    if (L_->is_zero(x.a[i])) {
      int z = L_->val_bound(x.a[i]);
      if (z < kInfVal) b = std::min(b, d_ * z + i);
    } else {
      e = std::min(e, d_ * L_->valuation(x.a[i]) + i);
    }
  }
  if (e == kInfVal && b == kInfVal) return kInfVal;
  if (e < b) return e;
  throw IndeterminateValuation("valuation in D undetermined at this precision");
}

std::string DivisionAlgebra::to_string(const DElement& x) const {
  std::ostringstream os;
  bool first = true;
  for (int i = 0; i < d_; ++i) {
    if (L_->is_exact_zero(x.a[i])) continue;
    if (!first) os << " + ";
    first = false;
    os << L_->to_string(x.a[i]);
    if (i == 1) os << "*pi";
    if (i > 1) os << "*pi^" << i;
  }
  if (first) os << "0";
  return os.str();
}

MatD DivisionAlgebra::mzero(int m) const {
  MatD x;
  x.m = m;
  x.e.assign(static_cast<std::size_t>(m) * m, zero());
  return x;
}

MatD DivisionAlgebra::midentity(int m) const {
  MatD x = mzero(m);
  for (int i = 0; i < m; ++i) x.at(i, i) = one();
  return x;
}

MatD DivisionAlgebra::mscalar(int m, const DElement& s) const {
  MatD x = mzero(m);
  for (int i = 0; i < m; ++i) x.at(i, i) = s;
  return x;
}

MatD DivisionAlgebra::madd(const MatD& x, const MatD& y) const {
  MatD r = x;
  for (std::size_t i = 0; i < r.e.size(); ++i) r.e[i] = add(x.e[i], y.e[i]);
  return r;
}

MatD DivisionAlgebra::msub(const MatD& x, const MatD& y) const {
  MatD r = x;
  for (std::size_t i = 0; i < r.e.size(); ++i) r.e[i] = sub(x.e[i], y.e[i]);
  return r;
}

MatD DivisionAlgebra::mneg(const MatD& x) const {
  MatD r = x;
  for (auto& v : r.e) v = neg(v);
  return r;
}

MatD DivisionAlgebra::mmul(const MatD& x, const MatD& y) const {
  if (x.m != y.m) throw InvalidArgument("matrix size mismatch");
  const int m = x.m;
  MatD r = mzero(m);
  for (int i = 0; i < m; ++i)
    for (int l = 0; l < m; ++l) {
      if (is_exact_zero(x.at(i, l))) continue;
      for (int j = 0; j < m; ++j) {
        if (is_exact_zero(y.at(l, j))) continue;
        r.at(i, j) = add(r.at(i, j), mul(x.at(i, l), y.at(l, j)));
      }
    }
  return r;
}

MatD DivisionAlgebra::mscale(const MatD& x, const PadicScalar& s) const {
  MatD r = x;
  for (auto& v : r.e) v = scale(v, s);
  return r;
}

MatD DivisionAlgebra::mpow(const MatD& x, int e) const {
  if (e < 0) return mpow(minv(x), -e);
  MatD r = midentity(x.m), b = x;
  while (e) {
    if (e & 1) r = mmul(r, b);
    e >>= 1;
    if (e) b = mmul(b, b);
  }
  return r;
}

MatD DivisionAlgebra::minv(const MatD& x0) const {
  const int m = x0.m;
  MatD x = x0, y = midentity(m);
  auto swap_rows = [m](MatD& z, int a, int b) {
    for (int j = 0; j < m; ++j) std::swap(z.at(a, j), z.at(b, j));
  };
  for (int c = 0; c < m; ++c) {
    int sel = -1, best = kInfVal;
    bool approx = false;
    for (int i = c; i < m; ++i) {
      if (is_zero(x.at(i, c))) {
        approx = approx || !is_exact_zero(x.at(i, c));
        continue;
      }
      int v = valuation(x.at(i, c));
      if (v < best) {
        best = v;
        sel = i;
      }
    }
    if (sel < 0 && approx) throw InsufficientPrecision("matrix over D is singular at this precision");
    if (sel < 0) throw NotInvertible("singular matrix over D");
    swap_rows(x, c, sel);
    swap_rows(y, c, sel);
    DElement pinv = inv(x.at(c, c));
    for (int j = 0; j < m; ++j) {
      x.at(c, j) = mul(pinv, x.at(c, j));
      y.at(c, j) = mul(pinv, y.at(c, j));
    }
    for (int i = 0; i < m; ++i) {
      if (i == c || is_exact_zero(x.at(i, c))) continue;
      DElement f = x.at(i, c);
      for (int j = 0; j < m; ++j) {
        x.at(i, j) = sub(x.at(i, j), mul(f, x.at(c, j)));
        y.at(i, j) = sub(y.at(i, j), mul(f, y.at(c, j)));
      }
    }
  }
  return y;
}

MatD DivisionAlgebra::block_diag(const MatD& x, const MatD& y) const {
  MatD r = mzero(x.m + y.m);
  for (int i = 0; i < x.m; ++i)
    for (int j = 0; j < x.m; ++j) r.at(i, j) = x.at(i, j);
  for (int i = 0; i < y.m; ++i)
    for (int j = 0; j < y.m; ++j) r.at(x.m + i, x.m + j) = y.at(i, j);
  return r;
}

bool DivisionAlgebra::mis_zero(const MatD& x) const {
  for (auto& v : x.e)
    if (!is_zero(v)) return false;
  return true;
}

std::string DivisionAlgebra::to_string(const MatD& x) const {
  std::ostringstream os;
  os << "[";
  for (int i = 0; i < x.m; ++i) {
    os << (i ? ", [" : "[");
    for (int j = 0; j < x.m; ++j) os << (j ? ", " : "") << to_string(x.at(i, j));
    os << "]";
  }
  os << "]";
  return os.str();
}

KVector DivisionAlgebra::coords(const MatD& x) const {
  const int m = x.m, f = fl();
  KVector v(coord_dim(m));
  for (int k = 0; k < m; ++k)
    for (int l = 0; l < m; ++l)
      for (int i = 0; i < d_; ++i)
        for (int a = 0; a < f; ++a) v[((k * m + l) * d_ + i) * f + a] = x.at(k, l).a[i].c[a];
  return v;
}

MatD DivisionAlgebra::from_coords(int m, const KVector& v) const {
  const int f = fl();
  MatD x = mzero(m);
  for (int k = 0; k < m; ++k)
    for (int l = 0; l < m; ++l)
      for (int i = 0; i < d_; ++i)
        for (int a = 0; a < f; ++a) x.at(k, l).a[i].c[a] = v[((k * m + l) * d_ + i) * f + a];
  return x;
}

namespace {

DElement basis_element(const DivisionAlgebra& D, int i, int a) {
  DElement e = D.zero();
  e.a[i].c[a] = PadicScalar::from_int(D.p(), D.cap(), 1);
  return e;
}

}  // namespace

KMatrix DivisionAlgebra::left_mul_matrix(const MatD& x) const {
  const int m = x.m, f = fl(), N = coord_dim(m);
  KMatrix M(p_, cap_, N, N);
  for (int l = 0; l < m; ++l)
    for (int j = 0; j < m; ++j)
      for (int i = 0; i < d_; ++i)
        for (int a = 0; a < f; ++a) {
          const int col = ((l * m + j) * d_ + i) * f + a;
          DElement e = basis_element(*this, i, a);
          for (int k = 0; k < m; ++k) {
            if (is_exact_zero(x.at(k, l))) continue;
            DElement prod = mul(x.at(k, l), e);
            for (int i2 = 0; i2 < d_; ++i2)
              for (int a2 = 0; a2 < f; ++a2) M.at(((k * m + j) * d_ + i2) * f + a2, col) = prod.a[i2].c[a2];
          }
        }
  return M;
}

KMatrix DivisionAlgebra::right_mul_matrix(const MatD& x) const {
  const int m = x.m, f = fl(), N = coord_dim(m);
  KMatrix M(p_, cap_, N, N);
  for (int l = 0; l < m; ++l)
    for (int j = 0; j < m; ++j)
      for (int i = 0; i < d_; ++i)
        for (int a = 0; a < f; ++a) {
          const int col = ((l * m + j) * d_ + i) * f + a;
          DElement e = basis_element(*this, i, a);
          for (int k = 0; k < m; ++k) {
            if (is_exact_zero(x.at(j, k))) continue;
            DElement prod = mul(e, x.at(j, k));
            for (int i2 = 0; i2 < d_; ++i2)
              for (int a2 = 0; a2 < f; ++a2) M.at(((l * m + k) * d_ + i2) * f + a2, col) = prod.a[i2].c[a2];
          }
        }
  return M;
}

KMatrix DivisionAlgebra::ad_matrix(const MatD& x) const { return left_mul_matrix(x) - right_mul_matrix(x); }

KMatrix DivisionAlgebra::restrict_to_F(const MatD& x) const {
  const int m = x.m, f = fl(), N = v_dim(m);
  KMatrix M(p_, cap_, N, N);
  for (int l = 0; l < m; ++l)
    for (int i = 0; i < d_; ++i)
      for (int a = 0; a < f; ++a) {
        const int col = (l * d_ + i) * f + a;
        DElement e = basis_element(*this, i, a);
        for (int k = 0; k < m; ++k) {
          if (is_exact_zero(x.at(k, l))) continue;
          DElement prod = mul(x.at(k, l), e);
          for (int i2 = 0; i2 < d_; ++i2)
            for (int a2 = 0; a2 < f; ++a2) M.at((k * d_ + i2) * f + a2, col) = prod.a[i2].c[a2];
        }
      }
  return M;
}

MatD DivisionAlgebra::from_v_operator(int m, const KMatrix& T) const {
  const int f = fl();
  MatD x = mzero(m);
  for (int l = 0; l < m; ++l) {
    const int col = (l * d_) * f;
    for (int k = 0; k < m; ++k)
      for (int i = 0; i < d_; ++i)
        for (int a = 0; a < f; ++a) x.at(k, l).a[i].c[a] = T.at((k * d_ + i) * f + a, col);
  }
  return x;
}

LMatrix DivisionAlgebra::split_to_L(const MatD& x) const {
  const int m = x.m, n = m * d_;
  LMatrix S(n, std::vector<UnramifiedElement>(n, L_->zero()));
  for (int k = 0; k < m; ++k)
    for (int l = 0; l < m; ++l)
      for (int i = 0; i < d_; ++i) {
        const auto& a = x.at(k, l).a[i];
        if (L_->is_exact_zero(a)) continue;
        for (int s = 0; s < d_; ++s) {
          const int t = (i + s) % d_;
          const int q = (i + s) / d_;
          UnramifiedElement term = L_->shift(sigma(a, -t), q);
          S[k * d_ + t][l * d_ + s] = L_->add(S[k * d_ + t][l * d_ + s], term);
        }
      }
  return S;
}

LMatrix DivisionAlgebra::lmul(const LMatrix& a, const LMatrix& b) const {
  const std::size_t n = a.size();
  LMatrix r(n, std::vector<UnramifiedElement>(n, L_->zero()));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      if (L_->is_exact_zero(a[i][k])) continue;
      for (std::size_t j = 0; j < n; ++j) r[i][j] = L_->add(r[i][j], L_->mul(a[i][k], b[k][j]));
    }
  return r;
}

UnramifiedElement DivisionAlgebra::ltrace(const LMatrix& a) const {
  UnramifiedElement t = L_->zero();
  for (std::size_t i = 0; i < a.size(); ++i) t = L_->add(t, a[i][i]);
  return t;
}

UnramifiedElement DivisionAlgebra::ldet(LMatrix a) const {
  const int n = static_cast<int>(a.size());
  UnramifiedElement det = L_->one();
  for (int c = 0; c < n; ++c) {
    int sel = -1, best = kInfVal;
    for (int i = c; i < n; ++i) {
      if (L_->is_zero(a[i][c])) continue;
      int v = L_->valuation(a[i][c]);
      if (v < best) {
        best = v;
        sel = i;
      }
    }
    if (sel < 0) return L_->zero();
    if (sel != c) {
      std::swap(a[sel], a[c]);
      det = L_->neg(det);
    }
    det = L_->mul(det, a[c][c]);
    UnramifiedElement pinv = L_->inv(a[c][c]);
    for (int i = c + 1; i < n; ++i) {
      if (L_->is_zero(a[i][c])) continue;
      UnramifiedElement f = L_->mul(a[i][c], pinv);
      for (int j = c; j < n; ++j) a[i][j] = L_->sub(a[i][j], L_->mul(f, a[c][j]));
    }
  }
  return det;
}

namespace {

void check_central(const DivisionAlgebra& D, const UnramifiedElement& v, const char* what) {
  if (D.d() > 1 && !D.L()->in_base(v))
    throw InsufficientPrecision(std::string(what) + " is not Galois-invariant at this precision");
}

}  // namespace

UnramifiedElement DivisionAlgebra::trd(const MatD& x) const {
  UnramifiedElement t = ltrace(split_to_L(x));
  check_central(*this, t, "reduced trace");
  return t;
}

UnramifiedElement DivisionAlgebra::nrd(const MatD& x) const {
  UnramifiedElement t = ldet(split_to_L(x));
  check_central(*this, t, "reduced norm");
  return t;
}

PadicScalar DivisionAlgebra::trd_Qp(const MatD& x) const {
  UnramifiedElement t = trd(x);
  if (fk_ > 1) return L_->trace(t);
  return t.c[0];
}

}  // namespace glmd
