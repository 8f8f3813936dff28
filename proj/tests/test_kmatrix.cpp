#include <random>

#include "doctest.h"
#include "glmd/error.hpp"
#include "glmd/kmatrix.hpp"

using namespace glmd;

namespace {

KMatrix random_int_matrix(std::mt19937_64& rng, std::int64_t p, int cap, int r, int c, int range) {
  KMatrix M(p, cap, r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j)
      M.at(i, j) = PadicScalar::from_int(p, cap, static_cast<std::int64_t>(rng() % (2 * range + 1)) - range);
  return M;
}

bool mat_equal(const KMatrix& a, const KMatrix& b) { return (a - b).is_zero(); }

}  // namespace

TEST_CASE("kernel, solve and inverse over Q_p") {
  std::mt19937_64 rng(11);
  for (std::int64_t p : {2, 3, 5}) {
    const int cap = std::min(30, max_precision(p));
    for (int it = 0; it < 30; ++it) {
      KMatrix A = random_int_matrix(rng, p, cap, 4, 3, 9);
      KMatrix M = A * random_int_matrix(rng, p, cap, 3, 5, 9);
      KMatrix K = kernel(M);
      CHECK(rank(M) + K.cols() == 5);
      INFO("p=", p, " it=", it);
      CHECK((M * K).is_zero());
      KVector x(5);
      for (auto& v : x) v = PadicScalar::from_int(p, cap, static_cast<std::int64_t>(rng() % 17) - 8);
      auto b = M.apply(x);
      auto y = solve(M, b);
      REQUIRE(y.has_value());
      auto diff = M.apply(*y);
      for (int i = 0; i < 4; ++i) CHECK((diff[i] - b[i]).is_zero());

      KMatrix S = random_int_matrix(rng, p, cap, 4, 4, 20);
      if (rank(S) == 4) CHECK(mat_equal(S * inverse(S), KMatrix::identity(p, cap, 4)));
    }
  }
}

TEST_CASE("charpoly annihilates") {
  std::mt19937_64 rng(5);
  for (std::int64_t p : {2, 3}) {
    KMatrix M = random_int_matrix(rng, p, 30, 4, 4, 5);
    auto P = charpoly(M);
    CHECK(P.c.size() == 5);
    CHECK(eval_poly(P, M).is_zero());
  }
}

TEST_CASE("lattice operations") {
  const std::int64_t p = 3;
  const int cap = 30;
  auto L1 = OLattice::monomial(p, cap, {0, 1, 2});
  auto L2 = OLattice::monomial(p, cap, {1, 0, 3});
  CHECK(L1.intersect(L2) == OLattice::monomial(p, cap, {1, 1, 3}));
  CHECK(L1.sum(L2) == OLattice::monomial(p, cap, {0, 0, 2}));
  CHECK(L1.scaled(1) == OLattice::monomial(p, cap, {1, 2, 3}));
  CHECK(L1.contains(OLattice::monomial(p, cap, {1, 1, 2})));
  CHECK_FALSE(L1.contains(L2));

  KMatrix G(p, cap, 2, 2);
  G.at(0, 0) = PadicScalar::from_int(p, cap, 1);
  G.at(1, 0) = PadicScalar::from_int(p, cap, 1);
  G.at(1, 1) = PadicScalar::from_int(p, cap, 3);
  auto L = OLattice::from_generators(G);
  KVector v{PadicScalar::from_int(p, cap, 2), PadicScalar::from_int(p, cap, 5)};
  CHECK(L.contains(v));
  KVector w{PadicScalar::from_int(p, cap, 1), PadicScalar::from_int(p, cap, 0)};
  CHECK_FALSE(L.contains(w));

  // Diagonal line meets Z_3^2 in the span of (1,1).
  KMatrix span(p, cap, 2, 1);
  span.at(0, 0) = PadicScalar::from_int(p, cap, 9);
  span.at(1, 0) = PadicScalar::from_int(p, cap, 9);
  auto Z = OLattice::monomial(p, cap, {0, 0}).meet_subspace(span);
  CHECK(Z.rank() == 1);
  CHECK(Z.contains(KVector{PadicScalar::from_int(p, cap, 1), PadicScalar::from_int(p, cap, 1)}));

  KMatrix shift(p, cap, 2, 2);
  shift.at(0, 1) = PadicScalar::from_int(p, cap, 1);
  auto pre = preimage(shift, OLattice::monomial(p, cap, {-2, -2}), OLattice::monomial(p, cap, {1, 1}));
  CHECK(pre == OLattice::monomial(p, cap, {-2, 1}));
}

TEST_CASE("lattice quotient coordinates") {
  const std::int64_t p = 2;
  const int cap = 40;
  auto big = OLattice::monomial(p, cap, {0, 0, 0});
  auto small = OLattice::monomial(p, cap, {1, 0, 1});
  LatticeQuotient Q(big, small);
  CHECK(Q.dim() == 2);
  for (int i = 0; i < Q.dim(); ++i) {
    auto c = Q.coords(Q.lift(i));
    for (int j = 0; j < Q.dim(); ++j) CHECK(c[j] == (i == j ? 1u : 0u));
  }
  auto c = Q.coords(KVector{PadicScalar::from_int(p, cap, 2), PadicScalar::from_int(p, cap, 7),
                            PadicScalar::from_int(p, cap, 4)});
  CHECK(c[0] == 0);
  CHECK(c[1] == 0);
}

TEST_CASE("saturation") {
  const std::int64_t p = 5;
  const int cap = 20;
  KMatrix M(p, cap, 2, 1);
  M.at(0, 0) = PadicScalar::from_int(p, cap, 25);
  M.at(1, 0) = PadicScalar::from_int(p, cap, 50);
  auto S = saturate(M);
  CHECK(S.cols() == 1);
  int v = std::min(S.at(0, 0).valuation(), S.at(1, 0).valuation());
  CHECK(v == 0);
}
