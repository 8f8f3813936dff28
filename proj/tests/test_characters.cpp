#include <random>

#include "doctest.h"
#include "glmd/characters.hpp"
#include "glmd/error.hpp"
#include "test_util.hpp"

using namespace glmd;
using glmd::testing::diag;
using glmd::testing::qmat;
using glmd::testing::random_in_a;
using glmd::testing::random_lattice;
using glmd::testing::rat;

namespace {

mpq_class frac(mpq_class q) {
  q.canonicalize();
  mpz_class fl;
  mpz_fdiv_q(fl.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  mpq_class r = q - fl;
  r.canonicalize();
  return r;
}

MatD one_plus(const DivisionAlgebra& D, const MatD& x) { return D.madd(D.midentity(x.m), x); }

DefiningSequence sequence_of(const Stratum& s, const std::vector<MatD>& betas) {
  DefiningSequence seq;
  for (std::size_t j = 0; j < betas.size(); ++j)
    seq.strata.emplace_back(s.L, s.n, s.r + static_cast<int>(j), betas[j]);
  return seq;
}

MatD random_unit(const LatticeSequence& L, std::mt19937_64& rng) {
  const auto& D = *L.algebra();
  for (;;) {
    MatD g = random_in_a(L, 0, rng);
    try {
      MatD gi = D.minv(g);
      if (in_square_lattice(gi, L, 0)) return g;
    } catch (const Error&) {
    }
  }
}

}  // namespace

TEST_CASE("psi_F is the fractional part of x/p") {
  std::mt19937_64 rng(1);
  for (std::int64_t p : {2, 3, 5, 7}) {
    for (int it = 0; it < 50; ++it) {
      const long a = static_cast<long>(rng() % 2000) - 1000;
      const int k = static_cast<int>(rng() % 4);
      const long den = static_cast<long>(ipow(p, k));
      mpq_class q(a, den);
      q.canonicalize();
      auto v = psi_F(PadicScalar::from_rational(p, 16, q));
      CHECK(v.value() == frac(q / p));
    }
    CHECK(psi_F(PadicScalar::from_int(p, 16, p)).is_trivial());
    CHECK(psi_F(PadicScalar::from_int(p, 16, 1)).value() == mpq_class(1, p));
  }
}

TEST_CASE("psi_c basic values") {
  std::mt19937_64 rng(2);
  for (int d : {1, 2}) {
    auto D = DivisionAlgebra::create(3, d, 16);
    for (int it = 0; it < 20; ++it) {
      auto L = random_lattice(D, 2, 1 + it % 2, rng);
      const int n = 1 + it % 3;
      MatD beta = random_in_a(L, -n, rng);
      MatD x = one_plus(*D, random_in_a(L, n + 1, rng));
      CHECK(psi_c(*D, beta, x).is_trivial());
      CHECK(psi_c(*D, D->mzero(2), x).is_trivial());
    }
  }
  for (std::int64_t p : {3, 5}) {
    auto D = DivisionAlgebra::create(p, 1, 16);
    for (long a = 0; a < 2 * p; ++a) {
      MatD x = D->mscalar(1, rat(*D, 1 + p * a));
      CHECK(psi_c(*D, D->mscalar(1, rat(*D, 1, p)), x).value() == frac(mpq_class(a, p)));
    }
  }
}

TEST_CASE("psi_c is a homomorphism in the congruence range") {
  std::mt19937_64 rng(3);
  for (int d : {1, 2}) {
    auto D = DivisionAlgebra::create(3, d, 16);
    for (int it = 0; it < 40; ++it) {
      auto L = random_lattice(D, 2, 1 + it % 3, rng);
      const int n = 1 + static_cast<int>(rng() % 4);
      const int t = (n + 2) / 2;
      MatD c = random_in_a(L, -n, rng);
      MatD x = one_plus(*D, random_in_a(L, t, rng));
      MatD y = one_plus(*D, random_in_a(L, t, rng));
      CHECK(psi_c(*D, c, D->mmul(x, y)) == psi_c(*D, c, x) + psi_c(*D, c, y));
    }
  }
}

TEST_CASE("singleton characters") {
  std::mt19937_64 rng(4);
  auto D = DivisionAlgebra::create(3, 2, 16);
  auto L = LatticeSequence::standard(D, 2);
  MatD beta = random_in_a(L, -3, rng);
  Stratum s(L, 3, 2, beta);
  CHECK(in_singleton_range(s));
  CHECK(singleton_character(s, D->midentity(2)).is_trivial());
  CHECK_THROWS_AS(singleton_character(Stratum(L, 3, 1, beta), D->midentity(2)), OutOfSingletonRange);
  CHECK_THROWS_AS(singleton_character(s, one_plus(*D, random_in_a(L, 2, rng))), InvalidArgument);
  for (int it = 0; it < 20; ++it) {
    MatD x = one_plus(*D, random_in_a(L, 2, rng));
    MatD y = one_plus(*D, random_in_a(L, 2, rng));
    if (!in_square_lattice(D->msub(x, D->midentity(2)), L, 3) || !in_square_lattice(D->msub(y, D->midentity(2)), L, 3))
      continue;
    CHECK(singleton_character(s, D->mmul(x, y)) == singleton_character(s, x) + singleton_character(s, y));
  }
  for (int it = 0; it < 20; ++it) {
    MatD x = one_plus(*D, random_in_a(L, 3, rng));
    MatD y = one_plus(*D, random_in_a(L, 3, rng));
    CHECK(singleton_character(s, D->mmul(x, y)) == singleton_character(s, x) + singleton_character(s, y));
  }
}

TEST_CASE("singleton characters are invariant under 1 + m") {
  std::mt19937_64 rng(5);
  struct Case {
    std::int64_t p;
    int d;
    std::vector<std::vector<long>> a;
  };
  std::vector<Case> cases = {{3, 2, {{1}}}, {3, 1, {{0, -1}, {1, 0}}}, {3, 1, {{1, 0}, {0, 0}}}, {3, 2, {{1, 0}, {0, 0}}}};
  for (const auto& cs : cases) {
    auto D = DivisionAlgebra::create(cs.p, cs.d, 16);
    const int m = static_cast<int>(cs.a.size());
    auto L = LatticeSequence::standard(D, m);
    const int n = 3 * L.period_F() / cs.d;
    MatD beta = D->mmul(D->mscalar(m, D->pi_power(-n)), qmat(*D, cs.a));
    Stratum s(L, n, n - 1, beta);
    REQUIRE(in_singleton_range(s));
    auto im = intertwining_lattice(s);
    for (int i = 0; i < im.m.rank(); ++i) {
      MatD y = one_plus(*D, D->from_coords(m, im.m.generator(i)));
      CHECK(intertwines_singleton(y, s, s));
      MatD yi = D->minv(y);
      for (int it = 0; it < 3; ++it) {
        MatD x = one_plus(*D, random_in_a(L, n, rng));
        CHECK(singleton_character(s, D->mmul(D->mmul(yi, x), y)) == singleton_character(s, x));
      }
    }
  }
}

TEST_CASE("intertwining of singleton characters") {
  std::mt19937_64 rng(6);
  auto D1 = DivisionAlgebra::create(3, 1, 16);
  auto L1 = LatticeSequence::standard(D1, 1);
  Stratum base(L1, 3, 2, D1->mscalar(1, rat(*D1, 1, 27)));
  CHECK(intertwines_singleton(D1->midentity(1), base, base));
  CHECK(intertwines_singleton(D1->mscalar(1, rat(*D1, 3)), base, base));
  for (long u = 1; u < 9; ++u) {
    if (u % 3 == 0) continue;
    Stratum other(L1, 3, 2, D1->mscalar(1, rat(*D1, u, 27)));
    CHECK(intertwines_singleton(D1->midentity(1), base, other) == (u % 3 == 1));
  }

  int positives = 0;
  for (int d : {1, 2}) {
    auto D = DivisionAlgebra::create(3, d, 16);
    for (int it = 0; it < 30; ++it) {
      auto L = random_lattice(D, 2, 1 + it % 2, rng);
      const int n = 3 + it % 2;
      Stratum a(L, n, n - 1, random_in_a(L, -n, rng));
      MatD g = random_unit(L, rng);
      MatD conj = D->mmul(D->mmul(g, a.beta), D->minv(g));
      MatD bb = it % 3 == 0 ? random_in_a(L, -n, rng) : D->madd(conj, random_in_a(L, 1 - n, rng));
      Stratum b(L, n, n - 1, bb);
      CHECK(intertwines_singleton(D->midentity(2), a, a));
      CHECK(intertwines_singleton(D->mscalar(2, rat(*D, 2)), a, a));
      if (intertwines_singleton(g, a, b)) {
        ++positives;
        CHECK(intertwines(g, a, b));
      }
    }
  }
  CHECK(positives > 10);
}

TEST_CASE("order filtrations") {
  SUBCASE("zero stratum") {
    auto D = DivisionAlgebra::create(3, 2, 16);
    auto L = LatticeSequence::standard(D, 2);
    Stratum z(L, 2, 2, D->mzero(2));
    auto h = h_order(z, DefiningSequence{{z}});
    CHECK(h.level(3) == L.a_lattice(3));
    CHECK(h.level(0) == L.a_lattice(0));
  }
  SUBCASE("minimal simple strata") {
    std::vector<std::pair<AlgebraPtr, MatD>> cases;
    {
      auto D = DivisionAlgebra::create(3, 2, 16);
      cases.emplace_back(D, D->mscalar(1, D->pi_power(-3)));
    }
    {
      auto D = DivisionAlgebra::create(3, 1, 16);
      cases.emplace_back(D, qmat(*D, {{0, -1}, {1, 0}}, 27));
    }
    {
      auto D = DivisionAlgebra::create(5, 2, 16);
      cases.emplace_back(D, D->mscalar(2, D->pi_power(-5)));
    }
    for (auto& [D, beta] : cases) {
      const int m = beta.m;
      auto L = LatticeSequence::standard(D, m);
      const int n = -val_Lambda(beta, L);
      for (int r = 0; r < n; ++r) {
        Stratum s(L, n, r, beta);
        std::vector<MatD> betas(n - r, beta);
        betas.push_back(D->mzero(m));
        auto seq = sequence_of(s, betas);
        auto h = h_order(s, seq);
        auto j = j_order(s, seq);
        auto B = centralizer(beta, L);
        CHECK(h.level(r + 1) == B.level(r + 1).sum(L.a_lattice(std::max(r + 1, n / 2 + 1))));
        CHECK(j.level(r + 1) == B.level(r + 1).sum(L.a_lattice(std::max(r + 1, (n + 1) / 2))));
        for (int i = 0; i < 2 * n; ++i) {
          CHECK(h.level(i).contains(h.level(i + 1)));
          CHECK(j.level(i).contains(h.level(i)));
        }
        const auto& G = B.level(0);
        const auto& H = h.order;
        for (int a = 0; a < G.rank(); ++a)
          for (int b = 0; b < H.rank(); ++b) {
            MatD x = D->from_coords(m, G.generator(a));
            MatD y = D->from_coords(m, H.generator(b));
            CHECK(H.contains(D->coords(D->mmul(x, y))));
            CHECK(H.contains(D->coords(D->mmul(y, x))));
          }
      }
    }
  }
  SUBCASE("two-step recursion") {
    auto D = DivisionAlgebra::create(3, 1, 16);
    auto L = LatticeSequence::standard(D, 3);
    MatD b0 = diag(*D, {rat(*D, 13, 27), rat(*D, 4, 27), rat(*D, 1, 27)});
    MatD b1 = diag(*D, {rat(*D, 4, 27), rat(*D, 4, 27), rat(*D, 1, 27)});
    MatD b2 = D->mscalar(3, rat(*D, 1, 27));
    Stratum s(L, 3, 0, b0);
    auto h = h_order(s, sequence_of(s, {b0, b1, b2, D->mzero(3)}));
    // k0(b0) = -1, k0(b1) = -2, b2 central.
    OLattice h1 = centralizer(b1, L).level(0).sum(L.a_lattice(2));
    OLattice h0 = centralizer(b0, L).level(0).sum(h1.intersect(L.a_lattice(1)));
    CHECK(h.order == h0);
    CHECK(h.provenance.size() == 3);
    MatD u = D->midentity(3);
    u.at(0, 1) = rat(*D, 3);
    CHECK(h.contains_unit(u, 1));
    u.at(0, 1) = rat(*D, 0);
    u.at(0, 2) = rat(*D, 3);
    CHECK(!h.contains_unit(u, 1));
    u.at(0, 2) = rat(*D, 9);
    CHECK(h.contains_unit(u, 1));
  }
}
