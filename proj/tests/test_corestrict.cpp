#include <random>

#include "doctest.h"
#include "glmd/corestrict.hpp"
#include "glmd/error.hpp"
#include "test_util.hpp"

using namespace glmd;
using glmd::testing::diag;
using glmd::testing::qmat;
using glmd::testing::random_in_a;
using glmd::testing::random_lattice;
using glmd::testing::rat;

namespace {

const std::vector<std::vector<long>> kC = {{0, -1}, {1, 0}};
const std::vector<std::vector<long>> kCC = {{0, -1, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, -1}, {0, 0, 1, 0}};
const std::vector<std::vector<long>> kCmC = {{0, -1, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, -1, 0}};
// [[0, 1], [1 + C, 0]] in M_2(E) with E = Q_3[C].
const std::vector<std::vector<long>> kK = {{0, 0, 1, 0}, {0, 0, 0, 1}, {1, -1, 0, 0}, {1, 1, 0, 0}};
const std::vector<std::vector<long>> kNil = {{0, 0, 1, 0}, {0, 0, 0, 1}, {0, 0, 0, 0}, {0, 0, 0, 0}};

MatD random_element(const DivisionAlgebra& D, int m, std::mt19937_64& rng) {
  KVector v;
  for (int a = 0; a < D.coord_dim(m); ++a) v.push_back(glmd::testing::random_scalar(D.p(), D.cap(), 0, rng));
  return D.from_coords(m, v);
}

// Projection D -> F[pi] for m = 1, d = 2 from trd(P(x) b) = trd(x b), b in {1, pi}.
DElement quaternion_projection(const DivisionAlgebra& D, const DElement& x) {
  const std::int64_t p = D.p();
  MatD X = D.mscalar(1, x);
  MatD Pi = D.mscalar(1, D.pi_power(1));
  auto c0 = D.trd_Qp(X) * PadicScalar::from_rational(p, D.cap(), mpq_class(1, 2));
  auto c1 = D.trd_Qp(D.mmul(X, Pi)) * PadicScalar::from_rational(p, D.cap(), mpq_class(1, 2 * p));
  return D.add(D.from_scalar(c0), D.mul(D.from_scalar(c1), D.pi_power(1)));
}

MatD scaled(const DivisionAlgebra& D, const std::vector<std::vector<long>>& a, int pi_exp) {
  const int m = static_cast<int>(a.size());
  return D.mmul(D.mscalar(m, D.pi_power(pi_exp)), qmat(D, a));
}

DefiningSequence sequence_of(const Stratum& s, const std::vector<MatD>& betas) {
  DefiningSequence seq;
  for (std::size_t j = 0; j < betas.size(); ++j)
    seq.strata.emplace_back(s.L, s.n, s.r + static_cast<int>(j), betas[j]);
  return seq;
}

bool certified_semisimple(const Stratum& s) {
  try {
    return certify(s).semisimple;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::Undecidable) throw;
    return false;
  }
}

}  // namespace

TEST_CASE("tame corestriction of a central element is the identity") {
  std::mt19937_64 rng(1);
  auto D = DivisionAlgebra::create(3, 1, 20);
  auto L = LatticeSequence::standard(D, 2);
  auto c = tame_corestriction(D->mscalar(2, rat(*D, 1, 3)), L);
  REQUIRE(c.lambda_exponent == std::vector<int>{0});
  for (int it = 0; it < 10; ++it) {
    MatD x = random_element(*D, 2, rng);
    CHECK(D->mequals(c.apply(x), x));
  }
}

TEST_CASE("tame corestriction for the quaternion uniformizer") {
  std::mt19937_64 rng(2);
  auto D = DivisionAlgebra::create(3, 2, 20);
  auto L = LatticeSequence::standard(D, 1);
  auto c = tame_corestriction(D->mscalar(1, D->pi_power(-1)), L);
  REQUIRE(c.lambda_exponent == std::vector<int>{0});
  CHECK(D->mequals(c.apply(D->midentity(1)), D->midentity(1)));
  for (int it = 0; it < 20; ++it) {
    MatD x = random_element(*D, 1, rng);
    CHECK(D->mequals(c.apply(x), D->mscalar(1, quaternion_projection(*D, x.at(0, 0)))));
  }
}

TEST_CASE("wild quaternion corestriction needs lambda = 2") {
  auto D = DivisionAlgebra::create(2, 2, 20);
  auto L = LatticeSequence::standard(D, 1);
  auto c = tame_corestriction(D->mscalar(1, D->pi_power(-1)), L);
  CHECK(c.lambda_exponent == std::vector<int>{2});
  CHECK(D->mequals(c.apply(D->midentity(1)), D->mscalar(1, rat(*D, 2))));
}

TEST_CASE("tame corestriction invariants") {
  std::mt19937_64 rng(3);
  struct Case {
    std::int64_t p;
    int d;
    std::vector<std::vector<long>> a;
    int pi_exp;
  };
  std::vector<Case> cases = {
      {3, 1, kC, -1}, {3, 1, {{1, 0}, {0, 0}}, -1}, {3, 1, kCC, -2}, {5, 1, {{0, 2}, {1, 0}}, -1}, {3, 2, {{1, 0}, {0, 1}}, -1},
      {3, 2, {{1, 0}, {0, 0}}, -1},
  };
  for (const auto& cs : cases) {
    auto D = DivisionAlgebra::create(cs.p, cs.d, 16);
    const int m = static_cast<int>(cs.a.size());
    auto L = LatticeSequence::standard(D, m);
    MatD gamma = scaled(*D, cs.a, cs.pi_exp);
    auto c = tame_corestriction(gamma, L);
    const auto& B = c.B;
    for (int t = -2 * L.period_F(); t <= 2 * L.period_F(); ++t)
      CHECK(L.a_lattice(t).image(c.matrix) == B.level(t));
    for (int it = 0; it < 4; ++it) {
      MatD x = random_element(*D, m, rng);
      MatD comm = D->msub(D->mmul(gamma, x), D->mmul(x, gamma));
      CHECK(D->mis_zero(c.apply(comm)));
      CHECK(B.contains(c.apply(x)));
      for (int i = 0; i < std::min(B.dim(), 4); ++i) {
        MatD b = D->from_coords(m, B.span().column(i));
        MatD b2 = D->from_coords(m, B.span().column((i + 1) % B.dim()));
        MatD lhs = c.apply(D->mmul(D->mmul(b, x), b2));
        MatD rhs = D->mmul(D->mmul(b, c.apply(x)), b2);
        CHECK(D->mequals(lhs, rhs));
      }
    }
  }
}

TEST_CASE("derived strata") {
  std::mt19937_64 rng(4);
  auto D = DivisionAlgebra::create(3, 2, 20);
  auto L = LatticeSequence::standard(D, 1);
  MatD gamma = D->mscalar(1, D->pi_power(-3));
  auto c = tame_corestriction(gamma, L);

  auto zero = derived_stratum(Stratum(L, 3, 1, gamma), gamma, c);
  CHECK(zero.is_zero());
  CHECK(D->mis_zero(zero.element));
  CHECK(classify_derived(zero).summary() == "zero");
  CHECK(classify_derived(zero).semisimple);

  for (int it = 0; it < 30; ++it) {
    const int r = static_cast<int>(rng() % 2);
    const int depth = -(r + 1) + static_cast<int>(rng() % 3);
    MatD cdiff = random_in_a(L, depth, rng);
    Stratum s(L, 3, r, D->madd(gamma, cdiff));
    auto d = derived_stratum(s, gamma, c);
    const int nu = val_Lambda(cdiff, L);
    CHECK(d.n <= s.n);
    CHECK((d.n == s.n) == (nu <= -s.n));
    if (nu != kInfVal && -nu >= r) CHECK(d.n == std::min(s.n, -nu));
    CHECK(D->mequals(d.element, D->mscalar(1, quaternion_projection(*D, cdiff.at(0, 0)))));
    CHECK(in_square_lattice(d.element, L, -d.n));
  }
  CHECK_THROWS_AS(derived_stratum(Stratum(L, 3, 1, D->madd(gamma, D->mscalar(1, D->pi_power(-3)))), gamma, c),
                  DepthMismatch);
  CHECK_THROWS_AS(derived_stratum(Stratum(L, 3, 3, gamma), gamma, c), DepthMismatch);
}

TEST_CASE("classification of derived strata over a quaternion centralizer") {
  auto D = DivisionAlgebra::create(3, 2, 20);
  auto L = LatticeSequence::standard(D, 2);
  MatD gamma = D->mscalar(2, D->pi_power(-3));
  struct Case {
    std::vector<std::vector<long>> x;
    std::string summary;
    bool semisimple;
  };
  // Residues over kappa_E = F_3: X^2 - X, X^2 + 1 and X^2.
  std::vector<Case> cases = {{{{1, 0}, {0, 0}}, "semisimple", true}, {kC, "simple", true}, {{{0, 1}, {0, 0}}, "neither", false}};
  for (const auto& cs : cases) {
    Stratum s(L, 3, 1, D->madd(gamma, scaled(*D, cs.x, -2)));
    auto seq = sequence_of(s, {s.beta, gamma, D->mzero(2)});
    auto res = strata_induction(s, seq);
    REQUIRE(res.derived.size() == 1);
    CHECK(res.derived[0].summary() == cs.summary);
    CHECK(res.semisimple == cs.semisimple);
  }
}

TEST_CASE("classification of derived strata over an unramified centralizer") {
  auto D = DivisionAlgebra::create(3, 1, 20);
  auto L = LatticeSequence::standard(D, 4);
  MatD gamma = qmat(*D, kCC, 27);
  struct Case {
    std::vector<std::vector<long>> x;
    std::string summary;
    bool semisimple;
  };
  // Over kappa_E = F_9: (X - i)(X + i), X^2 - (1 + i) irreducible, and X^2.
  std::vector<Case> cases = {{kCmC, "semisimple", true}, {kK, "simple", true}, {kNil, "neither", false}};
  for (const auto& cs : cases) {
    Stratum s(L, 3, 0, D->madd(gamma, qmat(*D, cs.x, 3)));
    auto seq = sequence_of(s, {s.beta, gamma, gamma, D->mzero(4)});
    auto res = strata_induction(s, seq);
    REQUIRE(res.derived.size() == 1);
    CHECK(res.derived[0].summary() == cs.summary);
    CHECK(res.semisimple == cs.semisimple);
    if (cs.x == kCmC) {
      // mu over F_3 alone would be the irreducible X^2 + 1.
      CHECK(res.derived[0].components[0].mu.degree() == 2);
      CHECK(res.derived[0].components[0].mu.field()->degree() == 2);
    }
  }
}

TEST_CASE("strata induction agrees with direct certification") {
  SUBCASE("unramified field element") {
    auto D = DivisionAlgebra::create(3, 1, 20);
    auto L = LatticeSequence::standard(D, 2);
    MatD gamma = qmat(*D, kC, 9);
    for (long a = 0; a < 3; ++a)
      for (long b = 0; b < 3; ++b) {
        if (a == 0 && b == 0) continue;
        MatD x = D->madd(D->mscalar(2, rat(*D, a, 3)), qmat(*D, {{0, -b}, {b, 0}}, 3));
        Stratum s(L, 2, 0, D->madd(gamma, x));
        auto res = strata_induction(s, sequence_of(s, {s.beta, gamma, D->mzero(2)}));
        CHECK(res.derived[0].summary() == "simple");
        CHECK(res.semisimple);
        CHECK(certify(s).simple());
      }
  }
  SUBCASE("quaternion field element") {
    auto D = DivisionAlgebra::create(3, 2, 20);
    auto L = LatticeSequence::standard(D, 1);
    MatD gamma = D->mscalar(1, D->pi_power(-3));
    for (long u : {1, 2, 4}) {
      Stratum s(L, 3, 1, D->madd(gamma, D->mscalar(1, D->mul(rat(*D, u), D->pi_power(-2)))));
      auto res = strata_induction(s, sequence_of(s, {s.beta, gamma, D->mzero(1)}));
      CHECK(res.derived[0].summary() == "simple");
      CHECK(certify(s).simple());
    }
  }
  SUBCASE("random perturbations of an unramified element") {
    std::mt19937_64 rng(8);
    auto D = DivisionAlgebra::create(3, 1, 20);
    auto L = LatticeSequence::standard(D, 2);
    MatD gamma = qmat(*D, kC, 9);
    int agreed = 0;
    for (int it = 0; it < 40; ++it) {
      Stratum s(L, 2, 0, D->madd(gamma, random_in_a(L, -1, rng)));
      const bool decided = strata_induction_decide(s, sequence_of(s, {s.beta, gamma, D->mzero(2)}));
      if (certified_semisimple(s)) {
        CHECK(decided);
        ++agreed;
      }
    }
    CHECK(agreed > 10);
  }
}

TEST_CASE("strata induction in the minimal and zero cases") {
  auto D = DivisionAlgebra::create(2, 1, 20);
  for (auto prof : std::vector<std::vector<std::vector<int>>>{{{0, 0}}, {{0, 0}, {0, 1}}, {{0, 0}, {1, 1}}}) {
    LatticeSequence L(D, prof);
    LatticeQuotient Q(L.a_lattice(-1), L.a_lattice(0));
    for (int mask = 0; mask < (1 << Q.dim()); ++mask) {
      KVector v(D->coord_dim(2), PadicScalar::zero(2, 20));
      for (int i = 0; i < Q.dim(); ++i)
        if (mask >> i & 1) {
          auto l = Q.lift(i);
          for (std::size_t a = 0; a < v.size(); ++a) v[a] = v[a] + l[a];
        }
      Stratum s(L, 1, 0, D->from_coords(2, v));
      CHECK(strata_induction_decide(s, minimal_defining_sequence(s)) == is_equiv_semisimple_minimal(s));
      Stratum z(L, 1, 1, s.beta);
      CHECK(strata_induction_decide(z, DefiningSequence{{z}}));
    }
  }
}

TEST_CASE("defining sequence validation") {
  auto D = DivisionAlgebra::create(3, 1, 20);
  auto L = LatticeSequence::standard(D, 4);
  MatD gamma = qmat(*D, kCC, 27);
  Stratum s(L, 3, 0, D->madd(gamma, qmat(*D, kCmC, 3)));
  CHECK_NOTHROW(validate_defining_sequence(s, sequence_of(s, {s.beta, gamma, gamma, D->mzero(4)})));
  CHECK_THROWS_AS(validate_defining_sequence(s, sequence_of(s, {s.beta, gamma, D->mzero(4)})), InvalidArgument);
  // Not equivalent to Delta(2+).
  CHECK_THROWS_AS(validate_defining_sequence(s, sequence_of(s, {s.beta, gamma, D->mzero(4), D->mzero(4)})),
                  InvalidArgument);
  // Delta(1) = [Lambda, 3, 1, beta] is not certified semisimple.
  CHECK_THROWS_AS(validate_defining_sequence(s, sequence_of(s, {s.beta, s.beta, gamma, D->mzero(4)})), InvalidArgument);
}

TEST_CASE("jump sequences and core approximations") {
  auto D = DivisionAlgebra::create(3, 1, 20);
  SUBCASE("constant k0") {
    auto L = LatticeSequence::standard(D, 2);
    MatD gamma = qmat(*D, kC, 27);
    Stratum s(L, 3, 0, gamma);
    auto seq = sequence_of(s, {gamma, gamma, gamma, gamma});
    CHECK(sequence_k0(seq) == std::vector<int>{-3, -3, -3, -3});
    CHECK(jump_sequence(seq) == std::vector<int>{0});
    // r = 0 < floor(3/2).
    CHECK(core_approximation(seq) == 0);
  }
  SUBCASE("two jumps") {
    // Scalar blocks separating at depths 1 and 2.
    auto L = LatticeSequence::standard(D, 3);
    MatD b0 = diag(*D, {rat(*D, 13, 27), rat(*D, 4, 27), rat(*D, 1, 27)});
    MatD b1 = diag(*D, {rat(*D, 4, 27), rat(*D, 4, 27), rat(*D, 1, 27)});
    MatD b2 = D->mscalar(3, rat(*D, 1, 27));
    Stratum s(L, 3, 0, b0);
    auto seq = sequence_of(s, {b0, b1, b2, D->mzero(3)});
    validate_defining_sequence(s, seq);
    std::vector<int> direct;
    for (const auto& t : seq.strata) direct.push_back(critical_exponent(t));
    CHECK(direct == std::vector<int>{-1, -2, kNegInf, kNegInf});
    CHECK(sequence_k0(seq) == direct);
    CHECK(jump_sequence(seq) == std::vector<int>{0, 1, 2});
    // Jump 1: floor(1/2) = 0 <= r. Jump 2: floor(2/2) = 1 > r.
    CHECK(core_approximation(seq) == 1);
    CHECK(strata_induction_decide(s, seq));
  }
}

TEST_CASE("exactness of the corestriction sequence") {
  struct Case {
    std::int64_t p;
    int d;
    std::vector<std::vector<long>> a;
    int pi_exp;
    int n;
    int r;
  };
  std::vector<Case> cases = {
      {3, 1, {{2}}, -1, 1, 0},
      {3, 2, {{1}}, -1, 1, 0},
      {5, 2, {{1}}, -1, 1, 0},
      {3, 1, {{1, 0}, {0, 0}}, -1, 1, 0},
      {3, 1, kC, -1, 1, 0},
      {3, 1, kC, -2, 2, 1},
      {3, 1, kC, -2, 2, 0},
      {3, 2, {{1, 0}, {0, 1}}, -3, 3, 2},
      {3, 2, {{1, 0}, {0, 1}}, -3, 3, 1},
      {3, 2, {{1, 0}, {0, 0}}, -1, 1, 0},
      {3, 1, kCC, -3, 3, 1},
      {2, 2, {{1}}, -1, 1, 0},
  };
  for (const auto& cs : cases) {
    auto D = DivisionAlgebra::create(cs.p, cs.d, 16);
    const int m = static_cast<int>(cs.a.size());
    auto L = LatticeSequence::standard(D, m);
    Stratum s(L, cs.n, cs.r, scaled(*D, cs.a, cs.pi_exp));
    INFO("p=" << cs.p << " d=" << cs.d << " m=" << m << " n=" << cs.n << " r=" << cs.r);
    auto e = exactness_ranks(s);
    CHECK(e.composite_zero);
    CHECK(e.rank_s == e.dim_b);
    CHECK(e.rank_ad + e.rank_s == e.dim_a);
  }
}

TEST_CASE("semisimple witnesses at minimal depth") {
  std::mt19937_64 rng(12);
  auto D = DivisionAlgebra::create(3, 1, 20);
  int found = 0;
  for (auto prof : std::vector<std::vector<std::vector<int>>>{{{0, 0}}, {{0, 0}, {0, 1}}}) {
    LatticeSequence L(D, prof);
    for (int it = 0; it < 20; ++it) {
      Stratum s(L, 1, 0, random_in_a(L, -1, rng));
      if (!is_equiv_semisimple_minimal(s)) {
        CHECK_THROWS_AS(semisimple_witness(s), NotCertifiedSemisimple);
        continue;
      }
      try {
        MatD w = semisimple_witness(s);
        Stratum t(L, 1, 0, w);
        CHECK(is_equivalent(s, t));
        CHECK(certify(t).semisimple);
        ++found;
      } catch (const Undecidable&) {
      }
    }
  }
  CHECK(found > 5);
}
