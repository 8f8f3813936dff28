#include "doctest.h"
#include "glmd/error.hpp"
#include "glmd/semipure.hpp"

using namespace glmd;

namespace {

MatD diag_scalars(const DivisionAlgebra& D, const std::vector<mpq_class>& v) {
  MatD x = D.mzero(static_cast<int>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i)
    x.at(static_cast<int>(i), static_cast<int>(i)) = D.from_scalar(PadicScalar::from_rational(D.p(), D.cap(), v[i]));
  return x;
}

}  // namespace

TEST_CASE("ramified quadratic inside the quaternion algebra") {
  auto D = DivisionAlgebra::create(3, 2, 30);
  auto L = LatticeSequence::standard(D, 1);
  MatD beta = D->mscalar(1, D->pi_power(-1));
  auto sp = certify_semipure(beta, L);
  REQUIRE(sp.blocks.size() == 1);
  CHECK(sp.blocks[0].e == 2);
  CHECK(sp.blocks[0].f == 1);
  CHECK(sp.blocks[0].nu == -1);
  CHECK(sp.blocks[0].e_Lambda_E == 1);
  CHECK(sp.blocks[0].dim_D == 1);
}

TEST_CASE("diagonal scalars split into blocks") {
  auto D = DivisionAlgebra::create(3, 1, 30);
  auto L = LatticeSequence::standard(D, 2);
  auto sp = certify_semipure(diag_scalars(*D, {mpq_class(1, 3), 0}), L);
  REQUIRE(sp.blocks.size() == 2);
  int zeros = 0;
  for (auto& b : sp.blocks) zeros += b.zero;
  CHECK(zeros == 1);

  auto sp2 = certify_semipure(diag_scalars(*D, {mpq_class(1, 3), mpq_class(4, 3)}), L);
  REQUIRE(sp2.blocks.size() == 2);
  for (auto& b : sp2.blocks) {
    CHECK(b.scalar);
    CHECK(b.nu == -1);
  }
}

TEST_CASE("non-semisimple and unramified elements") {
  auto D = DivisionAlgebra::create(3, 1, 30);
  auto L = LatticeSequence::standard(D, 2);
  MatD J = diag_scalars(*D, {mpq_class(1, 3), mpq_class(1, 3)});
  J.at(0, 1) = D->one();
  CHECK_THROWS_AS(certify_semipure(J, L), NotSemiPure);

  // companion matrix of X^2 + 1, irreducible mod 3, divided by 3
  MatD C = D->mzero(2);
  C.at(0, 1) = D->from_scalar(PadicScalar::from_rational(3, 30, mpq_class(-1, 3)));
  C.at(1, 0) = D->from_scalar(PadicScalar::from_rational(3, 30, mpq_class(1, 3)));
  auto sp = certify_semipure(C, L);
  REQUIRE(sp.blocks.size() == 1);
  CHECK(sp.blocks[0].e == 1);
  CHECK(sp.blocks[0].f == 2);
  CHECK(sp.blocks[0].nu == -1);
}
