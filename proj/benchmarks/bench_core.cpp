#include <benchmark/benchmark.h>

#include <random>

#include "glmd/characters.hpp"
#include "glmd/corestrict.hpp"
#include "glmd/endoparam.hpp"
#include "glmd/residue.hpp"
#include "glmd/stratum.hpp"

using namespace glmd;

namespace {

MatD rational_matrix(const DivisionAlgebra& D, const std::vector<std::vector<long>>& a, long den) {
  const int m = static_cast<int>(a.size());
  MatD x = D.mzero(m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      x.at(i, j) = D.from_scalar(PadicScalar::from_rational(D.p(), D.cap(), mpq_class(a[i][j], den)));
  return x;
}

MatD random_integral(const DivisionAlgebra& D, int m, std::mt19937_64& rng) {
  MatD x = D.mzero(m);
  for (auto& e : x.e)
    for (auto& a : e.a)
      for (auto& c : a.c) c = PadicScalar::from_int(D.p(), D.cap(), static_cast<std::int64_t>(rng() % 13) - 6);
  return x;
}

const std::vector<std::vector<long>> kC = {{0, -1}, {1, 0}};
const std::vector<std::vector<long>> kCC = {{0, -1, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, -1}, {0, 0, 1, 0}};
const std::vector<std::vector<long>> kCmC = {{0, -1, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, -1, 0}};

}  // namespace

static void BM_FactorResiduePoly(benchmark::State& state) {
  const auto p = static_cast<std::uint32_t>(state.range(0));
  auto k = ResidueField::prime(p);
  std::mt19937_64 rng(1);
  std::vector<ResiduePoly> polys;
  for (int i = 0; i < 64; ++i) {
    std::vector<Fq> c(9);
    for (auto& x : c) x = static_cast<Fq>(rng() % p);
    c.back() = 1;
    polys.emplace_back(k, c);
  }
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(factor(polys[i++ % polys.size()]));
}
BENCHMARK(BM_FactorResiduePoly)->Arg(2)->Arg(3)->Arg(7);

static void BM_ReducedNorm(benchmark::State& state) {
  auto D = DivisionAlgebra::create(3, static_cast<int>(state.range(0)), 20);
  std::mt19937_64 rng(2);
  MatD x = random_integral(*D, static_cast<int>(state.range(1)), rng);
  for (auto _ : state) benchmark::DoNotOptimize(D->nrd(x));
}
BENCHMARK(BM_ReducedNorm)->Args({1, 3})->Args({2, 2})->Args({3, 1});

static void BM_CertifyUnramified(benchmark::State& state) {
  auto D = DivisionAlgebra::create(3, 1, 16);
  Stratum s(LatticeSequence::standard(D, 4), 3, 0, rational_matrix(*D, kCC, 27));
  for (auto _ : state) benchmark::DoNotOptimize(certify(s));
}
BENCHMARK(BM_CertifyUnramified)->Unit(benchmark::kMillisecond);

static void BM_MinimalCriteria(benchmark::State& state) {
  auto D = DivisionAlgebra::create(3, 1, 16);
  Stratum s(LatticeSequence(D, {{0, 0}, {1, 0}}), 1, 0, rational_matrix(*D, {{0, 3}, {1, 0}}, 3));
  for (auto _ : state) benchmark::DoNotOptimize(is_equiv_semisimple_minimal(s));
}
BENCHMARK(BM_MinimalCriteria)->Unit(benchmark::kMillisecond);

static void BM_TameCorestriction(benchmark::State& state) {
  auto D = DivisionAlgebra::create(3, 1, 16);
  auto L = LatticeSequence::standard(D, 4);
  MatD gamma = rational_matrix(*D, kCC, 27);
  for (auto _ : state) benchmark::DoNotOptimize(tame_corestriction(gamma, L));
}
BENCHMARK(BM_TameCorestriction)->Unit(benchmark::kMillisecond);

static void BM_StrataInduction(benchmark::State& state) {
  auto D = DivisionAlgebra::create(3, 1, 16);
  auto L = LatticeSequence::standard(D, 4);
  MatD gamma = rational_matrix(*D, kCC, 27);
  Stratum s(L, 3, 0, D->madd(gamma, rational_matrix(*D, kCmC, 3)));
  DefiningSequence seq;
  for (int j = 0; j < 4; ++j) seq.strata.emplace_back(L, 3, j, j == 0 ? s.beta : j < 3 ? gamma : D->mzero(4));
  for (auto _ : state) benchmark::DoNotOptimize(strata_induction_decide(s, seq));
}
BENCHMARK(BM_StrataInduction)->Unit(benchmark::kMillisecond);

static void BM_IntertwiningLattice(benchmark::State& state) {
  auto D = DivisionAlgebra::create(3, 1, 16);
  Stratum s(LatticeSequence::standard(D, 2), 1, 0, rational_matrix(*D, kC, 3));
  for (auto _ : state) benchmark::DoNotOptimize(intertwining_lattice(s));
}
BENCHMARK(BM_IntertwiningLattice)->Unit(benchmark::kMillisecond);

static void BM_SingletonCharacter(benchmark::State& state) {
  auto D = DivisionAlgebra::create(3, 2, 16);
  auto L = LatticeSequence::standard(D, 2);
  Stratum s(L, 3, 2, D->mscalar(2, D->pi_power(-3)));
  MatD x = D->madd(D->midentity(2), D->mscalar(2, D->pi_power(3)));
  for (auto _ : state) benchmark::DoNotOptimize(singleton_character(s, x));
}
BENCHMARK(BM_SingletonCharacter);

static void BM_EnumerateEndoParameters(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0)), d = static_cast<int>(state.range(1));
  std::vector<SimpleEndoClassDescriptor> palette;
  const int ef[][2] = {{1, 1}, {1, 1}, {2, 1}, {1, 2}, {3, 1}, {2, 2}, {1, 6}};
  for (int i = 0; i < 7; ++i)
    palette.push_back({std::string(1, static_cast<char>('a' + i)), ef[i][0] * ef[i][1], ef[i][0], ef[i][1], std::nullopt});
  for (auto _ : state) benchmark::DoNotOptimize(enumerate(m, d, palette));
}
BENCHMARK(BM_EnumerateEndoParameters)->Args({8, 1})->Args({4, 2})->Args({2, 4});

BENCHMARK_MAIN();
