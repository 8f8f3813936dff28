#include <algorithm>
#include <map>
#include <numeric>

#include "acceptance.hpp"

namespace glmd::acceptance {

using testing::qmat;
using testing::random_in_a;
using testing::random_lattice;
using testing::rat;

namespace {

// All F_p-combinations of the standard lifts of big/small, as elements of A.
std::vector<MatD> coset_representatives(const DivisionAlgebra& D, int m, const OLattice& big, const OLattice& small) {
  LatticeQuotient Q(big, small);
  std::vector<MatD> out;
  std::vector<int> digit(static_cast<std::size_t>(Q.dim()), 0);
  for (;;) {
    KVector v(static_cast<std::size_t>(D.coord_dim(m)), PadicScalar::zero(D.p(), D.cap()));
    for (int i = 0; i < Q.dim(); ++i) {
      if (digit[i] == 0) continue;
      auto l = Q.lift(i);
      auto c = PadicScalar::from_int(D.p(), D.cap(), digit[i]);
      for (std::size_t a = 0; a < v.size(); ++a) v[a] = v[a] + c * l[a];
    }
    out.push_back(D.from_coords(m, v));
    int i = 0;
    while (i < Q.dim() && ++digit[i] == D.p()) digit[i++] = 0;
    if (i == Q.dim()) break;
  }
  return out;
}

bool certifies_semisimple(const Stratum& s) {
  try {
    return certify(s).semisimple;
  } catch (const Error&) {
    return false;
  }
}

std::string describe(const Stratum& s) { return s.algebra()->to_string(s.beta); }

// 2x2 semisimplicity over F_p: scalar, or non-zero discriminant.
bool semisimple_2x2(long a, long b, long c, long d, long p) {
  auto md = [p](long x) { return ((x % p) + p) % p; };
  if (md(b) == 0 && md(c) == 0 && md(a - d) == 0) return true;
  return md((a + d) * (a + d) - 4 * (a * d - b * c)) != 0;
}

// F_9 = F_3[i], i^2 = -1, as pairs (re, im).
struct F9 {
  long re = 0, im = 0;
};
F9 f9(long re, long im) { return {((re % 3) + 3) % 3, ((im % 3) + 3) % 3}; }
F9 operator+(F9 x, F9 y) { return f9(x.re + y.re, x.im + y.im); }
F9 operator-(F9 x, F9 y) { return f9(x.re - y.re, x.im - y.im); }
F9 operator*(F9 x, F9 y) { return f9(x.re * y.re - x.im * y.im, x.re * y.im + x.im * y.re); }
bool is_zero(F9 x) { return x.re == 0 && x.im == 0; }

bool semisimple_2x2_f9(F9 a, F9 b, F9 c, F9 d) {
  if (is_zero(b) && is_zero(c) && is_zero(a - d)) return true;
  F9 tr = a + d, det = a * d - b * c;
  return !is_zero(tr * tr - f9(4, 0) * det);
}

}  // namespace

Result minimal_classification() {
  Tally t;
  int strata = 0, positives = 0, candidates = 0;
  for (std::int64_t p : {2, 3}) {
    for (auto [d, m] : {std::pair{1, 1}, std::pair{1, 2}, std::pair{2, 1}}) {
      auto D = DivisionAlgebra::create(p, d, 16);
      std::vector<std::vector<std::vector<int>>> profiles = {std::vector<std::vector<int>>(1, std::vector<int>(m, 0))};
      if (m == 1) profiles.push_back({{0}, {1}});
      if (m == 2) {
        profiles.push_back({{0, 0}, {0, 1}});
        profiles.push_back({{0, 0}, {1, 1}});
      }
      for (const auto& prof : profiles) {
        LatticeSequence L(D, prof);
        auto betas = coset_representatives(*D, m, L.a_lattice(-1), L.a_lattice(0));
        auto shifts = coset_representatives(*D, m, L.a_lattice(0), L.a_lattice(1));
        for (const auto& beta : betas) {
          Stratum s(L, 1, 0, beta);
          ++strata;
          const bool criteria = is_equiv_semisimple_minimal(s);
          bool witness = false;
          for (const auto& c : shifts) {
            ++candidates;
            if (certifies_semisimple(Stratum(L, 1, 0, D->madd(beta, c)))) {
              witness = true;
              break;
            }
          }
          positives += witness;
          t.check(criteria == witness, "p=" + std::to_string(p) + " d=" + std::to_string(d) + " e_D=" +
                                           std::to_string(prof.size()) + " beta=" + describe(s) +
                                           (criteria ? " criteria true, no witness" : " criteria false, witness found"));
        }
      }
    }
  }
  t.note(std::to_string(strata) + " strata");
  t.note(std::to_string(positives) + " equivalent to semisimple");
  t.note(std::to_string(candidates) + " candidates certified");
  return t.result();
}

Result level_invariance() {
  Tally t;
  std::mt19937_64 rng(5);
  std::map<std::pair<int, int>, AlgebraPtr> algebras;
  int fundamental = 0;
  const int total = 60;
  for (int it = 0; it < total; ++it) {
    const std::int64_t p = it % 2 ? 3 : 2;
    const int d = 1 + (it / 2) % 2;
    const int m = 1 + (it / 4) % 2;
    auto& D = algebras[{static_cast<int>(p), d}];
    if (!D) D = DivisionAlgebra::create(p, d, 16);
    auto L = random_lattice(D, m, 1 + it % 3, rng);
    const int n = 1 + static_cast<int>(rng() % 3);
    Stratum s(L, n, n - 1, random_in_a(L, -n, rng));
    const bool f = is_fundamental(s);
    fundamental += f;
    const std::string tag = "#" + std::to_string(it) + " " + describe(s);
    const std::vector<std::pair<std::string, Stratum>> images = {
        {"dagger", dagger(s)}, {"res_F", res_F(s)}, {"tensor_L", tensor_L(s, 1)}, {"tensor_L^2", tensor_L(s, 2)}};
    for (const auto& [op, img] : images) {
      t.check(level(img) == level(s), tag + " level under " + op);
      t.check(is_fundamental(img) == f, tag + " fundamental under " + op);
    }
  }
  t.note(std::to_string(total) + " strata");
  t.note(std::to_string(fundamental) + " fundamental");
  return t.result();
}

Result intertwining_levels() {
  Tally t;
  std::mt19937_64 rng(6);
  std::map<std::pair<int, int>, AlgebraPtr> algebras;
  int both_fundamental = 0, intertwined = 0, across = 0, level_differs = 0;
  const int total = 500;
  for (int it = 0; it < total; ++it) {
    const std::int64_t p = it % 2 ? 3 : 2;
    const int d = 1 + (it / 2) % 2;
    const int m = 1 + (it / 4) % 2;
    auto& D = algebras[{static_cast<int>(p), d}];
    if (!D) D = DivisionAlgebra::create(p, d, 16);
    auto L = random_lattice(D, m, 1 + static_cast<int>(rng() % 3), rng);
    auto M = rng() % 3 == 0 ? L : random_lattice(D, m, 1 + static_cast<int>(rng() % 3), rng);
    const int n = 1 + static_cast<int>(rng() % 3);
    Stratum a(L, n, n - 1, random_in_a(L, -n, rng));

    MatD g;
    switch (rng() % 4) {
      case 0:
        g = D->midentity(m);
        break;
      case 1:
        g = random_unit(L, rng);
        break;
      case 2:
        g = D->mscalar(m, D->pi_power(static_cast<int>(rng() % 3) - 1));
        break;
      default:
        g = D->mmul(random_unit(M, rng), random_unit(L, rng));
    }
    MatD bp = rng() % 4 == 0 ? random_in_a(M, -(1 + static_cast<int>(rng() % 3)), rng)
                             : D->mmul(D->mmul(g, a.beta), D->minv(g));
    const int v = val_Lambda(bp, M);
    const int np = std::max(1, v >= kInfVal ? 1 : -v);
    bp = D->madd(bp, random_in_a(M, 1 - np, rng));
    Stratum b(M, np, np - 1, bp);
    if (level(a) != level(b)) ++level_differs;
    if (!is_fundamental(a) || !is_fundamental(b)) continue;
    ++both_fundamental;
    if (!intertwines(g, a, b)) continue;
    ++intertwined;
    across += !(L == M);
    t.check(level(a) == level(b), "#" + std::to_string(it) + " levels " + level(a).get_str() + " vs " +
                                      level(b).get_str());
  }
  t.note(std::to_string(total) + " triples");
  t.note(std::to_string(both_fundamental) + " both fundamental");
  t.note(std::to_string(intertwined) + " intertwined (" + std::to_string(across) + " across different lattice sequences)");
  t.note(std::to_string(level_differs) + " with different levels");
  if (intertwined == 0) t.check(false, "no intertwined fundamental pair was generated");
  return t.result();
}

Result strata_induction_consistency() {
  Tally t;
  std::mt19937_64 rng(8);
  int constructed = 0, truth_ss = 0, minimal = 0;
  auto run = [&](const std::string& tag, const Stratum& s, const DefiningSequence& seq, bool truth) {
    ++constructed;
    truth_ss += truth;
    bool got = false;
    try {
      got = strata_induction_decide(s, seq);
    } catch (const Error& e) {
      t.check(false, tag + " " + e.what());
      return;
    }
    t.check(got == truth, tag + (truth ? " expected semisimple" : " expected not semisimple"));
  };

  // gamma central in M_2(Q_3), c = X/3 for every residue X; s = id on B = A.
  {
    auto D = DivisionAlgebra::create(3, 1, 16);
    auto L = LatticeSequence::standard(D, 2);
    MatD gamma = D->mscalar(2, rat(*D, 1, 9));
    for (int code = 0; code < 81; ++code) {
      long x[4];
      for (int i = 0, c = code; i < 4; ++i, c /= 3) x[i] = c % 3;
      Stratum s(L, 2, 0, D->madd(gamma, qmat(*D, {{x[0], x[1]}, {x[2], x[3]}}, 3)));
      run("central Q3 X=" + std::to_string(code), s, sequence_of(s, {s.beta, gamma, D->mzero(2)}),
          semisimple_2x2(x[0], x[1], x[2], x[3], 3));
    }
  }
  // gamma = pi^{-3} central in M_2(D), D the quaternion algebra over Q_3, c = pi^{-2} X.
  {
    auto D = DivisionAlgebra::create(3, 2, 16);
    auto L = LatticeSequence::standard(D, 2);
    MatD gamma = D->mscalar(2, D->pi_power(-3));
    for (int it = 0; it < 20; ++it) {
      long x[4];
      for (auto& v : x) v = static_cast<long>(rng() % 3);
      MatD c = D->mmul(D->mscalar(2, D->pi_power(-2)), qmat(*D, {{x[0], x[1]}, {x[2], x[3]}}));
      Stratum s(L, 3, 1, D->madd(gamma, c));
      run("quaternion #" + std::to_string(it), s, sequence_of(s, {s.beta, gamma, D->mzero(2)}),
          semisimple_2x2(x[0], x[1], x[2], x[3], 3));
    }
  }
  // gamma = C/27 generating the unramified quadratic E in M_4(Q_3); c = X/3 with X in M_2(o_E),
  // so s(c) = c and the truth is semisimplicity of X over F_9.
  {
    auto D = DivisionAlgebra::create(3, 1, 16);
    auto L = LatticeSequence::standard(D, 4);
    const std::vector<std::vector<long>> CC = {{0, -1, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, -1}, {0, 0, 1, 0}};
    MatD gamma = qmat(*D, CC, 27);
    for (int it = 0; it < 30; ++it) {
      F9 e[4];
      std::vector<std::vector<long>> X(4, std::vector<long>(4, 0));
      for (int k = 0; k < 4; ++k) {
        e[k] = f9(static_cast<long>(rng() % 3), static_cast<long>(rng() % 3));
        const int bi = 2 * (k / 2), bj = 2 * (k % 2);
        X[bi][bj] = e[k].re;
        X[bi + 1][bj + 1] = e[k].re;
        X[bi][bj + 1] = -e[k].im;
        X[bi + 1][bj] = e[k].im;
      }
      Stratum s(L, 3, 0, D->madd(gamma, qmat(*D, X, 3)));
      run("unramified #" + std::to_string(it), s, sequence_of(s, {s.beta, gamma, gamma, D->mzero(4)}),
          semisimple_2x2_f9(e[0], e[1], e[2], e[3]));
    }
  }

  // Minimal strata: induction with the trivial sequence must reproduce the minimal criteria.
  for (std::int64_t p : {2, 3}) {
    auto D = DivisionAlgebra::create(p, 1, 16);
    for (auto prof : std::vector<std::vector<std::vector<int>>>{{{0, 0}}, {{0, 0}, {0, 1}}, {{0, 0}, {1, 1}}}) {
      LatticeSequence L(D, prof);
      for (int it = 0; it < 15; ++it) {
        Stratum s(L, 1, 0, random_in_a(L, -1, rng));
        ++minimal;
        bool got = false;
        try {
          got = strata_induction_decide(s, minimal_defining_sequence(s));
        } catch (const Error& e) {
          t.check(false, "minimal " + describe(s) + " " + e.what());
          continue;
        }
        t.check(got == is_equiv_semisimple_minimal(s), "minimal " + describe(s));
      }
    }
  }
  t.note(std::to_string(constructed) + " constructed depth-2 strata (" + std::to_string(truth_ss) + " semisimple)");
  t.note(std::to_string(minimal) + " minimal strata");
  return t.result();
}

Result exactness_identity() {
  Tally t;
  struct Case {
    std::int64_t p;
    int d;
    std::vector<std::vector<long>> a;
    int pi_exp, n, r;
  };
  const std::vector<std::vector<long>> C = {{0, -1}, {1, 0}};
  const std::vector<std::vector<long>> CC = {{0, -1, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, -1}, {0, 0, 1, 0}};
  const std::vector<Case> cases = {
      {3, 1, {{2}}, -1, 1, 0},           {3, 2, {{1}}, -1, 1, 0},           {5, 2, {{1}}, -1, 1, 0},
      {3, 1, {{1, 0}, {0, 0}}, -1, 1, 0}, {3, 1, C, -1, 1, 0},               {3, 1, C, -2, 2, 1},
      {3, 1, C, -2, 2, 0},               {3, 2, {{1, 0}, {0, 1}}, -3, 3, 2}, {3, 2, {{1, 0}, {0, 1}}, -3, 3, 1},
      {3, 2, {{1, 0}, {0, 0}}, -1, 1, 0}, {3, 1, CC, -3, 3, 1},              {2, 2, {{1}}, -1, 1, 0},
      {2, 1, {{0, -1}, {1, -1}}, -1, 1, 0}, {5, 1, {{1, 0, 0}, {0, 2, 0}, {0, 0, 0}}, -1, 1, 0},
  };
  int strata = 0;
  for (const auto& cs : cases) {
    auto D = DivisionAlgebra::create(cs.p, cs.d, 16);
    const int m = static_cast<int>(cs.a.size());
    Stratum s(LatticeSequence::standard(D, m), cs.n, cs.r, D->mmul(D->mscalar(m, D->pi_power(cs.pi_exp)), qmat(*D, cs.a)));
    const std::string tag = "p=" + std::to_string(cs.p) + " d=" + std::to_string(cs.d) + " " + describe(s) +
                            " n=" + std::to_string(cs.n) + " r=" + std::to_string(cs.r);
    t.check(certify(s).semisimple, tag + " certified");
    auto e = exactness_ranks(s);
    ++strata;
    t.check(e.composite_zero, tag + " s o ad = 0");
    t.check(e.rank_s == e.dim_b, tag + " s surjective");
    t.check(e.rank_ad + e.rank_s == e.dim_a, tag + " rank identity");
  }
  t.note(std::to_string(strata) + " certified semisimple strata");
  return t.result();
}

Result matching_recovery() {
  Tally t;
  std::mt19937_64 rng(12);
  struct BlockType {
    std::string name;
    MatD x;
  };
  struct Family {
    AlgebraPtr D;
    std::vector<BlockType> types;
  };
  auto Q3 = DivisionAlgebra::create(3, 1, 16);
  auto Q2 = DivisionAlgebra::create(2, 1, 16);
  auto D3 = DivisionAlgebra::create(3, 2, 16);
  auto zeta = D3->from_L(D3->L()->gen());
  std::vector<Family> families = {
      {Q3,
       {{"1/3", qmat(*Q3, {{1}}, 3)},
        {"2/3", qmat(*Q3, {{2}}, 3)},
        {"0", Q3->mzero(1)},
        {"C/3", qmat(*Q3, {{0, -1}, {1, 0}}, 3)},
        {"(C+1)/3", qmat(*Q3, {{1, -1}, {1, 1}}, 3)},
        {"U/3", qmat(*Q3, {{0, -2}, {1, -1}}, 3)}}},
      {Q2, {{"1/2", qmat(*Q2, {{1}}, 2)}, {"0", Q2->mzero(1)}, {"W/2", qmat(*Q2, {{0, -1}, {1, -1}}, 2)}}},
      {D3,
       {{"pi^-1", D3->mscalar(1, D3->pi_power(-1))},
        {"0", D3->mzero(1)},
        {"zeta pi^-1", D3->mscalar(1, D3->mul(zeta, D3->pi_power(-1)))}}},
  };

  int pairs = 0, attempts = 0, skipped = 0;
  std::map<std::string, int> invariants_seen;
  while (pairs < 120 && attempts < 600) {
    ++attempts;
    const auto& fam = families[attempts % families.size()];
    const auto& D = *fam.D;
    std::vector<int> order(fam.types.size());
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    const int nblocks = 2 + static_cast<int>(rng() % std::min<std::size_t>(3, fam.types.size() - 1));
    MatD beta;
    int used = 0;
    for (int k = 0; k < nblocks; ++k) {
      const MatD& x = fam.types[order[k]].x;
      if (beta.m + x.m > 4) break;
      beta = beta.m == 0 ? x : D.block_diag(beta, x);
      ++used;
    }
    if (used < 2) continue;
    const int m = beta.m;
    auto L = LatticeSequence::standard(fam.D, m);
    Stratum s(L, 1, 0, beta);

    std::vector<int> perm(static_cast<std::size_t>(m));
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    MatD w = D.mzero(m);
    for (int k = 0; k < m; ++k) w.at(perm[k], k) = D.one();
    MatD wi = D.minv(w);
    Stratum sw(L, 1, 0, D.mmul(D.mmul(w, beta), wi));

    Certification ca, cb;
    try {
      ca = certify(s);
      cb = certify(sw);
    } catch (const Error&) {
      ++skipped;
      continue;
    }
    if (!ca.semisimple || static_cast<int>(ca.blocks.size()) != used) {
      ++skipped;
      continue;
    }
    ++pairs;
    const std::string tag = "pair " + describe(s);
    Matching mt;
    try {
      mt = matching(s, sw);
    } catch (const Error& e) {
      t.check(false, tag + " " + e.what());
      continue;
    }
    const int nb = static_cast<int>(ca.blocks.size());
    std::vector<int> z = mt.zeta;
    std::sort(z.begin(), z.end());
    std::vector<int> iota(static_cast<std::size_t>(nb));
    std::iota(iota.begin(), iota.end(), 0);
    t.check(z == iota && static_cast<int>(cb.blocks.size()) == nb, tag + " zeta is a bijection");
    t.check(static_cast<int>(mt.pairs.size()) == nb, tag + " one pair per block");
    for (const auto& pr : mt.pairs) {
      const auto& ba = ca.blocks[pr.i];
      const auto& bb = cb.blocks[pr.j];
      // The unique block of sw whose idempotent is w e_i w^{-1}.
      int expected = -1;
      MatD conj = D.mmul(D.mmul(w, ba.data.idempotent), wi);
      for (int j = 0; j < nb; ++j)
        if (D.mequals(conj, cb.blocks[j].data.idempotent)) expected = expected == -1 ? j : -2;
      t.check(expected == pr.j, tag + " block " + std::to_string(pr.i) + " recovered");
      const bool same = ba.data.dim_D == bb.data.dim_D && ba.data.e == bb.data.e && ba.data.f == bb.data.f &&
                        ba.k0 == bb.k0 && ba.data.e_Lambda_E == bb.data.e_Lambda_E;
      t.check(same, tag + " invariants preserved");
      t.check(pr.dim_D == ba.data.dim_D && pr.e == ba.data.e && pr.f == ba.data.f && pr.k0 == ba.k0,
              tag + " reported invariants");
      ++invariants_seen["(" + std::to_string(pr.dim_D) + "," + std::to_string(pr.e) + "," + std::to_string(pr.f) + "," +
                        std::to_string(pr.k0) + ")"];
    }
  }
  t.check(pairs >= 100, "at least 100 pairs");
  t.note(std::to_string(pairs) + " pairs");
  t.note(std::to_string(skipped) + " draws skipped (blocks merged)");
  std::string inv = "(dim,e,f,k0) kinds";
  for (auto& [k, c] : invariants_seen) inv += " " + k;
  t.note(inv);
  return t.result();
}

}  // namespace glmd::acceptance
