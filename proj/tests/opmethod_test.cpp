#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "addcomb/energy.hpp"
#include "addcomb/error.hpp"
#include "addcomb/opmethod.hpp"
#include "addcomb/structure.hpp"
#include "oracles.hpp"

namespace addcomb {
namespace {

GSet Z(std::vector<Elem> v) { return GSet(GroupCtx::integers(), std::move(v)); }

GSet random_set(std::mt19937_64& rng, const GroupCtx& ctx, std::size_t max_size, Elem spread) {
  std::vector<Elem> v(1 + rng() % max_size);
  for (auto& x : v) x = static_cast<Elem>(rng() % (2 * spread + 1)) - spread;
  return GSet(ctx, std::move(v));
}

// Plain triple-loop matrix power for reference traces.
SignedCount reference_trace(const SymMat& m, unsigned k) {
  const std::size_t n = m.dim();
  std::vector<SignedCount> cur(n * n, 0), next(n * n);
  for (std::size_t i = 0; i < n; ++i) cur[i * n + i] = 1;
  for (unsigned step = 0; step < k; ++step) {
    std::fill(next.begin(), next.end(), 0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t l = 0; l < n; ++l) next[i * n + j] += cur[i * n + l] * m(l, j);
    cur.swap(next);
  }
  SignedCount t = 0;
  for (std::size_t i = 0; i < n; ++i) t += cur[i * n + i];
  return t;
}

void expect_all_pass(const std::vector<Row>& rows) {
  for (const auto& r : rows) EXPECT_NE(r.status(), Status::Fail) << r.check() << ": " << r.lhs() << " vs " << r.rhs();
}

TEST(BuildT, SidonAndSubgroupExamples) {
  const GSet s = Z({0, 1, 3, 7});
  const SymMat t = build_T(s, repr(s, s, Sign::Minus), MatVariant::Difference);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) EXPECT_EQ(t(i, j), i == j ? 4 : 1);
  const auto sp = spectrum(t);
  ASSERT_EQ(sp.eigenvalues.size(), 4u);
  EXPECT_NEAR(sp.eigenvalues[0], 7.0, 1e-9);
  for (int i = 1; i < 4; ++i) EXPECT_NEAR(sp.eigenvalues[i], 3.0, 1e-9);
  EXPECT_EQ(rayleigh_uniform(t), Rational(7));

  const GSet h(GroupCtx::residues(15), {0, 5, 10});
  const SymMat th = build_T(h, repr(h, h, Sign::Minus), MatVariant::Difference);
  for (auto v : th.entries()) EXPECT_EQ(v, 3);
  const auto sh = spectrum(th);
  EXPECT_NEAR(sh.eigenvalues[0], 9.0, 1e-9);
  EXPECT_NEAR(sh.eigenvalues[1], 0.0, 1e-9);
  EXPECT_NEAR(sh.eigenvalues[2], 0.0, 1e-9);

  const GSet a = Z({0, 1, 2});
  const SymMat ones = build_T(a, CountFn::indicator(sumset(a, a)), MatVariant::Sum);
  for (auto v : ones.entries()) EXPECT_EQ(v, 1);
  EXPECT_EQ(trace_power(ones, 4), 81);
  EXPECT_EQ(rayleigh_uniform(ones), Rational(3));
  EXPECT_EQ(rayleigh_uniform(SymMat::identity(Z({1, 2, 3, 4, 5}))), Rational(1));
}

TEST(BuildT, NonEvenDifferenceRejected) {
  const GSet a = Z({0, 1, 2});
  EXPECT_THROW(build_T(a, CountFn::indicator(Z({1})), MatVariant::Difference), SymmetryError);
}

TEST(BuildK, ColumnSums) {
  EXPECT_EQ(build_K_rect(Z({0, 1})).column_sums(), (std::vector<Count>{1, 2, 1}));
  EXPECT_EQ(build_K_rect(Z({9})).column_sums(), (std::vector<Count>{1}));
  EXPECT_EQ(build_K_rect(Z({0, 1, 2})).column_sums(), (std::vector<Count>{1, 2, 3, 2, 1}));
}

TEST(Factorization, Examples) {
  EXPECT_TRUE(factorization_check(Z({0, 1, 2})));
  EXPECT_TRUE(factorization_check(Z({4})));
  EXPECT_TRUE(factorization_check(Z({0, 1, 3, 7})));
  std::mt19937_64 rng(41);
  for (int t = 0; t < 40; ++t) {
    const auto ctx = t % 2 ? GroupCtx::residues(89) : GroupCtx::integers();
    EXPECT_TRUE(factorization_check(random_set(rng, ctx, 30, 60)));
  }
}

TEST(TracePower, MatchesReference) {
  std::mt19937_64 rng(42);
  for (int t = 0; t < 30; ++t) {
    const auto ctx = t % 2 ? GroupCtx::residues(67) : GroupCtx::integers();
    const GSet a = random_set(rng, ctx, 14, 30);
    const SymMat m = build_T(a, repr(a, a, Sign::Minus), MatVariant::Difference);
    for (unsigned k : {1u, 2u, 3u, 4u, 8u}) EXPECT_EQ(trace_power(m, k), reference_trace(m, k));
  }
}

TEST(Spectrum, AgreesWithExactTraces) {
  std::mt19937_64 rng(43);
  for (int t = 0; t < 30; ++t) {
    const auto ctx = t % 2 ? GroupCtx::residues(101) : GroupCtx::integers();
    const GSet a = random_set(rng, ctx, 40, 60);
    const GSet p = popular_set(a, Sign::Plus).members;
    for (const SymMat& m : {build_T(a, repr(a, a, Sign::Minus), MatVariant::Difference),
                            build_T(a, CountFn::indicator(p), MatVariant::Sum)}) {
      const auto sp = spectrum(m);
      EXPECT_LE(sp.residual, 1e-10);
      for (unsigned k : {2u, 4u}) {
        double s = 0;
        for (double mu : sp.eigenvalues) s += std::pow(mu, k);
        const double exact = static_cast<double>(trace_power(m, k));
        EXPECT_NEAR(s, exact, 1e-6 * std::max(1.0, std::fabs(exact)));
      }
      EXPECT_GE(std::fabs(sp.eigenvalues[0]), to_double(rayleigh_uniform(m)) - 1e-8);
    }
  }
}

TEST(Spectrum, RejectsOversizeAndBadTolerance) {
  EXPECT_THROW(spectrum(SymMat::identity(Z({1})), 0.0), ParameterError);
  std::vector<Elem> v(513);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = static_cast<Elem>(i);
  EXPECT_THROW(spectrum(SymMat::identity(Z(v))), ParameterError);
}

TEST(Pidentity, Examples) {
  const GSet a = Z({0, 1, 2});
  auto rows = pidentity_check(a, sumset(a, a), 2);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0].lhs(), "6561");
  EXPECT_EQ(rows[0].rhs(), "6561");
  EXPECT_EQ(rows[0].status(), Status::Pass);
  expect_all_pass(rows);
  rows = pidentity_check(a, GSet(a.ctx()), 1);
  EXPECT_EQ(rows[0].lhs(), "0");
  expect_all_pass(rows);
  const GSet s = Z({0, 1, 3, 7});
  expect_all_pass(pidentity_check(s, popular_set(s, Sign::Plus).members, 2));
  EXPECT_THROW(pidentity_check(a, Z({9}), 1), ParameterError);
}

TEST(EigenLemma, Examples) {
  const GSet a = Z({0, 1, 2});
  Row r = eigen_lemma_check(a, a, diffset(a, a), 2);
  EXPECT_EQ(r.lhs(), "43046721");
  EXPECT_EQ(r.rhs(), "64133775");
  EXPECT_EQ(r.status(), Status::Pass);
  EXPECT_EQ(eigen_lemma_check(a, a, GSet(a.ctx()), 2).status(), Status::Pass);
  const GSet b = Z({0, 1});
  EXPECT_EQ(eigen_lemma_check(a, b, diffset(a, b), 2).status(), Status::Pass);
  EXPECT_EQ(eigen_lemma_check(a, b, diffset(a, b), 4).status(), Status::Pass);
}

TEST(SpectralLemma, Examples) {
  const GSet a = Z({0, 1, 2});
  auto rows = spectral_energy_lemma_check(a, sumset(a, a), Sign::Plus);
  EXPECT_EQ(rows[0].check(), "lemma-energy-S6+");
  EXPECT_EQ(rows[0].lhs(), "43046721");
  EXPECT_EQ(rows[0].rhs(), "64133775");
  expect_all_pass(rows);
  expect_all_pass(spectral_energy_lemma_check(a, GSet(a.ctx()), Sign::Plus));
  const GSet s = Z({0, 1, 3, 7});
  expect_all_pass(spectral_energy_lemma_check(s, popular_set(s, Sign::Minus).members, Sign::Minus));
  EXPECT_EQ(energy_p_direct(Z({0, 1, 2, 3, 4})), 85u);
}

TEST(EnergyP, MatchesQuadrupleOracle) {
  std::mt19937_64 rng(45);
  for (int t = 0; t < 60; ++t) {
    const auto ctx = t % 2 ? GroupCtx::residues(static_cast<Elem>(5 + rng() % 90)) : GroupCtx::integers();
    const GSet p = random_set(rng, ctx, 18, 50);
    const auto m = ctx.modulus();
    EXPECT_EQ(energy_p_direct(p), oracle::additive_energy_quadruples(p.vec(), m));
  }
  // Wide integer span: no shift table.
  const GSet wide = Z({0, 1, 5, Elem{1} << 40, (Elem{1} << 40) + 1});
  EXPECT_EQ(energy_p_direct(wide), oracle::additive_energy_quadruples(wide.vec(), 0));
}

TEST(Lemmas, RandomInstances) {
  std::mt19937_64 rng(44);
  for (int t = 0; t < 80; ++t) {
    const auto ctx = t % 2 ? GroupCtx::residues(static_cast<Elem>(7 + rng() % 200)) : GroupCtx::integers();
    const GSet a = random_set(rng, ctx, 20, 40), b = random_set(rng, ctx, 12, 40);
    for (Sign s : {Sign::Plus, Sign::Minus}) {
      const GSet p = popular_set(a, s).members;
      expect_all_pass(spectral_energy_lemma_check(a, p, s));
      expect_all_pass(spectral_energy_lemma_check(a, signed_sumset(a, a, s), s));
    }
    expect_all_pass(pidentity_check(a, popular_set(a, Sign::Plus).members, 1));
    expect_all_pass(pidentity_check(a, popular_set(a, Sign::Plus).members, 2));
    const CountFn r = repr(a, b, Sign::Minus);
    GSet p = r.band(1 + r.max_value() / 2, r.max_value() + 1);
    for (unsigned k : {2u, 4u}) {
      EXPECT_EQ(eigen_lemma_check(a, b, p, k).status(), Status::Pass);
      EXPECT_EQ(eigen_lemma_check(a, b, diffset(a, b), k).status(), Status::Pass);
    }
  }
}

}  // namespace
}  // namespace addcomb
