#include <gtest/gtest.h>

#include <random>

#include "addcomb/energy.hpp"
#include "addcomb/error.hpp"
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

TEST(D4Ratio, SpecExamples) {
  const GSet a = Z({0, 1, 2});
  EXPECT_EQ(d4_ratio(a, a), Rational(115, 81));
  EXPECT_EQ(d4_ratio(Z({4}), Z({4})), Rational(1));
  EXPECT_EQ(d4_ratio(a, Z({0})), Rational(1));
  EXPECT_THROW(d4_ratio(a, GSet(GroupCtx::integers())), ParameterError);
}

TEST(D4ExactSmall, SpecExamples) {
  const GSet a = Z({0, 1, 2});
  auto est = d4_exact_small(a, a);
  // Subset ratios: singletons 1, {0,1} and {1,2} 17/12, {0,2} 5/6, A 115/81.
  EXPECT_EQ(est.lower_bound, Rational(115, 81));
  EXPECT_EQ(est.witness, a);
  EXPECT_EQ(est.candidates, 7u);
  EXPECT_TRUE(est.exact);
  est = d4_exact_small(a, Z({0}));
  EXPECT_EQ(est.lower_bound, Rational(1));
  EXPECT_EQ(est.witness, Z({0}));
  EXPECT_EQ(d4_exact_small(Z({3}), Z({0, 5, 9, 11})).lower_bound, Rational(1));
  std::vector<Elem> big(21);
  for (Elem i = 0; i < 21; ++i) big[static_cast<std::size_t>(i)] = i;
  EXPECT_THROW(d4_exact_small(a, Z(big)), ParameterError);
}

TEST(D4ExactSmall, MatchesSubsetOracle) {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 40; ++t) {
    const Elem m = t % 2 ? 41 : 0;
    const auto ctx = m ? GroupCtx::residues(m) : GroupCtx::integers();
    const GSet a = random_set(rng, ctx, 5, 12);
    const GSet u = random_set(rng, ctx, 9, 12);
    const auto est = d4_exact_small(a, u);
    std::size_t cap = 1;
    while (cap * cap < a.size() * a.size() * a.size()) ++cap;
    Rational best = 0;
    std::vector<Elem> witness;
    for (std::uint32_t mask = 1; mask < (1U << u.size()); ++mask) {
      std::vector<Elem> b;
      for (std::size_t j = 0; j < u.size(); ++j)
        if (mask >> j & 1U) b.push_back(u[j]);
      if (b.size() > cap) continue;
      const Rational v(to_big(oracle::energy(a.vec(), b, 4, m)),
                       BigInt(a.size()) * b.size() * b.size() * b.size());
      if (v > best || (v == best && b < witness)) {
        best = v;
        witness = b;
      }
    }
    EXPECT_EQ(est.lower_bound, best);
    EXPECT_EQ(est.witness.vec(), witness);
    EXPECT_EQ(est.lower_bound, d4_ratio(a, est.witness));
    if (is_subset(a, u)) {
      EXPECT_GE(est.lower_bound, Rational(to_big(fourth_energy(a)), pow(BigInt(a.size()), 4)));
    }
  }
}

TEST(D4FamilySearch, BaselineAndInvariants) {
  const GSet a = Z({0, 1, 2});
  auto est = d4_family_search(a, {a});
  EXPECT_EQ(est.lower_bound, d4_ratio(a, a));
  EXPECT_FALSE(est.exact);
  est = d4_family_search(a, {});
  EXPECT_EQ(est.witness, a);
  std::mt19937_64 rng(32);
  for (int t = 0; t < 60; ++t) {
    const auto ctx = t % 2 ? GroupCtx::residues(97) : GroupCtx::integers();
    const GSet s = random_set(rng, ctx, 30, 60);
    const auto e = d4_family_search(s, default_d4_candidates(s));
    EXPECT_EQ(e.lower_bound, d4_ratio(s, e.witness));
    EXPECT_GE(e.lower_bound, d4_ratio(s, s));
    EXPECT_LE(e.lower_bound, Rational(s.size()));
    EXPECT_GE(e.lower_bound, Rational(1));
  }
}

TEST(D4FamilySearch, IntervalWitnessForDenseRandomSet) {
  // A dense random subset of an interval correlates with the whole interval.
  std::mt19937_64 rng(33);
  std::vector<Elem> v;
  for (Elem x = 1; x <= 256; ++x)
    if (rng() % 2) v.push_back(x);
  const GSet a = Z(v);
  const auto e = d4_family_search(a, default_d4_candidates(a));
  EXPECT_GT(e.lower_bound, d4_ratio(a, a));
}

TEST(Dyadic, BandsOfSmallInterval) {
  // r_{A-A} for {0,1,2} is 1,2,3,2,1: band [1,2) holds {-2,2}, band [2,4) holds {-1,0,1}.
  const auto d = dyadic_decompose(Z({0, 1, 2}), Z({0, 1, 2}), Sign::Minus);
  ASSERT_EQ(d.levels.size(), 2u);
  EXPECT_EQ(d.levels[0].tau, 1u);
  EXPECT_EQ(d.levels[0].members.vec(), (std::vector<Elem>{-2, 2}));
  EXPECT_EQ(d.levels[1].tau, 2u);
  EXPECT_EQ(d.levels[1].members.vec(), (std::vector<Elem>{-1, 0, 1}));
  EXPECT_EQ(d.argmax, 1u);
  EXPECT_EQ(d.total_fourth_moment, 115u);
  EXPECT_EQ(d.log_factor, 3u);
}

TEST(Dyadic, SpecExamples) {
  const GSet a = Z({-3, 4, 8});
  auto d = dyadic_decompose(a, Z({0}), Sign::Minus);
  ASSERT_EQ(d.levels.size(), 1u);
  EXPECT_EQ(d.levels[0].members, a);
  const GSet sidon = Z({0, 1, 3, 7});
  d = dyadic_decompose(sidon, sidon, Sign::Minus);
  ASSERT_EQ(d.levels.size(), 2u);
  EXPECT_EQ(d.levels[0].tau, 1u);
  EXPECT_EQ(d.levels[0].members.size(), 12u);
  EXPECT_EQ(d.levels[1].tau, 4u);
  EXPECT_EQ(d.levels[1].members.vec(), (std::vector<Elem>{0}));
}

TEST(Dyadic, RandomInstancesSatisfyBounds) {
  std::mt19937_64 rng(34);
  for (int t = 0; t < 200; ++t) {
    const auto ctx = t % 2 ? GroupCtx::residues(static_cast<Elem>(3 + rng() % 500)) : GroupCtx::integers();
    const GSet a = random_set(rng, ctx, 40, 100), b = random_set(rng, ctx, 40, 100);
    for (Sign s : {Sign::Plus, Sign::Minus}) {
      const auto d = dyadic_decompose(a, b, s);
      EXPECT_EQ(d.total_fourth_moment, moment(repr(a, b, s), 4));
      for (const auto& level : d.levels) {
        const CountFn r = repr(a, b, s);
        for (Elem x : level.members) {
          EXPECT_GE(r(x), level.tau);
          EXPECT_LT(r(x), 2 * level.tau);
        }
      }
    }
  }
}

TEST(PopularSet, SpecExamples) {
  auto p = popular_set(Z({0, 1, 2}), Sign::Plus);
  EXPECT_EQ(p.threshold, Rational(9, 10));
  EXPECT_EQ(p.members.vec(), (std::vector<Elem>{0, 1, 2, 3, 4}));
  EXPECT_EQ(p.mass, 9u);
  p = popular_set(Z({6}), Sign::Plus);
  EXPECT_EQ(p.members.vec(), (std::vector<Elem>{12}));
  EXPECT_EQ(p.mass, 1u);
  p = popular_set(Z({0, 1, 3, 7}), Sign::Minus);
  EXPECT_EQ(p.threshold, Rational(8, 13));
  EXPECT_EQ(p.members.size(), 13u);
  EXPECT_EQ(p.mass, 16u);
}

TEST(PopularSet, MassInvariant) {
  std::mt19937_64 rng(35);
  for (int t = 0; t < 200; ++t) {
    const auto ctx = t % 2 ? GroupCtx::residues(211) : GroupCtx::integers();
    const GSet a = random_set(rng, ctx, 60, 150);
    for (Sign s : {Sign::Plus, Sign::Minus}) {
      const auto p = popular_set(a, s);
      EXPECT_GE(2 * p.mass, Count{a.size()} * a.size());
      const CountFn r = repr(a, a, s);
      for (Elem x : p.members) EXPECT_GE(Rational(to_big(r(x))), p.threshold);
    }
  }
}

}  // namespace
}  // namespace addcomb
