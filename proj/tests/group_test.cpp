#include <gtest/gtest.h>

#include <random>

#include "addcomb/conv.hpp"
#include "addcomb/error.hpp"
#include "addcomb/group.hpp"
#include "oracles.hpp"

namespace addcomb {
namespace {

GSet Z(std::vector<Elem> v) { return GSet(GroupCtx::integers(), std::move(v)); }
GSet R(Elem m, std::vector<Elem> v) { return GSet(GroupCtx::residues(m), std::move(v)); }

std::vector<Elem> random_elems(std::mt19937_64& rng, std::size_t n, Elem lo, Elem hi) {
  std::uniform_int_distribution<Elem> pick(lo, hi);
  std::vector<Elem> out(n);
  for (auto& x : out) x = pick(rng);
  return out;
}

TEST(GroupCtx, PrimalityFlag) {
  EXPECT_TRUE(make_ctx(GroupKind::Residues, 13).is_prime());
  EXPECT_FALSE(make_ctx(GroupKind::Residues, 15).is_prime());
  EXPECT_TRUE(make_ctx(GroupKind::Integers).is_integers());
  EXPECT_THROW(make_ctx(GroupKind::Residues, 1), ContextError);
  EXPECT_THROW(make_ctx(GroupKind::Residues), ContextError);
}

TEST(GroupCtx, MillerRabinMatchesTrialDivision) {
  auto trial = [](std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
      if (n % d == 0) return false;
    return true;
  };
  for (std::uint64_t n = 0; n < 20000; ++n) EXPECT_EQ(is_prime_u64(n), trial(n)) << n;
  EXPECT_TRUE(is_prime_u64(4611615649683210241ULL));
  EXPECT_FALSE(is_prime_u64(3215031751ULL));  // strong pseudoprime to bases 2, 3, 5, 7
}

TEST(GroupCtx, IntegerOverflowIsAnError) {
  const auto z = GroupCtx::integers();
  EXPECT_THROW(z.add(INT64_MAX, 1), OverflowError);
  EXPECT_THROW(z.mul(INT64_MAX / 2, 3), OverflowError);
  EXPECT_THROW(z.neg(INT64_MIN), OverflowError);
}

TEST(GroupCtx, ResidueInverse) {
  const auto f = GroupCtx::residues(101);
  for (Elem a = 1; a < 101; ++a) EXPECT_EQ(f.mul(a, f.inv(a)), 1);
  EXPECT_THROW(f.inv(0), DomainError);
  EXPECT_THROW(GroupCtx::residues(15).inv(2), FieldRequiredError);
}

TEST(GSet, Canonicalization) {
  const GSet a = R(7, {9, -1, 2, 6, 13});
  EXPECT_EQ(a.vec(), (std::vector<Elem>{2, 6}));
  EXPECT_EQ(GSet(a.ctx(), a.vec()), a);
  EXPECT_TRUE(GSet(GroupCtx::integers()).empty());
}

TEST(SetArithmetic, SpecExamples) {
  EXPECT_EQ(sumset(Z({0, 1, 2}), Z({0, 1, 2})).vec(), (std::vector<Elem>{0, 1, 2, 3, 4}));
  EXPECT_EQ(sumset(Z({0}), Z({3, 8, -2})), Z({3, 8, -2}));
  EXPECT_EQ(sumset(R(15, {0, 5, 10}), R(15, {0, 5, 10})).vec(), (std::vector<Elem>{0, 5, 10}));
  EXPECT_EQ(prodset(R(13, {1, 5, 8, 12}), R(13, {1, 5, 8, 12})).vec(), (std::vector<Elem>{1, 5, 8, 12}));
  EXPECT_EQ(prodset(Z({1}), Z({4, -3})), Z({4, -3}));
  EXPECT_EQ(prodset(Z({0, 2}), Z({0, 2})).vec(), (std::vector<Elem>{0, 4}));
  EXPECT_EQ(translate_intersect(Z({0, 1, 2}), 1).vec(), (std::vector<Elem>{1, 2}));
  EXPECT_EQ(translate_intersect(Z({0, 1, 2}), 0), Z({0, 1, 2}));
  EXPECT_TRUE(translate_intersect(Z({0, 1, 2}), 5).empty());
}

TEST(SetArithmetic, Errors) {
  EXPECT_THROW(sumset(Z({0}), R(5, {0})), ContextError);
  EXPECT_THROW(ratioset(R(13, {1}), R(13, {0, 1})), DomainError);
  EXPECT_THROW(ratioset(R(15, {1}), R(15, {2})), FieldRequiredError);
  EXPECT_THROW(sumset(Z({INT64_MAX}), Z({1})), OverflowError);
}

TEST(SetArithmetic, RatioSet) {
  const GSet h = R(13, {1, 5, 8, 12});
  EXPECT_EQ(ratioset(h, h), h);
}

TEST(SetArithmetic, ApCharacterisation) {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 300; ++t) {
    GSet a = Z(random_elems(rng, 1 + rng() % 12, -40, 40));
    const bool ap = is_arithmetic_progression(a);
    const std::size_t s = sumset(a, a).size();
    EXPECT_GE(s, 2 * a.size() - 1);
    EXPECT_EQ(s == 2 * a.size() - 1, ap) << a.describe();
  }
  for (Elem d = 1; d < 6; ++d) {
    std::vector<Elem> v;
    for (Elem k = 0; k < 9; ++k) v.push_back(3 + d * k);
    EXPECT_TRUE(is_arithmetic_progression(Z(v)));
    EXPECT_EQ(sumset(Z(v), Z(v)).size(), 17u);
  }
}

TEST(SetArithmetic, MatchesOracle) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 400; ++t) {
    const Elem m = (t % 2 == 0) ? 0 : static_cast<Elem>(2 + rng() % 300);
    const auto ctx = m == 0 ? GroupCtx::integers() : GroupCtx::residues(m);
    const GSet a(ctx, random_elems(rng, 1 + rng() % 30, -200, 200));
    const GSet b(ctx, random_elems(rng, 1 + rng() % 30, -200, 200));
    for (auto path : {SetPath::List, SetPath::Bitmap, SetPath::Auto}) {
      EXPECT_EQ(sumset(a, b, path).vec(), oracle::sums(a.vec(), b.vec(), true, m));
      EXPECT_EQ(diffset(a, b, path).vec(), oracle::sums(a.vec(), b.vec(), false, m));
      EXPECT_EQ(prodset(a, b, path).vec(), oracle::products(a.vec(), b.vec(), m));
    }
  }
}

TEST(SetArithmetic, BitmapPathSeesLargeSets) {
  std::mt19937_64 rng(3);
  const auto ctx = GroupCtx::residues(65537);
  const GSet a(ctx, random_elems(rng, 3000, 0, 65536));
  const GSet b(ctx, random_elems(rng, 500, 0, 65536));
  EXPECT_EQ(sumset(a, b, SetPath::List), sumset(a, b, SetPath::Bitmap));
  EXPECT_EQ(diffset(a, b, SetPath::List), diffset(a, b, SetPath::Bitmap));
  EXPECT_EQ(prodset(a, b, SetPath::List), prodset(a, b, SetPath::Bitmap));
  const GSet big(GroupCtx::integers(), {0, Elem{1} << 40});
  EXPECT_FALSE(big.has_bitmap());
  EXPECT_THROW(sumset(big, big, SetPath::Bitmap), ParameterError);
}

TEST(SetArithmetic, DifferenceSetSymmetry) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 200; ++t) {
    const Elem m = t % 2 ? 97 : 0;
    const auto ctx = m == 0 ? GroupCtx::integers() : GroupCtx::residues(m);
    const GSet a(ctx, random_elems(rng, 1 + rng() % 20, -100, 100));
    const GSet d = diffset(a, a);
    EXPECT_EQ(negate(d), d);
  }
}

TEST(SetArithmetic, TranslateIntersectMatchesRepr) {
  std::mt19937_64 rng(9);
  for (int t = 0; t < 100; ++t) {
    const auto ctx = t % 2 ? GroupCtx::residues(61) : GroupCtx::integers();
    const GSet a(ctx, random_elems(rng, 1 + rng() % 25, -50, 50));
    const CountFn r = repr(a, a, Sign::Minus);
    for (Elem x = -60; x <= 60; ++x) {
      const Elem y = ctx.reduce(x);
      EXPECT_EQ(translate_intersect(a, y).size(), static_cast<std::size_t>(r(y)));
    }
  }
}

TEST(SetArithmetic, TranslateDilateUnion) {
  const GSet a = R(10, {1, 4, 9});
  EXPECT_EQ(translate(a, 3).vec(), (std::vector<Elem>{2, 4, 7}));
  EXPECT_EQ(dilate(a, 3).vec(), (std::vector<Elem>{2, 3, 7}));
  EXPECT_EQ(set_union(a, R(10, {0, 4})).vec(), (std::vector<Elem>{0, 1, 4, 9}));
  EXPECT_EQ(set_intersection(a, R(10, {0, 4, 9})).vec(), (std::vector<Elem>{4, 9}));
  EXPECT_EQ(set_difference(a, R(10, {4})).vec(), (std::vector<Elem>{1, 9}));
  EXPECT_TRUE(is_subset(R(10, {4}), a));
}

}  // namespace
}  // namespace addcomb
