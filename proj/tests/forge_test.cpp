#include <gtest/gtest.h>

#include <cmath>

#include "addcomb/error.hpp"
#include "addcomb/forge.hpp"

namespace {

using namespace addcomb;

FamilySpec make(Family f) {
  FamilySpec s;
  s.family = f;
  return s;
}

TEST(Forge, SubgroupOfF13) {
  auto s = make(Family::MultSubgroup);
  s.order = 4;
  const auto h = generate(s, GroupCtx::residues(13));
  EXPECT_EQ(h.vec(), (std::vector<Elem>{1, 5, 8, 12}));
}

TEST(Forge, SubgroupsAreClosed) {
  const auto ctx = GroupCtx::residues(101);
  for (std::int64_t order : {1, 2, 4, 5, 10, 20, 25, 50, 100}) {
    auto s = make(Family::MultSubgroup);
    s.order = order;
    const auto h = generate(s, ctx);
    EXPECT_EQ(h.size(), static_cast<std::size_t>(order));
    EXPECT_EQ(prodset(h, h), h);
  }
}

TEST(Forge, SubgroupRejectsBadOrders) {
  auto s = make(Family::MultSubgroup);
  s.order = 7;
  EXPECT_THROW(generate(s, GroupCtx::residues(101)), ParameterError);
  s.order = 2;
  EXPECT_THROW(generate(s, GroupCtx::integers()), Error);
  EXPECT_THROW(generate(s, GroupCtx::residues(15)), Error);
}

TEST(Forge, Ap) {
  auto s = make(Family::Ap);
  s.n = 3;
  EXPECT_EQ(generate(s, GroupCtx::integers()).vec(), (std::vector<Elem>{0, 1, 2}));
  s.start = 5;
  s.step = 3;
  s.n = 4;
  EXPECT_EQ(generate(s, GroupCtx::residues(11)).vec(), (std::vector<Elem>{0, 3, 5, 8}));
}

TEST(Forge, Geometric) {
  auto s = make(Family::Geometric);
  s.n = 5;
  s.start = 1;
  s.step = 3;
  EXPECT_EQ(generate(s, GroupCtx::integers()).vec(), (std::vector<Elem>{1, 3, 9, 27, 81}));
}

TEST(Forge, SidonGreedy) {
  auto s = make(Family::SidonGreedy);
  s.n = 4;
  EXPECT_EQ(generate(s, GroupCtx::integers()).vec(), (std::vector<Elem>{0, 1, 3, 7}));
  for (std::int64_t n = 1; n <= 12; ++n) {
    s.n = n;
    const auto a = generate(s, GroupCtx::integers());
    ASSERT_EQ(a.size(), static_cast<std::size_t>(n));
    EXPECT_EQ(diffset(a, a).size(), static_cast<std::size_t>(n * n - n + 1));
    EXPECT_TRUE(is_sidon(a));
  }
  s.n = 8;
  const auto r = generate(s, GroupCtx::residues(1009));
  EXPECT_EQ(diffset(r, r).size(), 57u);
  EXPECT_FALSE(is_sidon(GSet(GroupCtx::integers(), {0, 1, 2})));
}

TEST(Forge, RandomIntervalWithinFiveSigma) {
  auto s = make(Family::RandomInterval);
  s.n = 2048;
  for (double q : {0.5, 0.25, 0.125}) {
    s.probability = q;
    double total = 0;
    const int seeds = 20;
    for (int seed = 0; seed < seeds; ++seed) {
      s.seed = static_cast<std::uint64_t>(seed);
      const auto a = generate(s, GroupCtx::integers());
      EXPECT_GE(a.min(), 1);
      EXPECT_LE(a.max(), 2048);
      const double sigma = std::sqrt(s.n * q * (1 - q));
      EXPECT_LT(std::abs(static_cast<double>(a.size()) - q * s.n), 5 * sigma);
      total += static_cast<double>(a.size());
    }
    EXPECT_LT(std::abs(total - seeds * q * s.n), 5 * std::sqrt(seeds * s.n * q * (1 - q)));
  }
}

TEST(Forge, RandomIntervalRejectsBadProbability) {
  auto s = make(Family::RandomInterval);
  s.n = 10;
  for (double q : {0.0, -0.5, 1.5}) {
    s.probability = q;
    EXPECT_THROW(generate(s, GroupCtx::integers()), ParameterError);
  }
  s.probability = 1.0;
  EXPECT_EQ(generate(s, GroupCtx::integers()).size(), 10u);
}

TEST(Forge, ApPlusGenericBlocks) {
  auto s = make(Family::ApPlusGeneric);
  s.n = 16;
  s.seed = 3;
  const auto a = generate(s, GroupCtx::integers());
  // round(16^{5/4}) = 32.
  EXPECT_EQ(a.size(), 16u + 32u);
  std::size_t block = 0;
  for (Elem x : a) block += (x >= 1 && x <= 16);
  EXPECT_EQ(block, 16u);
  EXPECT_THROW(generate(s, GroupCtx::residues(101)), Error);
}

TEST(Forge, Deterministic) {
  auto s = make(Family::RandomInterval);
  s.n = 500;
  s.seed = 42;
  const auto a = generate(s, GroupCtx::integers());
  EXPECT_EQ(a, generate(s, GroupCtx::integers()));
  s.seed = 43;
  EXPECT_NE(a, generate(s, GroupCtx::integers()));
  auto g = make(Family::ApPlusGeneric);
  g.n = 10;
  EXPECT_EQ(generate(g, GroupCtx::integers()), generate(g, GroupCtx::integers()));
}

TEST(Rng, StreamsSplitByPurpose) {
  Rng a(1, "alpha"), b(1, "beta"), c(1, "alpha");
  const auto x = a.next();
  EXPECT_NE(x, b.next());
  EXPECT_EQ(x, c.next());
}

TEST(Rng, RangesRespected) {
  Rng r(9, "ranges");
  for (int i = 0; i < 2000; ++i) {
    EXPECT_LT(r.uniform(7), 7u);
    const auto v = r.uniform_range(-3, 3);
    EXPECT_GE(v, -3);
    EXPECT_LE(v, 3);
  }
  EXPECT_THROW(r.uniform(0), ParameterError);
  EXPECT_THROW(r.uniform_range(2, 1), ParameterError);
}

TEST(Forge, FamilyNames) {
  for (Family f : {Family::Ap, Family::Geometric, Family::MultSubgroup, Family::SidonGreedy, Family::RandomInterval,
                   Family::ApPlusGeneric})
    EXPECT_EQ(parse_family(family_name(f)), f);
  EXPECT_EQ(parse_family("mult-subgroup"), Family::MultSubgroup);
  EXPECT_THROW(parse_family("cube"), ParameterError);
}

TEST(Forge, PrimitiveRoots) {
  EXPECT_EQ(primitive_root(13), 2);
  EXPECT_EQ(primitive_root(101), 2);
  EXPECT_EQ(primitive_root(4099), 2);
  EXPECT_EQ(primitive_root(7), 3);
  EXPECT_THROW(primitive_root(15), ParameterError);
}

}  // namespace
