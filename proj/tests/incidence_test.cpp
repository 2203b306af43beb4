#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "addcomb/error.hpp"
#include "addcomb/incidence.hpp"

namespace addcomb {
namespace {

GSet F(Elem p, std::vector<Elem> v) { return GSet(GroupCtx::residues(p), std::move(v)); }

const Row& find(const std::vector<Row>& rows, const std::string& name) {
  for (const auto& r : rows)
    if (r.check() == name) return r;
  throw std::runtime_error("missing row " + name);
}

TEST(Incidences, SpecExample) {
  const auto ctx = GroupCtx::residues(5);
  const LineSet lines(ctx, {Line::affine(1, 0), Line::affine(1, 1), Line::affine(1, 4)});
  const GSet a = F(5, {0, 1});
  EXPECT_EQ(count_incidences(a, a, lines), 4u);
  EXPECT_EQ(count_incidences(a, a, lines, IncidencePath::Oracle), 4u);
  EXPECT_EQ(count_incidences(a, a, LineSet(ctx)), 0u);
  EXPECT_EQ(count_incidences(F(5, {2}), F(5, {3}), LineSet(ctx, {Line::affine(2, 4)})), 1u);
}

TEST(Incidences, NeedsPrimeField) {
  EXPECT_THROW(LineSet(GroupCtx::residues(15), {}), FieldRequiredError);
  EXPECT_THROW(LineSet(GroupCtx::integers(), {}), FieldRequiredError);
}

TEST(Incidences, Deduplication) {
  const LineSet l(GroupCtx::residues(7), {Line::affine(1, 2), Line::affine(8, 9), Line::vertical_at(3),
                                          Line::vertical_at(10)});
  EXPECT_EQ(l.size(), 2u);
  EXPECT_EQ(l.tuples(), 4u);
  const LineSet pairs = LineSet::from_pairs(F(7, {0, 1, 2}), F(7, {1, 3}));
  EXPECT_EQ(pairs.tuples(), 4u);  // r = 0 skipped
  EXPECT_EQ(pairs.size(), 4u);
}

TEST(Incidences, FastMatchesOracle) {
  std::mt19937_64 rng(51);
  for (int t = 0; t < 200; ++t) {
    const Elem p = t % 2 ? 101 : 1009;
    const auto ctx = GroupCtx::residues(p);
    auto rand_set = [&](std::size_t n) {
      std::vector<Elem> v(n);
      for (auto& x : v) x = static_cast<Elem>(rng() % static_cast<std::uint64_t>(p));
      return GSet(ctx, v);
    };
    const GSet a = rand_set(1 + rng() % 40), b = rand_set(1 + rng() % 40);
    std::vector<Line> ls;
    for (std::size_t i = 0, n = 1 + rng() % 60; i < n; ++i) {
      const auto kind = rng() % 10;
      if (kind == 0) ls.push_back(Line::vertical_at(static_cast<Elem>(rng() % 50)));
      else if (kind == 1) ls.push_back(Line::affine(0, static_cast<Elem>(rng() % 50)));
      else ls.push_back(Line::affine(static_cast<Elem>(rng() % 7), static_cast<Elem>(rng() % 50)));
    }
    const LineSet lines(ctx, ls);
    EXPECT_EQ(count_incidences(a, b, lines), count_incidences(a, b, lines, IncidencePath::Oracle));
  }
}

TEST(SzBound, Formula) {
  EXPECT_NEAR(static_cast<double>(sz_bound(1, 1, 1, 5)), 3.2, 1e-12);
  const double expected = std::pow(2.0, 0.75) * std::pow(2.0, 0.5) * std::pow(3.0, 0.75) + 3 + 4 + 12.0 / 5;
  EXPECT_NEAR(static_cast<double>(sz_bound(2, 2, 3, 5)), expected, 1e-9);
  EXPECT_GE(sz_bound(2, 2, 3, 5), 4.0L);
  EXPECT_NEAR(static_cast<double>(sz_bound(6, 7, 0, 11)), 42.0, 1e-12);
  EXPECT_EQ(sz_terms(100, 100, 1, 1000003).dominant(), 2u);
}

void expect_chain_holds(const std::vector<Row>& rows) {
  for (const auto& r : rows) EXPECT_NE(r.status(), Status::Fail) << r.check() << " " << r.lhs() << " vs " << r.rhs();
  EXPECT_EQ(find(rows, "chain-ii-a").status(), Status::Pass);
  EXPECT_EQ(find(rows, "chain-ii-b").status(), Status::Pass);
}

TEST(Chain, SubgroupExample) {
  const GSet h = F(13, {1, 5, 8, 12});
  const auto rows = energyreduction_chain(h, h);
  expect_chain_holds(rows);
  EXPECT_EQ(find(rows, "AA-case").notes(), "|AA| <= |A|^{3/2}");
  for (const auto& r : rows) EXPECT_FALSE(r.relation() == Relation::Ratio && r.carries_verdict());
}

TEST(Chain, DegenerateAndGeometric) {
  const auto rows = energyreduction_chain(F(101, {1}), F(101, {1}));
  expect_chain_holds(rows);
  EXPECT_EQ(find(rows, "chain-ii-b").lhs(), find(rows, "chain-ii-b").rhs());
  expect_chain_holds(energyreduction_chain(F(101, {2, 4, 8, 16, 32}), F(101, {2, 4, 8, 16, 32})));
  const auto stripped = energyreduction_chain(F(101, {0, 3, 9}), F(101, {1, 2}));
  EXPECT_EQ(find(stripped, "chain-dyadic-top").notes(), "0 removed from A");
  EXPECT_THROW(energyreduction_chain(GSet(GroupCtx::residues(15), {1}), GSet(GroupCtx::residues(15), {1})),
               FieldRequiredError);
}

TEST(Chain, RandomInstances) {
  std::mt19937_64 rng(52);
  for (Elem p : {101, 1009, 4099}) {
    for (int t = 0; t < 10; ++t) {
      std::vector<Elem> va(2 + rng() % 30), vb(1 + rng() % 30);
      for (auto& x : va) x = static_cast<Elem>(rng() % static_cast<std::uint64_t>(p));
      for (auto& x : vb) x = static_cast<Elem>(rng() % static_cast<std::uint64_t>(p));
      expect_chain_holds(energyreduction_chain(F(p, va), F(p, vb)));
    }
  }
}

}  // namespace
}  // namespace addcomb
