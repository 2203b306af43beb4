#include <gtest/gtest.h>

#include <cmath>
#include <set>
#include <sstream>

#include "addcomb/error.hpp"
#include "addcomb/forge.hpp"
#include "addcomb/harness.hpp"

namespace {

using namespace addcomb;

GSet Z(std::vector<Elem> v) { return GSet(GroupCtx::integers(), std::move(v)); }
GSet F(Elem p, std::vector<Elem> v) { return GSet(GroupCtx::residues(p), std::move(v)); }

void expect_all_pass(const VerificationReport& rep) {
  for (const auto& r : rep.rows)
    EXPECT_FALSE(r.failed()) << rep.instance_id << ": " << r.check() << " " << r.lhs() << " vs " << r.rhs() << " "
                             << r.notes();
  EXPECT_TRUE(rep.passed());
}

TEST(VerifyAll, SmallIntervalPasses) {
  const auto rep = verify_all(Z({0, 1, 2}), "interval3");
  expect_all_pass(rep);
  for (const char* name : {"CS", "E4+", "E4-", "holder", "quad", "lem1", "cross-energy", "factorization",
                           "lemma-energy-S4-", "lemma-energy-S4+", "katz-koester", "setversion", "first",
                           "eigen-lemma-k2", "Dtau", "tau", "inter2", "dyadic-T", "holder-T", "main2+", "prop-diff"}) {
    EXPECT_NE(rep.find(name), nullptr) << name;
  }
  EXPECT_EQ(rep.find("quad")->status(), Status::Pass);
  EXPECT_EQ(rep.find("katz-koester")->lhs(), "0");
}

TEST(VerifyAll, SingletonPasses) {
  expect_all_pass(verify_all(Z({5}), "singleton"));
  expect_all_pass(verify_all(F(101, {7}), "singleton-p"));
}

TEST(VerifyAll, SidonPasses) {
  const auto rep = verify_all(Z({0, 1, 3, 7}), "sidon4");
  expect_all_pass(rep);
  // E4 = 268, frozen in energy_test.
  EXPECT_EQ(rep.find("holder")->rhs(), std::to_string(268 * 256));
}

TEST(VerifyAll, FieldRowsAndChain) {
  FamilySpec spec;
  spec.family = Family::MultSubgroup;
  spec.order = 20;
  const auto a = generate(spec, GroupCtx::residues(101));
  const auto rep = verify_all(a, "subgroup20");
  expect_all_pass(rep);
  EXPECT_NE(rep.find("RRS"), nullptr);
  EXPECT_NE(rep.find("chain-incidences"), nullptr);
}

TEST(VerifyAll, AsymptoticRowsNeverCarryVerdicts) {
  const auto rep = verify_all(F(101, {1, 2, 3, 5, 8, 13, 21, 34}), "fib");
  const std::set<std::string> asymptotic{"RRS", "main+", "main-", "main2+", "main2-", "prop-diff", "energyreduction",
                                         "CS4+", "CS4-"};
  std::size_t seen = 0;
  for (const auto& r : rep.rows) {
    if (r.relation() == Relation::Ratio) {
      EXPECT_FALSE(r.carries_verdict()) << r.check();
    }
    if (asymptotic.count(r.check())) {
      ++seen;
      EXPECT_EQ(r.relation(), Relation::Ratio) << r.check();
    }
  }
  EXPECT_EQ(seen, asymptotic.size());
}

TEST(VerifyAll, TiersProduceSkippedRows) {
  VerifyOptions opts;
  opts.cubic_tier = 2;
  const auto rep = verify_all(Z({0, 1, 2, 4, 9}), "tiers", opts);
  EXPECT_EQ(rep.find("quad")->status(), Status::Skipped);
  EXPECT_EQ(rep.find("katz-koester")->status(), Status::Skipped);
  EXPECT_TRUE(rep.passed());
}

TEST(VerifyAll, BudgetRefusalIsSkippedNotDropped) {
  VerifyOptions opts;
  opts.budget = Budget{1000};
  const auto rep = verify_all(Z({0, 1, 2, 4, 9, 17, 30}), "budget", opts);
  EXPECT_GT(rep.count(Status::Skipped), 0u);
  EXPECT_NE(rep.find("quad"), nullptr);
}

TEST(VerifyAll, RejectsEmptyAndOversized) {
  EXPECT_THROW(verify_all(Z({}), "empty"), ParameterError);
  VerifyOptions opts;
  opts.max_size = 2;
  EXPECT_THROW(verify_all(Z({0, 1, 2}), "big", opts), ParameterError);
}

TEST(VerifyAll, RandomSetsPass) {
  Rng rng(7, "harness-test");
  for (int trial = 0; trial < 40; ++trial) {
    const bool field = trial % 2 == 0;
    const Elem span = field ? 101 : 60;
    std::vector<Elem> v;
    const auto size = 1 + rng.uniform(20);
    for (std::uint64_t i = 0; i < size; ++i) v.push_back(rng.uniform_range(field ? 0 : -30, span - 1));
    const GSet a = field ? F(101, v) : Z(v);
    expect_all_pass(verify_all(a, "random" + std::to_string(trial)));
  }
}

TEST(VerifyAll, CsvIsDeterministic) {
  auto render = [] {
    std::ostringstream os;
    write_report_csv_header(os);
    write_report_csv_rows(os, verify_all(F(101, {1, 4, 9, 16, 25, 36}), "squares"));
    return os.str();
  };
  EXPECT_EQ(render(), render());
}

TEST(Sweep, SubgroupOrdersOverP101) {
  std::vector<FamilySpec> specs;
  for (std::int64_t order : {4, 5, 10, 20, 25}) {
    FamilySpec s;
    s.family = Family::MultSubgroup;
    s.order = order;
    specs.push_back(s);
  }
  const auto rows = sweep(specs, {101});
  ASSERT_EQ(rows.size(), 5u);
  for (const auto& r : rows) {
    EXPECT_EQ(r.prodset, r.size);
    EXPECT_GE(r.exponent, 1.0);
  }
  EXPECT_EQ(rows.back().size, 25u);
  // 25^5 > 101^3.
  EXPECT_FALSE(rows.back().in_theorem_range);
  EXPECT_TRUE(rows.front().in_theorem_range);
}

TEST(Sweep, IntegerApSumset) {
  FamilySpec s;
  s.family = Family::Ap;
  s.n = 50;
  s.start = 1;
  const auto row = sweep_row(s, GroupCtx::integers());
  EXPECT_EQ(row.sumset, 99u);
  EXPECT_EQ(row.p, 0);
  EXPECT_FALSE(row.in_theorem_range);
}

TEST(Sweep, SingletonExponentIsNan) {
  FamilySpec s;
  s.family = Family::Ap;
  s.n = 1;
  EXPECT_TRUE(std::isnan(sweep_row(s, GroupCtx::integers()).exponent));
}

TEST(Sweep, JobsDoNotChangeCsv) {
  std::vector<FamilySpec> specs;
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    FamilySpec s;
    s.family = Family::RandomInterval;
    s.n = 200;
    s.probability = 0.25;
    s.seed = seed;
    specs.push_back(s);
  }
  auto csv = [&](unsigned jobs) {
    std::ostringstream os;
    write_sweep_csv(os, sweep(specs, {101, 1009}, jobs));
    return os.str();
  };
  const auto one = csv(1);
  EXPECT_EQ(one, csv(3));
  EXPECT_EQ(one.rfind("schema_version,", 0), 0u);
}

TEST(ParallelMap, RethrowsLowestIndex) {
  try {
    parallel_map<int>(10, 4, [](std::size_t i) -> int {
      if (i == 3 || i == 7) throw ParameterError("bad " + std::to_string(i));
      return static_cast<int>(i);
    });
    FAIL();
  } catch (const ParameterError& e) {
    EXPECT_NE(std::string(e.what()).find("bad 3"), std::string::npos);
  }
}

}  // namespace
