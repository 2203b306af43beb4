#include "addcomb/harness.hpp"

#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>

#include "addcomb/conv.hpp"
#include "addcomb/energy.hpp"
#include "addcomb/error.hpp"
#include "addcomb/incidence.hpp"
#include "addcomb/opmethod.hpp"

namespace addcomb {

namespace {

BigInt big(Count v) { return to_big(v); }
BigInt big(std::size_t v) { return BigInt(v); }

double ratio_pow(double base, double e) { return std::pow(base, e); }

// Runs `fn`, turning a refused budget into a skipped row.
template <typename Fn>
void guarded(std::vector<Row>& rows, const std::string& name, Relation rel, Fn fn) {
  try {
    fn();
  } catch (const BudgetExceeded& e) {
    rows.push_back(Row::skipped(name, rel, e.what()));
  }
}

void skip(std::vector<Row>& rows, const std::string& name, Relation rel, const std::string& why) {
  rows.push_back(Row::skipped(name, rel, why));
}

// Slices A_x for x in P, as plain sorted vectors.
std::vector<std::vector<Elem>> slices_of(const GSet& a, const GSet& p) {
  std::vector<std::vector<Elem>> out;
  out.reserve(p.size());
  for (Elem x : p) out.push_back(translate_intersect(a, x).vec());
  return out;
}

std::size_t pair_set_size(const GroupCtx& ctx, const std::vector<Elem>& u, const std::vector<Elem>& v, Sign s,
                          std::vector<Elem>& scratch) {
  scratch.clear();
  for (Elem x : u)
    for (Elem y : v) scratch.push_back(s == Sign::Plus ? ctx.add(x, y) : ctx.sub(x, y));
  std::sort(scratch.begin(), scratch.end());
  return static_cast<std::size_t>(std::unique(scratch.begin(), scratch.end()) - scratch.begin());
}

std::string sign_tag(Sign s) { return std::string(1, sign_char(s)); }

long double set_conv_work(const GSet& a, const GSet& b) {
  return convolution_work(CountFn::indicator(a), CountFn::indicator(b));
}

}  // namespace

D4Estimate default_d4_estimate(const GSet& a, const Budget& budget) {
  return d4_family_search(a, default_d4_candidates(a), budget);
}

VerificationReport verify_all(const GSet& a, const std::string& instance_id, const VerifyOptions& opts) {
  if (a.empty()) throw ParameterError("verify_all: A must be nonempty");
  if (a.size() > opts.max_size)
    throw ParameterError("verify_all: |A| = " + std::to_string(a.size()) + " exceeds " + std::to_string(opts.max_size));
  VerificationReport rep;
  rep.instance_id = instance_id;
  auto& rows = rep.rows;
  const auto& ctx = a.ctx();
  const std::size_t n = a.size();
  const bool cubic = n <= opts.cubic_tier;
  const bool quartic = n <= opts.quartic_tier;
  const bool matrix = n <= opts.matrix_tier;
  const Budget walk_budget{quartic ? opts.budget.steps : 0};
  const BigInt bn(n);

  const GSet sum = sumset(a, a), diff = diffset(a, a);
  const Count e2 = additive_energy(a), e4 = fourth_energy(a);

  rows.push_back(Row::exact_le("CS", pow(bn, 4), big(e2) * sum.size()));
  rows.push_back(Row::exact_le("E4+", pow(bn, 8), big(e4) * pow(big(sum.size()), 3)));
  rows.push_back(Row::exact_le("E4-", pow(bn, 8), big(e4) * pow(big(diff.size()), 3)));
  rows.push_back(Row::exact_le("holder", pow(big(e2), 3), big(e4) * pow(bn, 4)));
  {
    const BigInt ead = big(energy(a, diff, 2));
    rows.push_back(Row::exact_le("holder-AD", pow(ead, 3), big(energy(a, diff, 4)) * bn * bn * pow(big(diff.size()), 2)));
  }

  if (cubic) {
    guarded(rows, "quad", Relation::Eq, [&] {
      const auto q = quad_identity(a, opts.budget);
      rows.push_back(Row::exact_eq("quad", big(q.lhs), big(q.rhs)));
    });
    guarded(rows, "lem1", Relation::Eq, [&] {
      const auto q = lem1_identity(a, opts.budget);
      rows.push_back(Row::exact_eq("lem1", big(q.lhs), big(q.rhs)));
    });
  } else {
    skip(rows, "quad", Relation::Eq, "outside cubic tier");
    skip(rows, "lem1", Relation::Eq, "outside cubic tier");
  }
  const bool have_ed = opts.budget.allows(set_conv_work(diff, diff));
  const std::string no_ed = "r_{D-D} over budget";
  if (have_ed) {
    const auto q = cross_energy_identity(a, diff);
    rows.push_back(Row::exact_eq("cross-energy", big(q.lhs), big(q.rhs)));
  } else {
    skip(rows, "cross-energy", Relation::Eq, no_ed);
  }
  if (cubic) {
    guarded(rows, "factorization", Relation::Eq, [&] {
      const bool ok = factorization_check(a, opts.budget);
      rows.push_back(Row::exact_eq("factorization", ok ? 1 : 0, 1, "T_A^{r_{A-A}} = K K^T"));
    });
  } else {
    skip(rows, "factorization", Relation::Eq, "outside cubic tier");
  }

  // Popular sets; the difference threshold is |A|^2 / (2 |A-A|).
  const PopularSet pop_minus = popular_set(a, Sign::Minus);
  const PopularSet pop_plus = popular_set(a, Sign::Plus);
  rows.push_back(Row::exact_le("popular-mass-", bn * bn, 2 * big(pop_minus.mass)));
  rows.push_back(Row::exact_le("popular-mass+", bn * bn, 2 * big(pop_plus.mass)));

  // Elementary slice lemma and the Katz-Koester step, P = popular differences.
  const GSet& p = pop_minus.members;
  const CountFn r_dd = have_ed ? repr(diff, diff, Sign::Minus) : CountFn(ctx);
  const BigInt ed = have_ed ? big(moment(r_dd, 2)) : BigInt(0);
  if (cubic && !have_ed) {
    for (const char* name : {"lemma-energy-S4-", "lemma-energy-S4+", "katz-koester", "katz-koester-sum", "setversion-sum"})
      skip(rows, name, Relation::Le, no_ed);
  } else if (cubic) {
    guarded(rows, "lemma-energy-S4-", Relation::Le, [&] {
      opts.budget.require("slice lemma", std::pow(static_cast<long double>(pop_minus.mass), 2.0L));
      const auto sl = slices_of(a, p);
      std::vector<Elem> scratch;
      BigInt total_minus = 0, total_plus = 0;
      std::size_t violations = 0;
      for (std::size_t i = 0; i < p.size(); ++i) {
        for (std::size_t j = 0; j < p.size(); ++j) {
          const Elem x = p[i], w = p[j];
          const std::size_t dm = pair_set_size(ctx, sl[i], sl[j], Sign::Minus, scratch);
          total_minus += dm;
          for (std::size_t t = 0; t < dm; ++t) {
            const Elem s = scratch[t];
            if (!diff.contains(s) || !diff.contains(ctx.sub(s, x)) || !diff.contains(ctx.add(s, w)) ||
                !diff.contains(ctx.add(ctx.sub(s, x), w)))
              ++violations;
          }
          total_plus += pair_set_size(ctx, sl[i], sl[j], Sign::Plus, scratch);
        }
      }
      const BigInt lhs = pow(big(pop_minus.mass), 4);
      rows.push_back(Row::exact_le("lemma-energy-S4-", lhs, big(e4) * total_minus));
      rows.push_back(Row::exact_le("lemma-energy-S4+", lhs, big(e4) * total_plus));
      rows.push_back(Row::exact_eq("katz-koester", violations, 0, "A_x - A_w outside D ∩ (D+x) ∩ (D-w) ∩ (D+x-w)"));
      BigInt dx2 = 0;
      for (Elem x : p) dx2 += pow(big(r_dd(x)), 2);
      rows.push_back(Row::exact_le("katz-koester-sum", total_minus, dx2));
      rows.push_back(Row::exact_le("setversion-sum", dx2, ed));
    });
  } else {
    for (const char* name : {"lemma-energy-S4-", "lemma-energy-S4+", "katz-koester", "katz-koester-sum", "setversion-sum"})
      skip(rows, name, Relation::Le, "outside cubic tier");
  }

  // d4 lower bound and the rows that use it.
  const D4Estimate d4 = default_d4_estimate(a, opts.budget);
  const BigInt dnum = numerator(d4.lower_bound), dden = denominator(d4.lower_bound);
  const double dlb = to_double(d4.lower_bound);
  const std::string d4_note = "d4 >= " + to_string(d4.lower_bound) + " (|B| = " + std::to_string(d4.witness.size()) + ")";
  rows.push_back(Row::exact_le("d4-baseline", big(e4) * dden, dnum * pow(bn, 4), d4_note));
  rows.push_back(Row::exact_le("d4-trivial", dnum, bn * dden));
  if (have_ed) {
    rows.push_back(Row::exact_le("first", pow(bn, 8), big(e4) * ed));
    rows.push_back(Row::exact_le("setversion", pow(bn, 4) * dden, dnum * ed, d4_note));
  } else {
    skip(rows, "first", Relation::Le, no_ed);
    skip(rows, "setversion", Relation::Le, no_ed);
  }
  for (Sign s : {Sign::Plus, Sign::Minus}) {
    const double sz = static_cast<double>(s == Sign::Plus ? sum.size() : diff.size());
    rows.push_back(Row::ratio("CS4" + sign_tag(s), sz * sz * sz * dlb / std::pow(static_cast<double>(n), 4.0),
                              "|A" + sign_tag(s) + "A|^3 d4", "|A|^4", d4_note));
  }
  rows.push_back(Row::ratio("prop-diff",
                            static_cast<double>(diff.size()) * ratio_pow(dlb, 4.0 / 11) / ratio_pow(n, 15.0 / 11),
                            "|A-A| d4^{4/11}", "|A|^{15/11}", d4_note));
  {
    const auto dec = dyadic_decompose(a, d4.witness, Sign::Minus);
    const auto& top = dec.top();
    rows.push_back(Row::exact_le("dyadic-top", big(energy(a, d4.witness, 4)),
                                 big(top.members.size()) * pow(big(2 * top.tau), 4) * dec.log_factor,
                                 "B = d4 witness"));
    // Superlevel set {r_{A-B} >= tau} at the top level.
    const BigInt nb(d4.witness.size()), tau = big(top.tau);
    const GSet super = repr(a, d4.witness, Sign::Minus).band(top.tau, std::numeric_limits<Count>::max());
    rows.push_back(Row::exact_le("Dtau", big(super.size()) * tau, bn * nb, "tau = " + to_string(top.tau)));
    rows.push_back(Row::exact_le("tau", tau, std::min(bn, nb)));
  }

  // Operator-method rows.
  if (matrix) {
    guarded(rows, "pidentity", Relation::Le, [&] {
      for (unsigned k : {1u, 2u}) rep.add(pidentity_check(a, pop_plus.members, k, walk_budget));
    });
  } else {
    skip(rows, "pidentity", Relation::Le, "outside matrix tier");
  }
  guarded(rows, "eigen-lemma-k2", Relation::Le, [&] {
    opts.budget.require("eigen-lemma", set_conv_work(p, p));
    rows.push_back(eigen_lemma_check(a, a, p, 2));
  });
  for (Sign s : {Sign::Plus, Sign::Minus}) {
    const GSet& ps = s == Sign::Plus ? pop_plus.members : pop_minus.members;
    guarded(rows, "lemma-energy-S6" + sign_tag(s), Relation::Le, [&] {
      opts.budget.require("lemma-energy-S6", set_conv_work(ps, ps));
      if (matrix) {
        rep.add(spectral_energy_lemma_check(a, ps, s, Budget{std::min(opts.budget.steps, opts.direct_sum_steps)}));
      } else {
        const BigInt sm = big(s == Sign::Plus ? pop_plus.mass : pop_minus.mass);
        rows.push_back(Row::exact_le("lemma-energy-S6" + sign_tag(s), pow(sm, 8),
                                     pow(bn, 8) * big(e4) * big(additive_energy(ps))));
      }
    });
  }

  // Small energy implies large sumset: the plus pipeline.
  guarded(rows, "inter2", Relation::Le, [&] {
    const GSet& pp = pop_plus.members;
    opts.budget.require("main2 pipeline", set_conv_work(sum, pp) + set_conv_work(pp, pp));
    const CountFn r_ap = repr(a, pp, Sign::Plus);
    const CountFn r_aap = convolve(repr(a, a, Sign::Plus), CountFn::indicator(pp), Sign::Plus);
    const BigInt s_aap = moment_big(r_aap, 2);
    const BigInt ep = big(additive_energy(pp));
    rows.push_back(Row::exact_le("inter2", pow(bn, 4) * ep, 4 * pow(big(sum.size()), 2) * s_aap));
    const auto levels = dyadic_levels(r_ap);
    // Pick the level maximising Delta^2 sum_x r_{A+T}(x)^2.
    BigInt best = -1;
    std::size_t best_i = 0;
    std::vector<BigInt> at_energy(levels.levels.size());
    for (std::size_t i = 0; i < levels.levels.size(); ++i) {
      at_energy[i] = big(energy(a, levels.levels[i].members, 2));
      const BigInt score = pow(big(levels.levels[i].tau), 2) * at_energy[i];
      if (score > best) {
        best = score;
        best_i = i;
      }
    }
    const auto& t = levels.levels[best_i];
    const BigInt lf(levels.log_factor), delta = big(t.tau), nt(t.members.size());
    rows.push_back(Row::exact_le("dyadic-T", s_aap, 4 * lf * lf * delta * delta * at_energy[best_i],
                                 "Delta = " + to_string(t.tau) + ", |T| = " + std::to_string(t.members.size())));
    rows.push_back(Row::exact_le("holder-T", pow(at_energy[best_i], 3),
                                 big(energy(a, t.members, 4)) * bn * bn * nt * nt));
    rows.push_back(Row::exact_le("T-fourth", nt * pow(delta, 4), moment_big(r_ap, 4)));
    rows.push_back(Row::exact_le("T-mass", nt * delta, bn * big(pp.size())));
  });
  for (Sign s : {Sign::Plus, Sign::Minus}) {
    const double sz = static_cast<double>(s == Sign::Plus ? sum.size() : diff.size());
    rows.push_back(Row::ratio("main2" + sign_tag(s), sz * ratio_pow(dlb, 13.0 / 35) / ratio_pow(n, 48.0 / 35),
                              "|A" + sign_tag(s) + "A| d4^{13/35}", "|A|^{48/35}", d4_note));
  }

  if (ctx.is_field()) {
    const GSet aa = prodset(a, a);
    const double la = std::log(static_cast<double>(n));
    rows.push_back(Row::ratio("RRS", static_cast<double>(sum.size() + aa.size()) / ratio_pow(n, 1.2),
                              "|A+A| + |AA|", "|A|^{6/5}"));
    for (Sign s : {Sign::Plus, Sign::Minus}) {
      const double sz = static_cast<double>(s == Sign::Plus ? sum.size() : diff.size());
      const double lr = 35 * std::log(sz) + 26 * std::log(static_cast<double>(aa.size())) - 74 * la;
      rows.push_back(Row::ratio("main" + sign_tag(s), std::exp(lr), "|A" + sign_tag(s) + "A|^35 |AA|^26", "|A|^74"));
    }
    rows.push_back(Row::ratio("energyreduction", dlb * static_cast<double>(n) * static_cast<double>(n) /
                                                     (static_cast<double>(aa.size()) * static_cast<double>(aa.size())),
                              "d4", "|AA|^2 / |A|^2", d4_note));
    if (opts.incidence_chain) {
      guarded(rows, "chain", Relation::Le, [&] { rep.add(energyreduction_chain(a, d4.witness, opts.budget)); });
    }
  }
  return rep;
}

SweepRow sweep_row(const FamilySpec& spec, const GroupCtx& ctx, const Budget& budget) {
  const GSet a = generate(spec, ctx);
  SweepRow row;
  row.family = family_name(spec.family);
  std::ostringstream params;
  params << "n=" << spec.n << ";start=" << spec.start << ";step=" << spec.step << ";order=" << spec.order
         << ";probability=" << format_double(spec.probability) << ";seed=" << spec.seed;
  row.parameters = params.str();
  row.p = ctx.modulus();
  row.size = a.size();
  if (a.empty()) {
    row.exponent = std::numeric_limits<double>::quiet_NaN();
    return row;
  }
  row.sumset = sumset(a, a).size();
  row.diffset = diffset(a, a).size();
  row.prodset = prodset(a, a).size();
  row.energy = additive_energy(a);
  row.energy4 = fourth_energy(a);
  row.d4_lb = default_d4_estimate(a, budget).lower_bound;
  row.exponent = a.size() < 2 ? std::numeric_limits<double>::quiet_NaN()
                              : std::log(static_cast<double>(row.sumset + row.prodset)) /
                                    std::log(static_cast<double>(a.size()));
  if (ctx.is_residues()) {
    const BigInt s(a.size()), p(ctx.modulus());
    row.in_theorem_range = pow(s, 5) <= pow(p, 3);
  }
  return row;
}

std::vector<SweepRow> sweep(const std::vector<FamilySpec>& specs, const std::vector<Elem>& primes, unsigned jobs,
                            const Budget& budget) {
  std::vector<std::pair<std::size_t, Elem>> grid;
  for (std::size_t i = 0; i < specs.size(); ++i)
    for (Elem p : primes) grid.emplace_back(i, p);
  return parallel_map<SweepRow>(grid.size(), jobs, [&](std::size_t i) {
    const auto [si, p] = grid[i];
    return sweep_row(specs[si], p == 0 ? GroupCtx::integers() : GroupCtx::residues(p), budget);
  });
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
  os << "schema_version,family,parameters,p,size,sumset,diffset,prodset,energy,energy4,d4_lb,exponent,"
        "in_theorem_range\n";
  for (const auto& r : rows) {
    os << kCsvSchemaVersion << ',' << r.family << ',' << r.parameters << ',' << r.p << ',' << r.size << ','
       << r.sumset << ',' << r.diffset << ',' << r.prodset << ',' << to_string(r.energy) << ','
       << to_string(r.energy4) << ',' << to_string(r.d4_lb) << ',' << format_double(r.exponent) << ','
       << (r.p == 0 ? "na" : (r.in_theorem_range ? "yes" : "no")) << '\n';
  }
}

unsigned resolve_jobs(unsigned jobs) {
  if (jobs != 0) return jobs;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

}  // namespace addcomb
