#include "addcomb/incidence.hpp"

#include <algorithm>
#include <cmath>

#include "addcomb/conv.hpp"
#include "addcomb/energy.hpp"
#include "addcomb/error.hpp"
#include "addcomb/structure.hpp"

namespace addcomb {

namespace {

void require_field(const GroupCtx& ctx, const char* op) {
  if (!ctx.is_field()) throw FieldRequiredError(std::string(op) + ": needs a prime residue ring");
}

BigInt big(Count v) { return to_big(v); }

}  // namespace

LineSet::LineSet(GroupCtx ctx, std::vector<Line> lines) : ctx_(ctx), tuples_(lines.size()) {
  require_field(ctx_, "LineSet");
  for (auto& l : lines) {
    l.slope = l.vertical ? 0 : ctx_.reduce(l.slope);
    l.intercept = ctx_.reduce(l.intercept);
  }
  std::sort(lines.begin(), lines.end());
  lines.erase(std::unique(lines.begin(), lines.end()), lines.end());
  lines_ = std::move(lines);
}

LineSet LineSet::from_pairs(const GSet& r, const GSet& b) {
  require_same_ctx(r.ctx(), b.ctx(), "LineSet::from_pairs");
  const auto& ctx = r.ctx();
  std::vector<Line> lines;
  for (Elem s : r) {
    if (s == 0) continue;
    for (Elem c : b) lines.push_back(Line::affine(s, ctx.mul(s, c)));
  }
  return LineSet(ctx, std::move(lines));
}

Count count_incidences(const GSet& a, const GSet& b, const LineSet& lines, IncidencePath path) {
  require_same_ctx(a.ctx(), b.ctx(), "count_incidences");
  require_same_ctx(a.ctx(), lines.ctx(), "count_incidences");
  require_field(a.ctx(), "count_incidences");
  const auto& ctx = a.ctx();
  Count total = 0;
  if (path == IncidencePath::Oracle) {
    for (Elem x : a)
      for (Elem y : b)
        for (const auto& l : lines.lines())
          if (l.vertical ? x == l.intercept : ctx.add(ctx.mul(l.slope, x), l.intercept) == y) ++total;
    return total;
  }
  const Bitmap* bmap = b.bitmap();
  const Bitmap* amap = a.bitmap();
  auto in_b = [&](Elem y) { return bmap ? bmap->test(y) : b.contains(y); };
  auto in_a = [&](Elem x) { return amap ? amap->test(x) : a.contains(x); };
  for (const auto& l : lines.lines()) {
    if (l.vertical) {
      if (in_a(l.intercept)) total += b.size();
    } else if (l.slope == 0) {
      if (in_b(l.intercept)) total += a.size();
    } else if (a.size() <= b.size()) {
      for (Elem x : a)
        if (in_b(ctx.add(ctx.mul(l.slope, x), l.intercept))) ++total;
    } else {
      const Elem inv = ctx.inv(l.slope);
      for (Elem y : b)
        if (in_a(ctx.mul(ctx.sub(y, l.intercept), inv))) ++total;
    }
  }
  return total;
}

std::size_t SzTerms::dominant() const {
  return static_cast<std::size_t>(std::max_element(terms.begin(), terms.end()) - terms.begin());
}

const char* sz_term_name(std::size_t i) {
  static const char* names[] = {"main", "lines", "points", "p-term"};
  return i < 4 ? names[i] : "?";
}

SzTerms sz_terms(std::size_t na, std::size_t nb, std::size_t nl, std::uint64_t p) {
  if (p == 0) throw ParameterError("sz_terms: p must be positive");
  const long double a = na, b = nb, l = nl;
  SzTerms t;
  t.terms[0] = std::pow(a, 0.75L) * std::sqrt(b) * std::pow(l, 0.75L);
  t.terms[1] = l;
  t.terms[2] = a * b;
  t.terms[3] = a * b * l / static_cast<long double>(p);
  return t;
}

long double sz_bound(std::size_t na, std::size_t nb, std::size_t nl, std::uint64_t p, long double c) {
  return c * sz_terms(na, nb, nl, p).total();
}

std::vector<Row> energyreduction_chain(const GSet& a_in, const GSet& b, const Budget& budget) {
  require_same_ctx(a_in.ctx(), b.ctx(), "energyreduction_chain");
  require_field(a_in.ctx(), "energyreduction_chain");
  const auto& ctx = a_in.ctx();
  std::vector<Row> rows;
  const bool stripped = a_in.contains(0);
  const GSet a = stripped ? set_difference(a_in, GSet(ctx, {0})) : a_in;
  const std::string strip_note = stripped ? "0 removed from A" : "";
  if (a.empty() || b.empty()) {
    rows.push_back(Row::skipped("chain", Relation::Le, "A \\ {0} or B empty"));
    return rows;
  }
  const auto dec = dyadic_decompose(a, b, Sign::Minus);
  const auto& level = dec.top();
  const GSet& d = level.members;
  const Count tau = level.tau;
  const std::uint64_t p = static_cast<std::uint64_t>(ctx.modulus());
  const BigInt na(a.size()), nb(b.size()), nd(d.size());

  const GSet aa = prodset(a, a);
  const LineSet lines = LineSet::from_pairs(a, b);
  budget.require("energyreduction_chain",
                 static_cast<long double>(lines.tuples()) * static_cast<long double>(std::min(d.size(), aa.size())));

  rows.push_back(Row::exact_le("chain-dyadic-top", big(energy(a, b, 4)),
                               nd * pow(BigInt(big(2 * tau)), 4) * dec.log_factor, strip_note));
  rows.push_back(Row::exact_le("chain-Dtau", nd * big(tau), na * nb));
  rows.push_back(Row::exact_le("chain-tau", big(tau), BigInt(std::min(a.size(), b.size()))));

  // #{(x, a, b) : x = a - b, x in D} is the r_{A-B} mass on D.
  const BigInt triples = big(restricted_mass(repr(a, b, Sign::Minus), d));
  // #{(x, u, r, b) : x = u / r - b}: for each (r, b, x), u = r (x + b) must lie in AA.
  Count quads = 0;
  for (Elem r : a)
    for (Elem c : b)
      for (Elem x : d)
        if (aa.contains(ctx.mul(r, ctx.add(x, c)))) ++quads;
  rows.push_back(Row::exact_le("chain-ii-a", na * nd * big(tau), na * triples));
  rows.push_back(Row::exact_le("chain-ii-b", na * triples, big(quads)));

  const Count incidences = count_incidences(d, aa, lines);
  rows.push_back(Row::exact_eq("chain-incidences", big(incidences), big(quads),
                               "lines " + std::to_string(lines.size()) + ", tuples " + std::to_string(lines.tuples())));

  const SzTerms t = sz_terms(d.size(), aa.size(), lines.size(), p);
  const auto count = static_cast<long double>(incidences);
  for (std::size_t i = 0; i < 4; ++i) {
    rows.push_back(Row::ratio(std::string("sz-") + sz_term_name(i), static_cast<double>(count / t.terms[i]),
                              to_string(incidences), format_double(static_cast<double>(t.terms[i])),
                              i == t.dominant() ? "dominant" : ""));
  }
  const long double cal = std::floor(kSzCalibration * t.total());
  rows.push_back(Row::exact_le("sz-calibrated", big(incidences), BigInt(static_cast<unsigned long long>(cal)),
                               "C = " + format_double(static_cast<double>(kSzCalibration))));

  const bool aa_case = BigInt(aa.size()) * aa.size() <= na * na * na;
  rows.push_back(Row::ratio("AA-case", static_cast<double>(aa.size()) / std::pow(static_cast<double>(a.size()), 1.5),
                            std::to_string(aa.size()), "|A|^{3/2}", aa_case ? "|AA| <= |A|^{3/2}" : "|AA| > |A|^{3/2}"));
  // |D| tau^4 |A|^{-1} |B|^{-3} against |AA|^2 |A|^{-2}.
  const Rational enough(nd * pow(big(tau), 4) * na * na, na * pow(nb, 3) * BigInt(aa.size()) * aa.size());
  rows.push_back(Row::ratio("enough", to_double(enough), to_string(enough), "1"));
  return rows;
}

}  // namespace addcomb
