#include "addcomb/structure.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>

#include "addcomb/energy.hpp"
#include "addcomb/error.hpp"

namespace addcomb {

namespace {

bool lex_less(const GSet& x, const GSet& y) {
  return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end());
}

// The d4 cap ceil(|A|^{3/2}), exact.
std::uint64_t size_cap(std::size_t n) {
  const auto n3 = static_cast<Count>(n) * n * n;
  auto c = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(n3)));
  while (static_cast<Count>(c) * c < n3) ++c;
  while (c > 0 && static_cast<Count>(c - 1) * (c - 1) >= n3) --c;
  return c;
}

void require_d4_bounds(const GSet& a, const D4Estimate& est) {
  if (est.lower_bound < 1 || est.lower_bound > Rational(a.size()))
    throw Error("d4 estimate " + to_string(est.lower_bound) + " outside [1, |A|]");
}

}  // namespace

const char* d4_method_name(D4Method m) { return m == D4Method::ExactSmall ? "exact-small" : "family-search"; }

unsigned dyadic_log_factor(std::uint64_t n) {
  if (n == 0) throw ParameterError("dyadic_log_factor: n must be positive");
  return static_cast<unsigned>(std::bit_width(n - 1)) + 1;
}

Rational d4_ratio(const GSet& a, const GSet& b) {
  require_same_ctx(a.ctx(), b.ctx(), "d4_ratio");
  if (b.empty()) throw ParameterError("d4_ratio: B must be nonempty");
  if (a.empty()) throw ParameterError("d4_ratio: A must be nonempty");
  const BigInt den = BigInt(a.size()) * BigInt(b.size()) * BigInt(b.size()) * BigInt(b.size());
  return Rational(to_big(energy(a, b, 4)), den);
}

D4Estimate d4_exact_small(const GSet& a, const GSet& universe) {
  require_same_ctx(a.ctx(), universe.ctx(), "d4_exact_small");
  if (a.empty()) throw ParameterError("d4_exact_small: A must be nonempty");
  if (universe.empty()) throw ParameterError("d4_exact_small: universe must be nonempty");
  if (universe.size() > kD4UniverseLimit)
    throw ParameterError("d4_exact_small: universe of size " + std::to_string(universe.size()) +
                         " exceeds the limit of " + std::to_string(kD4UniverseLimit));
  const std::size_t u = universe.size();
  const std::uint64_t cap = size_cap(a.size());

  // Index every difference a - v (v in the universe) once.
  const GSet diffs = diffset(a, universe);
  std::vector<std::vector<std::uint32_t>> slot(u);
  for (std::size_t j = 0; j < u; ++j)
    for (Elem x : a) slot[j].push_back(static_cast<std::uint32_t>(*diffs.index_of(a.ctx().sub(x, universe[j]))));

  std::vector<std::uint64_t> counts(diffs.size(), 0);
  std::vector<std::uint32_t> touched;
  BigInt best_num = 0, best_den = 1;
  std::vector<Elem> best;
  std::size_t evaluated = 0;
  for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << u); ++mask) {
    const auto bsize = static_cast<std::uint64_t>(std::popcount(mask));
    if (bsize > cap) continue;
    for (std::size_t j = 0; j < u; ++j) {
      if (!((mask >> j) & 1U)) continue;
      for (auto idx : slot[j])
        if (counts[idx]++ == 0) touched.push_back(idx);
    }
    Count e4 = 0;
    for (auto idx : touched) {
      const Count c = counts[idx];
      e4 = checked_add(e4, c * c * c * c);
      counts[idx] = 0;
    }
    touched.clear();
    ++evaluated;
    const BigInt num = to_big(e4);
    const BigInt den = BigInt(a.size()) * bsize * bsize * bsize;
    std::vector<Elem> members;
    const BigInt lhs = num * best_den, rhs = best_num * den;
    if (lhs < rhs) continue;
    for (std::size_t j = 0; j < u; ++j)
      if ((mask >> j) & 1U) members.push_back(universe[j]);
    if (lhs == rhs && !best.empty() && !std::lexicographical_compare(members.begin(), members.end(), best.begin(), best.end()))
      continue;
    best_num = num;
    best_den = den;
    best = std::move(members);
  }
  D4Estimate est;
  est.lower_bound = Rational(best_num, best_den);
  est.witness = GSet::from_canonical(a.ctx(), std::move(best));
  est.method = D4Method::ExactSmall;
  est.exact = true;
  est.candidates = evaluated;
  require_d4_bounds(a, est);
  return est;
}

std::vector<GSet> default_d4_candidates(const GSet& a, std::size_t max_candidate_size) {
  std::vector<GSet> out;
  if (a.empty()) return out;
  const auto& ctx = a.ctx();
  auto push = [&](GSet s) {
    if (!s.empty() && s.size() <= max_candidate_size) out.push_back(std::move(s));
  };
  push(a);
  push(negate(a));

  const CountFn r = repr(a, a, Sign::Minus);
  std::vector<CountFn::Entry> popular(r.entries().begin(), r.entries().end());
  std::erase_if(popular, [&](const CountFn::Entry& e) { return e.first == 0; });
  std::stable_sort(popular.begin(), popular.end(),
                   [](const CountFn::Entry& x, const CountFn::Entry& y) { return x.second > y.second; });
  for (std::size_t i = 0; i < std::min<std::size_t>(popular.size(), 4); ++i)
    push(set_union(a, translate(a, popular[i].first)));

  // Interval and progression spanned by A.
  if (ctx.is_integers()) {
    if (a.span() <= max_candidate_size) {
      std::vector<Elem> interval;
      for (Elem x = a.min(); x <= a.max(); ++x) interval.push_back(x);
      push(GSet::from_canonical(ctx, std::move(interval)));
    }
    if (a.size() > 1) {
      std::uint64_t g = 0;
      for (Elem x : a) g = std::gcd(g, static_cast<std::uint64_t>(x - a.min()));
      if (g > 1 && (a.span() - 1) / g + 1 <= max_candidate_size) {
        std::vector<Elem> ap;
        for (Elem x = a.min();; x += static_cast<Elem>(g)) {
          ap.push_back(x);
          if (x >= a.max()) break;
        }
        push(GSet::from_canonical(ctx, std::move(ap)));
      }
    }
  } else if (static_cast<std::uint64_t>(ctx.modulus()) <= max_candidate_size) {
    std::vector<Elem> all(static_cast<std::size_t>(ctx.modulus()));
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<Elem>(i);
    push(GSet::from_canonical(ctx, std::move(all)));
  }

  for (const auto& level : dyadic_levels(r).levels) push(level.members);
  return out;
}

D4Estimate d4_family_search(const GSet& a, const std::vector<GSet>& candidates, const Budget& budget) {
  if (a.empty()) throw ParameterError("d4_family_search: A must be nonempty");
  long double work = 0;
  for (const auto& b : candidates) {
    require_same_ctx(a.ctx(), b.ctx(), "d4_family_search");
    work += static_cast<long double>(a.size()) * static_cast<long double>(b.size());
  }
  budget.require("d4_family_search", work);
  D4Estimate est;
  est.method = D4Method::FamilySearch;
  est.exact = false;
  est.witness = a;
  est.lower_bound = d4_ratio(a, a);
  est.candidates = 1;
  for (const auto& b : candidates) {
    if (b.empty()) continue;
    ++est.candidates;
    const Rational v = d4_ratio(a, b);
    if (v > est.lower_bound || (v == est.lower_bound && lex_less(b, est.witness))) {
      est.lower_bound = v;
      est.witness = b;
    }
  }
  require_d4_bounds(a, est);
  return est;
}

DyadicDecomposition dyadic_levels(const CountFn& r) {
  DyadicDecomposition out;
  if (r.empty()) return out;
  const Count maxv = r.max_value();
  const auto top = static_cast<std::uint64_t>(std::min<Count>(maxv, std::numeric_limits<std::uint64_t>::max()));
  out.log_factor = dyadic_log_factor(top);
  // Bucket by floor(log2 r).
  std::vector<std::vector<Elem>> members(128);
  std::vector<Count> fourth(128, 0);
  for (const auto& [x, v] : r.entries()) {
    const auto j = static_cast<std::size_t>(127 - (v >> 64 ? std::countl_zero(static_cast<std::uint64_t>(v >> 64))
                                                            : 64 + std::countl_zero(static_cast<std::uint64_t>(v))));
    members[j].push_back(x);
    fourth[j] = checked_add(fourth[j], checked_pow(v, 4));
  }
  Count best = 0;
  for (std::size_t j = 0; j < members.size(); ++j) {
    if (members[j].empty()) continue;
    DyadicLevel level;
    level.tau = static_cast<Count>(1) << j;
    level.fourth_moment = fourth[j];
    const Count score = checked_mul(members[j].size(), checked_pow(level.tau, 4));
    level.members = GSet::from_canonical(r.ctx(), std::move(members[j]));
    out.total_fourth_moment = checked_add(out.total_fourth_moment, level.fourth_moment);
    if (score > best) {
      best = score;
      out.argmax = out.levels.size();
    }
    out.levels.push_back(std::move(level));
  }
  return out;
}

DyadicDecomposition dyadic_decompose(const GSet& a, const GSet& b, Sign sign) {
  require_same_ctx(a.ctx(), b.ctx(), "dyadic_decompose");
  DyadicDecomposition out = dyadic_levels(repr(a, b, sign));
  out.sign = sign;
  out.size_a = a.size();
  out.size_b = b.size();
  if (out.levels.empty()) return out;
  out.log_factor = dyadic_log_factor(std::min(a.size(), b.size()));

  const Count ab = static_cast<Count>(a.size()) * b.size();
  const Count small = std::min(a.size(), b.size());
  Count sum_bound = 0;
  for (const auto& level : out.levels) {
    if (checked_mul(level.members.size(), level.tau) > ab) throw Error("dyadic level violates |D_tau| tau <= |A||B|");
    if (level.tau > small) throw Error("dyadic level violates tau <= min(|A|, |B|)");
    sum_bound = checked_add(sum_bound, checked_mul(level.members.size(), checked_pow(2 * level.tau, 4)));
  }
  const auto& top = out.top();
  const Count top_bound = checked_mul(checked_mul(top.members.size(), checked_pow(2 * top.tau, 4)), out.log_factor);
  if (out.total_fourth_moment > sum_bound || sum_bound > top_bound)
    throw Error("dyadic bound E_4 <= sum |D_tau| (2 tau)^4 <= L |D*| (2 tau*)^4 failed");
  return out;
}

PopularSet popular_set(const GSet& a, Sign sign, const Rational& c) {
  if (a.empty()) throw ParameterError("popular_set: A must be nonempty");
  if (c < 0) throw ParameterError("popular_set: c must be nonnegative");
  const CountFn r = repr(a, a, sign);
  const BigInt n2 = BigInt(a.size()) * a.size();
  PopularSet out;
  out.sign = sign;
  out.threshold = c * Rational(n2, BigInt(r.support_size()));
  const BigInt tn = numerator(out.threshold), td = denominator(out.threshold);
  std::vector<Elem> members;
  for (const auto& [x, v] : r.entries()) {
    if (to_big(v) * td >= tn) {
      members.push_back(x);
      out.mass += v;
    }
  }
  out.members = GSet::from_canonical(a.ctx(), std::move(members));
  if (c <= 1 && Rational(to_big(out.mass)) < (1 - c) * Rational(n2))
    throw Error("popular set mass below (1 - c)|A|^2");
  return out;
}

}  // namespace addcomb
