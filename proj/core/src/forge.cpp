#include "addcomb/forge.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <unordered_set>
#include <vector>

#include "addcomb/error.hpp"

namespace addcomb {

namespace {

std::uint32_t fnv1a(std::string_view s) {
  std::uint32_t h = 2166136261U;
  for (unsigned char c : s) {
    h ^= c;
    h *= 16777619U;
  }
  return h;
}

void require(bool ok, const std::string& what) {
  if (!ok) throw ParameterError(what);
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> f;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d != 0) continue;
    f.push_back(d);
    while (n % d == 0) n /= d;
  }
  if (n > 1) f.push_back(n);
  return f;
}

GSet gen_ap(const FamilySpec& s, const GroupCtx& ctx) {
  std::vector<Elem> v;
  Elem x = ctx.reduce(s.start);
  for (std::int64_t k = 0; k < s.n; ++k) {
    v.push_back(x);
    if (k + 1 < s.n) x = ctx.add(x, ctx.reduce(s.step));
  }
  return GSet(ctx, std::move(v));
}

GSet gen_geometric(const FamilySpec& s, const GroupCtx& ctx) {
  require(s.start != 0 && s.step != 0, "geometric: start and ratio must be nonzero");
  std::vector<Elem> v;
  Elem x = ctx.reduce(s.start);
  for (std::int64_t k = 0; k < s.n; ++k) {
    v.push_back(x);
    if (k + 1 < s.n) x = ctx.mul(x, ctx.reduce(s.step));
  }
  return GSet(ctx, std::move(v));
}

GSet gen_subgroup(const FamilySpec& s, const GroupCtx& ctx) {
  require(ctx.is_field(), "mult_subgroup: needs a prime modulus");
  const Elem p = ctx.modulus();
  require(s.order >= 1 && (p - 1) % s.order == 0, "mult_subgroup: order must divide p - 1");
  const Elem h = ctx.pow(primitive_root(p), static_cast<std::uint64_t>((p - 1) / s.order));
  std::vector<Elem> v;
  Elem x = 1;
  for (std::int64_t k = 0; k < s.order; ++k) {
    v.push_back(x);
    x = ctx.mul(x, h);
  }
  GSet out(ctx, std::move(v));
  if (out.size() != static_cast<std::size_t>(s.order) || prodset(out, out) != out)
    throw Error("mult_subgroup: generated set is not a subgroup");
  return out;
}

GSet gen_sidon(const FamilySpec& s, const GroupCtx& ctx) {
  std::vector<Elem> v;
  std::unordered_set<Elem> diffs;
  const Elem limit = ctx.is_residues() ? ctx.modulus() : std::numeric_limits<Elem>::max() / 4;
  for (Elem c = 0; static_cast<std::int64_t>(v.size()) < s.n; ++c) {
    require(c < limit, "sidon_greedy: ran out of candidates in the group");
    std::vector<Elem> fresh;
    bool ok = true;
    for (Elem x : v) {
      const Elem d1 = ctx.sub(c, x), d2 = ctx.sub(x, c);
      if (d1 == d2 || diffs.count(d1) || diffs.count(d2)) {
        ok = false;
        break;
      }
      fresh.push_back(d1);
      fresh.push_back(d2);
    }
    if (!ok) continue;
    // Two new differences may coincide with each other.
    std::sort(fresh.begin(), fresh.end());
    if (std::adjacent_find(fresh.begin(), fresh.end()) != fresh.end()) continue;
    diffs.insert(fresh.begin(), fresh.end());
    v.push_back(c);
  }
  GSet out(ctx, std::move(v));
  if (!is_sidon(out)) throw Error("sidon_greedy: generated set is not Sidon");
  return out;
}

GSet gen_random_interval(const FamilySpec& s, const GroupCtx& ctx) {
  require(s.probability > 0 && s.probability <= 1, "random_interval: probability must lie in (0, 1]");
  Rng rng(s.seed, "random_interval");
  std::vector<Elem> v;
  for (std::int64_t x = 1; x <= s.n; ++x)
    if (rng.bernoulli(s.probability)) v.push_back(x);
  return GSet(ctx, std::move(v));
}

GSet gen_ap_plus_generic(const FamilySpec& s, const GroupCtx& ctx) {
  require(ctx.is_integers(), "ap_plus_generic: integers only");
  require(s.n >= 2, "ap_plus_generic: n must be at least 2");
  const auto m = static_cast<std::int64_t>(std::llround(std::pow(static_cast<long double>(s.n), 1.25L)));
  long double top = std::pow(static_cast<long double>(s.n), 16.0L);
  const Elem cap = Elem{1} << 60;
  const Elem hi = top >= static_cast<long double>(cap) ? cap : static_cast<Elem>(top);
  require(hi - s.n >= 4 * m, "ap_plus_generic: range too small for the generic block");
  Rng rng(s.seed, "ap_plus_generic");
  std::vector<Elem> v;
  for (Elem x = 1; x <= s.n; ++x) v.push_back(x);
  std::set<Elem> chosen;
  while (static_cast<std::int64_t>(chosen.size()) < m) chosen.insert(rng.uniform_range(s.n + 1, hi));
  v.insert(v.end(), chosen.begin(), chosen.end());
  return GSet(ctx, std::move(v));
}

}  // namespace

Rng::Rng(std::uint64_t seed, std::string_view purpose) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), fnv1a(purpose),
                    kVersion};
  engine_.seed(seq);
}

std::uint64_t Rng::uniform(std::uint64_t n) {
  if (n == 0) throw ParameterError("Rng::uniform: empty range");
  // Rejection keeps the result exactly uniform.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t x;
  do x = next();
  while (x >= limit);
  return x % n;
}

std::int64_t Rng::uniform_range(std::int64_t lo, std::int64_t hi) {
  if (hi < lo) throw ParameterError("Rng::uniform_range: empty range");
  const auto width = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo);
  const std::uint64_t off = width == std::numeric_limits<std::uint64_t>::max() ? next() : uniform(width + 1);
  return static_cast<std::int64_t>(static_cast<std::uint64_t>(lo) + off);
}

bool Rng::bernoulli(double q) {
  // 53 random bits as a double in [0, 1).
  return static_cast<double>(next() >> 11) * 0x1.0p-53 < q;
}

const char* family_name(Family f) {
  switch (f) {
    case Family::Ap: return "ap";
    case Family::Geometric: return "geometric";
    case Family::MultSubgroup: return "mult_subgroup";
    case Family::SidonGreedy: return "sidon_greedy";
    case Family::RandomInterval: return "random_interval";
    case Family::ApPlusGeneric: return "ap_plus_generic";
  }
  return "?";
}

Family parse_family(std::string_view name) {
  std::string key(name);
  std::replace(key.begin(), key.end(), '-', '_');
  for (Family f : {Family::Ap, Family::Geometric, Family::MultSubgroup, Family::SidonGreedy, Family::RandomInterval,
                   Family::ApPlusGeneric})
    if (key == family_name(f)) return f;
  throw ParameterError("unknown family '" + std::string(name) + "'");
}

Elem primitive_root(Elem p) {
  if (p < 2 || !is_prime_u64(static_cast<std::uint64_t>(p))) throw ParameterError("primitive_root: p must be prime");
  if (p == 2) return 1;
  const auto ctx = GroupCtx::residues(p);
  const auto factors = prime_factors(static_cast<std::uint64_t>(p - 1));
  for (Elem g = 2; g < p; ++g) {
    if (std::all_of(factors.begin(), factors.end(),
                    [&](std::uint64_t q) { return ctx.pow(g, static_cast<std::uint64_t>(p - 1) / q) != 1; }))
      return g;
  }
  throw Error("primitive_root: none found");
}

bool is_sidon(const GSet& s) {
  const std::size_t n = s.size();
  if (n == 0) return true;
  return diffset(s, s).size() == n * n - n + 1;
}

GSet generate(const FamilySpec& spec, const GroupCtx& ctx) {
  require(spec.n >= 0, "family size must be nonnegative");
  switch (spec.family) {
    case Family::Ap: return gen_ap(spec, ctx);
    case Family::Geometric: return gen_geometric(spec, ctx);
    case Family::MultSubgroup: return gen_subgroup(spec, ctx);
    case Family::SidonGreedy: return gen_sidon(spec, ctx);
    case Family::RandomInterval: return gen_random_interval(spec, ctx);
    case Family::ApPlusGeneric: return gen_ap_plus_generic(spec, ctx);
  }
  throw ParameterError("unknown family");
}

}  // namespace addcomb
