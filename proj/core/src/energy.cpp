#include "addcomb/energy.hpp"

#include <algorithm>
#include <bit>
#include <ostream>

#include "addcomb/error.hpp"

namespace addcomb {

Count energy(const GSet& a, const GSet& b, unsigned k) {
  require_same_ctx(a.ctx(), b.ctx(), "energy");
  if (k == 0) throw ParameterError("energy: k must be positive");
  if (a.empty() || b.empty()) return 0;
  return moment(repr(a, b, Sign::Minus), k);
}

Count t_k(const GSet& p, unsigned k) {
  if (k != 1 && k != 2 && k != 4 && k != 8) throw ParameterError("t_k: k must be 1, 2, 4 or 8");
  if (p.empty()) return 0;
  if (k == 1) return p.size();
  return moment(convolve_power(CountFn::indicator(p), k), 2);
}

EnergyRecord self_energy_record(const GSet& a, unsigned k, const std::string& operand) {
  EnergyRecord rec;
  rec.name = "E" + std::to_string(k) + "+";
  rec.k = k;
  rec.operands = {operand, operand};
  rec.value = energy(a, a, k);
  const Count n = a.size();
  if (n > 0) {
    const Count lo = checked_pow(n, k);
    const Count hi = checked_mul(lo, n);
    if (rec.value < lo || rec.value > hi)
      throw Error("energy outside the trivial range [|A|^k, |A|^{k+1}] for " + operand);
  }
  return rec;
}

void write_energy_csv(std::ostream& os, const std::string& instance_id, const std::vector<EnergyRecord>& records,
                      bool header) {
  if (header) os << "schema_version,instance_id,name,k,value\n";
  for (const auto& r : records)
    os << 1 << ',' << instance_id << ',' << r.name << ',' << r.k << ',' << to_string(r.value) << '\n';
}

namespace {

// Row masks M_x, bit i set iff a_i - x is in A (a_i in A + x), for x in A - A.
std::vector<std::vector<std::uint64_t>> shift_masks(const GSet& a, const GSet& d) {
  const std::size_t n = a.size();
  const std::size_t words = (n + 63) / 64;
  std::vector<std::vector<std::uint64_t>> masks(d.size(), std::vector<std::uint64_t>(words, 0));
  const auto& ctx = a.ctx();
  for (std::size_t xi = 0; xi < d.size(); ++xi) {
    for (std::size_t i = 0; i < n; ++i) {
      if (a.contains(ctx.sub(a[i], d[xi]))) masks[xi][i >> 6] |= std::uint64_t{1} << (i & 63);
    }
  }
  return masks;
}

}  // namespace

IdentityPair quad_identity(const GSet& a, const Budget& budget) {
  const GSet d = diffset(a, a);
  const long double dd = static_cast<long double>(d.size());
  budget.require("quad_identity", dd * dd * dd * static_cast<long double>(a.size()));
  IdentityPair out;
  out.lhs = fourth_energy(a);
  if (a.empty()) return out;
  const auto masks = shift_masks(a, d);
  const std::size_t words = masks.front().size();
  std::vector<std::uint64_t> xy(words);
  Count total = 0;
  for (std::size_t x = 0; x < d.size(); ++x) {
    for (std::size_t y = 0; y < d.size(); ++y) {
      bool any = false;
      for (std::size_t w = 0; w < words; ++w) {
        xy[w] = masks[x][w] & masks[y][w];
        any = any || xy[w] != 0;
      }
      if (!any) continue;
      for (std::size_t z = 0; z < d.size(); ++z) {
        std::uint64_t c = 0;
        for (std::size_t w = 0; w < words; ++w) c += std::popcount(xy[w] & masks[z][w]);
        total += static_cast<Count>(c) * c;
      }
    }
  }
  out.rhs = total;
  return out;
}

IdentityPair lem1_identity(const GSet& a, const Budget& budget) {
  const GSet d = diffset(a, a);
  const long double n = static_cast<long double>(a.size());
  const long double dd = static_cast<long double>(d.size());
  budget.require("lem1_identity", n * n * n * n + dd * dd);
  IdentityPair out;
  out.lhs = fourth_energy(a);
  if (a.empty()) return out;

  std::vector<std::vector<Elem>> slices;
  slices.reserve(d.size());
  for (Elem x : d) slices.push_back(translate_intersect(a, x).vec());

  const auto& ctx = a.ctx();
  // Differences of two slices lie in A - A; count them on a dense array over
  // that span when it is small, else by sorting each slice pair.
  const bool dense = d.span() <= kBitmapSpanLimit;
  const Elem base = ctx.is_residues() ? 0 : d.min();
  std::vector<std::uint32_t> counts(dense ? d.span() : 0, 0);
  std::vector<std::size_t> touched;
  std::vector<Elem> scratch;

  Count total = 0;
  for (const auto& sx : slices) {
    for (const auto& sw : slices) {
      if (dense) {
        for (Elem u : sx) {
          for (Elem v : sw) {
            const auto idx = static_cast<std::size_t>(ctx.sub(u, v) - base);
            if (counts[idx]++ == 0) touched.push_back(idx);
          }
        }
        for (std::size_t idx : touched) {
          total += static_cast<Count>(counts[idx]) * counts[idx];
          counts[idx] = 0;
        }
        touched.clear();
      } else {
        scratch.clear();
        for (Elem u : sx)
          for (Elem v : sw) scratch.push_back(ctx.sub(u, v));
        std::sort(scratch.begin(), scratch.end());
        for (std::size_t i = 0; i < scratch.size();) {
          std::size_t j = i;
          while (j < scratch.size() && scratch[j] == scratch[i]) ++j;
          total += static_cast<Count>(j - i) * (j - i);
          i = j;
        }
      }
    }
  }
  out.rhs = total;
  return out;
}

IdentityPair cross_energy_identity(const GSet& a, const GSet& d) {
  require_same_ctx(a.ctx(), d.ctx(), "cross_energy_identity");
  IdentityPair out;
  out.lhs = energy(a, d, 2);
  if (a.empty() || d.empty()) return out;
  out.rhs = mixed_moment(repr(a, a, Sign::Minus), 1, repr(d, d, Sign::Minus), 1);
  return out;
}

}  // namespace addcomb
