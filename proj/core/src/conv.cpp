#include "addcomb/conv.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <unordered_map>

#include "addcomb/error.hpp"
#include "addcomb/ntt.hpp"

namespace addcomb {

namespace {

std::atomic<ConvPath> g_default_path{ConvPath::Auto};

void merge_sorted(std::vector<CountFn::Entry>& v) {
  std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::size_t out = 0;
  for (std::size_t i = 0; i < v.size();) {
    Elem key = v[i].first;
    Count sum = 0;
    for (; i < v.size() && v[i].first == key; ++i) sum = checked_add(sum, v[i].second);
    if (sum != 0) v[out++] = {key, sum};
  }
  v.resize(out);
}

// Span of the result support of f + g, or 0 if it does not fit in 64 bits.
std::uint64_t integer_result_span(const CountFn& f, const CountFn& g) {
  const SignedCount lo = static_cast<SignedCount>(f.entries().front().first) + g.entries().front().first;
  const SignedCount hi = static_cast<SignedCount>(f.entries().back().first) + g.entries().back().first;
  const SignedCount width = hi - lo + 1;
  if (width > static_cast<SignedCount>(ntt::kMaxLength) * 4) return 0;
  return static_cast<std::uint64_t>(width);
}

CountFn convolve_plus_naive(const CountFn& f, const CountFn& g) {
  const GroupCtx& ctx = f.ctx();
  const long double pairs = static_cast<long double>(f.support_size()) * g.support_size();
  const std::uint64_t dense_span =
      ctx.is_residues() ? static_cast<std::uint64_t>(ctx.modulus()) : integer_result_span(f, g);
  const bool dense =
      dense_span != 0 && dense_span <= kBitmapSpanLimit && static_cast<long double>(dense_span) <= 8.0L * pairs;
  if (dense) {
    const Elem offset = ctx.is_residues() ? 0 : ctx.add(f.entries().front().first, g.entries().front().first);
    std::vector<Count> acc(dense_span, 0);
    for (const auto& [x, fx] : f.entries()) {
      for (const auto& [y, gy] : g.entries()) {
        const Elem z = ctx.add(x, y);
        auto& slot = acc[static_cast<std::size_t>(z - offset)];
        slot = checked_add(slot, checked_mul(fx, gy));
      }
    }
    std::vector<CountFn::Entry> out;
    for (std::size_t i = 0; i < acc.size(); ++i) {
      if (acc[i] != 0) out.emplace_back(offset + static_cast<Elem>(i), acc[i]);
    }
    return CountFn::from_sorted(ctx, std::move(out));
  }
  if (pairs <= static_cast<long double>(1 << 22)) {
    std::vector<CountFn::Entry> out;
    out.reserve(static_cast<std::size_t>(pairs));
    for (const auto& [x, fx] : f.entries()) {
      for (const auto& [y, gy] : g.entries()) out.emplace_back(ctx.add(x, y), checked_mul(fx, gy));
    }
    merge_sorted(out);
    return CountFn::from_sorted(ctx, std::move(out));
  }
  // Too many pairs to hold at once: every x + g is a sorted run (two runs
  // when residues wrap), so merge the runs through a heap.
  struct Cursor {
    Elem key;
    std::size_t fi, gi, gend;
  };
  const auto ge = g.entries();
  auto later = [](const Cursor& a, const Cursor& b) { return a.key > b.key; };
  std::vector<Cursor> heap;
  heap.reserve(2 * f.support_size());
  for (std::size_t i = 0; i < f.support_size(); ++i) {
    const Elem x = f.entries()[i].first;
    std::size_t split = ge.size();
    if (ctx.is_residues()) {
      // First index where x + y wraps past the modulus.
      split = static_cast<std::size_t>(
          std::lower_bound(ge.begin(), ge.end(), ctx.modulus() - x, [](const auto& e, Elem v) { return e.first < v; }) -
          ge.begin());
    }
    if (split > 0) heap.push_back({ctx.add(x, ge[0].first), i, 0, split});
    if (split < ge.size()) heap.push_back({ctx.add(x, ge[split].first), i, split, ge.size()});
  }
  std::make_heap(heap.begin(), heap.end(), later);
  std::vector<CountFn::Entry> out;
  while (!heap.empty()) {
    std::pop_heap(heap.begin(), heap.end(), later);
    Cursor& c = heap.back();
    const Count v = checked_mul(f.entries()[c.fi].second, ge[c.gi].second);
    if (!out.empty() && out.back().first == c.key) {
      out.back().second = checked_add(out.back().second, v);
    } else {
      out.emplace_back(c.key, v);
    }
    if (++c.gi < c.gend) {
      c.key = ctx.add(f.entries()[c.fi].first, ge[c.gi].first);
      std::push_heap(heap.begin(), heap.end(), later);
    } else {
      heap.pop_back();
    }
  }
  return CountFn::from_sorted(ctx, std::move(out));
}

// Transform length needed by the fast path, or 0 if it is unavailable.
std::size_t fast_length(const CountFn& f, const CountFn& g) {
  const GroupCtx& ctx = f.ctx();
  std::uint64_t len;
  if (ctx.is_residues()) {
    len = 2 * static_cast<std::uint64_t>(ctx.modulus()) - 1;
  } else {
    const auto fs = static_cast<SignedCount>(f.entries().back().first) - f.entries().front().first + 1;
    const auto gs = static_cast<SignedCount>(g.entries().back().first) - g.entries().front().first + 1;
    if (fs + gs - 1 > static_cast<SignedCount>(ntt::kMaxLength)) return 0;
    len = static_cast<std::uint64_t>(fs + gs - 1);
  }
  if (len > ntt::kMaxLength) return 0;
  return std::bit_ceil(static_cast<std::size_t>(len));
}

// Upper bound on every output coefficient, or nullopt if it overflows.
std::optional<Count> coefficient_bound(const CountFn& f, const CountFn& g) {
  try {
    return std::min(checked_mul(f.mass(), g.max_value()), checked_mul(f.max_value(), g.mass()));
  } catch (const OverflowError&) {
    return std::nullopt;
  }
}

CountFn convolve_plus_fast(const CountFn& f, const CountFn& g, Count bound) {
  const GroupCtx& ctx = f.ctx();
  if (ctx.is_residues()) {
    const auto m = static_cast<std::size_t>(ctx.modulus());
    std::vector<Count> fa(m, 0), ga(m, 0);
    for (const auto& [x, v] : f.entries()) fa[static_cast<std::size_t>(x)] = v;
    for (const auto& [x, v] : g.entries()) ga[static_cast<std::size_t>(x)] = v;
    const auto lin = ntt::linear_convolve(fa, ga, bound);
    std::vector<CountFn::Entry> out;
    for (std::size_t i = 0; i < m; ++i) {
      // Folding only adds disjoint parts of one coefficient's support, so the
      // bound still covers it.
      const Count v = lin[i] + (i + m < lin.size() ? lin[i + m] : 0);
      if (v != 0) out.emplace_back(static_cast<Elem>(i), v);
    }
    return CountFn::from_sorted(ctx, std::move(out));
  }
  const Elem fmin = f.entries().front().first, gmin = g.entries().front().first;
  const auto fs = static_cast<std::size_t>(f.entries().back().first - fmin + 1);
  const auto gs = static_cast<std::size_t>(g.entries().back().first - gmin + 1);
  std::vector<Count> fa(fs, 0), ga(gs, 0);
  for (const auto& [x, v] : f.entries()) fa[static_cast<std::size_t>(x - fmin)] = v;
  for (const auto& [x, v] : g.entries()) ga[static_cast<std::size_t>(x - gmin)] = v;
  const auto lin = ntt::linear_convolve(fa, ga, bound);
  const Elem offset = ctx.add(fmin, gmin);
  ctx.add(f.entries().back().first, g.entries().back().first);
  std::vector<CountFn::Entry> out;
  for (std::size_t i = 0; i < lin.size(); ++i) {
    if (lin[i] != 0) out.emplace_back(offset + static_cast<Elem>(i), lin[i]);
  }
  return CountFn::from_sorted(ctx, std::move(out));
}

CountFn convolve_plus(const CountFn& f, const CountFn& g, ConvPath path) {
  require_same_ctx(f.ctx(), g.ctx(), "convolve");
  if (f.empty() || g.empty()) return CountFn(f.ctx());
  if (path == ConvPath::Auto) path = g_default_path.load(std::memory_order_relaxed);
  if (path == ConvPath::Naive) return convolve_plus_naive(f, g);

  const std::size_t len = fast_length(f, g);
  const auto bound = coefficient_bound(f, g);
  const bool certified = bound && *bound < ntt::crt_modulus();
  if (path == ConvPath::Fast) {
    if (len == 0) throw ParameterError("convolve: fast path unavailable (transform too long)");
    // An uncertifiable bound means the exact result may not fit the CRT
    // range; the naive path stays exact and reports true overflow.
    return certified ? convolve_plus_fast(f, g, *bound) : convolve_plus_naive(f, g);
  }
  if (len == 0 || !certified) return convolve_plus_naive(f, g);
  const long double pairs = static_cast<long double>(f.support_size()) * g.support_size();
  const long double fast_cost = 6.0L * len * std::bit_width(len);
  return 4.0L * pairs > fast_cost ? convolve_plus_fast(f, g, *bound) : convolve_plus_naive(f, g);
}

}  // namespace

long double convolution_work(const CountFn& f, const CountFn& g) {
  if (f.empty() || g.empty()) return 0;
  const long double pairs = static_cast<long double>(f.support_size()) * g.support_size();
  const long double sparse = pairs > static_cast<long double>(1 << 22) ? pairs * std::bit_width(f.support_size()) : pairs;
  const std::size_t len = fast_length(f, g);
  if (len == 0) return sparse;
  return std::min(sparse, 6.0L * len * std::bit_width(len));
}

// ---------------------------------------------------------------------------
// CountFn

CountFn::CountFn(GroupCtx ctx, std::vector<Entry> entries) : ctx_(ctx), entries_(std::move(entries)) {
  if (ctx_.is_residues()) {
    for (auto& e : entries_) e.first = ctx_.reduce(e.first);
  }
  merge_sorted(entries_);
}

CountFn CountFn::from_sorted(GroupCtx ctx, std::vector<Entry> entries) {
  CountFn f(ctx);
  f.entries_ = std::move(entries);
  return f;
}

CountFn CountFn::indicator(const GSet& s) {
  std::vector<Entry> e;
  e.reserve(s.size());
  for (Elem x : s) e.emplace_back(x, 1);
  return from_sorted(s.ctx(), std::move(e));
}

CountFn CountFn::delta(GroupCtx ctx, Elem x) { return CountFn(ctx, {{x, 1}}); }

Count CountFn::operator()(Elem x) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), x,
                             [](const Entry& e, Elem key) { return e.first < key; });
  return it != entries_.end() && it->first == x ? it->second : 0;
}

Count CountFn::mass() const {
  Count s = 0;
  for (const auto& e : entries_) s = checked_add(s, e.second);
  return s;
}

Count CountFn::max_value() const {
  Count m = 0;
  for (const auto& e : entries_) m = std::max(m, e.second);
  return m;
}

GSet CountFn::support() const {
  std::vector<Elem> s;
  s.reserve(entries_.size());
  for (const auto& e : entries_) s.push_back(e.first);
  return GSet::from_canonical(ctx_, std::move(s));
}

GSet CountFn::band(Count lo, Count hi) const {
  std::vector<Elem> s;
  for (const auto& [x, v] : entries_) {
    if (v >= lo && v < hi) s.push_back(x);
  }
  return GSet::from_canonical(ctx_, std::move(s));
}

CountFn CountFn::reflect() const {
  std::vector<Entry> e;
  e.reserve(entries_.size());
  for (const auto& [x, v] : entries_) e.emplace_back(ctx_.neg(x), v);
  return CountFn(ctx_, std::move(e));
}

bool CountFn::is_even() const { return *this == reflect(); }

// ---------------------------------------------------------------------------

void set_default_conv_path(ConvPath path) { g_default_path.store(path, std::memory_order_relaxed); }
ConvPath default_conv_path() { return g_default_path.load(std::memory_order_relaxed); }

CountFn convolve(const CountFn& f, const CountFn& g, Sign sign, ConvPath path) {
  if (sign == Sign::Plus) return convolve_plus(f, g, path);
  // (f o g)(x) = sum_z g(z) f(z - x) = (g * f~)(x) with f~(u) = f(-u).
  return convolve_plus(g, f.reflect(), path);
}

CountFn repr(const GSet& a, const GSet& b, Sign sign, ConvPath path) {
  require_same_ctx(a.ctx(), b.ctx(), "repr");
  const CountFn fa = CountFn::indicator(a);
  if (sign == Sign::Plus) return convolve_plus(fa, CountFn::indicator(b), path);
  return convolve_plus(fa, CountFn::indicator(negate(b)), path);
}

CountFn convolve_power(const CountFn& f, unsigned k, ConvPath path) {
  if (k == 0) throw ParameterError("convolve_power: k must be at least 1");
  CountFn result = f;
  CountFn base = f;
  bool have = false;
  while (k != 0) {
    if (k & 1) {
      result = have ? convolve_plus(result, base, path) : base;
      have = true;
    }
    k >>= 1;
    if (k != 0) base = convolve_plus(base, base, path);
  }
  return result;
}

Count moment(const CountFn& f, unsigned k) {
  if (k == 0) throw ParameterError("moment: k must be at least 1");
  Count s = 0;
  for (const auto& e : f.entries()) s = checked_add(s, checked_pow(e.second, k));
  return s;
}

BigInt moment_big(const CountFn& f, unsigned k) {
  if (k == 0) throw ParameterError("moment: k must be at least 1");
  BigInt s = 0;
  for (const auto& e : f.entries()) s += boost::multiprecision::pow(to_big(e.second), k);
  return s;
}

namespace {

template <class Acc, class Visit>
void merge_visit(const CountFn& f, const CountFn& g, Visit&& visit) {
  auto fi = f.entries().begin(), fe = f.entries().end();
  auto gi = g.entries().begin(), ge = g.entries().end();
  while (fi != fe && gi != ge) {
    if (fi->first < gi->first) {
      ++fi;
    } else if (gi->first < fi->first) {
      ++gi;
    } else {
      visit(fi->second, gi->second);
      ++fi;
      ++gi;
    }
  }
}

}  // namespace

Count mixed_moment(const CountFn& f, unsigned j, const CountFn& g, unsigned k) {
  require_same_ctx(f.ctx(), g.ctx(), "mixed_moment");
  Count s = 0;
  merge_visit<Count>(f, g, [&](Count a, Count b) {
    s = checked_add(s, checked_mul(checked_pow(a, j), checked_pow(b, k)));
  });
  return s;
}

BigInt mixed_moment_big(const CountFn& f, unsigned j, const CountFn& g, unsigned k) {
  require_same_ctx(f.ctx(), g.ctx(), "mixed_moment");
  BigInt s = 0;
  merge_visit<BigInt>(f, g, [&](Count a, Count b) {
    s += boost::multiprecision::pow(to_big(a), j) * boost::multiprecision::pow(to_big(b), k);
  });
  return s;
}

Count restricted_mass(const CountFn& f, const GSet& s) {
  require_same_ctx(f.ctx(), s.ctx(), "restricted_mass");
  return mixed_moment(f, 1, CountFn::indicator(s), 1);
}

}  // namespace addcomb
