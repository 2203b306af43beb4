#include "addcomb/group.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <mutex>
#include <numeric>
#include <sstream>

#include "addcomb/error.hpp"

namespace addcomb {

namespace {

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<Count>(a) * b % m);
}

std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e != 0) {
    if (e & 1) r = mulmod_u64(r, a, m);
    a = mulmod_u64(a, a, m);
    e >>= 1;
  }
  return r;
}

}  // namespace

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // These twelve bases are a proven deterministic witness set below 2^64.
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = powmod_u64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod_u64(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// GroupCtx

GroupCtx GroupCtx::residues(Elem modulus) {
  if (modulus < 2) {
    throw ContextError("residue modulus must be at least 2, got " + std::to_string(modulus));
  }
  return GroupCtx(GroupKind::Residues, modulus, is_prime_u64(static_cast<std::uint64_t>(modulus)));
}

GroupCtx make_ctx(GroupKind kind, std::optional<Elem> modulus) {
  if (kind == GroupKind::Integers) {
    if (modulus) throw ContextError("integer context takes no modulus");
    return GroupCtx::integers();
  }
  if (!modulus) throw ContextError("residue context requires a modulus");
  return GroupCtx::residues(*modulus);
}

void require_same_ctx(const GroupCtx& a, const GroupCtx& b, const char* op) {
  if (!(a == b)) {
    throw ContextError(std::string(op) + ": mismatched contexts " + a.describe() + " vs " + b.describe());
  }
}

Elem GroupCtx::reduce(SignedCount x) const {
  if (is_residues()) {
    if (x >= std::numeric_limits<Elem>::min() && x <= std::numeric_limits<Elem>::max()) {
      Elem r = static_cast<Elem>(x) % modulus_;
      return r < 0 ? r + modulus_ : r;
    }
    SignedCount r = x % modulus_;
    if (r < 0) r += modulus_;
    return static_cast<Elem>(r);
  }
  if (x > std::numeric_limits<Elem>::max() || x < std::numeric_limits<Elem>::min()) {
    throw OverflowError("integer element out of 64-bit range: " + to_string(x));
  }
  return static_cast<Elem>(x);
}

Elem GroupCtx::add(Elem a, Elem b) const {
  if (is_residues() && modulus_ <= (Elem{1} << 62) && is_canonical(a) && is_canonical(b)) {
    const Elem s = a + b;
    return s >= modulus_ ? s - modulus_ : s;
  }
  if (is_residues()) return reduce(static_cast<SignedCount>(a) + b);
  Elem r;
  if (__builtin_add_overflow(a, b, &r)) {
    throw OverflowError("integer overflow: " + std::to_string(a) + " + " + std::to_string(b));
  }
  return r;
}

Elem GroupCtx::sub(Elem a, Elem b) const {
  if (is_residues() && modulus_ <= (Elem{1} << 62) && is_canonical(a) && is_canonical(b)) {
    const Elem d = a - b;
    return d < 0 ? d + modulus_ : d;
  }
  if (is_residues()) return reduce(static_cast<SignedCount>(a) - b);
  Elem r;
  if (__builtin_sub_overflow(a, b, &r)) {
    throw OverflowError("integer overflow: " + std::to_string(a) + " - " + std::to_string(b));
  }
  return r;
}

Elem GroupCtx::neg(Elem a) const { return sub(0, a); }

Elem GroupCtx::mul(Elem a, Elem b) const {
  if (is_residues()) return reduce(static_cast<SignedCount>(a) * b);
  Elem r;
  if (__builtin_mul_overflow(a, b, &r)) {
    throw OverflowError("integer overflow: " + std::to_string(a) + " * " + std::to_string(b));
  }
  return r;
}

Elem GroupCtx::inv(Elem a) const {
  if (!is_field()) throw FieldRequiredError("inverse requires a prime residue context, got " + describe());
  a = reduce(a);
  if (a == 0) throw DomainError("division by zero in " + describe());
  // Extended Euclid on (a, m).
  SignedCount r0 = modulus_, r1 = a, t0 = 0, t1 = 1;
  while (r1 != 0) {
    SignedCount q = r0 / r1;
    SignedCount r2 = r0 - q * r1;
    r0 = r1;
    r1 = r2;
    SignedCount t2 = t0 - q * t1;
    t0 = t1;
    t1 = t2;
  }
  return reduce(t0);
}

Elem GroupCtx::pow(Elem a, std::uint64_t e) const {
  Elem r = is_residues() ? reduce(1) : 1;
  Elem base = is_residues() ? reduce(a) : a;
  while (e != 0) {
    if (e & 1) r = mul(r, base);
    e >>= 1;
    if (e != 0) base = mul(base, base);
  }
  return r;
}

std::string GroupCtx::describe() const {
  if (is_integers()) return "Z";
  return "Z/" + std::to_string(modulus_) + "Z" + (is_prime_ ? " (prime)" : "");
}

// ---------------------------------------------------------------------------
// Bitmap

std::size_t Bitmap::popcount() const {
  std::size_t n = 0;
  for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

std::vector<Elem> Bitmap::to_elements() const {
  std::vector<Elem> out;
  for (std::size_t wi = 0; wi < words_.size(); ++wi) {
    std::uint64_t w = words_[wi];
    while (w != 0) {
      int b = std::countr_zero(w);
      std::size_t i = wi * 64 + static_cast<std::size_t>(b);
      if (i >= nbits_) break;
      out.push_back(offset_ + static_cast<Elem>(i));
      w &= w - 1;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// GSet

GSet::GSet(GroupCtx ctx, std::vector<Elem> elements)
    : ctx_(ctx), elements_(std::move(elements)), cache_(std::make_shared<Cache>()) {
  if (ctx_.is_residues()) {
    for (auto& x : elements_) x = ctx_.reduce(x);
  }
  std::sort(elements_.begin(), elements_.end());
  elements_.erase(std::unique(elements_.begin(), elements_.end()), elements_.end());
}

GSet GSet::from_canonical(GroupCtx ctx, std::vector<Elem> elements) {
  GSet s(ctx);
  s.elements_ = std::move(elements);
  return s;
}

bool GSet::contains(Elem x) const {
  // Dense sets answer from the bitmap; sparse ones keep to the sorted list.
  if (!elements_.empty() && has_bitmap() && span() <= 64 * elements_.size() + 4096) return bitmap()->test(x);
  return std::binary_search(elements_.begin(), elements_.end(), x);
}

std::optional<std::size_t> GSet::index_of(Elem x) const {
  auto it = std::lower_bound(elements_.begin(), elements_.end(), x);
  if (it == elements_.end() || *it != x) return std::nullopt;
  return static_cast<std::size_t>(it - elements_.begin());
}

std::uint64_t GSet::span() const {
  if (ctx_.is_residues()) return static_cast<std::uint64_t>(ctx_.modulus());
  if (elements_.empty()) return 0;
  const Count width = static_cast<Count>(static_cast<SignedCount>(max()) - min()) + 1;
  return width > std::numeric_limits<std::uint64_t>::max() ? std::numeric_limits<std::uint64_t>::max()
                                                           : static_cast<std::uint64_t>(width);
}

const Bitmap* GSet::bitmap() const {
  if (!has_bitmap()) return nullptr;
  std::call_once(cache_->once, [this] {
    Elem offset = ctx_.is_residues() ? 0 : (elements_.empty() ? 0 : min());
    auto bm = std::make_unique<Bitmap>(offset, static_cast<std::size_t>(span()));
    for (Elem x : elements_) bm->set_index(static_cast<std::size_t>(x - offset));
    cache_->bitmap = std::move(bm);
  });
  return cache_->bitmap.get();
}

std::string GSet::describe(std::size_t max_items) const {
  std::ostringstream os;
  os << "{";
  for (std::size_t i = 0; i < elements_.size() && i < max_items; ++i) {
    if (i) os << ",";
    os << elements_[i];
  }
  if (elements_.size() > max_items) os << ",... (" << elements_.size() << " total)";
  os << "} in " << ctx_.describe();
  return os.str();
}

// ---------------------------------------------------------------------------
// Set arithmetic

namespace {

GSet from_unsorted(const GroupCtx& ctx, std::vector<Elem> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return GSet::from_canonical(ctx, std::move(v));
}

// dst |= src << shift, both little-endian word arrays.
void or_shifted(std::span<std::uint64_t> dst, std::span<const std::uint64_t> src, std::size_t shift) {
  const std::size_t wshift = shift >> 6;
  const unsigned bshift = static_cast<unsigned>(shift & 63);
  for (std::size_t i = 0; i < src.size(); ++i) {
    const std::uint64_t w = src[i];
    if (w == 0) continue;
    dst[i + wshift] |= w << bshift;
    if (bshift != 0) dst[i + wshift + 1] |= w >> (64 - bshift);
  }
}

GSet sumset_list(const GSet& a, const GSet& b) {
  const GroupCtx& ctx = a.ctx();
  std::vector<Elem> out;
  out.reserve(a.size() * b.size());
  for (Elem x : a) {
    for (Elem y : b) out.push_back(ctx.add(x, y));
  }
  return from_unsorted(ctx, std::move(out));
}

bool sumset_bitmap_available(const GSet& a, const GSet& b) {
  if (!a.has_bitmap() || !b.has_bitmap()) return false;
  if (a.ctx().is_residues()) return true;
  return a.span() + b.span() <= 2 * kBitmapSpanLimit;
}

GSet sumset_bitmap(const GSet& a, const GSet& b) {
  const GroupCtx& ctx = a.ctx();
  // Shift the larger set's bitmap once per element of the smaller one.
  const GSet& small = a.size() <= b.size() ? a : b;
  const GSet& large = a.size() <= b.size() ? b : a;
  const Bitmap* lb = large.bitmap();
  if (ctx.is_residues()) {
    const auto m = static_cast<std::size_t>(ctx.modulus());
    Bitmap lin(0, 2 * m + 128);
    for (Elem s : small) or_shifted(lin.words(), lb->words(), static_cast<std::size_t>(s));
    Bitmap folded(0, m);
    for (std::size_t i = 0; i < 2 * m - 1; ++i) {
      if (lin.test_index(i)) folded.set_index(i < m ? i : i - m);
    }
    return GSet::from_canonical(ctx, folded.to_elements());
  }
  // Integers: result lives in [min_s + min_l, max_s + max_l]; adds are checked.
  const Elem lo = ctx.add(small.min(), large.min());
  ctx.add(small.max(), large.max());
  const std::size_t nbits = static_cast<std::size_t>(small.span() + large.span() - 1);
  Bitmap out(lo, nbits + 128);
  for (Elem s : small) or_shifted(out.words(), lb->words(), static_cast<std::size_t>(s - small.min()));
  std::vector<Elem> elems;
  for (Elem x : out.to_elements()) {
    if (static_cast<std::uint64_t>(x - lo) < nbits) elems.push_back(x);
  }
  return GSet::from_canonical(ctx, std::move(elems));
}

bool prefer_bitmap(const GSet& a, const GSet& b) {
  const long double pairs = static_cast<long double>(a.size()) * b.size();
  const long double words = static_cast<long double>(std::max(a.span(), b.span())) / 64.0L;
  return pairs > 4.0L * std::min(a.size(), b.size()) * words;
}

GSet prodset_list(const GSet& a, const GSet& b) {
  const GroupCtx& ctx = a.ctx();
  std::vector<Elem> out;
  out.reserve(a.size() * b.size());
  for (Elem x : a) {
    for (Elem y : b) out.push_back(ctx.mul(x, y));
  }
  return from_unsorted(ctx, std::move(out));
}

GSet prodset_bitmap(const GSet& a, const GSet& b) {
  const GroupCtx& ctx = a.ctx();
  if (ctx.is_residues()) {
    Bitmap out(0, static_cast<std::size_t>(ctx.modulus()));
    for (Elem x : a) {
      for (Elem y : b) out.set_index(static_cast<std::size_t>(ctx.mul(x, y)));
    }
    return GSet::from_canonical(ctx, out.to_elements());
  }
  Elem lo = std::numeric_limits<Elem>::max(), hi = std::numeric_limits<Elem>::min();
  for (Elem x : {a.min(), a.max()}) {
    for (Elem y : {b.min(), b.max()}) {
      Elem p = ctx.mul(x, y);
      lo = std::min(lo, p);
      hi = std::max(hi, p);
    }
  }
  const auto span = static_cast<std::uint64_t>(static_cast<SignedCount>(hi) - lo) + 1;
  if (span > 2 * kBitmapSpanLimit) throw ParameterError("prodset: bitmap path unavailable for this span");
  Bitmap out(lo, static_cast<std::size_t>(span));
  for (Elem x : a) {
    for (Elem y : b) out.set_index(static_cast<std::size_t>(ctx.mul(x, y) - lo));
  }
  return GSet::from_canonical(ctx, out.to_elements());
}

bool prodset_bitmap_available(const GSet& a, const GSet& b) {
  if (a.ctx().is_residues()) return a.has_bitmap();
  try {
    const GroupCtx& ctx = a.ctx();
    Elem lo = std::numeric_limits<Elem>::max(), hi = std::numeric_limits<Elem>::min();
    for (Elem x : {a.min(), a.max()}) {
      for (Elem y : {b.min(), b.max()}) {
        Elem p = ctx.mul(x, y);
        lo = std::min(lo, p);
        hi = std::max(hi, p);
      }
    }
    return static_cast<std::uint64_t>(static_cast<SignedCount>(hi) - lo) + 1 <= 2 * kBitmapSpanLimit;
  } catch (const OverflowError&) {
    return false;
  }
}

}  // namespace

GSet sumset(const GSet& a, const GSet& b, SetPath path) {
  require_same_ctx(a.ctx(), b.ctx(), "sumset");
  if (a.empty() || b.empty()) return GSet(a.ctx());
  switch (path) {
    case SetPath::List:
      return sumset_list(a, b);
    case SetPath::Bitmap:
      if (!sumset_bitmap_available(a, b)) throw ParameterError("sumset: bitmap path unavailable for this span");
      return sumset_bitmap(a, b);
    case SetPath::Auto:
      break;
  }
  if (sumset_bitmap_available(a, b) && prefer_bitmap(a, b)) return sumset_bitmap(a, b);
  return sumset_list(a, b);
}

GSet diffset(const GSet& a, const GSet& b, SetPath path) {
  require_same_ctx(a.ctx(), b.ctx(), "diffset");
  if (a.empty() || b.empty()) return GSet(a.ctx());
  if (path == SetPath::List) {
    const GroupCtx& ctx = a.ctx();
    std::vector<Elem> out;
    out.reserve(a.size() * b.size());
    for (Elem x : a) {
      for (Elem y : b) out.push_back(ctx.sub(x, y));
    }
    return from_unsorted(ctx, std::move(out));
  }
  return sumset(a, negate(b), path);
}

GSet prodset(const GSet& a, const GSet& b, SetPath path) {
  require_same_ctx(a.ctx(), b.ctx(), "prodset");
  if (a.empty() || b.empty()) return GSet(a.ctx());
  switch (path) {
    case SetPath::List:
      return prodset_list(a, b);
    case SetPath::Bitmap:
      if (!prodset_bitmap_available(a, b)) throw ParameterError("prodset: bitmap path unavailable for this span");
      return prodset_bitmap(a, b);
    case SetPath::Auto:
      break;
  }
  if (a.size() * b.size() > 4096 && prodset_bitmap_available(a, b)) return prodset_bitmap(a, b);
  return prodset_list(a, b);
}

GSet ratioset(const GSet& a, const GSet& b, SetPath path) {
  require_same_ctx(a.ctx(), b.ctx(), "ratioset");
  const GroupCtx& ctx = a.ctx();
  if (!ctx.is_field()) throw FieldRequiredError("ratioset requires a prime residue context, got " + ctx.describe());
  if (b.contains(0)) throw DomainError("ratioset: divisor set contains 0");
  std::vector<Elem> inv;
  inv.reserve(b.size());
  for (Elem y : b) inv.push_back(ctx.inv(y));
  return prodset(a, GSet(ctx, std::move(inv)), path);
}

GSet negate(const GSet& a) {
  std::vector<Elem> out;
  out.reserve(a.size());
  for (Elem x : a) out.push_back(a.ctx().neg(x));
  return from_unsorted(a.ctx(), std::move(out));
}

GSet translate(const GSet& a, Elem x) {
  std::vector<Elem> out;
  out.reserve(a.size());
  for (Elem y : a) out.push_back(a.ctx().add(y, x));
  if (a.ctx().is_integers()) return GSet::from_canonical(a.ctx(), std::move(out));
  // A cyclic shift of a sorted residue list is sorted after one rotation.
  auto it = std::min_element(out.begin(), out.end());
  std::rotate(out.begin(), it, out.end());
  return GSet::from_canonical(a.ctx(), std::move(out));
}

GSet dilate(const GSet& a, Elem lambda) {
  std::vector<Elem> out;
  out.reserve(a.size());
  for (Elem y : a) out.push_back(a.ctx().mul(y, lambda));
  return from_unsorted(a.ctx(), std::move(out));
}

GSet set_union(const GSet& a, const GSet& b) {
  require_same_ctx(a.ctx(), b.ctx(), "set_union");
  std::vector<Elem> out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return GSet::from_canonical(a.ctx(), std::move(out));
}

GSet set_intersection(const GSet& a, const GSet& b) {
  require_same_ctx(a.ctx(), b.ctx(), "set_intersection");
  std::vector<Elem> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return GSet::from_canonical(a.ctx(), std::move(out));
}

GSet set_difference(const GSet& a, const GSet& b) {
  require_same_ctx(a.ctx(), b.ctx(), "set_difference");
  std::vector<Elem> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return GSet::from_canonical(a.ctx(), std::move(out));
}

bool is_subset(const GSet& a, const GSet& b) {
  require_same_ctx(a.ctx(), b.ctx(), "is_subset");
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

GSet translate_intersect(const GSet& a, Elem x) {
  if (!a.ctx().is_canonical(x)) throw DomainError("translate_intersect: element not canonical in " + a.ctx().describe());
  return set_intersection(a, translate(a, x));
}

bool is_arithmetic_progression(const GSet& a) {
  if (a.size() <= 2) return true;
  if (a.ctx().is_integers()) {
    const Elem d = a[1] - a[0];
    for (std::size_t i = 2; i < a.size(); ++i) {
      if (a[i] - a[i - 1] != d) return false;
    }
    return true;
  }
  // Residues: some step d = a - a_0 must map A onto itself minus one element
  // (or onto itself when A is a coset of <d>).
  for (std::size_t i = 1; i < a.size(); ++i) {
    const Elem d = a.ctx().sub(a[i], a[0]);
    const std::size_t overlap = set_intersection(a, translate(a, d)).size();
    if (overlap + 1 >= a.size()) return true;
  }
  return false;
}

}  // namespace addcomb
