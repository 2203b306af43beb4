#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "addcomb/types.hpp"

namespace addcomb {

enum class GroupKind { Integers, Residues };

// Deterministic Miller-Rabin, exact for every 64-bit input.
bool is_prime_u64(std::uint64_t n);

// Ambient group: the integers, or Z/mZ. Element arithmetic is exact; integer
// overflow raises OverflowError rather than wrapping.
class GroupCtx {
 public:
  static GroupCtx integers() { return GroupCtx(GroupKind::Integers, 0, false); }
  // Throws ContextError when modulus < 2.
  static GroupCtx residues(Elem modulus);

  GroupKind kind() const { return kind_; }
  bool is_integers() const { return kind_ == GroupKind::Integers; }
  bool is_residues() const { return kind_ == GroupKind::Residues; }
  // Zero for the integers.
  Elem modulus() const { return modulus_; }
  bool is_prime() const { return is_prime_; }
  bool is_field() const { return is_residues() && is_prime_; }

  bool is_canonical(Elem x) const { return is_integers() || (x >= 0 && x < modulus_); }
  // Reduces into [0, m) for residues; range-checks for the integers.
  Elem reduce(SignedCount x) const;

  Elem add(Elem a, Elem b) const;
  Elem sub(Elem a, Elem b) const;
  Elem neg(Elem a) const;
  Elem mul(Elem a, Elem b) const;
  // Multiplicative inverse; requires a prime modulus and a != 0.
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, std::uint64_t e) const;

  std::string describe() const;

  bool operator==(const GroupCtx&) const = default;

 private:
  GroupCtx(GroupKind kind, Elem modulus, bool is_prime)
      : kind_(kind), modulus_(modulus), is_prime_(is_prime) {}

  GroupKind kind_;
  Elem modulus_;
  bool is_prime_;
};

GroupCtx make_ctx(GroupKind kind, std::optional<Elem> modulus = std::nullopt);

// Throws ContextError unless both contexts are equal.
void require_same_ctx(const GroupCtx& a, const GroupCtx& b, const char* op);

// Dense membership bitmap over [offset, offset + nbits).
class Bitmap {
 public:
  Bitmap(Elem offset, std::size_t nbits)
      : offset_(offset), nbits_(nbits), words_((nbits + 63) / 64, 0) {}

  Elem offset() const { return offset_; }
  std::size_t nbits() const { return nbits_; }
  bool test(Elem x) const {
    if (x < offset_) return false;
    auto i = static_cast<std::uint64_t>(x - offset_);
    return i < nbits_ && ((words_[i >> 6] >> (i & 63)) & 1U);
  }
  void set_index(std::size_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  bool test_index(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1U; }
  std::span<std::uint64_t> words() { return words_; }
  std::span<const std::uint64_t> words() const { return words_; }
  std::size_t popcount() const;
  // Elements offset + i for every set bit i, increasing.
  std::vector<Elem> to_elements() const;

 private:
  Elem offset_;
  std::size_t nbits_;
  std::vector<std::uint64_t> words_;
};

// Largest span (group order or bounding interval) for which a set carries a
// dense bitmap next to its sorted element list.
inline constexpr std::uint64_t kBitmapSpanLimit = std::uint64_t{1} << 22;

// Finite subset of a group in canonical form: strictly increasing list of
// canonical representatives. Immutable; copies share the lazily built bitmap.
class GSet {
 public:
  GSet() : GSet(GroupCtx::integers()) {}
  explicit GSet(GroupCtx ctx) : ctx_(ctx), cache_(std::make_shared<Cache>()) {}
  // Reduces (residues), sorts and deduplicates.
  GSet(GroupCtx ctx, std::vector<Elem> elements);
  // Caller guarantees `elements` is already canonical.
  static GSet from_canonical(GroupCtx ctx, std::vector<Elem> elements);

  const GroupCtx& ctx() const { return ctx_; }
  std::span<const Elem> elements() const { return elements_; }
  const std::vector<Elem>& vec() const { return elements_; }
  std::size_t size() const { return elements_.size(); }
  bool empty() const { return elements_.empty(); }
  Elem min() const { return elements_.front(); }
  Elem max() const { return elements_.back(); }
  Elem operator[](std::size_t i) const { return elements_[i]; }
  auto begin() const { return elements_.begin(); }
  auto end() const { return elements_.end(); }

  bool contains(Elem x) const;
  // Index of x in the element list, if present.
  std::optional<std::size_t> index_of(Elem x) const;

  // Span the bitmap would cover: the modulus, or max - min + 1.
  std::uint64_t span() const;
  bool has_bitmap() const { return span() <= kBitmapSpanLimit; }
  // nullptr when the span is over kBitmapSpanLimit. Thread-safe.
  const Bitmap* bitmap() const;

  bool operator==(const GSet& other) const {
    return ctx_ == other.ctx_ && elements_ == other.elements_;
  }

  std::string describe(std::size_t max_items = 16) const;

 private:
  struct Cache {
    std::once_flag once;
    std::unique_ptr<Bitmap> bitmap;
  };

  GroupCtx ctx_;
  std::vector<Elem> elements_;
  std::shared_ptr<Cache> cache_;
};

// Which internal representation set arithmetic runs on. Both paths must
// produce identical results; Bitmap throws ParameterError if unavailable.
enum class SetPath { Auto, List, Bitmap };

GSet sumset(const GSet& a, const GSet& b, SetPath path = SetPath::Auto);
GSet diffset(const GSet& a, const GSet& b, SetPath path = SetPath::Auto);
inline GSet signed_sumset(const GSet& a, const GSet& b, Sign s, SetPath path = SetPath::Auto) {
  return s == Sign::Plus ? sumset(a, b, path) : diffset(a, b, path);
}
GSet prodset(const GSet& a, const GSet& b, SetPath path = SetPath::Auto);
// {a / b}. Throws DomainError if 0 is in b, FieldRequiredError outside F_p.
GSet ratioset(const GSet& a, const GSet& b, SetPath path = SetPath::Auto);

GSet negate(const GSet& a);
GSet translate(const GSet& a, Elem x);
GSet dilate(const GSet& a, Elem lambda);
GSet set_union(const GSet& a, const GSet& b);
GSet set_intersection(const GSet& a, const GSet& b);
GSet set_difference(const GSet& a, const GSet& b);
bool is_subset(const GSet& a, const GSet& b);

// A_x = A ∩ (A + x); |A_x| = r_{A-A}(x).
GSet translate_intersect(const GSet& a, Elem x);

bool is_arithmetic_progression(const GSet& a);

}  // namespace addcomb
