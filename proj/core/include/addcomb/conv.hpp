#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "addcomb/group.hpp"
#include "addcomb/types.hpp"

namespace addcomb {

// Finite-support function G -> N. Stored as (element, value) pairs sorted by
// element with every value strictly positive.
class CountFn {
 public:
  using Entry = std::pair<Elem, Count>;

  explicit CountFn(GroupCtx ctx) : ctx_(ctx) {}
  // Reduces keys, merges duplicate keys by summing, drops zero values.
  CountFn(GroupCtx ctx, std::vector<Entry> entries);
  static CountFn from_sorted(GroupCtx ctx, std::vector<Entry> entries);
  static CountFn indicator(const GSet& s);
  static CountFn delta(GroupCtx ctx, Elem x = 0);

  const GroupCtx& ctx() const { return ctx_; }
  std::span<const Entry> entries() const { return entries_; }
  std::size_t support_size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  // f(x); zero off the support.
  Count operator()(Elem x) const;
  Count mass() const;
  Count max_value() const;
  GSet support() const;
  // {x : lo <= f(x) < hi}.
  GSet band(Count lo, Count hi) const;
  // x -> f(-x).
  CountFn reflect() const;
  bool is_even() const;

  bool operator==(const CountFn& other) const {
    return ctx_ == other.ctx_ && entries_ == other.entries_;
  }

 private:
  GroupCtx ctx_;
  std::vector<Entry> entries_;
};

// Naive is the O(|supp f| |supp g|) pair loop; Fast uses exact NTT
// convolution (cyclic for residues, interval embedding for the integers).
// Auto picks by cost, and honours the process-wide default set below.
enum class ConvPath { Auto, Naive, Fast };

// Process-wide override applied when a caller passes ConvPath::Auto.
// Setting Naive forces every convolution onto the oracle path.
void set_default_conv_path(ConvPath path);
ConvPath default_conv_path();

// Plus: (f * g)(x) = sum_y f(y) g(x - y).
// Minus: (f o g)(x) = sum_y f(y) g(x + y).
CountFn convolve(const CountFn& f, const CountFn& g, Sign sign, ConvPath path = ConvPath::Auto);
// Rough step count of convolve(f, g, ·) on the cheaper path, for budgets.
long double convolution_work(const CountFn& f, const CountFn& g);

// r_{A+B} or r_{A-B}: r_{A-B}(x) = #{(a, b) : a - b = x}.
CountFn repr(const GSet& a, const GSet& b, Sign sign, ConvPath path = ConvPath::Auto);

// f * f * ... * f (k copies), k >= 1.
CountFn convolve_power(const CountFn& f, unsigned k, ConvPath path = ConvPath::Auto);

// sum_x f(x)^k, exact; OverflowError past 128 bits.
Count moment(const CountFn& f, unsigned k);
BigInt moment_big(const CountFn& f, unsigned k);
// sum_x f(x)^j g(x)^k.
Count mixed_moment(const CountFn& f, unsigned j, const CountFn& g, unsigned k);
BigInt mixed_moment_big(const CountFn& f, unsigned j, const CountFn& g, unsigned k);

// sum_{x in S} f(x).
Count restricted_mass(const CountFn& f, const GSet& s);

}  // namespace addcomb
