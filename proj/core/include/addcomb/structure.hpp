#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "addcomb/conv.hpp"
#include "addcomb/group.hpp"
#include "addcomb/types.hpp"

namespace addcomb {

// E_4^+(A, B) / (|A| |B|^3). Throws ParameterError for empty B.
Rational d4_ratio(const GSet& a, const GSet& b);

enum class D4Method { ExactSmall, FamilySearch };
const char* d4_method_name(D4Method m);

// A lower bound for d_4^+(A) together with the set attaining it.
struct D4Estimate {
  Rational lower_bound;
  GSet witness;
  D4Method method = D4Method::FamilySearch;
  bool exact = false;
  std::size_t candidates = 0;
};

inline constexpr std::size_t kD4UniverseLimit = 20;

// Max of d4_ratio over nonempty B ⊆ universe with |B| <= ceil(|A|^{3/2}).
// Ties go to the lexicographically smallest element list.
D4Estimate d4_exact_small(const GSet& a, const GSet& universe);

// A, -A, A ∪ (A + x) for the most popular differences x, the interval and
// the progression spanned by A, and the dyadic level sets of r_{A-A}.
// Candidates larger than `max_candidate_size` are left out.
std::vector<GSet> default_d4_candidates(const GSet& a, std::size_t max_candidate_size = 1 << 16);

// Best ratio over B = A and the given candidates; always a lower bound.
D4Estimate d4_family_search(const GSet& a, const std::vector<GSet>& candidates, const Budget& budget = {});

struct DyadicLevel {
  Count tau = 1;
  GSet members;  // {x : tau <= r(x) < 2 tau}
  Count fourth_moment = 0;  // sum of r(x)^4 over members
};

struct DyadicDecomposition {
  Sign sign = Sign::Minus;
  std::size_t size_a = 0;
  std::size_t size_b = 0;
  std::vector<DyadicLevel> levels;  // nonempty levels, increasing tau
  std::size_t argmax = 0;  // index maximising |D_tau| tau^4
  Count total_fourth_moment = 0;
  unsigned log_factor = 1;  // ceil(log2(min(|A|, |B|)) + 1)

  const DyadicLevel& top() const { return levels.at(argmax); }
};

// Dyadic pieces of an arbitrary count function; log_factor counts possible levels.
DyadicDecomposition dyadic_levels(const CountFn& r);

// Dyadic pieces of r_{A+B} or r_{A-B}. Checks the level invariants and the
// explicit-constant bounds E <= sum |D_tau| (2 tau)^4 <= top * log_factor.
DyadicDecomposition dyadic_decompose(const GSet& a, const GSet& b, Sign sign);

struct PopularSet {
  GSet members;
  Rational threshold;
  Sign sign = Sign::Plus;
  Count mass = 0;
};

// {x : r_{A±A}(x) >= c |A|^2 / |A±A|}. For c <= 1 the mass is at least (1-c)|A|^2.
PopularSet popular_set(const GSet& a, Sign sign, const Rational& c = Rational(1, 2));

// ceil(log2(n)) + 1 for n >= 1.
unsigned dyadic_log_factor(std::uint64_t n);

}  // namespace addcomb
