#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "addcomb/group.hpp"
#include "addcomb/report.hpp"
#include "addcomb/types.hpp"

namespace addcomb {

// y = slope * x + intercept, or the vertical line x = intercept.
struct Line {
  Elem slope = 0;
  Elem intercept = 0;
  bool vertical = false;

  static Line affine(Elem slope, Elem intercept) { return {slope, intercept, false}; }
  static Line vertical_at(Elem x) { return {0, x, true}; }
  auto operator<=>(const Line&) const = default;
};

// Deduplicated lines over F_p; `tuples` keeps the count before deduplication.
class LineSet {
 public:
  explicit LineSet(GroupCtx ctx) : LineSet(ctx, {}) {}
  // Throws FieldRequiredError unless ctx is a prime residue ring.
  LineSet(GroupCtx ctx, std::vector<Line> lines);
  // Lines y = r x + r b for r in R (0 skipped), b in B: the lines v = u / r - b
  // written with the point coordinates swapped.
  static LineSet from_pairs(const GSet& r, const GSet& b);

  const GroupCtx& ctx() const { return ctx_; }
  const std::vector<Line>& lines() const { return lines_; }
  std::size_t size() const { return lines_.size(); }
  std::size_t tuples() const { return tuples_; }

 private:
  GroupCtx ctx_;
  std::vector<Line> lines_;
  std::size_t tuples_ = 0;
};

enum class IncidencePath { Fast, Oracle };

// #{((x, y), l) : x in A, y in B, (x, y) on l}.
Count count_incidences(const GSet& a, const GSet& b, const LineSet& lines, IncidencePath path = IncidencePath::Fast);

struct SzTerms {
  // |A|^{3/4} |B|^{1/2} |L|^{3/4}, |L|, |A||B|, |A||B||L| / p.
  std::array<long double, 4> terms{};
  long double total() const { return terms[0] + terms[1] + terms[2] + terms[3]; }
  std::size_t dominant() const;
};

const char* sz_term_name(std::size_t i);

SzTerms sz_terms(std::size_t na, std::size_t nb, std::size_t nl, std::uint64_t p);
long double sz_bound(std::size_t na, std::size_t nb, std::size_t nl, std::uint64_t p, long double c = 1.0L);

// Constant for which count <= C sz_bound held on every corpus instance.
inline constexpr long double kSzCalibration = 1.0L;

// The incidence chain for the top dyadic level (tau, D) of r_{A-B}, with 0
// removed from A: the exact counting steps, the explicit-constant bounds and
// the incidence count against each Stevens-de Zeeuw term.
std::vector<Row> energyreduction_chain(const GSet& a, const GSet& b, const Budget& budget = {});

}  // namespace addcomb
