#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>

#include "addcomb/group.hpp"

namespace addcomb {

// Seeded stream for one named purpose. The seed sequence mixes the seed,
// the purpose and a format version, so streams never overlap by accident.
// Output mapping is done here rather than by <random> distributions, whose
// results differ between standard libraries.
class Rng {
 public:
  static constexpr std::uint32_t kVersion = 1;

  Rng(std::uint64_t seed, std::string_view purpose);

  std::uint64_t next() { return engine_(); }
  // Uniform on [0, n); n > 0.
  std::uint64_t uniform(std::uint64_t n);
  // Uniform on [lo, hi].
  std::int64_t uniform_range(std::int64_t lo, std::int64_t hi);
  // True with probability q.
  bool bernoulli(double q);

 private:
  std::mt19937_64 engine_;
};

enum class Family { Ap, Geometric, MultSubgroup, SidonGreedy, RandomInterval, ApPlusGeneric };

const char* family_name(Family f);
// Accepts the names above with '_' or '-' separators; ParameterError otherwise.
Family parse_family(std::string_view name);

struct FamilySpec {
  Family family = Family::Ap;
  std::int64_t n = 0;          // size, or interval length for random_interval / ap_plus_generic
  std::int64_t start = 0;      // ap, geometric
  std::int64_t step = 1;       // ap difference, geometric ratio
  std::int64_t order = 0;      // mult_subgroup
  double probability = 0.5;    // random_interval
  std::uint64_t seed = 0;

  bool operator==(const FamilySpec&) const = default;
};

// Generates the family member and checks its defining property.
//   ap              {start + k step : 0 <= k < n}
//   geometric       {start ratio^k : 0 <= k < n}
//   mult_subgroup   the order-`order` subgroup of F_p^*; needs prime p, order | p - 1
//   sidon_greedy    greedy Sidon set of size n starting from 0
//   random_interval each of 1..n kept with the given probability
//   ap_plus_generic {1..n} together with round(n^{5/4}) random elements of
//                   [n + 1, min(n^16, 2^60)], integers only
GSet generate(const FamilySpec& spec, const GroupCtx& ctx);

// Smallest primitive root modulo a prime p.
Elem primitive_root(Elem p);

bool is_sidon(const GSet& s);

}  // namespace addcomb
