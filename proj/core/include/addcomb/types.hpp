#pragma once

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace addcomb {

// Group element representative. Residues are kept in [0, m).
using Elem = std::int64_t;

// Exact nonnegative count (representation numbers, energies, traces).
using Count = unsigned __int128;
using SignedCount = __int128;

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

enum class Sign { Plus, Minus };

inline char sign_char(Sign s) { return s == Sign::Plus ? '+' : '-'; }

std::string to_string(Count v);
std::string to_string(SignedCount v);
std::string to_string(const BigInt& v);
// "num/den", or just "num" when the denominator is one.
std::string to_string(const Rational& v);

BigInt to_big(Count v);
BigInt to_big(SignedCount v);
double to_double(const Rational& v);

// Checked 128-bit arithmetic; throws OverflowError instead of wrapping.
Count checked_add(Count a, Count b);
Count checked_mul(Count a, Count b);
Count checked_pow(Count base, unsigned exponent);
SignedCount checked_add(SignedCount a, SignedCount b);
SignedCount checked_mul(SignedCount a, SignedCount b);

// Work budget for brute-force oracles, in elementary steps.
struct Budget {
  static constexpr std::uint64_t kDefaultSteps = 1'000'000'000;
  std::uint64_t steps = kDefaultSteps;

  bool allows(long double work) const { return work <= static_cast<long double>(steps); }
  // Throws BudgetExceeded when `work` is over budget.
  void require(const char* op, long double work) const;
};

}  // namespace addcomb
