#include "addcomb/types.hpp"

#include <algorithm>

#include "addcomb/error.hpp"

namespace addcomb {

std::string to_string(Count v) {
  if (v == 0) return "0";
  std::string out;
  while (v != 0) {
    out.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

std::string to_string(SignedCount v) {
  if (v >= 0) return to_string(static_cast<Count>(v));
  return "-" + to_string(static_cast<Count>(0) - static_cast<Count>(v));
}

std::string to_string(const BigInt& v) { return v.str(); }

std::string to_string(const Rational& v) {
  const BigInt num = boost::multiprecision::numerator(v);
  const BigInt den = boost::multiprecision::denominator(v);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

BigInt to_big(Count v) {
  BigInt hi = static_cast<std::uint64_t>(v >> 64);
  BigInt lo = static_cast<std::uint64_t>(v);
  return (hi << 64) | lo;
}

BigInt to_big(SignedCount v) {
  if (v >= 0) return to_big(static_cast<Count>(v));
  return -to_big(static_cast<Count>(0) - static_cast<Count>(v));
}

double to_double(const Rational& v) { return v.convert_to<double>(); }

Count checked_add(Count a, Count b) {
  Count r;
  if (__builtin_add_overflow(a, b, &r)) throw OverflowError("128-bit count overflow in addition");
  return r;
}

Count checked_mul(Count a, Count b) {
  Count r;
  if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("128-bit count overflow in multiplication");
  return r;
}

Count checked_pow(Count base, unsigned exponent) {
  Count r = 1;
  for (unsigned i = 0; i < exponent; ++i) r = checked_mul(r, base);
  return r;
}

SignedCount checked_add(SignedCount a, SignedCount b) {
  SignedCount r;
  if (__builtin_add_overflow(a, b, &r)) throw OverflowError("128-bit signed overflow in addition");
  return r;
}

SignedCount checked_mul(SignedCount a, SignedCount b) {
  SignedCount r;
  if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("128-bit signed overflow in multiplication");
  return r;
}

void Budget::require(const char* op, long double work) const {
  if (!allows(work)) throw BudgetExceeded(op, work, steps);
}

}  // namespace addcomb
