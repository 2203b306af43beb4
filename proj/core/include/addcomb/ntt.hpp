#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "addcomb/types.hpp"

namespace addcomb::ntt {

// Two NTT-friendly primes just below 2^62; 2^40 divides p - 1 for both.
inline constexpr std::uint64_t kPrime1 = 4611615649683210241ULL;
inline constexpr std::uint64_t kPrime2 = 4611613450659954689ULL;
inline constexpr std::uint64_t kRoot1 = 11;
inline constexpr std::uint64_t kRoot2 = 3;

// p1 * p2; exact results must stay strictly below this.
Count crt_modulus();

// Largest transform length supported (2^24 points).
inline constexpr std::size_t kMaxLength = std::size_t{1} << 24;

// Exact linear convolution of nonnegative sequences via two NTTs and CRT.
// Throws OverflowError if the caller-supplied coefficient bound is not below
// crt_modulus(), ParameterError if the transform would exceed kMaxLength.
std::vector<Count> linear_convolve(std::span<const Count> f, std::span<const Count> g, Count coefficient_bound);

// Convolution modulo a single prime (exposed for tests).
std::vector<std::uint64_t> convolve_mod(std::span<const std::uint64_t> f, std::span<const std::uint64_t> g,
                                        std::uint64_t prime, std::uint64_t root);

}  // namespace addcomb::ntt
