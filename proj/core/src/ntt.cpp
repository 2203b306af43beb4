#include "addcomb/ntt.hpp"

#include <algorithm>
#include <bit>

#include "addcomb/error.hpp"

namespace addcomb::ntt {

namespace {

// Montgomery arithmetic modulo an odd p < 2^62 with R = 2^64.
class Montgomery {
 public:
  explicit Montgomery(std::uint64_t p) : p_(p) {
    std::uint64_t inv = p;
    for (int i = 0; i < 6; ++i) inv *= 2 - p * inv;
    neg_inv_ = ~inv + 1;
    const std::uint64_t r = static_cast<std::uint64_t>((static_cast<Count>(1) << 64) % p);
    r2_ = static_cast<std::uint64_t>(static_cast<Count>(r) * r % p);
  }

  std::uint64_t reduce(Count t) const {
    const std::uint64_t m = static_cast<std::uint64_t>(t) * neg_inv_;
    const auto u = static_cast<std::uint64_t>((t + static_cast<Count>(m) * p_) >> 64);
    return u >= p_ ? u - p_ : u;
  }
  std::uint64_t to(std::uint64_t x) const { return reduce(static_cast<Count>(x) * r2_); }
  std::uint64_t from(std::uint64_t x) const { return reduce(x); }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const { return reduce(static_cast<Count>(a) * b); }
  std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
    std::uint64_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return a >= b ? a - b : a + p_ - b; }
  std::uint64_t pow(std::uint64_t base_m, std::uint64_t e) const {
    std::uint64_t r = to(1);
    while (e != 0) {
      if (e & 1) r = mul(r, base_m);
      base_m = mul(base_m, base_m);
      e >>= 1;
    }
    return r;
  }
  std::uint64_t modulus() const { return p_; }

 private:
  std::uint64_t p_;
  std::uint64_t neg_inv_;
  std::uint64_t r2_;
};

// In-place transform of Montgomery-form values; n is a power of two.
void transform(std::vector<std::uint64_t>& a, const Montgomery& mg, std::uint64_t root, bool inverse) {
  const std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  const std::uint64_t p = mg.modulus();
  std::uint64_t w_n = mg.pow(mg.to(root), (p - 1) / n);
  if (inverse) w_n = mg.pow(w_n, n - 1);
  std::vector<std::uint64_t> twiddle(n / 2 + 1);
  twiddle[0] = mg.to(1);
  for (std::size_t i = 1; i < twiddle.size(); ++i) twiddle[i] = mg.mul(twiddle[i - 1], w_n);
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t half = len >> 1;
    const std::size_t stride = n / len;
    for (std::size_t i = 0; i < n; i += len) {
      for (std::size_t j = 0; j < half; ++j) {
        const std::uint64_t u = a[i + j];
        const std::uint64_t v = mg.mul(a[i + j + half], twiddle[j * stride]);
        a[i + j] = mg.add(u, v);
        a[i + j + half] = mg.sub(u, v);
      }
    }
  }
  if (inverse) {
    const std::uint64_t n_inv = mg.pow(mg.to(n % p), p - 2);
    for (auto& x : a) x = mg.mul(x, n_inv);
  }
}

std::size_t transform_length(std::size_t result_len) {
  const std::size_t n = std::bit_ceil(std::max<std::size_t>(result_len, 1));
  if (n > kMaxLength) throw ParameterError("NTT length " + std::to_string(n) + " exceeds supported maximum");
  return n;
}

std::vector<std::uint64_t> convolve_montgomery(std::span<const Count> f, std::span<const Count> g,
                                               std::uint64_t prime, std::uint64_t root) {
  const Montgomery mg(prime);
  const std::size_t result_len = f.size() + g.size() - 1;
  const std::size_t n = transform_length(result_len);
  std::vector<std::uint64_t> fa(n, 0), ga(n, 0);
  for (std::size_t i = 0; i < f.size(); ++i) fa[i] = mg.to(static_cast<std::uint64_t>(f[i] % prime));
  for (std::size_t i = 0; i < g.size(); ++i) ga[i] = mg.to(static_cast<std::uint64_t>(g[i] % prime));
  transform(fa, mg, root, false);
  transform(ga, mg, root, false);
  for (std::size_t i = 0; i < n; ++i) fa[i] = mg.mul(fa[i], ga[i]);
  transform(fa, mg, root, true);
  fa.resize(result_len);
  for (auto& x : fa) x = mg.from(x);
  return fa;
}

std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t m) {
  SignedCount r0 = m, r1 = a % m, t0 = 0, t1 = 1;
  while (r1 != 0) {
    SignedCount q = r0 / r1;
    SignedCount r2 = r0 - q * r1;
    r0 = r1;
    r1 = r2;
    SignedCount t2 = t0 - q * t1;
    t0 = t1;
    t1 = t2;
  }
  if (t0 < 0) t0 += m;
  return static_cast<std::uint64_t>(t0);
}

}  // namespace

Count crt_modulus() { return static_cast<Count>(kPrime1) * kPrime2; }

std::vector<std::uint64_t> convolve_mod(std::span<const std::uint64_t> f, std::span<const std::uint64_t> g,
                                        std::uint64_t prime, std::uint64_t root) {
  if (f.empty() || g.empty()) return {};
  std::vector<Count> fw(f.begin(), f.end()), gw(g.begin(), g.end());
  return convolve_montgomery(fw, gw, prime, root);
}

std::vector<Count> linear_convolve(std::span<const Count> f, std::span<const Count> g, Count coefficient_bound) {
  if (f.empty() || g.empty()) return {};
  if (coefficient_bound >= crt_modulus()) {
    throw OverflowError("NTT: coefficient bound " + to_string(coefficient_bound) +
                        " is not below the CRT modulus");
  }
  const auto r1 = convolve_montgomery(f, g, kPrime1, kRoot1);
  const auto r2 = convolve_montgomery(f, g, kPrime2, kRoot2);
  static const std::uint64_t p1_inv_mod_p2 = inverse_mod(kPrime1 % kPrime2, kPrime2);
  std::vector<Count> out(r1.size());
  for (std::size_t i = 0; i < r1.size(); ++i) {
    const std::uint64_t a = r1[i];
    const std::uint64_t diff = (r2[i] + kPrime2 - a % kPrime2) % kPrime2;
    const auto t = static_cast<std::uint64_t>(static_cast<Count>(diff) * p1_inv_mod_p2 % kPrime2);
    out[i] = static_cast<Count>(a) + static_cast<Count>(kPrime1) * t;
  }
  return out;
}

}  // namespace addcomb::ntt
