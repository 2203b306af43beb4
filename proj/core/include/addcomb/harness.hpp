#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <functional>
#include <iosfwd>
#include <string>
#include <thread>
#include <vector>

#include "addcomb/forge.hpp"
#include "addcomb/group.hpp"
#include "addcomb/report.hpp"
#include "addcomb/structure.hpp"
#include "addcomb/types.hpp"

namespace addcomb {

struct VerifyOptions {
  Budget budget;
  std::size_t cubic_tier = 64;    // quad, lem1, slice lemmas, Katz-Koester, factorization
  std::size_t quartic_tier = 32;  // closed-walk traces
  std::size_t matrix_tier = 512;  // dense operator rows
  std::size_t max_size = 4096;
  std::uint64_t direct_sum_steps = 50'000'000;  // direct energyP quadruple sums
  bool incidence_chain = true;    // prime residue rings only
};

// Every identity and inequality check for one set, in a fixed order. Rows
// outside their tier or budget are kept as skipped. Throws ParameterError
// for empty A or |A| > max_size.
VerificationReport verify_all(const GSet& a, const std::string& instance_id, const VerifyOptions& opts = {});

// The d4 lower bound verify_all uses: family search over default candidates.
D4Estimate default_d4_estimate(const GSet& a, const Budget& budget = {});

struct SweepRow {
  std::string family;
  std::string parameters;
  Elem p = 0;  // 0 for the integers
  std::size_t size = 0;
  std::size_t sumset = 0;
  std::size_t diffset = 0;
  std::size_t prodset = 0;
  Count energy = 0;
  Count energy4 = 0;
  Rational d4_lb;
  double exponent = 0;  // log(|A+A| + |AA|) / log|A|; NaN when |A| < 2
  // |A| <= p^{3/5}; always false for the integers.
  bool in_theorem_range = false;
};

SweepRow sweep_row(const FamilySpec& spec, const GroupCtx& ctx, const Budget& budget = {});
// One row per (spec, prime) pair in input order; prime 0 means the integers.
std::vector<SweepRow> sweep(const std::vector<FamilySpec>& specs, const std::vector<Elem>& primes, unsigned jobs = 1,
                            const Budget& budget = {});
void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows);

// Worker count for --jobs; 0 asks for the hardware concurrency.
unsigned resolve_jobs(unsigned jobs);

// out[i] = fn(i) computed on up to `jobs` threads. Output order never
// depends on scheduling; the first exception (lowest index) is rethrown.
template <typename T, typename Fn>
std::vector<T> parallel_map(std::size_t n, unsigned jobs, Fn fn) {
  std::vector<T> out(n);
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < n;) {
      try {
        out[i] = fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned threads = static_cast<unsigned>(std::min<std::size_t>(resolve_jobs(jobs), std::max<std::size_t>(n, 1)));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

}  // namespace addcomb
