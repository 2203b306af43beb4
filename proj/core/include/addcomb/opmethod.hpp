#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "addcomb/conv.hpp"
#include "addcomb/group.hpp"
#include "addcomb/report.hpp"
#include "addcomb/types.hpp"

namespace addcomb {

// Dense symmetric integer matrix indexed by the elements of a set.
class SymMat {
 public:
  SymMat(GSet index, std::vector<std::int64_t> entries);

  const GSet& index() const { return index_; }
  std::size_t dim() const { return index_.size(); }
  std::int64_t operator()(std::size_t i, std::size_t j) const { return entries_[i * dim() + j]; }
  const std::vector<std::int64_t>& entries() const { return entries_; }
  SignedCount trace() const;
  SignedCount entry_sum() const;

  static SymMat identity(const GSet& index);

 private:
  GSet index_;
  std::vector<std::int64_t> entries_;
};

// 0/1 matrix with rows indexed by A and columns by A - A.
class RectMat {
 public:
  RectMat(GSet rows, GSet cols, std::vector<std::uint8_t> entries);

  const GSet& rows() const { return rows_; }
  const GSet& cols() const { return cols_; }
  std::uint8_t operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_.size() + j]; }
  std::vector<Count> column_sums() const;

 private:
  GSet rows_;
  GSet cols_;
  std::vector<std::uint8_t> entries_;
};

enum class MatVariant { Difference, Sum };

// Difference: M(x, y) = g(x - y); Sum: M(x, y) = g(x + y); x, y in A.
// Difference needs an even g, otherwise SymmetryError.
SymMat build_T(const GSet& a, const CountFn& g, MatVariant variant);

// K(x, z) = 1_A(x) 1_{A-z}(x) for x in A, z in A - A.
RectMat build_K_rect(const GSet& a);

// T_A^{r_{A-A}} == K K^T, exact. Budget covers |A|^2 |A-A|.
bool factorization_check(const GSet& a, const Budget& budget = {});

// trace(M^k), exact; OverflowError past 128 bits.
SignedCount trace_power(const SymMat& m, unsigned k);

struct Spectrum {
  std::vector<double> eigenvalues;  // descending |mu|, ties by descending value
  double residual = 0.0;  // off-diagonal Frobenius norm relative to ||M||_F
  unsigned sweeps = 0;
};

inline constexpr std::size_t kSpectrumDimLimit = 512;

// Cyclic Jacobi rotations until the relative off-diagonal norm is <= tol.
// Throws NumericalError if the sweep cap is hit first.
Spectrum spectrum(const SymMat& m, double tol = 1e-10);

// <M v, v> for the normalised all-ones vector: entry_sum / dim.
Rational rayleigh_uniform(const SymMat& m);

// Rows: the trace inequality (sum_{z in P} r_{A+A}(z))^{2k} <= |A|^{2k} tr(M^{2k})
// with M(x, y) = 1_P(x + y), the Rayleigh identity against conv-engine,
// and tr(M^{2k}) against the closed-walk count when |A|^{2k} fits the budget.
std::vector<Row> pidentity_check(const GSet& a, const GSet& p, unsigned k, const Budget& budget = {});

// (sum_{x in P} r_{A-B}(x))^{4k} <= |A|^{2k} |B|^{2k} T_k(P) sum_x r_{A-A}(x)^k r_{B-B}(x)^k.
Row eigen_lemma_check(const GSet& a, const GSet& b, const GSet& p, unsigned k);

// sum_{alpha, beta, gamma} 1_P(alpha) 1_P(alpha - beta) 1_P(gamma - beta) 1_P(gamma).
Count energy_p_direct(const GSet& p, const Budget& budget = {});

// Rows: (sum_{x in P} r_{A±A}(x))^8 <= |A|^8 E_4^+(A) E^+(P), the direct and
// the r_{P-P} evaluations of E^+(P), and tr(M^4)^2 <= E_4^+(A) E^+(P) for the
// matrix 1_P(x ± y) on A.
std::vector<Row> spectral_energy_lemma_check(const GSet& a, const GSet& p, Sign sign, const Budget& budget = {});

}  // namespace addcomb
