#include "addcomb/opmethod.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "addcomb/energy.hpp"
#include "addcomb/error.hpp"

namespace addcomb {

namespace {

using Dense = std::vector<SignedCount>;

SignedCount abs_max(const Dense& m) {
  SignedCount best = 0;
  for (auto v : m) best = std::max(best, v < 0 ? -v : v);
  return best;
}

// n x n product; unchecked when the entry bound rules out overflow.
Dense multiply(const Dense& x, const Dense& y, std::size_t n) {
  Dense out(n * n, 0);
  const long double bound = static_cast<long double>(abs_max(x)) * static_cast<long double>(abs_max(y)) *
                            static_cast<long double>(n);
  const bool safe = bound < std::ldexp(1.0L, 125);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const SignedCount xik = x[i * n + k];
      if (xik == 0) continue;
      const SignedCount* yrow = &y[k * n];
      SignedCount* orow = &out[i * n];
      if (safe) {
        for (std::size_t j = 0; j < n; ++j) orow[j] += xik * yrow[j];
      } else {
        for (std::size_t j = 0; j < n; ++j) orow[j] = checked_add(orow[j], checked_mul(xik, yrow[j]));
      }
    }
  }
  return out;
}

Dense matrix_power(const Dense& base, std::size_t n, unsigned e) {
  Dense b = base;
  Dense result;
  while (e != 0) {
    if (e & 1U) result = result.empty() ? b : multiply(result, b, n);
    e >>= 1;
    if (e != 0) b = multiply(b, b, n);
  }
  return result;
}

BigInt big(Count v) { return to_big(v); }

// Number of closed walks x_1 -> x_2 -> ... -> x_len -> x_1 along `adj`.
Count closed_walks(const std::vector<std::uint8_t>& adj, std::size_t n, unsigned len) {
  Count total = 0;
  std::vector<std::size_t> path(len);
  auto rec = [&](auto&& self, unsigned depth) -> void {
    const std::size_t prev = path[depth - 1];
    if (depth == len) {
      if (adj[prev * n + path[0]]) ++total;
      return;
    }
    for (std::size_t v = 0; v < n; ++v) {
      if (!adj[prev * n + v]) continue;
      path[depth] = v;
      self(self, depth + 1);
    }
  };
  for (std::size_t s = 0; s < n; ++s) {
    path[0] = s;
    rec(rec, 1);
  }
  return total;
}

}  // namespace

SymMat::SymMat(GSet index, std::vector<std::int64_t> entries) : index_(std::move(index)), entries_(std::move(entries)) {
  const std::size_t n = index_.size();
  if (entries_.size() != n * n) throw ParameterError("SymMat: entry count does not match dimension");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (entries_[i * n + j] != entries_[j * n + i]) throw SymmetryError("SymMat: matrix is not symmetric");
}

SymMat SymMat::identity(const GSet& index) {
  const std::size_t n = index.size();
  std::vector<std::int64_t> e(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) e[i * n + i] = 1;
  return SymMat(index, std::move(e));
}

SignedCount SymMat::trace() const {
  SignedCount t = 0;
  for (std::size_t i = 0; i < dim(); ++i) t += (*this)(i, i);
  return t;
}

SignedCount SymMat::entry_sum() const {
  SignedCount t = 0;
  for (auto v : entries_) t += v;
  return t;
}

RectMat::RectMat(GSet rows, GSet cols, std::vector<std::uint8_t> entries)
    : rows_(std::move(rows)), cols_(std::move(cols)), entries_(std::move(entries)) {
  if (entries_.size() != rows_.size() * cols_.size()) throw ParameterError("RectMat: entry count mismatch");
}

std::vector<Count> RectMat::column_sums() const {
  std::vector<Count> sums(cols_.size(), 0);
  for (std::size_t i = 0; i < rows_.size(); ++i)
    for (std::size_t j = 0; j < cols_.size(); ++j) sums[j] += (*this)(i, j);
  return sums;
}

SymMat build_T(const GSet& a, const CountFn& g, MatVariant variant) {
  require_same_ctx(a.ctx(), g.ctx(), "build_T");
  if (variant == MatVariant::Difference && !g.is_even())
    throw SymmetryError("build_T: difference variant needs an even function");
  const std::size_t n = a.size();
  const auto& ctx = a.ctx();
  std::vector<std::int64_t> e(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const Elem z = variant == MatVariant::Difference ? ctx.sub(a[i], a[j]) : ctx.add(a[i], a[j]);
      const Count v = g(z);
      if (v > static_cast<Count>(std::numeric_limits<std::int64_t>::max()))
        throw OverflowError("build_T: entry exceeds 64 bits");
      e[i * n + j] = e[j * n + i] = static_cast<std::int64_t>(v);
    }
  }
  return SymMat(a, std::move(e));
}

RectMat build_K_rect(const GSet& a) {
  if (a.empty()) throw ParameterError("build_K_rect: A must be nonempty");
  const GSet d = diffset(a, a);
  const auto& ctx = a.ctx();
  std::vector<std::uint8_t> e(a.size() * d.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < d.size(); ++j) e[i * d.size() + j] = a.contains(ctx.add(a[i], d[j])) ? 1 : 0;
  return RectMat(a, d, std::move(e));
}

bool factorization_check(const GSet& a, const Budget& budget) {
  if (a.empty()) return true;
  const RectMat k = build_K_rect(a);
  const long double n = static_cast<long double>(a.size());
  budget.require("factorization_check", n * n * static_cast<long double>(k.cols().size()));
  const SymMat t = build_T(a, repr(a, a, Sign::Minus), MatVariant::Difference);
  const std::size_t m = k.cols().size();
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a.size(); ++j) {
      std::int64_t s = 0;
      for (std::size_t z = 0; z < m; ++z) s += k(i, z) * k(j, z);
      if (s != t(i, j)) return false;
    }
  }
  return true;
}

SignedCount trace_power(const SymMat& m, unsigned k) {
  if (k == 0) throw ParameterError("trace_power: k must be positive");
  const std::size_t n = m.dim();
  if (n == 0) return 0;
  Dense base(m.entries().begin(), m.entries().end());
  if (k == 1) return m.trace();
  // tr(X Y) = sum_ij X_ij Y_ij for symmetric X, Y.
  const Dense hi = matrix_power(base, n, (k + 1) / 2);
  const Dense lo = k / 2 == (k + 1) / 2 ? hi : matrix_power(base, n, k / 2);
  SignedCount t = 0;
  for (std::size_t i = 0; i < n * n; ++i) t = checked_add(t, checked_mul(hi[i], lo[i]));
  return t;
}

Spectrum spectrum(const SymMat& m, double tol) {
  const std::size_t n = m.dim();
  if (n > kSpectrumDimLimit)
    throw ParameterError("spectrum: dimension " + std::to_string(n) + " exceeds " + std::to_string(kSpectrumDimLimit));
  if (!(tol > 0)) throw ParameterError("spectrum: tolerance must be positive");
  std::vector<double> a(n * n);
  double frob2 = 0;
  for (std::size_t i = 0; i < n * n; ++i) {
    a[i] = static_cast<double>(m.entries()[i]);
    frob2 += a[i] * a[i];
  }
  const double frob = std::sqrt(frob2);
  auto off_norm = [&] {
    double s = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) s += 2 * a[i * n + j] * a[i * n + j];
    return std::sqrt(s);
  };
  Spectrum out;
  constexpr unsigned kMaxSweeps = 100;
  double off = off_norm();
  while (frob > 0 && off > tol * frob) {
    if (out.sweeps == kMaxSweeps) throw NumericalError("spectrum: Jacobi sweeps did not converge", off / frob);
    ++out.sweeps;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a[p * n + q];
        if (apq == 0.0) continue;
        const double app = a[p * n + p], aqq = a[q * n + q];
        const double theta = (aqq - app) / (2 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::fabs(theta) + std::sqrt(theta * theta + 1));
        const double c = 1 / std::sqrt(t * t + 1), s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a[k * n + p], akq = a[k * n + q];
          a[k * n + p] = c * akp - s * akq;
          a[k * n + q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a[p * n + k], aqk = a[q * n + k];
          a[p * n + k] = c * apk - s * aqk;
          a[q * n + k] = s * apk + c * aqk;
        }
        a[p * n + q] = a[q * n + p] = 0.0;
      }
    }
    off = off_norm();
  }
  out.residual = frob > 0 ? off / frob : 0.0;
  out.eigenvalues.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.eigenvalues[i] = a[i * n + i];
  std::sort(out.eigenvalues.begin(), out.eigenvalues.end(), [](double x, double y) {
    if (std::fabs(x) != std::fabs(y)) return std::fabs(x) > std::fabs(y);
    return x > y;
  });
  double sum = 0;
  for (double mu : out.eigenvalues) sum += mu;
  const double trace = static_cast<double>(m.trace());
  if (std::fabs(sum - trace) > static_cast<double>(std::max<std::size_t>(n, 1)) * tol * std::max(frob, 1.0))
    throw NumericalError("spectrum: eigenvalue sum does not match the trace", out.residual);
  return out;
}

Rational rayleigh_uniform(const SymMat& m) {
  if (m.dim() == 0) throw ParameterError("rayleigh_uniform: empty matrix");
  return Rational(to_big(m.entry_sum()), BigInt(m.dim()));
}

std::vector<Row> pidentity_check(const GSet& a, const GSet& p, unsigned k, const Budget& budget) {
  require_same_ctx(a.ctx(), p.ctx(), "pidentity_check");
  if (k != 1 && k != 2) throw ParameterError("pidentity_check: k must be 1 or 2");
  if (!is_subset(p, sumset(a, a))) throw ParameterError("pidentity_check: P must lie in A + A");
  std::vector<Row> rows;
  const std::string suffix = "-k" + std::to_string(k);
  if (a.empty()) return rows;
  const SymMat m = build_T(a, CountFn::indicator(p), MatVariant::Sum);
  const Count s = restricted_mass(repr(a, a, Sign::Plus), p);
  const SignedCount tr = trace_power(m, 2 * k);
  const BigInt n(a.size());
  rows.push_back(Row::exact_le("pidentity" + suffix, pow(big(s), 2 * k), pow(n, 2 * k) * to_big(tr)));
  rows.push_back(Row::exact_eq("pidentity-rayleigh" + suffix, to_big(m.entry_sum()), big(s), "sum of entries vs restricted mass"));

  const long double walks = std::pow(static_cast<long double>(a.size()), 2.0L * k);
  if (!budget.allows(walks)) {
    rows.push_back(Row::skipped("trace-walks" + suffix, Relation::Eq, "|A|^" + std::to_string(2 * k) + " over budget"));
    return rows;
  }
  const std::size_t dim = a.size();
  std::vector<std::uint8_t> adj(dim * dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) adj[i * dim + j] = p.contains(a.ctx().add(a[i], a[j])) ? 1 : 0;
  rows.push_back(Row::exact_eq("trace-walks" + suffix, to_big(tr), big(closed_walks(adj, dim, 2 * k)),
                               "matrix power vs closed walks"));
  return rows;
}

Row eigen_lemma_check(const GSet& a, const GSet& b, const GSet& p, unsigned k) {
  require_same_ctx(a.ctx(), b.ctx(), "eigen_lemma_check");
  require_same_ctx(a.ctx(), p.ctx(), "eigen_lemma_check");
  if (k != 2 && k != 4) throw ParameterError("eigen_lemma_check: k must be 2 or 4");
  const std::string name = "eigen-lemma-k" + std::to_string(k);
  if (a.empty() || b.empty()) return Row::exact_le(name, 0, 0);
  if (!is_subset(p, diffset(a, b))) throw ParameterError("eigen_lemma_check: P must lie in A - B");
  const BigInt s = big(restricted_mass(repr(a, b, Sign::Minus), p));
  const BigInt lhs = pow(s, 4 * k);
  const BigInt na(a.size()), nb(b.size());
  BigInt rhs = 0;
  if (!p.empty()) {
    rhs = pow(na, 2 * k) * pow(nb, 2 * k) * big(t_k(p, k)) *
          mixed_moment_big(repr(a, a, Sign::Minus), k, repr(b, b, Sign::Minus), k);
  }
  return Row::exact_le(name, lhs, rhs);
}

Count energy_p_direct(const GSet& p, const Budget& budget) {
  const long double n = static_cast<long double>(p.size());
  const auto& ctx = p.ctx();
  // Shifts gamma - alpha take at most `range` values; each inner count is
  // done once per shift when a dense table fits.
  const std::uint64_t range = p.empty() ? 0 : (ctx.is_residues() ? p.span() : 2 * p.span() - 1);
  const bool memo = range <= kBitmapSpanLimit;
  budget.require("energy_p_direct", memo ? std::min(n * n * n, n * n + n * static_cast<long double>(range)) : n * n * n);
  auto inner = [&](Elem shift) {
    Count c = 0;
    for (Elem u : p)
      if (p.contains(ctx.add(shift, u))) ++c;
    return c;
  };
  const Elem lo = ctx.is_residues() || p.empty() ? 0 : p.min() - p.max();
  std::vector<std::int64_t> seen(memo ? range : 0, -1);
  Count total = 0;
  // alpha, gamma in P and u = alpha - beta in P; the last factor asks gamma - alpha + u in P.
  for (Elem alpha : p)
    for (Elem gamma : p) {
      const Elem shift = ctx.sub(gamma, alpha);
      if (!memo) {
        total += inner(shift);
        continue;
      }
      auto& slot = seen[static_cast<std::size_t>(shift - lo)];
      if (slot < 0) slot = static_cast<std::int64_t>(inner(shift));
      total += static_cast<Count>(slot);
    }
  return total;
}

std::vector<Row> spectral_energy_lemma_check(const GSet& a, const GSet& p, Sign sign, const Budget& budget) {
  require_same_ctx(a.ctx(), p.ctx(), "spectral_energy_lemma_check");
  if (!is_subset(p, signed_sumset(a, a, sign))) throw ParameterError("spectral_energy_lemma_check: P must lie in A ± A");
  const std::string tag(1, sign_char(sign));
  std::vector<Row> rows;
  if (a.empty()) return rows;
  const BigInt s = big(restricted_mass(repr(a, a, sign), p));
  const BigInt e4 = big(fourth_energy(a));
  const BigInt ep = big(additive_energy(p));
  rows.push_back(Row::exact_le("lemma-energy-S6" + tag, pow(s, 8), pow(BigInt(a.size()), 8) * e4 * ep));
  if (budget.allows(std::pow(static_cast<long double>(p.size()), 3.0L))) {
    rows.push_back(Row::exact_eq("energyP" + tag, big(energy_p_direct(p, budget)), ep, "direct quadruple sum vs r_{P-P}"));
  } else {
    rows.push_back(Row::skipped("energyP" + tag, Relation::Eq, "|P|^3 over budget"));
  }
  const CountFn ind = CountFn::indicator(p);
  if (sign == Sign::Minus && !ind.is_even()) {
    rows.push_back(Row::skipped("trace4-two-ways" + tag, Relation::Le, "P not symmetric"));
    return rows;
  }
  if (a.size() > kSpectrumDimLimit) {
    rows.push_back(Row::skipped("trace4-two-ways" + tag, Relation::Le, "dimension over limit"));
    return rows;
  }
  const SymMat m = build_T(a, ind, sign == Sign::Plus ? MatVariant::Sum : MatVariant::Difference);
  const BigInt tr = to_big(trace_power(m, 4));
  rows.push_back(Row::exact_le("trace4-two-ways" + tag, tr * tr, e4 * ep));
  return rows;
}

}  // namespace addcomb
