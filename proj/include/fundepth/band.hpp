#pragma once

// Band depth, half-region depth and their "proportion of time" versions.
//
// The empirical band depths are U-statistics over distinct j-subsets of the
// sample, summed over j = 2..J, so their range is [0, J-1]. Band boundaries
// are inclusive and the half-region inequalities are weak, so ties add mass.

#include <bit>
#include <cstdint>
#include <vector>

#include "fundepth/core.hpp"

namespace fundepth {

struct BandParams {
  int J = 2;
};

/// Binomial coefficient C(n, k) as a double; zero when k > n.
inline double binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0.0;
  k = std::min(k, n - k);
  double c = 1.0;
  for (std::size_t i = 1; i <= k; ++i) c = c * static_cast<double>(n - k + i) / static_cast<double>(i);
  return std::round(c);
}

/// A_J = J - 2 + 2^{1-J}: the largest population MBD value.
inline double band_depth_max(int J) { return J - 2 + std::ldexp(1.0, 1 - J); }

namespace detail {

inline void check_band_params(const BandParams& params, std::size_t n) {
  if (params.J < 2) throw ParameterError("J must be at least 2");
  if (static_cast<std::size_t>(params.J) > n)
    throw ParameterError("J = " + std::to_string(params.J) + " exceeds the sample size " +
                         std::to_string(n));
}

/// Fixed-width bitset over grid points.
class GridBits {
 public:
  explicit GridBits(std::size_t d = 0) : words_((d + 63) / 64, 0) {}
  void set(std::size_t j) { words_[j / 64] |= std::uint64_t{1} << (j % 64); }
  bool none() const {
    for (auto w : words_)
      if (w) return false;
    return true;
  }
  GridBits& operator&=(const GridBits& o) {
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= o.words_[k];
    return *this;
  }

 private:
  std::vector<std::uint64_t> words_;
};

// Grid points where each sample curve lies strictly above / strictly below x.
// A subset's band misses x somewhere iff all members are strictly above (or
// all strictly below) at some point, i.e. the intersection of their bitsets
// is nonempty.
struct SideBits {
  std::vector<GridBits> above;
  std::vector<GridBits> below;
};

inline SideBits side_bits(const CurveView& x, const FunctionalSample& sample) {
  const std::size_t n = sample.rows(), d = sample.dim();
  SideBits s{std::vector<GridBits>(n, GridBits(d)), std::vector<GridBits>(n, GridBits(d))};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      const double v = sample(i, j);
      if (v > x[static_cast<Eigen::Index>(j)])
        s.above[i].set(j);
      else if (v < x[static_cast<Eigen::Index>(j)])
        s.below[i].set(j);
    }
  return s;
}

// Number of size-`size` subsets, extending the chosen prefix with indices
// >= start, whose bands contain x at every grid point.
inline double count_enclosing(const SideBits& s, std::size_t start, std::size_t chosen, std::size_t size,
                              const GridBits& above, const GridBits& below) {
  const std::size_t n = s.above.size();
  if (chosen > 0 && above.none() && below.none()) return binomial(n - start, size - chosen);
  if (chosen == size) return 0.0;
  double total = 0.0;
  for (std::size_t k = start; k + (size - chosen) <= n; ++k) {
    GridBits a = s.above[k], b = s.below[k];
    if (chosen > 0) {
      a &= above;
      b &= below;
    }
    total += count_enclosing(s, k + 1, chosen + 1, size, a, b);
  }
  return total;
}

}  // namespace detail

/// Band depth: sum over j of the fraction of j-subsets whose band contains x everywhere.
inline double bd(const CurveView& x, const FunctionalSample& sample, const BandParams& params = {}) {
  require_curve_length(x, sample);
  const std::size_t n = sample.rows();
  detail::check_band_params(params, n);
  const auto sides = detail::side_bits(x, sample);
  double depth = 0.0;
  for (int j = 2; j <= params.J; ++j) {
    const auto size = static_cast<std::size_t>(j);
    depth += detail::count_enclosing(sides, 0, 0, size, detail::GridBits(), detail::GridBits()) / binomial(n, size);
  }
  return depth;
}

/// Half-region depth: min of the fractions of curves entirely above and entirely below x.
inline double hrd(const CurveView& x, const FunctionalSample& sample) {
  require_curve_length(x, sample);
  const std::size_t n = sample.rows(), d = sample.dim();
  std::size_t above = 0, below = 0;
  for (std::size_t i = 0; i < n; ++i) {
    bool all_ge = true, all_le = true;
    for (std::size_t j = 0; j < d && (all_ge || all_le); ++j) {
      const double v = sample(i, j), xv = x[static_cast<Eigen::Index>(j)];
      all_ge = all_ge && v >= xv;
      all_le = all_le && v <= xv;
    }
    above += all_ge;
    below += all_le;
  }
  return static_cast<double>(std::min(above, below)) / static_cast<double>(n);
}

/// Modified band depth by explicit enumeration of every j-subset. O(C(n,J) d);
/// the reference implementation for mbd_fast.
inline double mbd_naive(const CurveView& x, const FunctionalSample& sample, const BandParams& params = {}) {
  require_curve_length(x, sample);
  const std::size_t n = sample.rows(), d = sample.dim();
  detail::check_band_params(params, n);
  const auto w = sample.grid().weights();
  double depth = 0.0;
  for (int j = 2; j <= params.J; ++j) {
    const auto size = static_cast<std::size_t>(j);
    std::vector<std::size_t> idx(size);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    double sum = 0.0;
    while (true) {
      double covered = 0.0;
      for (std::size_t t = 0; t < d; ++t) {
        double lo = sample(idx[0], t), hi = lo;
        for (std::size_t m = 1; m < size; ++m) {
          lo = std::min(lo, sample(idx[m], t));
          hi = std::max(hi, sample(idx[m], t));
        }
        const double xv = x[static_cast<Eigen::Index>(t)];
        if (lo <= xv && xv <= hi) covered += w[t];
      }
      sum += covered;
      // next combination in lexicographic order
      std::size_t pos = size;
      while (pos > 0 && idx[pos - 1] == n - size + pos - 1) --pos;
      if (pos == 0) break;
      ++idx[pos - 1];
      for (std::size_t m = pos; m < size; ++m) idx[m] = idx[m - 1] + 1;
    }
    depth += sum / binomial(n, size);
  }
  return depth;
}

/// Covered fraction of j-subsets at one grid point from its rank counts.
inline double band_cover_fraction(const RankCounts& c, int J) {
  const std::size_t n = c.n();
  double s = 0.0;
  for (int j = 2; j <= J; ++j) {
    const auto size = static_cast<std::size_t>(j);
    const double total = binomial(n, size);
    s += (total - binomial(c.lt, size) - binomial(c.gt, size)) / total;
  }
  return s;
}

/// Modified band depth from per-point rank counts against pre-sorted columns.
inline double mbd_fast(const CurveView& x, const SortedColumns& cols, const Grid& grid,
                       const BandParams& params = {}) {
  detail::check_band_params(params, cols.rows());
  const auto w = grid.weights();
  double depth = 0.0;
  for (std::size_t t = 0; t < cols.dim(); ++t)
    depth += w[t] * band_cover_fraction(cols.counts(t, x[static_cast<Eigen::Index>(t)]), params.J);
  return depth;
}

/// Modified band depth, O(d n log n).
inline double mbd_fast(const CurveView& x, const FunctionalSample& sample, const BandParams& params = {}) {
  require_curve_length(x, sample);
  detail::check_band_params(params, sample.rows());
  return mbd_fast(x, SortedColumns(sample), sample.grid(), params);
}

inline double mbd(const CurveView& x, const FunctionalSample& sample, const BandParams& params = {}) {
  return mbd_fast(x, sample, params);
}

/// Modified half-region depth against pre-sorted columns.
inline double mhrd(const CurveView& x, const SortedColumns& cols, const Grid& grid) {
  const auto w = grid.weights();
  const double n = static_cast<double>(cols.rows());
  double below = 0.0, above = 0.0;
  for (std::size_t t = 0; t < cols.dim(); ++t) {
    const RankCounts c = cols.counts(t, x[static_cast<Eigen::Index>(t)]);
    below += w[t] * static_cast<double>(c.lt + c.eq) / n;
    above += w[t] * static_cast<double>(c.gt + c.eq) / n;
  }
  return std::min(below, above);
}

/// Modified half-region depth: min of the mean time spent below and above x.
inline double mhrd(const CurveView& x, const FunctionalSample& sample) {
  require_curve_length(x, sample);
  const std::size_t n = sample.rows(), d = sample.dim();
  const auto w = sample.grid().weights();
  double below = 0.0, above = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double b = 0.0, a = 0.0;
    for (std::size_t t = 0; t < d; ++t) {
      const double v = sample(i, t), xv = x[static_cast<Eigen::Index>(t)];
      if (v <= xv) b += w[t];
      if (v >= xv) a += w[t];
    }
    below += b;
    above += a;
  }
  return std::min(below, above) / static_cast<double>(n);
}

namespace detail {
inline void check_probability(double p) {
  if (!(p > 0.0 && p < 1.0)) throw ParameterError("p must lie in (0,1)");
}
}  // namespace detail

/// Population MBD of the pointwise p-quantile curve: sum_j [1 - p^j - (1-p)^j].
inline double mbd_pop_quantile(double p, int J) {
  detail::check_probability(p);
  if (J < 2) throw ParameterError("J must be at least 2");
  double s = 0.0;
  for (int j = 2; j <= J; ++j) s += 1.0 - std::pow(p, j) - std::pow(1.0 - p, j);
  return s;
}

/// Population MHRD of the pointwise p-quantile curve: min(p, 1-p).
inline double mhrd_pop_quantile(double p) {
  detail::check_probability(p);
  return std::min(p, 1.0 - p);
}

}  // namespace fundepth
