#pragma once

// Univariate depths on the real line, their integral across grid points, and
// the kernel h-depth.

#include <cmath>
#include <vector>

#include "fundepth/core.hpp"

namespace fundepth {

enum class UnivariateKind { halfspace, simplicial, spatial };

inline std::string_view to_string(UnivariateKind k) {
  switch (k) {
    case UnivariateKind::halfspace: return "halfspace";
    case UnivariateKind::simplicial: return "simplicial";
    case UnivariateKind::spatial: return "spatial";
  }
  return "?";
}

inline UnivariateKind parse_univariate_kind(std::string_view name) {
  if (name == "halfspace") return UnivariateKind::halfspace;
  if (name == "simplicial") return UnivariateKind::simplicial;
  if (name == "spatial") return UnivariateKind::spatial;
  throw ParameterError("unknown univariate depth '" + std::string(name) +
                       "'; expected halfspace, simplicial or spatial");
}

/// psi with D_t = psi(F_t) for a continuous marginal F_t.
inline double psi(UnivariateKind kind, double u) {
  switch (kind) {
    case UnivariateKind::halfspace: return std::min(u, 1.0 - u);
    case UnivariateKind::simplicial: return 2.0 * u * (1.0 - u);
    case UnivariateKind::spatial: return 1.0 - std::abs(2.0 * u - 1.0);
  }
  return 0.0;
}

inline double ud_from_counts(UnivariateKind kind, const RankCounts& c) {
  const double n = static_cast<double>(c.n());
  const double lt = static_cast<double>(c.lt), eq = static_cast<double>(c.eq),
               gt = static_cast<double>(c.gt);
  switch (kind) {
    case UnivariateKind::halfspace: return std::min(lt + eq, gt + eq) / n;
    // P(min(X1,X2) <= x <= max(X1,X2)); equals 2u(1-u) when x is not tied
    case UnivariateKind::simplicial: return 1.0 - (lt / n) * (lt / n) - (gt / n) * (gt / n);
    // points equal to x have sign 0 and drop out of the sum
    case UnivariateKind::spatial: return 1.0 - std::abs(lt - gt) / n;
  }
  return 0.0;
}

/// Univariate depth of x with respect to the empirical distribution of column.
inline double ud(UnivariateKind kind, double x, std::span<const double> column) {
  if (column.empty()) throw DataError("univariate depth of an empty column");
  return ud_from_counts(kind, count_ranks(column, x));
}

inline double id(const CurveView& x, const SortedColumns& cols, const Grid& grid,
                 UnivariateKind kind = UnivariateKind::spatial) {
  const auto w = grid.weights();
  double s = 0.0;
  for (std::size_t t = 0; t < cols.dim(); ++t)
    s += w[t] * ud_from_counts(kind, cols.counts(t, x[static_cast<Eigen::Index>(t)]));
  return s;
}

/// Integrated depth: the grid integral of the coordinate-wise univariate depth.
inline double id(const CurveView& x, const FunctionalSample& sample,
                 UnivariateKind kind = UnivariateKind::spatial) {
  require_curve_length(x, sample);
  return id(x, SortedColumns(sample), sample.grid(), kind);
}

/// exp-decay kernel on [0, inf).
struct KernelParams {
  double h = 1.0;

  static double kernel(double s) { return std::exp(-s); }
  double scaled(double dist) const { return kernel(dist / h) / h; }
};

/// Grid-weighted L2 distance sqrt(sum_j w_j (a_j - b_j)^2).
inline double weighted_distance(const CurveView& a, const CurveView& b, const Grid& grid) {
  const auto w = grid.weights();
  double s = 0.0;
  for (Eigen::Index j = 0; j < a.size(); ++j) {
    const double diff = a[j] - b[j];
    s += w[static_cast<std::size_t>(j)] * diff * diff;
  }
  return std::sqrt(s);
}

/// h-depth: mean over the sample of K_h(||x - X_i||).
inline double hdepth(const CurveView& x, const FunctionalSample& sample, const KernelParams& params) {
  if (!(params.h > 0.0) || !std::isfinite(params.h)) throw ParameterError("bandwidth h must be positive");
  require_curve_length(x, sample);
  double s = 0.0;
  for (std::size_t i = 0; i < sample.rows(); ++i)
    s += params.scaled(weighted_distance(x, sample.curve(i), sample.grid()));
  return s / static_cast<double>(sample.rows());
}

/// Median of all pairwise grid-weighted L2 distances; the default bandwidth.
/// Falls back to 1 when the sample has a single curve or all curves coincide.
inline double median_pairwise_distance(const FunctionalSample& sample) {
  const std::size_t n = sample.rows();
  std::vector<double> dist;
  dist.reserve(n * (n - 1) / 2);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = i + 1; k < n; ++k)
      dist.push_back(weighted_distance(sample.curve(i), sample.curve(k), sample.grid()));
  if (dist.empty()) return 1.0;
  const auto mid = dist.begin() + static_cast<std::ptrdiff_t>(dist.size() / 2);
  std::nth_element(dist.begin(), mid, dist.end());
  double med = *mid;
  if (dist.size() % 2 == 0) med = 0.5 * (med + *std::max_element(dist.begin(), mid));
  return med > 0.0 ? med : 1.0;
}

}  // namespace fundepth
