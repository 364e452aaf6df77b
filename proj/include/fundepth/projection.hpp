#pragma once

// Depths defined through one-dimensional projections: half-space (Tukey),
// projection, random Tukey and integrated dual depth.
//
// The infimum/supremum over all directions is replaced by two pieces:
//  - exact separation: if x - mean has a component orthogonal to the span of
//    the centered sample, a direction exists along which every sample point
//    projects to the mean while x does not, so HD = PD = 0 exactly;
//  - otherwise a finite set of random unit directions.

#include <limits>
#include <vector>

#include <Eigen/SVD>

#include "fundepth/core.hpp"
#include "fundepth/integrated.hpp"
#include "fundepth/random.hpp"

namespace fundepth {

inline constexpr double default_span_tol = 1e-8;

/// Orthonormal basis of the row space of the centered sample.
struct SpanDecomposition {
  Vector mean;
  Matrix basis;  ///< rank x d, orthonormal rows
  int rank = 0;
  double tol = default_span_tol;
};

/// Singular vectors whose singular value exceeds tol * (largest singular value) are kept.
inline SpanDecomposition decompose_span(const FunctionalSample& sample, double tol = default_span_tol) {
  if (!(tol > 0.0)) throw ParameterError("span tolerance must be positive");
  SpanDecomposition s;
  s.tol = tol;
  s.mean = sample.values().colwise().mean().transpose();
  const Eigen::MatrixXd centered = sample.values().rowwise() - s.mean.transpose();
  const auto d = static_cast<Eigen::Index>(sample.dim());
  if (sample.rows() < 2) {
    s.basis = Matrix(0, d);
    return s;
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(centered, Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  const double top = sv.size() > 0 ? sv[0] : 0.0;
  int rank = 0;
  if (top > 0.0)
    while (rank < sv.size() && sv[rank] > tol * top) ++rank;
  s.rank = rank;
  s.basis = svd.matrixV().leftCols(rank).transpose();
  return s;
}

/// Norm of the part of (x - mean) orthogonal to the centered sample's span.
inline double span_residual(const CurveView& x, const SpanDecomposition& span) {
  Vector r = x - span.mean;
  if (span.rank > 0) {
    // two passes of Gram-Schmidt keep the residual accurate when it is tiny
    r -= span.basis.transpose() * (span.basis * r);
    r -= span.basis.transpose() * (span.basis * r);
  }
  return r.norm();
}

inline double span_residual(const CurveView& x, const FunctionalSample& sample,
                            double tol = default_span_tol) {
  require_curve_length(x, sample);
  return span_residual(x, decompose_span(sample, tol));
}

/// Median absolute entry of the centered sample; 1 if that is zero.
inline double projection_scale(const FunctionalSample& sample) {
  const Eigen::RowVectorXd mean = sample.values().colwise().mean();
  std::vector<double> a;
  a.reserve(sample.rows() * sample.dim());
  for (std::size_t i = 0; i < sample.rows(); ++i)
    for (std::size_t j = 0; j < sample.dim(); ++j)
      a.push_back(std::abs(sample(i, j) - mean[static_cast<Eigen::Index>(j)]));
  const auto mid = a.begin() + static_cast<std::ptrdiff_t>(a.size() / 2);
  std::nth_element(a.begin(), mid, a.end());
  double med = *mid;
  if (a.size() % 2 == 0) med = 0.5 * (med + *std::max_element(a.begin(), mid));
  return med > 0.0 ? med : 1.0;
}

enum class DirectionScheme { gaussian_iid, span_restricted, explicit_vectors };

/// N unit vectors in R^d.
struct DirectionSet {
  Matrix vectors;  ///< N x d, unit-norm rows
  std::uint64_t seed = 0;
  DirectionScheme scheme = DirectionScheme::explicit_vectors;

  std::size_t size() const noexcept { return static_cast<std::size_t>(vectors.rows()); }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(vectors.cols()); }

  static DirectionSet from_vectors(Matrix v) {
    for (Eigen::Index k = 0; k < v.rows(); ++k) {
      const double norm = v.row(k).norm();
      if (!(norm > 0.0) || !std::isfinite(norm)) throw ParameterError("direction vectors must be nonzero");
      v.row(k) /= norm;
    }
    return {std::move(v), 0, DirectionScheme::explicit_vectors};
  }

  /// Isotropic Gaussian directions in R^d; direction k uses its own derived stream.
  static DirectionSet gaussian(std::size_t d, std::size_t N, std::uint64_t seed) {
    Matrix v(static_cast<Eigen::Index>(N), static_cast<Eigen::Index>(d));
    for (std::size_t k = 0; k < N; ++k) {
      NormalStream z(derive_seed(seed, k));
      for (std::size_t j = 0; j < d; ++j) v(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(j)) = z();
      v.row(static_cast<Eigen::Index>(k)).normalize();
    }
    return {std::move(v), seed, DirectionScheme::gaussian_iid};
  }

  /// Isotropic Gaussian directions within the span of the centered sample.
  /// A rank-zero span carries no direction information; full-space Gaussian
  /// directions are returned instead.
  static DirectionSet within_span(const SpanDecomposition& span, std::size_t N, std::uint64_t seed) {
    if (span.rank == 0) return gaussian(static_cast<std::size_t>(span.mean.size()), N, seed);
    Matrix coef(static_cast<Eigen::Index>(N), span.rank);
    for (std::size_t k = 0; k < N; ++k) {
      NormalStream z(derive_seed(seed, k));
      for (int j = 0; j < span.rank; ++j) coef(static_cast<Eigen::Index>(k), j) = z();
    }
    Matrix v = coef * span.basis;
    v.rowwise().normalize();
    return {std::move(v), seed, DirectionScheme::span_restricted};
  }
};

namespace detail {

inline void check_directions(const DirectionSet& dirs, const FunctionalSample& sample) {
  if (dirs.size() == 0) throw ParameterError("direction set is empty");
  if (dirs.dim() != sample.dim())
    throw DimensionError("directions have dimension " + std::to_string(dirs.dim()) + " but sample has " +
                         std::to_string(sample.dim()));
}

}  // namespace detail

/// Random Tukey depth: min over the given directions of the smaller one-sided
/// fraction of projected sample points.
inline double rtd(const CurveView& x, const FunctionalSample& sample, const DirectionSet& dirs) {
  require_curve_length(x, sample);
  detail::check_directions(dirs, sample);
  const Eigen::MatrixXd proj = sample.values() * dirs.vectors.transpose();  // n x N
  const Vector px = dirs.vectors * x;
  const auto n = proj.rows();
  std::size_t best = static_cast<std::size_t>(n);
  for (Eigen::Index k = 0; k < proj.cols(); ++k) {
    std::size_t le = 0, ge = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
      le += proj(i, k) <= px[k];
      ge += proj(i, k) >= px[k];
    }
    best = std::min({best, le, ge});
  }
  return static_cast<double>(best) / static_cast<double>(n);
}

/// Empirical half-space depth: exactly 0 when x is separable from the sample's
/// affine hull, otherwise the random-direction minimum (an upper bound on the
/// infimum over all directions).
inline double hd(const CurveView& x, const FunctionalSample& sample, const DirectionSet& dirs,
                 double tol = default_span_tol) {
  require_curve_length(x, sample);
  if (span_residual(x, decompose_span(sample, tol)) > tol * projection_scale(sample)) return 0.0;
  return rtd(x, sample, dirs);
}

namespace detail {

// [1 + max_u |u.x - mean(u.X)| / sd(u.X)]^{-1} over directions with sd >= cutoff.
inline double projection_depth_directional(const CurveView& x, const FunctionalSample& sample,
                                           const DirectionSet& dirs, double sd_cutoff) {
  check_directions(dirs, sample);
  const Eigen::MatrixXd proj = sample.values() * dirs.vectors.transpose();
  const Vector px = dirs.vectors * x;
  const double n = static_cast<double>(proj.rows());
  double worst = 0.0;
  bool any = false;
  for (Eigen::Index k = 0; k < proj.cols(); ++k) {
    const double mean = proj.col(k).sum() / n;
    const double sd = std::sqrt((proj.col(k).array() - mean).square().sum() / n);
    if (sd < sd_cutoff) continue;
    any = true;
    worst = std::max(worst, std::abs(px[k] - mean) / sd);
  }
  if (!any) throw DegenerateSampleError("every projection direction has zero spread");
  return 1.0 / (1.0 + worst);
}

}  // namespace detail

/// Projection depth with mean/standard-deviation standardization.
/// Directions with sd below tol * scale are skipped.
inline double pd(const CurveView& x, const FunctionalSample& sample, const DirectionSet& dirs,
                 double tol = default_span_tol) {
  require_curve_length(x, sample);
  if (sample.rows() < 2) throw DataError("projection depth needs at least two sample curves");
  const double scale = projection_scale(sample);
  if (span_residual(x, decompose_span(sample, tol)) > tol * scale) return 0.0;
  return detail::projection_depth_directional(x, sample, dirs, tol * scale);
}

/// Integrated dual depth: average univariate depth of the projected point.
inline double idd(const CurveView& x, const FunctionalSample& sample, const DirectionSet& dirs,
                  UnivariateKind kind = UnivariateKind::spatial) {
  require_curve_length(x, sample);
  detail::check_directions(dirs, sample);
  const Eigen::MatrixXd proj = sample.values() * dirs.vectors.transpose();
  const Vector px = dirs.vectors * x;
  double s = 0.0;
  for (Eigen::Index k = 0; k < proj.cols(); ++k)
    s += ud(kind, px[k], std::span<const double>(proj.col(k).data(), static_cast<std::size_t>(proj.rows())));
  return s / static_cast<double>(proj.cols());
}

/// Running Chebyshev/Cauchy-Schwarz bound [sum_{k<=m} z_k^2]^{-1}, m = 1..len,
/// on standardized residuals z_k. Infinite while the prefix is all zero.
inline std::vector<double> hd_upper_bound(std::span<const double> standardized) {
  std::vector<double> out(standardized.size());
  double s = 0.0;
  for (std::size_t k = 0; k < standardized.size(); ++k) {
    s += standardized[k] * standardized[k];
    out[k] = s > 0.0 ? 1.0 / s : std::numeric_limits<double>::infinity();
  }
  return out;
}

}  // namespace fundepth
