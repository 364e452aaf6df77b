#pragma once

// One entry point for every depth kind: evaluate a set of curves against a
// reference sample, either leave-one-out (each sample curve against the
// others) or against a separate/full reference.

#include <optional>
#include <vector>

#include "fundepth/band.hpp"
#include "fundepth/core.hpp"
#include "fundepth/integrated.hpp"
#include "fundepth/parallel.hpp"
#include "fundepth/projection.hpp"
#include "fundepth/random.hpp"
#include "fundepth/spatial.hpp"

namespace fundepth {

struct DepthOptions {
  int J = 2;                                      ///< bd, mbd
  std::size_t N = 1000;                           ///< directions for hd, pd, rtd, idd
  std::optional<double> h;                        ///< hdepth bandwidth; default median pairwise distance
  std::uint64_t seed = 0;                         ///< direction generation
  bool leave_one_out = true;                      ///< profiles only
  UnivariateKind univariate = UnivariateKind::spatial;  ///< id, idd
  InnerProductMode inner_product = InnerProductMode::functional_l2;  ///< sd
  double tol = default_span_tol;                  ///< hd, pd separation and spread cutoff
};

namespace detail {

inline std::size_t min_reference_rows(DepthKind kind, const DepthOptions&) {
  switch (kind) {
    case DepthKind::bd:
    case DepthKind::mbd: return 2;  // a larger J is a parameter error, checked separately
    case DepthKind::pd: return 2;
    default: return 1;
  }
}

// Largest number of reference curves sharing one value at some coordinate.
inline std::size_t max_column_multiplicity(const FunctionalSample& ref) {
  std::size_t m = 0;
  for (std::size_t t = 0; t < ref.dim(); ++t) {
    auto c = ref.column(t);
    std::sort(c.begin(), c.end());
    for (std::size_t i = 0, j = 0; i < c.size(); i = j) {
      while (j < c.size() && c[j] == c[i]) ++j;
      m = std::max(m, j - i);
    }
  }
  return m;
}

// Upper end of the attainable empirical range. For the min-of-two-sides
// depths the two sides overlap in the curves tied with x, so the minimum is at
// most 1/2 plus half the largest fraction of reference curves tied with x.
inline double empirical_range_hi(DepthKind kind, const DepthOptions& o, double tie_fraction, double h) {
  switch (kind) {
    case DepthKind::hd:
    case DepthKind::rtd:
    case DepthKind::hrd:
    case DepthKind::mhrd:
      return 0.5 + 0.5 * tie_fraction;
    case DepthKind::bd:
    case DepthKind::mbd: return static_cast<double>(o.J - 1);
    case DepthKind::hdepth: return KernelParams::kernel(0.0) / h;
    default: return 1.0;
  }
}

// Per-reference state shared across the curves evaluated against it.
class Evaluator {
 public:
  Evaluator(const FunctionalSample& ref, DepthKind kind, const DepthOptions& o, double h,
            const DirectionSet* shared_dirs, std::uint64_t dir_seed)
      : ref_(ref), kind_(kind), o_(o), h_(h), shared_dirs_(shared_dirs), dir_seed_(dir_seed) {
    switch (kind) {
      case DepthKind::mbd:
      case DepthKind::mhrd:
      case DepthKind::id: cols_.emplace(ref); break;
      case DepthKind::hd:
      case DepthKind::pd:
        span_.emplace(decompose_span(ref, o.tol));
        scale_ = projection_scale(ref);
        break;
      case DepthKind::sd: ip_ = InnerProductSpec::for_sample(ref, o.inner_product); break;
      default: break;
    }
  }

  double operator()(const CurveView& x) const {
    switch (kind_) {
      case DepthKind::bd: return bd(x, ref_, {o_.J});
      case DepthKind::hrd: return hrd(x, ref_);
      case DepthKind::mbd: return mbd_fast(x, *cols_, ref_.grid(), {o_.J});
      case DepthKind::mhrd: return mhrd(x, *cols_, ref_.grid());
      case DepthKind::id: return id(x, *cols_, ref_.grid(), o_.univariate);
      case DepthKind::sd: return sd(x, ref_, ip_);
      case DepthKind::hdepth: return hdepth(x, ref_, {h_});
      case DepthKind::rtd: return rtd(x, ref_, *shared_dirs_);
      case DepthKind::idd: return idd(x, ref_, *shared_dirs_, o_.univariate);
      case DepthKind::hd:
      case DepthKind::pd: {
        if (span_residual(x, *span_) > o_.tol * scale_) return 0.0;
        // directions are only needed when x is not separable
        const auto dirs = DirectionSet::within_span(*span_, o_.N, dir_seed_);
        return kind_ == DepthKind::hd ? rtd(x, ref_, dirs)
                                       : projection_depth_directional(x, ref_, dirs, o_.tol * scale_);
      }
    }
    return 0.0;
  }

 private:
  const FunctionalSample& ref_;
  DepthKind kind_;
  const DepthOptions& o_;
  double h_;
  const DirectionSet* shared_dirs_;
  std::uint64_t dir_seed_;
  std::optional<SortedColumns> cols_;
  std::optional<SpanDecomposition> span_;
  double scale_ = 1.0;
  InnerProductSpec ip_;
};

inline bool uses_shared_directions(DepthKind k) { return k == DepthKind::rtd || k == DepthKind::idd; }

inline DepthResult make_result(DepthKind kind, const DepthOptions& o, std::size_t count, bool loo) {
  DepthResult r;
  r.kind = kind;
  r.values.resize(count);
  r.meta.leave_one_out = loo;
  if (kind == DepthKind::bd || kind == DepthKind::mbd) r.meta.J = o.J;
  if (kind == DepthKind::hd || kind == DepthKind::pd || kind == DepthKind::rtd || kind == DepthKind::idd) {
    r.meta.N = o.N;
    r.meta.seed = o.seed;
  }
  return r;
}

}  // namespace detail

/// Depth of each curve in `points` with respect to the full `reference` sample.
inline DepthResult depth_against(const FunctionalSample& points, const FunctionalSample& reference, DepthKind kind,
                                 const DepthOptions& o = {}) {
  require_same_grid(points.grid(), reference.grid());
  if (reference.rows() < detail::min_reference_rows(kind, o))
    throw DataError(std::string(to_string(kind)) + " needs at least " +
                    std::to_string(detail::min_reference_rows(kind, o)) + " reference curves");
  if (kind == DepthKind::bd || kind == DepthKind::mbd) detail::check_band_params({o.J}, reference.rows());
  if (o.N == 0 && detail::uses_shared_directions(kind))
    throw ParameterError("N must be positive");
  const double h = o.h.value_or(median_pairwise_distance(reference));
  if (kind == DepthKind::hdepth && !(h > 0.0)) throw ParameterError("bandwidth h must be positive");

  std::optional<DirectionSet> dirs;
  if (detail::uses_shared_directions(kind)) dirs = DirectionSet::gaussian(reference.dim(), o.N, o.seed);

  auto r = detail::make_result(kind, o, points.rows(), false);
  r.range_hi = detail::empirical_range_hi(
      kind, o,
      static_cast<double>(detail::max_column_multiplicity(reference)) / static_cast<double>(reference.rows()), h);
  if (kind == DepthKind::hdepth) r.meta.h = h;
  const detail::Evaluator eval(reference, kind, o, h, dirs ? &*dirs : nullptr, derive_seed(o.seed, 0));
  parallel_for(points.rows(), [&](std::size_t i) { r.values[i] = eval(points.curve(i)); });
  return r;
}

/// Depth of a single curve with respect to `reference`.
inline double depth_of(const CurveView& x, const FunctionalSample& reference, DepthKind kind,
                       const DepthOptions& o = {}) {
  require_curve_length(x, reference);
  Matrix m = x.transpose();
  return depth_against(FunctionalSample(reference.grid(), std::move(m)), reference, kind, o).values[0];
}

/// Depth of every sample curve: against the other n-1 curves when
/// o.leave_one_out is set, otherwise against the whole sample.
inline DepthResult depth_profile(const FunctionalSample& sample, DepthKind kind, const DepthOptions& o = {}) {
  if (!o.leave_one_out) return depth_against(sample, sample, kind, o);

  const std::size_t n = sample.rows();
  const std::size_t need = detail::min_reference_rows(kind, o) + 1;
  if (n < std::max<std::size_t>(need, kind == DepthKind::sd ? 3 : 2))
    throw DataError("leave-one-out " + std::string(to_string(kind)) + " needs at least " +
                    std::to_string(std::max<std::size_t>(need, kind == DepthKind::sd ? 3 : 2)) + " curves, got " +
                    std::to_string(n));
  if (kind == DepthKind::bd || kind == DepthKind::mbd) detail::check_band_params({o.J}, n - 1);
  if (o.N == 0 && detail::uses_shared_directions(kind))
    throw ParameterError("N must be positive");
  const double h = o.h.value_or(median_pairwise_distance(sample));
  if (kind == DepthKind::hdepth && !(h > 0.0)) throw ParameterError("bandwidth h must be positive");

  std::optional<DirectionSet> dirs;
  if (detail::uses_shared_directions(kind)) dirs = DirectionSet::gaussian(sample.dim(), o.N, o.seed);

  auto r = detail::make_result(kind, o, n, true);
  r.range_hi = detail::empirical_range_hi(
      kind, o, static_cast<double>(detail::max_column_multiplicity(sample) - 1) / static_cast<double>(n - 1), h);
  if (kind == DepthKind::hdepth) r.meta.h = h;

  // Rank-based kinds: one sort of the full sample serves every row, since
  // removing x itself only removes one tie at x.
  if (kind == DepthKind::mbd || kind == DepthKind::mhrd || kind == DepthKind::id) {
    const SortedColumns cols(sample);
    const auto w = sample.grid().weights();
    parallel_for(n, [&](std::size_t i) {
      const auto x = sample.curve(i);
      double below = 0.0, above = 0.0, total = 0.0;
      for (std::size_t t = 0; t < sample.dim(); ++t) {
        RankCounts c = cols.counts(t, x[static_cast<Eigen::Index>(t)]);
        --c.eq;
        switch (kind) {
          case DepthKind::mbd: total += w[t] * band_cover_fraction(c, o.J); break;
          case DepthKind::id: total += w[t] * ud_from_counts(o.univariate, c); break;
          default:
            below += w[t] * static_cast<double>(c.lt + c.eq) / static_cast<double>(n - 1);
            above += w[t] * static_cast<double>(c.gt + c.eq) / static_cast<double>(n - 1);
        }
      }
      r.values[i] = kind == DepthKind::mhrd ? std::min(below, above) : total;
    });
    return r;
  }

  parallel_for(n, [&](std::size_t i) {
    const FunctionalSample rest = sample.without_row(i);
    const detail::Evaluator eval(rest, kind, o, h, dirs ? &*dirs : nullptr, derive_seed(o.seed, i + 1));
    r.values[i] = eval(sample.curve(i));
  });
  return r;
}

}  // namespace fundepth
