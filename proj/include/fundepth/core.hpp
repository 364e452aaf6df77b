#pragma once

// Data model shared by every depth: evaluation grid with quadrature weights,
// the n x d sample of discretized curves, per-point depth results, and the
// rank/count primitives the coordinate-wise depths are built from.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "fundepth/error.hpp"

namespace fundepth {

using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;
/// Read-only view of one curve (contiguous, length d).
using CurveView = Eigen::Ref<const Eigen::VectorXd>;

/// Ordered evaluation points with positive quadrature weights summing to one.
class Grid {
 public:
  Grid() = default;

  Grid(std::vector<double> points, std::vector<double> weights)
      : points_(std::move(points)), weights_(std::move(weights)) {
    validate();
  }

  /// Trapezoid weights normalized by the window length, so integrals are
  /// averages over [t_1, t_d]. A single point gets weight 1.
  static Grid trapezoid(std::vector<double> points) {
    const std::size_t d = points.size();
    if (d == 0) throw GridError("grid must contain at least one point");
    check_increasing(points);
    std::vector<double> w(d, 1.0);
    if (d > 1) {
      const double span = points.back() - points.front();
      w[0] = 0.5 * (points[1] - points[0]) / span;
      w[d - 1] = 0.5 * (points[d - 1] - points[d - 2]) / span;
      for (std::size_t j = 1; j + 1 < d; ++j) w[j] = 0.5 * (points[j + 1] - points[j - 1]) / span;
    }
    return Grid(std::move(points), std::move(w));
  }

  /// Sequence-space grid: points 1..d, uniform weights 1/d.
  static Grid sequence(std::size_t d) {
    if (d == 0) throw GridError("grid must contain at least one point");
    std::vector<double> p(d);
    std::iota(p.begin(), p.end(), 1.0);
    return Grid(std::move(p), std::vector<double>(d, 1.0 / static_cast<double>(d)));
  }

  /// d equispaced points j/(d+1), j = 1..d, strictly inside (0,1).
  static Grid open_unit(std::size_t d) {
    std::vector<double> p(d);
    for (std::size_t j = 0; j < d; ++j) p[j] = static_cast<double>(j + 1) / static_cast<double>(d + 1);
    return trapezoid(std::move(p));
  }

  /// d equispaced points covering [0,1] including both endpoints (d >= 2).
  static Grid closed_unit(std::size_t d) {
    if (d < 2) throw GridError("closed unit grid needs at least two points");
    std::vector<double> p(d);
    for (std::size_t j = 0; j < d; ++j) p[j] = static_cast<double>(j) / static_cast<double>(d - 1);
    return trapezoid(std::move(p));
  }

  std::size_t size() const noexcept { return points_.size(); }
  std::span<const double> points() const noexcept { return points_; }
  std::span<const double> weights() const noexcept { return weights_; }
  double point(std::size_t j) const { return points_.at(j); }
  double weight(std::size_t j) const { return weights_.at(j); }

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  static void check_increasing(const std::vector<double>& p) {
    for (std::size_t j = 0; j < p.size(); ++j) {
      if (!std::isfinite(p[j])) throw GridError("grid point " + std::to_string(j) + " is not finite");
      if (j > 0 && !(p[j] > p[j - 1]))
        throw GridError("grid points must be strictly increasing (violation at index " +
                        std::to_string(j) + ")");
    }
  }

  void validate() const {
    if (points_.empty()) throw GridError("grid must contain at least one point");
    if (points_.size() != weights_.size()) throw GridError("grid points and weights differ in length");
    check_increasing(points_);
    double total = 0.0;
    for (double w : weights_) {
      if (!(w > 0.0) || !std::isfinite(w)) throw GridError("grid weights must be positive and finite");
      total += w;
    }
    if (std::abs(total - 1.0) > 1e-9) throw GridError("grid weights must sum to 1");
  }

  std::vector<double> points_;
  std::vector<double> weights_;
};

/// n observed curves on a common grid; the empirical distribution depths are taken against.
class FunctionalSample {
 public:
  FunctionalSample() = default;

  FunctionalSample(Grid grid, Matrix values, std::vector<std::string> labels = {})
      : grid_(std::move(grid)), values_(std::move(values)), labels_(std::move(labels)) {
    if (values_.rows() < 1) throw DataError("sample must contain at least one curve");
    if (static_cast<std::size_t>(values_.cols()) != grid_.size())
      throw DimensionError("sample has " + std::to_string(values_.cols()) + " columns but grid has " +
                           std::to_string(grid_.size()) + " points");
    if (!values_.allFinite()) throw DataError("sample contains non-finite values");
    if (!labels_.empty() && labels_.size() != static_cast<std::size_t>(values_.rows()))
      throw DataError("label count does not match row count");
  }

  std::size_t rows() const noexcept { return static_cast<std::size_t>(values_.rows()); }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(values_.cols()); }
  const Grid& grid() const noexcept { return grid_; }
  const Matrix& values() const noexcept { return values_; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  double operator()(std::size_t i, std::size_t j) const { return values_(i, j); }

  Eigen::Map<const Vector> curve(std::size_t i) const {
    return Eigen::Map<const Vector>(values_.row(static_cast<Eigen::Index>(i)).data(), values_.cols());
  }

  std::vector<double> column(std::size_t j) const {
    std::vector<double> c(rows());
    for (std::size_t i = 0; i < rows(); ++i) c[i] = values_(i, j);
    return c;
  }

  /// Copy with row i removed (the leave-one-out reference sample).
  FunctionalSample without_row(std::size_t i) const {
    const auto n = values_.rows();
    if (n < 2) throw DataError("cannot drop a row from a one-row sample");
    Matrix rest(n - 1, values_.cols());
    const auto k = static_cast<Eigen::Index>(i);
    if (k > 0) rest.topRows(k) = values_.topRows(k);
    if (k + 1 < n) rest.bottomRows(n - 1 - k) = values_.bottomRows(n - 1 - k);
    std::vector<std::string> labels;
    if (!labels_.empty()) {
      labels = labels_;
      labels.erase(labels.begin() + static_cast<std::ptrdiff_t>(i));
    }
    return FunctionalSample(grid_, std::move(rest), std::move(labels));
  }

 private:
  Grid grid_;
  Matrix values_;
  std::vector<std::string> labels_;
};

inline void require_same_grid(const Grid& a, const Grid& b) {
  if (!(a == b)) throw DimensionError("grid mismatch between inputs");
}

inline void require_curve_length(const CurveView& x, const FunctionalSample& sample) {
  if (static_cast<std::size_t>(x.size()) != sample.dim())
    throw DimensionError("curve has length " + std::to_string(x.size()) + " but sample grid has " +
                         std::to_string(sample.dim()) + " points");
}

/// Quadrature: sum_j w_j f_j.
inline double integrate(std::span<const double> f, const Grid& grid) {
  if (f.size() != grid.size())
    throw DimensionError("integrand has length " + std::to_string(f.size()) + " but grid has " +
                         std::to_string(grid.size()) + " points");
  const auto w = grid.weights();
  double s = 0.0;
  for (std::size_t j = 0; j < f.size(); ++j) s += w[j] * f[j];
  return s;
}

struct EcdfValues {
  double le = 0.0;  ///< #{X_i <= x} / n
  double lt = 0.0;  ///< #{X_i <  x} / n (left limit)
  double ge = 0.0;  ///< #{X_i >= x} / n
};

/// Strictly-below / tied / strictly-above counts of x within a column.
struct RankCounts {
  std::size_t lt = 0;
  std::size_t eq = 0;
  std::size_t gt = 0;
  std::size_t n() const noexcept { return lt + eq + gt; }
};

inline RankCounts count_ranks(std::span<const double> column, double x) {
  RankCounts c;
  for (double v : column) {
    if (v < x)
      ++c.lt;
    else if (v > x)
      ++c.gt;
    else
      ++c.eq;
  }
  return c;
}

inline EcdfValues ecdf(std::span<const double> column, double x) {
  if (column.empty()) throw DataError("ecdf of an empty column");
  const RankCounts c = count_ranks(column, x);
  const double n = static_cast<double>(column.size());
  return {static_cast<double>(c.lt + c.eq) / n, static_cast<double>(c.lt) / n,
          static_cast<double>(c.gt + c.eq) / n};
}

/// Each column of a sample sorted once, for O(log n) rank queries when many
/// curves are evaluated against the same reference.
class SortedColumns {
 public:
  explicit SortedColumns(const FunctionalSample& sample) : n_(sample.rows()), d_(sample.dim()) {
    sorted_.resize(n_ * d_);
    for (std::size_t j = 0; j < d_; ++j) {
      double* col = sorted_.data() + j * n_;
      for (std::size_t i = 0; i < n_; ++i) col[i] = sample(i, j);
      std::sort(col, col + n_);
    }
  }

  std::size_t rows() const noexcept { return n_; }
  std::size_t dim() const noexcept { return d_; }

  RankCounts counts(std::size_t j, double x) const {
    const double* col = sorted_.data() + j * n_;
    const auto lo = std::lower_bound(col, col + n_, x);
    const auto hi = std::upper_bound(lo, col + n_, x);
    RankCounts c;
    c.lt = static_cast<std::size_t>(lo - col);
    c.eq = static_cast<std::size_t>(hi - lo);
    c.gt = n_ - c.lt - c.eq;
    return c;
  }

 private:
  std::size_t n_;
  std::size_t d_;
  std::vector<double> sorted_;  // column-major: column j occupies [j*n, (j+1)*n)
};

enum class DepthKind { hd, pd, rtd, idd, bd, hrd, mbd, mhrd, id, sd, hdepth };

inline constexpr std::string_view depth_kind_names[] = {"hd",  "pd",  "rtd",  "idd", "bd",    "hrd",
                                                        "mbd", "mhrd", "id",  "sd",  "hdepth"};

inline std::string_view to_string(DepthKind k) { return depth_kind_names[static_cast<int>(k)]; }

inline std::string depth_kind_list() {
  std::string s;
  for (auto name : depth_kind_names) {
    if (!s.empty()) s += ", ";
    s += name;
  }
  return s;
}

inline DepthKind parse_depth_kind(std::string_view name) {
  for (std::size_t k = 0; k < std::size(depth_kind_names); ++k)
    if (depth_kind_names[k] == name) return static_cast<DepthKind>(k);
  throw ParameterError("unknown depth kind '" + std::string(name) + "'; expected one of {" +
                       depth_kind_list() + "}");
}

struct DepthMeta {
  std::optional<int> J;
  std::optional<std::size_t> N;
  std::optional<double> h;
  std::optional<std::uint64_t> seed;
  bool leave_one_out = true;
};

/// Depth values for a set of evaluated points plus the kind's attainable maximum.
struct DepthResult {
  DepthKind kind = DepthKind::sd;
  std::vector<double> values;
  double range_hi = 1.0;
  DepthMeta meta;

  bool within_range(double tol = 1e-12) const {
    return std::all_of(values.begin(), values.end(),
                       [&](double v) { return v >= -tol && v <= range_hi + tol; });
  }
};

}  // namespace fundepth
