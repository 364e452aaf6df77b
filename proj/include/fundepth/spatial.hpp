#pragma once

#include <vector>

#include "fundepth/core.hpp"
#include "fundepth/parallel.hpp"

namespace fundepth {

enum class InnerProductMode { sequence_l2, functional_l2 };

/// Weighted inner product <a,b> = sum_j w_j a_j b_j.
/// sequence_l2 uses unit weights, functional_l2 the grid quadrature weights.
struct InnerProductSpec {
  InnerProductMode mode = InnerProductMode::functional_l2;
  std::vector<double> weights;

  static InnerProductSpec sequence(std::size_t d) {
    return {InnerProductMode::sequence_l2, std::vector<double>(d, 1.0)};
  }
  static InnerProductSpec functional(const Grid& grid) {
    return {InnerProductMode::functional_l2, {grid.weights().begin(), grid.weights().end()}};
  }
  static InnerProductSpec for_sample(const FunctionalSample& s, InnerProductMode mode) {
    return mode == InnerProductMode::sequence_l2 ? sequence(s.dim()) : functional(s.grid());
  }

  double norm(const CurveView& v) const {
    double s = 0.0;
    for (Eigen::Index j = 0; j < v.size(); ++j) s += weights[static_cast<std::size_t>(j)] * v[j] * v[j];
    return std::sqrt(s);
  }
};

/// Spatial depth 1 - ||mean of unit vectors (x - X_i)/||x - X_i|| ||.
/// Sample curves equal to x are excluded from the mean.
inline double sd(const CurveView& x, const FunctionalSample& sample, const InnerProductSpec& ip) {
  require_curve_length(x, sample);
  if (ip.weights.size() != sample.dim()) throw DimensionError("inner product weights do not match the grid");
  Vector sum = Vector::Zero(x.size());
  Vector diff(x.size());
  std::size_t used = 0;
  for (std::size_t i = 0; i < sample.rows(); ++i) {
    diff = x - sample.curve(i);
    const double norm = ip.norm(diff);
    if (norm == 0.0) continue;
    sum += diff / norm;
    ++used;
  }
  if (used == 0) throw UndefinedDepthError("spatial depth undefined: every sample curve equals the evaluated curve");
  sum /= static_cast<double>(used);
  return std::clamp(1.0 - ip.norm(sum), 0.0, 1.0);
}

/// Spatial depth of every sample curve, against the remaining curves when leave_one_out is set.
inline DepthResult sd_profile(const FunctionalSample& sample, const InnerProductSpec& ip, bool leave_one_out) {
  const std::size_t n = sample.rows();
  if (leave_one_out && n < 3) throw DataError("leave-one-out spatial depth needs at least three curves");
  DepthResult r;
  r.kind = DepthKind::sd;
  r.range_hi = 1.0;
  r.meta.leave_one_out = leave_one_out;
  r.values.resize(n);
  parallel_for(n, [&](std::size_t i) {
    r.values[i] = leave_one_out ? sd(sample.curve(i), sample.without_row(i), ip) : sd(sample.curve(i), sample, ip);
  });
  return r;
}

}  // namespace fundepth
