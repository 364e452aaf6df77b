#pragma once

// Seeded generators for Brownian motion, fractional Brownian motion, their
// bridges, the AR-type Gaussian sequence model, and strictly increasing
// pointwise transforms g(t, y) of those.
//
// Every Gaussian model is sampled as mean + L z with L the Cholesky factor of
// the covariance on the grid. Grid points with zero variance (t = 0, and the
// pinned endpoint of a bridge) are excluded from the factorization and filled
// with their constant value.

#include <cmath>
#include <string>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <boost/math/distributions/normal.hpp>

#include "fundepth/core.hpp"
#include "fundepth/parallel.hpp"
#include "fundepth/random.hpp"

namespace fundepth {

enum class ProcessKind { bm, fbm, bridge, fbb, gauss_seq };

inline std::string_view to_string(ProcessKind k) {
  switch (k) {
    case ProcessKind::bm: return "bm";
    case ProcessKind::fbm: return "fbm";
    case ProcessKind::bridge: return "bridge";
    case ProcessKind::fbb: return "fbb";
    case ProcessKind::gauss_seq: return "gauss_seq";
  }
  return "?";
}

/// g(t, y) = intercept(t) + slope(t) y, optionally exponentiated, with slope
/// and intercept linear in t. Strictly increasing in y when slope(t) > 0.
struct Link {
  double slope0 = 1.0;
  double slope1 = 0.0;
  double intercept0 = 0.0;
  double intercept1 = 0.0;
  bool exponentiate = false;

  static Link identity() { return {}; }
  static Link exp() { return {1.0, 0.0, 0.0, 0.0, true}; }
  static Link affine(double slope0, double slope1, double intercept0, double intercept1) {
    return {slope0, slope1, intercept0, intercept1, false};
  }
  /// exp((r - sigma^2/2) t + sigma y): geometric Brownian motion from a standard BM y.
  static Link gbm(double r, double sigma) { return {sigma, 0.0, 0.0, r - 0.5 * sigma * sigma, true}; }

  double slope(double t) const { return slope0 + slope1 * t; }
  double intercept(double t) const { return intercept0 + intercept1 * t; }

  double operator()(double t, double y) const {
    const double v = intercept(t) + slope(t) * y;
    return exponentiate ? std::exp(v) : v;
  }

  bool is_identity() const {
    return slope0 == 1.0 && slope1 == 0.0 && intercept0 == 0.0 && intercept1 == 0.0 && !exponentiate;
  }

  /// slope is linear in t, so positivity at the window ends covers the whole window.
  void validate(const Grid& grid) const {
    if (!std::isfinite(slope0) || !std::isfinite(slope1) || !std::isfinite(intercept0) ||
        !std::isfinite(intercept1))
      throw ParameterError("link coefficients must be finite");
    const auto p = grid.points();
    if (!(slope(p.front()) > 0.0) || !(slope(p.back()) > 0.0))
      throw ParameterError("link slope must be positive over the grid window");
  }
};

/// Parametric description of a simulable process on a grid.
struct ProcessSpec {
  ProcessKind kind = ProcessKind::bm;
  double hurst = 0.5;
  double y0 = 0.0;   ///< value at t = 0
  double b0 = 0.0;   ///< value at t = 1 for bridges
  double rho = 0.1;  ///< correlation decay of the Gaussian sequence model
  Grid grid;
  Link link;

  static ProcessSpec brownian(Grid grid) { return with(ProcessKind::bm, 0.5, std::move(grid)); }
  static ProcessSpec fbm(double H, Grid grid) { return with(ProcessKind::fbm, H, std::move(grid)); }
  static ProcessSpec bridge(Grid grid) { return with(ProcessKind::bridge, 0.5, std::move(grid)); }
  static ProcessSpec fbb(double H, double b0, Grid grid) {
    auto s = with(ProcessKind::fbb, H, std::move(grid));
    s.b0 = b0;
    return s;
  }
  static ProcessSpec gbm(double r, double sigma, Grid grid) {
    if (!(sigma > 0.0)) throw ParameterError("sigma must be positive");
    auto s = brownian(std::move(grid));
    s.link = Link::gbm(r, sigma);
    return s;
  }
  static ProcessSpec gauss_seq(double rho, std::size_t d) {
    auto s = with(ProcessKind::gauss_seq, 0.5, Grid::sequence(d));
    s.rho = rho;
    return s;
  }

  bool is_path() const { return kind != ProcessKind::gauss_seq; }
  bool is_bridge() const { return kind == ProcessKind::bridge || kind == ProcessKind::fbb; }

  void validate() const {
    if (grid.size() == 0) throw ParameterError("process grid is empty");
    if (kind == ProcessKind::gauss_seq) {
      if (!(rho > 0.0 && rho < 1.0)) throw ParameterError("Gaussian sequence r must lie in (0,1)");
    } else {
      if (!(hurst > 0.0 && hurst < 1.0)) throw ParameterError("Hurst index H must lie in (0,1)");
      if (grid.point(0) < 0.0) throw ParameterError("path process grid must start at t >= 0");
      if (is_bridge() && grid.points().back() > 1.0) throw ParameterError("bridge grid must lie in [0,1]");
    }
    if (!std::isfinite(y0) || !std::isfinite(b0)) throw ParameterError("start/end values must be finite");
    link.validate(grid);
  }

 private:
  static ProcessSpec with(ProcessKind k, double H, Grid grid) {
    ProcessSpec s;
    s.kind = k;
    s.hurst = H;
    s.grid = std::move(grid);
    return s;
  }
};

/// fBm covariance (t^{2H} + s^{2H} - |t-s|^{2H}) / 2.
inline double fbm_covariance(double H, double t, double s) {
  const double e = 2.0 * H;
  return 0.5 * (std::pow(t, e) + std::pow(s, e) - std::pow(std::abs(t - s), e));
}

/// rho^{|k-l|} / (k l)^2 for k, l = 1..d. Any rho > 0 is accepted here so the
/// positive semidefiniteness check can be exercised on other readings.
inline Eigen::MatrixXd gauss_seq_covariance(double rho, std::size_t d) {
  Eigen::MatrixXd K(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  for (std::size_t k = 1; k <= d; ++k)
    for (std::size_t l = 1; l <= d; ++l) {
      const double kl = static_cast<double>(k) * static_cast<double>(l);
      K(static_cast<Eigen::Index>(k - 1), static_cast<Eigen::Index>(l - 1)) =
          std::pow(rho, std::abs(static_cast<double>(k) - static_cast<double>(l))) / (kl * kl);
    }
  return K;
}

namespace detail {

// Points at which the base Gaussian vector is drawn. For path processes these
// are the grid points with t > 0; bridges always include t = 1 (appended when
// absent) because the bridge is built from the unconditioned value there.
struct GaussianLayout {
  std::vector<double> base_points;
  std::vector<std::ptrdiff_t> base_of_grid;  // grid index -> base index, -1 for t = 0
  std::ptrdiff_t endpoint = -1;              // base index of t = 1 for bridges
};

inline GaussianLayout layout(const ProcessSpec& spec) {
  GaussianLayout L;
  const auto p = spec.grid.points();
  L.base_of_grid.assign(p.size(), -1);
  for (std::size_t j = 0; j < p.size(); ++j) {
    if (spec.is_path() && p[j] == 0.0) continue;
    L.base_of_grid[j] = static_cast<std::ptrdiff_t>(L.base_points.size());
    L.base_points.push_back(p[j]);
  }
  if (spec.is_bridge()) {
    if (!L.base_points.empty() && L.base_points.back() == 1.0) {
      L.endpoint = static_cast<std::ptrdiff_t>(L.base_points.size()) - 1;
    } else {
      L.endpoint = static_cast<std::ptrdiff_t>(L.base_points.size());
      L.base_points.push_back(1.0);
    }
  }
  return L;
}

inline double base_covariance(const ProcessSpec& spec, double t, double s) {
  if (spec.kind == ProcessKind::bm || spec.kind == ProcessKind::bridge) return std::min(t, s);
  return fbm_covariance(spec.hurst, t, s);
}

// First leading minor whose pivot is not positive, by unblocked Cholesky.
inline Eigen::Index failing_minor(Eigen::MatrixXd a) {
  const auto m = a.rows();
  for (Eigen::Index k = 0; k < m; ++k) {
    double pivot = a(k, k);
    for (Eigen::Index p = 0; p < k; ++p) pivot -= a(k, p) * a(k, p);
    if (!(pivot > 0.0)) return k + 1;
    const double root = std::sqrt(pivot);
    a(k, k) = root;
    for (Eigen::Index i = k + 1; i < m; ++i) {
      double v = a(i, k);
      for (Eigen::Index p = 0; p < k; ++p) v -= a(i, p) * a(k, p);
      a(i, k) = v / root;
    }
  }
  return -1;
}

}  // namespace detail

/// Covariance of the base Gaussian vector (unconditioned, bridges include t = 1).
inline Eigen::MatrixXd covariance_matrix(const ProcessSpec& spec) {
  spec.validate();
  if (spec.kind == ProcessKind::gauss_seq) return gauss_seq_covariance(spec.rho, spec.grid.size());
  const auto L = detail::layout(spec);
  const auto m = static_cast<Eigen::Index>(L.base_points.size());
  Eigen::MatrixXd K(m, m);
  for (Eigen::Index a = 0; a < m; ++a)
    for (Eigen::Index b = 0; b <= a; ++b)
      K(a, b) = K(b, a) = detail::base_covariance(spec, L.base_points[static_cast<std::size_t>(a)],
                                                  L.base_points[static_cast<std::size_t>(b)]);
  return K;
}

/// Throws NumericalError unless K is symmetric with min eigenvalue >= -1e-8 * max eigenvalue.
inline void validate_covariance(const Eigen::MatrixXd& K) {
  if (K.rows() != K.cols()) throw NumericalError("covariance matrix is not square");
  if (K.size() == 0) return;
  const double mag = K.cwiseAbs().maxCoeff();
  if (!((K - K.transpose()).cwiseAbs().maxCoeff() <= 1e-12 * mag))
    throw NumericalError("covariance matrix is not symmetric");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(K, Eigen::EigenvaluesOnly);
  if (eig.info() != Eigen::Success) throw NumericalError("eigenvalue computation failed on covariance matrix");
  const double lo = eig.eigenvalues().minCoeff(), hi = eig.eigenvalues().maxCoeff();
  if (lo < -1e-8 * std::max(hi, 0.0) || hi <= 0.0)
    throw NumericalError("covariance matrix is not positive semidefinite (min eigenvalue " + std::to_string(lo) +
                         ", max " + std::to_string(hi) + ")");
}

/// Lower Cholesky factor; retries with diagonal jitter 1e-12 .. 1e-8 (relative to
/// the largest variance) before reporting the failing leading minor.
/// A factorization with positive pivots already certifies the matrix, so the
/// O(d^3) eigenvalue check only runs when the plain attempt fails.
inline Eigen::MatrixXd cholesky_factor(const Eigen::MatrixXd& K) {
  if (K.rows() != K.cols()) throw NumericalError("covariance matrix is not square");
  if (K.size() == 0) return K;
  const double mag = K.cwiseAbs().maxCoeff();
  if (!((K - K.transpose()).cwiseAbs().maxCoeff() <= 1e-12 * mag))
    throw NumericalError("covariance matrix is not symmetric");
  Eigen::LLT<Eigen::MatrixXd> llt(K);
  if (llt.info() == Eigen::Success) return llt.matrixL();
  validate_covariance(K);
  const double scale = K.diagonal().maxCoeff();
  Eigen::MatrixXd jittered = K;
  for (double jitter = 1e-12; jitter <= 1e-8 * 1.0000001; jitter *= 10.0) {
    jittered = K;
    jittered.diagonal().array() += jitter * scale;
    llt.compute(jittered);
    if (llt.info() == Eigen::Success) return llt.matrixL();
  }
  throw NumericalError("Cholesky factorization failed at leading minor " +
                       std::to_string(detail::failing_minor(jittered)) + " after maximum jitter");
}

/// Draws n rows of the Gaussian part of spec (the link is not applied).
/// Row i uses its own random stream derived from (seed, i).
inline FunctionalSample gen_gaussian_paths(const ProcessSpec& spec, std::size_t n, std::uint64_t seed) {
  spec.validate();
  if (n < 1) throw ParameterError("n must be at least 1");
  const auto lay = detail::layout(spec);
  const auto m = static_cast<Eigen::Index>(lay.base_points.size());
  const auto d = static_cast<Eigen::Index>(spec.grid.size());
  const auto rows = static_cast<Eigen::Index>(n);

  Eigen::MatrixXd W(rows, m);
  if (m > 0) {
    const Eigen::MatrixXd L = cholesky_factor(covariance_matrix(spec));
    Eigen::MatrixXd Z(rows, m);
    parallel_for(n, [&](std::size_t i) {
      NormalStream z(derive_seed(seed, i));
      for (Eigen::Index k = 0; k < m; ++k) Z(static_cast<Eigen::Index>(i), k) = z();
    });
    W.noalias() = Z * L.transpose().triangularView<Eigen::Upper>();
  }

  Matrix values(rows, d);
  const auto p = spec.grid.points();
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      const double t = p[static_cast<std::size_t>(j)];
      const auto b = lay.base_of_grid[static_cast<std::size_t>(j)];
      if (b < 0) {
        values(i, j) = spec.y0;
      } else if (!spec.is_bridge()) {
        values(i, j) = spec.y0 + W(i, b);
      } else if (b == lay.endpoint) {
        values(i, j) = spec.b0;
      } else {
        const double k1 = detail::base_covariance(spec, t, 1.0);
        values(i, j) = spec.y0 + W(i, b) - k1 * (W(i, lay.endpoint) - (spec.b0 - spec.y0));
      }
    }
  }
  return FunctionalSample(spec.grid, std::move(values));
}

/// X_ij = g(t_j, Y_ij).
inline FunctionalSample apply_link(const FunctionalSample& sample, const Link& link) {
  link.validate(sample.grid());
  Matrix v = sample.values();
  const auto p = sample.grid().points();
  for (Eigen::Index i = 0; i < v.rows(); ++i)
    for (Eigen::Index j = 0; j < v.cols(); ++j) v(i, j) = link(p[static_cast<std::size_t>(j)], v(i, j));
  return FunctionalSample(sample.grid(), std::move(v), sample.labels());
}

/// Full process draw: Gaussian part, then the link.
inline FunctionalSample simulate(const ProcessSpec& spec, std::size_t n, std::uint64_t seed) {
  auto base = gen_gaussian_paths(spec, n, seed);
  return spec.link.is_identity() ? base : apply_link(base, spec.link);
}

inline FunctionalSample gen_gbm(double r, double sigma, const Grid& grid, std::size_t n, std::uint64_t seed) {
  return simulate(ProcessSpec::gbm(r, sigma, grid), n, seed);
}

inline FunctionalSample gen_gauss_seq(double rho, std::size_t d, std::size_t n, std::uint64_t seed) {
  return gen_gaussian_paths(ProcessSpec::gauss_seq(rho, d), n, seed);
}

struct Marginal {
  double mean = 0.0;
  double sd = 0.0;
};

/// Mean and standard deviation of the Gaussian part at grid index j.
inline Marginal marginal(const ProcessSpec& spec, std::size_t j) {
  const double t = spec.grid.point(j);
  if (spec.kind == ProcessKind::gauss_seq) return {0.0, 1.0 / (t * t)};
  if (t == 0.0) return {spec.y0, 0.0};
  if (!spec.is_bridge()) return {spec.y0, std::sqrt(detail::base_covariance(spec, t, t))};
  if (t == 1.0) return {spec.b0, 0.0};
  const double k1 = detail::base_covariance(spec, t, 1.0);
  const double var = detail::base_covariance(spec, t, t) - k1 * k1;
  return {spec.y0 + k1 * (spec.b0 - spec.y0), std::sqrt(std::max(var, 0.0))};
}

/// Standard normal quantile.
inline double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) throw ParameterError("p must lie in (0,1)");
  return boost::math::quantile(boost::math::normal(), p);
}

/// Pointwise p-quantile curve g(t, mean_t + sd_t z_p) of the linked process.
inline Vector quantile_curve(const ProcessSpec& spec, double p) {
  const double z = normal_quantile(p);
  spec.validate();
  Vector x(static_cast<Eigen::Index>(spec.grid.size()));
  for (std::size_t j = 0; j < spec.grid.size(); ++j) {
    const Marginal m = marginal(spec, j);
    x[static_cast<Eigen::Index>(j)] = spec.link(spec.grid.point(j), m.mean + m.sd * z);
  }
  return x;
}

}  // namespace fundepth
