#pragma once

// Small generators shared by the test suites. Every generator takes an
// explicit engine so failures can be replayed from the printed seed.

#include <random>
#include <vector>

#include "fundepth/fundepth.hpp"

namespace fundepth::testing {

using Engine = std::mt19937_64;

inline FunctionalSample constant_curves(const std::vector<double>& levels, std::size_t d = 4) {
  Matrix v(static_cast<Eigen::Index>(levels.size()), static_cast<Eigen::Index>(d));
  for (std::size_t i = 0; i < levels.size(); ++i) v.row(static_cast<Eigen::Index>(i)).setConstant(levels[i]);
  return FunctionalSample(Grid::sequence(d), std::move(v));
}

inline Vector constant_curve(double level, std::size_t d = 4) {
  return Vector::Constant(static_cast<Eigen::Index>(d), level);
}

inline Matrix gaussian_matrix(Engine& rng, std::size_t n, std::size_t d) {
  std::normal_distribution<double> z;
  Matrix m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(d));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = z(rng);
  return m;
}

// Values on a coarse lattice so ties between curves actually occur.
inline Matrix lattice_matrix(Engine& rng, std::size_t n, std::size_t d, int levels = 4) {
  std::uniform_int_distribution<int> u(0, levels - 1);
  Matrix m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(d));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = u(rng);
  return m;
}

// Random trapezoid grid on sorted uniform points.
inline Grid random_grid(Engine& rng, std::size_t d) {
  if (d == 1) return Grid::sequence(1);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> p(d);
  for (auto& t : p) t = u(rng);
  std::sort(p.begin(), p.end());
  for (std::size_t j = 1; j < d; ++j)
    if (p[j] <= p[j - 1]) p[j] = p[j - 1] + 1e-6;
  return Grid::trapezoid(p);
}

inline FunctionalSample random_sample(Engine& rng, std::size_t n, std::size_t d, bool ties = false) {
  return FunctionalSample(random_grid(rng, d), ties ? lattice_matrix(rng, n, d) : gaussian_matrix(rng, n, d));
}

inline std::size_t uniform_size(Engine& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

}  // namespace fundepth::testing
