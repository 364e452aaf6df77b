#include <gtest/gtest.h>

#include "support.hpp"

namespace fd = fundepth;
using fd::UnivariateKind;
using fd::testing::Engine;

namespace {

constexpr UnivariateKind all_kinds[] = {UnivariateKind::halfspace, UnivariateKind::simplicial,
                                         UnivariateKind::spatial};

// Plug-in simplicial depth: probability that x lies between two independent
// draws from the empirical distribution, counted over all ordered pairs.
double simplicial_pairs(double x, const std::vector<double>& col) {
  double hits = 0;
  for (double a : col)
    for (double b : col) hits += std::min(a, b) <= x && x <= std::max(a, b);
  return hits / static_cast<double>(col.size() * col.size());
}

}  // namespace

TEST(Ud, Examples) {
  const std::vector<double> three{1, 2, 3}, four{1, 2, 3, 4};
  EXPECT_EQ(fd::ud(UnivariateKind::spatial, 2, three), 1.0);
  EXPECT_EQ(fd::ud(UnivariateKind::halfspace, 2, four), 0.5);
  EXPECT_EQ(fd::ud(UnivariateKind::simplicial, 0, three), 0.0);
}

TEST(UdProperty, ComposesPsiWithTheEcdf) {
  Engine rng(201);
  std::normal_distribution<double> z;
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<double> col(fd::testing::uniform_size(rng, 1, 20));
    for (auto& v : col) v = z(rng);
    const double x = z(rng);  // continuous draws: no ties with the column
    const double F = fd::ecdf(col, x).le;
    for (auto kind : all_kinds) {
      const double got = fd::ud(kind, x, col);
      ASSERT_NEAR(got, fd::psi(kind, F), 1e-15);
      ASSERT_GE(got, 0.0);
      ASSERT_LE(got, 1.0);
    }
    ASSERT_NEAR(fd::ud(UnivariateKind::simplicial, x, col), simplicial_pairs(x, col), 1e-12);
  }
}

TEST(UdProperty, StaysInUnitIntervalWithTies) {
  Engine rng(203);
  for (int trial = 0; trial < 300; ++trial) {
    const auto m = fd::testing::lattice_matrix(rng, fd::testing::uniform_size(rng, 1, 12), 1, 3);
    const std::vector<double> col(m.data(), m.data() + m.rows());
    for (double x : {-1.0, 0.0, 1.0, 1.5, 2.0, 3.0})
      for (auto kind : all_kinds) {
        const double v = fd::ud(kind, x, col);
        ASSERT_GE(v, 0.0);
        ASSERT_LE(v, 1.0);
      }
  }
}

TEST(Psi, VanishesAtTheEnds) {
  for (auto kind : all_kinds) {
    EXPECT_EQ(fd::psi(kind, 0.0), 0.0);
    EXPECT_EQ(fd::psi(kind, 1.0), 0.0);
  }
  EXPECT_EQ(fd::psi(UnivariateKind::spatial, 0.5), 1.0);
}

TEST(Id, PointwiseMedianAndFarShift) {
  Engine rng(207);
  const auto s = fd::testing::random_sample(rng, 5, 6);
  fd::Vector median(6), beyond(6);
  for (std::size_t j = 0; j < 6; ++j) {
    auto c = s.column(j);
    std::sort(c.begin(), c.end());
    median[static_cast<Eigen::Index>(j)] = c[2];
    beyond[static_cast<Eigen::Index>(j)] = c[4] + 10;
  }
  EXPECT_DOUBLE_EQ(fd::id(median, s, UnivariateKind::spatial), 1.0);
  EXPECT_EQ(fd::id(beyond, s, UnivariateKind::spatial), 0.0);
  for (std::size_t i = 0; i < s.rows(); ++i) EXPECT_LE(fd::id(s.curve(i), s), fd::id(median, s));
}

TEST(IdProperty, IntegratesTheUnivariateDepth) {
  Engine rng(209);
  for (int trial = 0; trial < 100; ++trial) {
    const auto s = fd::testing::random_sample(rng, fd::testing::uniform_size(rng, 1, 10),
                                              fd::testing::uniform_size(rng, 1, 8), trial % 2);
    const fd::Vector x = s.curve(rng() % s.rows());
    for (auto kind : all_kinds) {
      std::vector<double> f(s.dim());
      for (std::size_t j = 0; j < s.dim(); ++j) f[j] = fd::ud(kind, x[static_cast<Eigen::Index>(j)], s.column(j));
      const double v = fd::id(x, s, kind);
      ASSERT_NEAR(v, fd::integrate(f, s.grid()), 1e-12);
      ASSERT_GE(v, 0.0);
      ASSERT_LE(v, 1.0 + 1e-12);
    }
  }
}

TEST(IdProperty, InvariantUnderIncreasingCoordinateMaps) {
  Engine rng(211);
  for (int trial = 0; trial < 100; ++trial) {
    const auto s = fd::testing::random_sample(rng, fd::testing::uniform_size(rng, 2, 10),
                                              fd::testing::uniform_size(rng, 1, 8), trial % 2);
    const fd::Vector x = s.curve(rng() % s.rows());
    // a different strictly increasing map at each coordinate
    auto g = [](std::size_t j, double y) { return j % 2 ? std::exp(y) : y * y * y + static_cast<double>(j); };
    fd::Matrix v = s.values();
    fd::Vector gx = x;
    for (Eigen::Index j = 0; j < v.cols(); ++j) {
      for (Eigen::Index i = 0; i < v.rows(); ++i) v(i, j) = g(static_cast<std::size_t>(j), v(i, j));
      gx[j] = g(static_cast<std::size_t>(j), x[j]);
    }
    const fd::FunctionalSample t(s.grid(), v);
    for (auto kind : all_kinds) ASSERT_EQ(fd::id(gx, t, kind), fd::id(x, s, kind));
  }
}

TEST(Hdepth, Examples) {
  const auto one = fd::testing::constant_curves({1.5}, 3);
  EXPECT_DOUBLE_EQ(fd::hdepth(fd::testing::constant_curve(1.5, 3), one, {0.7}), 1.0 / 0.7);

  // every sample curve at distance exactly h = 2 (constant offsets +-2)
  const auto s = fd::testing::constant_curves({-2, 2, 2}, 3);
  EXPECT_DOUBLE_EQ(fd::hdepth(fd::testing::constant_curve(0, 3), s, {2.0}), std::exp(-1.0) / 2.0);
}

TEST(Hdepth, DecreasesAlongARay) {
  Engine rng(213);
  const auto s = fd::testing::random_sample(rng, 8, 5);
  const fd::Vector u = fd::testing::gaussian_matrix(rng, 1, 5).row(0).transpose();
  double prev = std::numeric_limits<double>::infinity();
  for (double step : {1.0, 2.0, 4.0, 8.0, 16.0, 32.0}) {
    const double v = fd::hdepth(fd::Vector(s.curve(0) + step * u), s, {1.0});
    EXPECT_LT(v, prev);
    prev = v;
  }
  EXPECT_LT(prev, 1e-6);
}

TEST(HdepthProperty, LiteralKernelAverage) {
  Engine rng(215);
  std::uniform_real_distribution<double> uh(0.1, 5.0);
  for (int trial = 0; trial < 100; ++trial) {
    const auto s = fd::testing::random_sample(rng, fd::testing::uniform_size(rng, 1, 9),
                                              fd::testing::uniform_size(rng, 1, 7));
    const fd::Vector x = fd::testing::gaussian_matrix(rng, 1, s.dim()).row(0).transpose();
    const double h = uh(rng);
    double expect = 0;
    for (std::size_t i = 0; i < s.rows(); ++i) {
      double d2 = 0;
      for (std::size_t j = 0; j < s.dim(); ++j)
        d2 += s.grid().weight(j) * std::pow(x[static_cast<Eigen::Index>(j)] - s(i, j), 2);
      expect += std::exp(-std::sqrt(d2) / h) / h;
    }
    ASSERT_NEAR(fd::hdepth(x, s, {h}), expect / static_cast<double>(s.rows()), 1e-12);
    // scale contract: doubling every distance and h halves the value
    const fd::FunctionalSample s2(s.grid(), fd::Matrix(2 * s.values()));
    ASSERT_NEAR(fd::hdepth(fd::Vector(2 * x), s2, {2 * h}), fd::hdepth(x, s, {h}) / 2, 1e-12);
  }
}

TEST(Hdepth, RejectsNonPositiveBandwidth) {
  const auto s = fd::testing::constant_curves({1, 2});
  EXPECT_THROW(fd::hdepth(fd::testing::constant_curve(0), s, {0.0}), fd::ParameterError);
  EXPECT_THROW(fd::hdepth(fd::testing::constant_curve(0), s, {-1.0}), fd::ParameterError);
}

TEST(Hdepth, MedianPairwiseDistance) {
  // pairwise distances 1, 2, 3
  EXPECT_DOUBLE_EQ(fd::median_pairwise_distance(fd::testing::constant_curves({0, 1, 3})), 2.0);
  EXPECT_EQ(fd::median_pairwise_distance(fd::testing::constant_curves({4})), 1.0);
}
