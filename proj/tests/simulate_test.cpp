#include <gtest/gtest.h>

#include <boost/math/distributions/normal.hpp>

#include "support.hpp"

namespace fd = fundepth;
using fd::testing::Engine;

namespace {

double column_mean(const fd::FunctionalSample& s, std::size_t j) {
  return s.values().col(static_cast<Eigen::Index>(j)).mean();
}

double column_cov(const fd::FunctionalSample& s, std::size_t a, std::size_t b) {
  const auto x = s.values().col(static_cast<Eigen::Index>(a)), y = s.values().col(static_cast<Eigen::Index>(b));
  return ((x.array() - x.mean()) * (y.array() - y.mean())).sum() / static_cast<double>(s.rows() - 1);
}

bool same_column_ranks(const fd::FunctionalSample& a, const fd::FunctionalSample& b) {
  for (std::size_t j = 0; j < a.dim(); ++j)
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t k = 0; k < a.rows(); ++k)
        if ((a(i, j) < a(k, j)) != (b(i, j) < b(k, j))) return false;
  return true;
}

}  // namespace

TEST(Covariance, HalfHurstIsTheMinimum) {
  const auto spec = fd::ProcessSpec::fbm(0.5, fd::Grid::open_unit(200));
  const auto K = fd::covariance_matrix(spec);
  double worst = 0;
  for (Eigen::Index a = 0; a < K.rows(); ++a)
    for (Eigen::Index b = 0; b < K.cols(); ++b)
      worst = std::max(worst, std::abs(K(a, b) - std::min(spec.grid.point(static_cast<std::size_t>(a)),
                                                           spec.grid.point(static_cast<std::size_t>(b)))));
  EXPECT_LE(worst, 1e-12);
}

TEST(Covariance, GeneratedMatricesPassTheSemidefiniteCheck) {
  for (double H : {0.1, 0.5, 0.75, 0.95}) {
    EXPECT_NO_THROW(fd::validate_covariance(fd::covariance_matrix(fd::ProcessSpec::fbm(H, fd::Grid::open_unit(60)))));
    EXPECT_NO_THROW(
        fd::validate_covariance(fd::covariance_matrix(fd::ProcessSpec::fbb(H, 0.0, fd::Grid::closed_unit(40)))));
  }
  EXPECT_NO_THROW(fd::validate_covariance(fd::gauss_seq_covariance(0.1, 80)));
}

TEST(Covariance, LiteralSequenceReadingIsRejected) {
  // growth factor 10 per lag breaks |correlation| <= 1
  EXPECT_THROW(fd::validate_covariance(fd::gauss_seq_covariance(10.0, 5)), fd::NumericalError);
  EXPECT_THROW(fd::cholesky_factor(fd::gauss_seq_covariance(10.0, 5)), fd::NumericalError);
}

TEST(Covariance, IndefiniteIsRejectedSingularIsJittered) {
  Eigen::MatrixXd K(3, 3);
  K << 1, 0, 0, 0, 1, 2, 0, 2, 1;
  try {
    fd::cholesky_factor(K);
    FAIL();
  } catch (const fd::NumericalError& e) {
    EXPECT_NE(std::string(e.what()).find("semidefinite"), std::string::npos) << e.what();
  }
  // singular but semidefinite: jitter rescues it
  Eigen::MatrixXd S = Eigen::MatrixXd::Ones(3, 3);
  const auto L = fd::cholesky_factor(S);
  EXPECT_LT((L * L.transpose() - S).cwiseAbs().maxCoeff(), 1e-7);
}

TEST(FailingMinor, FindsTheFirstBadPivot) {
  Eigen::MatrixXd K(3, 3);
  K << 1, 0, 0, 0, 1, 2, 0, 2, 1;
  EXPECT_EQ(fd::detail::failing_minor(K), 3);
  EXPECT_EQ(fd::detail::failing_minor(Eigen::MatrixXd::Identity(4, 4)), -1);
}

TEST(Paths, BrownianCovarianceMonteCarlo) {
  const auto s = fd::gen_gaussian_paths(fd::ProcessSpec::brownian(fd::Grid::trapezoid({0.25, 0.75})), 20000, 5);
  EXPECT_NEAR(column_cov(s, 0, 1), 0.25, 0.02);
  EXPECT_NEAR(column_cov(s, 1, 1), 0.75, 0.03);
}

TEST(Paths, BridgeIsTiedDown) {
  const auto s = fd::gen_gaussian_paths(fd::ProcessSpec::bridge(fd::Grid::closed_unit(50)), 200, 6);
  for (std::size_t i = 0; i < s.rows(); ++i) {
    EXPECT_EQ(s(i, 0), 0.0);
    EXPECT_EQ(s(i, 49), 0.0);
  }
  auto fbb = fd::ProcessSpec::fbb(0.75, 2.5, fd::Grid::closed_unit(30));
  fbb.y0 = 1.0;
  const auto f = fd::gen_gaussian_paths(fbb, 100, 7);
  for (std::size_t i = 0; i < f.rows(); ++i) {
    EXPECT_EQ(f(i, 0), 1.0);
    EXPECT_EQ(f(i, 29), 2.5);
  }
}

TEST(Paths, BridgeOnAnOpenGridHasTheBridgeVariance) {
  // t = 1 is appended internally; Var(B_t) = t(1 - t)
  const auto s = fd::gen_gaussian_paths(fd::ProcessSpec::bridge(fd::Grid::trapezoid({0.25, 0.5})), 20000, 8);
  EXPECT_NEAR(column_cov(s, 0, 0), 0.25 * 0.75, 0.015);
  EXPECT_NEAR(column_cov(s, 1, 1), 0.25, 0.02);
  EXPECT_NEAR(column_cov(s, 0, 1), 0.25 * 0.5, 0.015);
}

TEST(Paths, FractionalVarianceScales) {
  const auto s = fd::gen_gaussian_paths(fd::ProcessSpec::fbm(0.75, fd::Grid::trapezoid({0.2, 0.5, 0.9})), 20000, 9);
  for (std::size_t j = 0; j < 3; ++j) {
    const double expect = std::pow(s.grid().point(j), 1.5);
    EXPECT_NEAR(column_cov(s, j, j) / expect, 1.0, 0.1);
  }
}

TEST(Paths, StartPointIsTheConstant) {
  auto spec = fd::ProcessSpec::fbm(0.3, fd::Grid::closed_unit(20));
  spec.y0 = -1.25;
  const auto s = fd::gen_gaussian_paths(spec, 10, 10);
  for (std::size_t i = 0; i < s.rows(); ++i) EXPECT_EQ(s(i, 0), -1.25);
}

TEST(Paths, Reproducible) {
  const auto spec = fd::ProcessSpec::fbm(0.75, fd::Grid::open_unit(100));
  EXPECT_EQ(fd::gen_gaussian_paths(spec, 30, 11).values(), fd::gen_gaussian_paths(spec, 30, 11).values());
  EXPECT_NE(fd::gen_gaussian_paths(spec, 30, 11).values(), fd::gen_gaussian_paths(spec, 30, 12).values());
  // a row does not depend on how many rows are drawn
  EXPECT_EQ(fd::gen_gaussian_paths(spec, 5, 11).values(), fd::gen_gaussian_paths(spec, 30, 11).values().topRows(5));
}

TEST(Paths, ParameterErrors) {
  EXPECT_THROW(fd::gen_gaussian_paths(fd::ProcessSpec::fbm(1.0, fd::Grid::open_unit(5)), 3, 1), fd::ParameterError);
  EXPECT_THROW(fd::gen_gaussian_paths(fd::ProcessSpec::fbm(0.0, fd::Grid::open_unit(5)), 3, 1), fd::ParameterError);
  EXPECT_THROW(fd::gen_gaussian_paths(fd::ProcessSpec::brownian(fd::Grid::open_unit(5)), 0, 1), fd::ParameterError);
  EXPECT_THROW(fd::gen_gaussian_paths(fd::ProcessSpec::bridge(fd::Grid::trapezoid({0.5, 1.5})), 3, 1),
               fd::ParameterError);
  EXPECT_THROW(fd::gen_gauss_seq(1.5, 4, 3, 1), fd::ParameterError);
  EXPECT_THROW(fd::gen_gbm(0.5, 0.0, fd::Grid::open_unit(5), 3, 1), fd::ParameterError);
}

TEST(Gbm, StartsAtOneAndStaysPositive) {
  const auto s = fd::gen_gbm(0.5, 0.5, fd::Grid::closed_unit(40), 500, 13);
  for (std::size_t i = 0; i < s.rows(); ++i) EXPECT_EQ(s(i, 0), 1.0);
  EXPECT_GT(s.values().minCoeff(), 0.0);
}

TEST(Gbm, TerminalMean) {
  const auto s = fd::gen_gbm(0.5, 0.5, fd::Grid::trapezoid({0.5, 1.0}), 20000, 14);
  EXPECT_NEAR(column_mean(s, 1), std::exp(0.5), 0.05);
}

TEST(Gbm, IsTheExpOfDriftedBrownianPaths) {
  const auto grid = fd::Grid::open_unit(64);
  const auto bm = fd::gen_gaussian_paths(fd::ProcessSpec::brownian(grid), 20, 15);
  const auto drifted = fd::apply_link(bm, fd::Link::affine(0.5, 0.0, 0.0, 0.5 - 0.125));
  EXPECT_EQ(fd::apply_link(drifted, fd::Link::exp()).values(), fd::gen_gbm(0.5, 0.5, grid, 20, 15).values());
}

TEST(GaussSeq, MarginalsAndCorrelation) {
  const auto s = fd::gen_gauss_seq(0.1, 3, 20000, 16);
  EXPECT_NEAR(column_cov(s, 1, 1) * 16.0, 1.0, 0.1);
  const double corr = column_cov(s, 0, 1) / std::sqrt(column_cov(s, 0, 0) * column_cov(s, 1, 1));
  EXPECT_NEAR(corr, 0.1, 0.02);
  EXPECT_EQ(s.grid(), fd::Grid::sequence(3));
}

TEST(GaussSeq, OneCoordinateIsStandardNormal) {
  const auto s = fd::gen_gauss_seq(0.1, 1, 20000, 17);
  EXPECT_NEAR(column_mean(s, 0), 0.0, 0.03);
  EXPECT_NEAR(column_cov(s, 0, 0), 1.0, 0.05);
}

TEST(Link, IdentityLeavesTheSampleAlone) {
  Engine rng(501);
  const auto s = fd::testing::random_sample(rng, 6, 9);
  EXPECT_EQ(fd::apply_link(s, fd::Link::identity()).values(), s.values());
}

TEST(Link, NonPositiveSlopeIsRejected) {
  const auto grid = fd::Grid::open_unit(5);
  EXPECT_THROW(fd::Link::affine(0.0, 0.0, 0.0, 0.0).validate(grid), fd::ParameterError);
  EXPECT_THROW(fd::Link::affine(0.5, -1.0, 0.0, 0.0).validate(grid), fd::ParameterError);
  EXPECT_NO_THROW(fd::Link::affine(0.5, -0.4, 1.0, 2.0).validate(grid));
}

TEST(LinkProperty, PreservesColumnRanks) {
  Engine rng(503);
  std::uniform_real_distribution<double> u(0.1, 2.0);
  for (int trial = 0; trial < 50; ++trial) {
    const auto s = fd::testing::random_sample(rng, fd::testing::uniform_size(rng, 2, 10),
                                              fd::testing::uniform_size(rng, 1, 8), trial % 2);
    const double a = u(rng);
    for (const auto& link : {fd::Link::exp(), fd::Link::affine(a, u(rng) - a / 2, u(rng), u(rng)),
                             fd::Link::gbm(0.5, a)})
      ASSERT_TRUE(same_column_ranks(s, fd::apply_link(s, link)));
  }
}

TEST(QuantileCurve, MedianOfBrownianIsTheStart) {
  auto spec = fd::ProcessSpec::brownian(fd::Grid::open_unit(20));
  spec.y0 = 0.75;
  const auto x = fd::quantile_curve(spec, 0.5);
  for (Eigen::Index j = 0; j < x.size(); ++j) EXPECT_NEAR(x[j], 0.75, 1e-15);
}

TEST(QuantileCurve, OneSigmaBrownian) {
  const auto spec = fd::ProcessSpec::brownian(fd::Grid::open_unit(20));
  const double p = boost::math::cdf(boost::math::normal(), 1.0);
  const auto x = fd::quantile_curve(spec, p);
  for (std::size_t j = 0; j < 20; ++j) EXPECT_NEAR(x[static_cast<Eigen::Index>(j)], std::sqrt(spec.grid.point(j)), 1e-6);
}

TEST(QuantileCurve, GbmMedian) {
  const auto spec = fd::ProcessSpec::gbm(0.5, 0.5, fd::Grid::trapezoid({0.5, 1.0}));
  EXPECT_NEAR(fd::quantile_curve(spec, 0.5)[1], std::exp(0.375), 1e-12);
}

TEST(QuantileCurve, MatchesEmpiricalQuantiles) {
  const auto spec = fd::ProcessSpec::fbm(0.75, fd::Grid::trapezoid({0.3, 0.8}));
  const auto s = fd::gen_gaussian_paths(spec, 20000, 18);
  for (double p : {0.1, 0.25, 0.75}) {
    const auto x = fd::quantile_curve(spec, p);
    for (std::size_t j = 0; j < 2; ++j) {
      const auto col = s.column(j);
      const double frac = static_cast<double>(std::count_if(col.begin(), col.end(), [&](double v) {
                            return v <= x[static_cast<Eigen::Index>(j)];
                          })) /
                          20000.0;
      EXPECT_NEAR(frac, p, 0.015);
    }
  }
  EXPECT_THROW(fd::quantile_curve(spec, 1.0), fd::ParameterError);
}
