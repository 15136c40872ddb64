#include <doctest.h>

#include <boost/math/special_functions/beta.hpp>
#include <cmath>
#include <vector>

#include "../oracles.hpp"
#include "swbnet/correlation.hpp"
#include "swbnet/error.hpp"

using namespace swbnet;

TEST_CASE("pearson examples") {
  const std::vector<double> a{1, 2, 3}, b{3, 2, 1};
  auto same = pearson(a, a);
  CHECK(same.r == 1.0);
  REQUIRE(same.p_value);
  CHECK(*same.p_value == 0.0);
  CHECK(pearson(a, b).r == -1.0);

  // Hand evaluation: Sxy = 10, Sxx = 10, Syy = 14.8.
  const std::vector<double> x{1, 2, 3, 4, 5}, y{2, 1, 4, 3, 6};
  auto res = pearson(x, y);
  CHECK(res.r == doctest::Approx(10.0 / std::sqrt(148.0)).epsilon(1e-14));
  CHECK(res.n == 5);
  const double t = res.r * std::sqrt(3.0 / (1.0 - res.r * res.r));
  boost::math::students_t dist(3.0);
  const double p = 2.0 * boost::math::cdf(boost::math::complement(dist, t));
  REQUIRE(res.p_value);
  CHECK(*res.p_value == doctest::Approx(p).epsilon(1e-12));
}

TEST_CASE("pearson errors") {
  const std::vector<double> flat{0.1, 0.1, 0.1, 0.1}, ramp{1, 2, 3, 4};
  CHECK_THROWS_WITH_AS(pearson(flat, ramp), "degenerate vector", ComputeError);
  CHECK_THROWS_WITH_AS(pearson(ramp, flat), "degenerate vector", ComputeError);
  const std::vector<double> three{1, 2, 3};
  CHECK_THROWS_AS(pearson(ramp, three), ArgumentError);
  const std::vector<double> one{1};
  CHECK_THROWS_AS(pearson(one, one), ArgumentError);
  const std::vector<double> two{1, 2}, two_b{5, 3};
  auto r2 = pearson(two, two_b);
  CHECK(r2.r == -1.0);
  CHECK_FALSE(r2.p_value);
}

TEST_CASE("pearson agrees with the z-score form on random vectors") {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    swbnet::Rng rng(seed);
    const std::size_t n = 3 + rng.below(500);
    const double mix = rng.uniform() * 2.0 - 1.0;
    std::vector<double> x(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = rng.normal();
      y[i] = mix * x[i] + rng.normal();
    }
    auto got = pearson(x, y);
    auto want = oracle::pearson(x, y);
    CHECK(got.r == doctest::Approx(want.r).epsilon(1e-10));
    REQUIRE(got.p_value);
    if (want.p > 1e-300) CHECK(*got.p_value == doctest::Approx(want.p).epsilon(1e-10));
  }
}

TEST_CASE("affine dependence gives exactly one") {
  swbnet::Rng rng(77);
  for (int k = 0; k < 20; ++k) {
    std::vector<double> x(100), up(100), down(100);
    const double scale = 0.1 + 10.0 * rng.uniform();
    for (std::size_t i = 0; i < x.size(); ++i) {
      x[i] = rng.normal();
      up[i] = scale * x[i] + 3.0;
      down[i] = -scale * x[i] - 1.0;
    }
    CHECK(std::fabs(pearson(x, up).r - 1.0) <= 1e-12);
    CHECK(std::fabs(pearson(x, down).r + 1.0) <= 1e-12);
  }
}

TEST_CASE("incomplete beta and t tail against Boost") {
  for (double a : {0.5, 1.0, 2.5, 10.0, 250.0})
    for (double b : {0.5, 1.0, 3.0})
      for (double x : {0.001, 0.1, 0.5, 0.9, 0.999})
        CHECK(regularized_incomplete_beta(a, b, x) == doctest::Approx(boost::math::ibeta(a, b, x)).epsilon(1e-12));
  CHECK(regularized_incomplete_beta(2.0, 3.0, 0.0) == 0.0);
  CHECK(regularized_incomplete_beta(2.0, 3.0, 1.0) == 1.0);
  for (double dof : {1.0, 3.0, 30.0, 20000.0})
    for (double t : {0.0, 0.3, 1.96, 5.0}) {
      boost::math::students_t dist(dof);
      CHECK(student_t_two_tailed(t, dof) ==
            doctest::Approx(2.0 * boost::math::cdf(boost::math::complement(dist, t))).epsilon(1e-12));
      CHECK(student_t_two_tailed(-t, dof) == student_t_two_tailed(t, dof));
    }
}
