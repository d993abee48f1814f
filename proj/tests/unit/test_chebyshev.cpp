#include <cmath>
#include <numbers>
#include <random>

#include "contour_codec/chebyshev.hpp"
#include "contour_codec/error.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace contour;
using doctest::Approx;

TEST_CASE("clenshaw matches the cosine definition") {
  std::mt19937_64 rng(21);
  std::normal_distribution<double> g(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> a(1 + trial % 12);
    for (double& v : a) v = g(rng);
    const ChebyshevSeries s(a);
    for (double x : {-1.0, -0.73, -0.1, 0.0, 0.42, 0.99, 1.0}) {
      double direct = 0.0;
      for (std::size_t n = 0; n < a.size(); ++n) direct += a[n] * std::cos(n * std::acos(x));
      CHECK(cheb_eval(s, x) == Approx(direct).epsilon(1e-12));
    }
  }
}

TEST_CASE("series validation and domain") {
  CHECK_THROWS_AS(ChebyshevSeries({}), ValidationError);
  CHECK_THROWS_AS(ChebyshevSeries({1.0, NAN}), ValidationError);
  const ChebyshevSeries s({1.0, 2.0});
  CHECK(s.degree() == 1);
  CHECK_THROWS_AS(cheb_eval(s, 1.01), ValidationError);
  CHECK_NOTHROW(cheb_eval(s, 1.0 + 1e-13));
}

TEST_CASE("periodicity gap identity") {
  const ChebyshevSeries s({0.5, 1.0, -2.0, 0.25, 4.0, -0.125});
  CHECK(periodicity_gap(s) == 2.0 * (1.0 + 0.25 - 0.125));
  CHECK(odd_coefficient_sum(s) == 1.0 + 0.25 - 0.125);
  CHECK(periodicity_gap(s) == Approx(cheb_eval(s, 1.0) - cheb_eval(s, -1.0)));
  CHECK(periodicity_gap(ChebyshevSeries({3.0})) == 0.0);
}

TEST_CASE("least squares recovers an exact series") {
  const std::vector<double> truth{1.0, -0.5, 0.25, 0.125, -0.0625};
  const ChebyshevSeries s(truth);
  std::vector<double> x, y;
  for (int i = 0; i < 40; ++i) {
    x.push_back(-1.0 + 2.0 * i / 39.0);
    y.push_back(cheb_eval(s, x.back()));
  }
  const ChebyshevSeries fit = cheb_least_squares(x, y, 4);
  for (std::size_t n = 0; n < truth.size(); ++n) CHECK(fit.alphas()[n] == Approx(truth[n]).epsilon(1e-10));
  CHECK_THROWS_AS(cheb_least_squares(std::vector<double>(6, 0.5), std::vector<double>(6, 1.0), 3),
                  NumericalError);
}

TEST_CASE("circle has no gap") {
  const ChebyshevFit fit = cheb_fit_rho(testing::fixture("circle"), {100, 100}, 8, 360);
  CHECK(std::abs(fit.gap) < 1e-2);  // chord sagitta of the 128-gon is 7.5e-3
  CHECK(fit.theta.size() == 360);
}

TEST_CASE("asymmetric fixture: unconstrained gap is large, constrained gap vanishes") {
  const Polygon star = testing::fixture("star_asym");
  const ChebyshevFit free_fit = cheb_fit_rho(star, {120, 110}, 8, 360);
  double mean_rho = 0.0;
  for (double r : free_fit.rho) mean_rho += r;
  mean_rho /= static_cast<double>(free_fit.rho.size());
  CHECK(std::abs(free_fit.gap) > 1e-3 * mean_rho);

  const ChebyshevFit closed = cheb_fit_rho(star, {120, 110}, 8, 360, {true});
  CHECK(std::abs(closed.gap) < 1e-9);
  CHECK(std::abs(odd_coefficient_sum(closed.series)) < 1e-9);
  CHECK(closed.rms_residual >= free_fit.rms_residual);
}

TEST_CASE("theta maps onto [-1, 1]") {
  CHECK(theta_to_x(0.0) == -1.0);
  CHECK(theta_to_x(std::numbers::pi) == 0.0);
  CHECK(theta_to_x(2.0 * std::numbers::pi) == 1.0);
}
