#pragma once

#include <cstddef>
#include <numbers>
#include <span>
#include <vector>

#include "contour_codec/geometry.hpp"

namespace contour {

/// Truncated Chebyshev expansion rho(x) = sum_n alpha_n T_n(x), x in [-1, 1].
class ChebyshevSeries {
 public:
  /// Throws ValidationError when empty or non-finite.
  explicit ChebyshevSeries(std::vector<double> alphas);

  const std::vector<double>& alphas() const noexcept { return alphas_; }
  std::size_t degree() const noexcept { return alphas_.size() - 1; }

 private:
  std::vector<double> alphas_;
};

/// Clenshaw evaluation. Throws ValidationError for |x| > 1 + 1e-12.
double cheb_eval(const ChebyshevSeries& s, double x);

/// rho(1) - rho(-1) from T_n(1) = 1 and T_n(-1) = (-1)^n, i.e.
/// 2 * (alpha_1 + alpha_3 + ...). Zero exactly when the series closes up
/// periodically.
double periodicity_gap(const ChebyshevSeries& s);

/// Sum of the odd-index coefficients.
double odd_coefficient_sum(const ChebyshevSeries& s);

struct ChebyshevFit {
  ChebyshevSeries series;
  double gap = 0.0;
  /// Root-mean-square residual over the samples.
  double rms_residual = 0.0;
  /// Sampled angles in [0, 2 pi) and the corresponding ray lengths.
  std::vector<double> theta;
  std::vector<double> rho;
};

struct ChebyshevFitOptions {
  /// Append the linear constraint sum of odd alphas = 0.
  bool periodic_constraint = false;
};

/// Least-squares fit of `degree`+1 Chebyshev coefficients to samples
/// (x_i, y_i). Throws NumericalError on a rank-deficient design.
ChebyshevSeries cheb_least_squares(std::span<const double> x, std::span<const double> y,
                                   std::size_t degree, const ChebyshevFitOptions& opts = {});

/// Casts `n_samples` rays at theta_j = 2 pi j / n_samples (farthest hit),
/// maps theta linearly from [0, 2 pi] onto [-1, 1] and fits a Chebyshev series
/// of the given degree.
ChebyshevFit cheb_fit_rho(const Polygon& p, Point center, std::size_t degree,
                          std::size_t n_samples, const ChebyshevFitOptions& opts = {});

/// theta in [0, 2 pi] -> x in [-1, 1].
inline double theta_to_x(double theta) {
  return theta / std::numbers::pi - 1.0;
}

}  // namespace contour
