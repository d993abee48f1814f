#include "contour_codec/chebyshev.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <numbers>

#include "contour_codec/codec.hpp"
#include "contour_codec/error.hpp"

namespace contour {

ChebyshevSeries::ChebyshevSeries(std::vector<double> alphas) : alphas_(std::move(alphas)) {
  if (alphas_.empty()) throw ValidationError("chebyshev: at least one coefficient required");
  for (double a : alphas_) {
    if (!std::isfinite(a)) throw ValidationError("chebyshev: non-finite coefficient");
  }
}

double cheb_eval(const ChebyshevSeries& s, double x) {
  if (!(std::abs(x) <= 1.0 + 1e-12)) {
    throw ValidationError("cheb_eval: x outside [-1, 1]");
  }
  const auto& a = s.alphas();
  double b1 = 0.0;
  double b2 = 0.0;
  for (std::size_t k = a.size() - 1; k >= 1; --k) {
    const double b0 = a[k] + 2.0 * x * b1 - b2;
    b2 = b1;
    b1 = b0;
  }
  return a[0] + x * b1 - b2;
}

double odd_coefficient_sum(const ChebyshevSeries& s) {
  double sum = 0.0;
  const auto& a = s.alphas();
  for (std::size_t n = 1; n < a.size(); n += 2) sum += a[n];
  return sum;
}

double periodicity_gap(const ChebyshevSeries& s) { return 2.0 * odd_coefficient_sum(s); }

namespace {

Eigen::MatrixXd design_matrix(std::span<const double> x, std::size_t degree) {
  Eigen::MatrixXd a(static_cast<Eigen::Index>(x.size()),
                    static_cast<Eigen::Index>(degree + 1));
  for (std::size_t i = 0; i < x.size(); ++i) {
    const auto row = static_cast<Eigen::Index>(i);
    double prev = 1.0;
    double cur = x[i];
    a(row, 0) = 1.0;
    if (degree >= 1) a(row, 1) = cur;
    for (std::size_t n = 2; n <= degree; ++n) {
      const double next = 2.0 * x[i] * cur - prev;
      prev = cur;
      cur = next;
      a(row, static_cast<Eigen::Index>(n)) = cur;
    }
  }
  return a;
}

Eigen::VectorXd solve_full_rank(const Eigen::MatrixXd& a, const Eigen::VectorXd& y) {
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a);
  if (qr.rank() < a.cols()) throw NumericalError("chebyshev fit: rank-deficient design");
  return qr.solve(y);
}

}  // namespace

ChebyshevSeries cheb_least_squares(std::span<const double> x, std::span<const double> y,
                                   std::size_t degree, const ChebyshevFitOptions& opts) {
  if (x.size() != y.size()) throw ValidationError("chebyshev fit: x and y sizes differ");
  if (x.size() <= degree) throw ValidationError("chebyshev fit: need more samples than degree");
  const Eigen::MatrixXd a = design_matrix(x, degree);
  const Eigen::VectorXd rhs = Eigen::Map<const Eigen::VectorXd>(y.data(),
                                                                static_cast<Eigen::Index>(y.size()));
  const auto cols = static_cast<Eigen::Index>(degree + 1);

  if (!opts.periodic_constraint || degree == 0) {
    const Eigen::VectorXd alpha = solve_full_rank(a, rhs);
    return ChebyshevSeries(std::vector<double>(alpha.data(), alpha.data() + cols));
  }

  // Eliminate alpha_1 = -(alpha_3 + alpha_5 + ...): alpha = Z beta, where beta
  // holds every coefficient except alpha_1.
  Eigen::MatrixXd z = Eigen::MatrixXd::Zero(cols, cols - 1);
  for (Eigen::Index n = 0, j = 0; n < cols; ++n) {
    if (n == 1) continue;
    z(n, j) = 1.0;
    if (n % 2 == 1) z(1, j) = -1.0;
    ++j;
  }
  const Eigen::VectorXd beta = solve_full_rank(a * z, rhs);
  std::vector<double> alpha(static_cast<std::size_t>(cols), 0.0);
  double odd_rest = 0.0;
  for (Eigen::Index n = 0, j = 0; n < cols; ++n) {
    if (n == 1) continue;
    alpha[static_cast<std::size_t>(n)] = beta(j);
    if (n % 2 == 1) odd_rest += beta(j);
    ++j;
  }
  alpha[1] = -odd_rest;
  return ChebyshevSeries(std::move(alpha));
}

ChebyshevFit cheb_fit_rho(const Polygon& p, Point center, std::size_t degree,
                          std::size_t n_samples, const ChebyshevFitOptions& opts) {
  if (n_samples <= degree) throw ValidationError("chebyshev fit: n_samples must exceed degree");
  if (!bounding_box(p).strictly_contains(center)) {
    throw ValidationError("chebyshev fit: center must lie strictly inside the bounding box");
  }
  std::vector<double> rho = cast_rays(p, center, n_samples);
  std::vector<double> theta(n_samples);
  std::vector<double> x(n_samples);
  for (std::size_t j = 0; j < n_samples; ++j) {
    theta[j] = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n_samples);
    x[j] = theta_to_x(theta[j]);
  }
  ChebyshevSeries series = cheb_least_squares(x, rho, degree, opts);

  double sq = 0.0;
  for (std::size_t j = 0; j < n_samples; ++j) {
    const double r = cheb_eval(series, x[j]) - rho[j];
    sq += r * r;
  }
  const double gap = periodicity_gap(series);
  return ChebyshevFit{std::move(series), gap, std::sqrt(sq / static_cast<double>(n_samples)),
                      std::move(theta), std::move(rho)};
}

}  // namespace contour
