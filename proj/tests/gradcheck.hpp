#pragma once

// Central finite differences (h = 1e-5) against the analytic gradients.
// Each check returns the max relative error over all coordinates, or a
// negative value when the trial sits within 1e-6 of a non-smooth locus and
// has to be skipped. Components below the roundoff of the central difference
// (eps |f| / h, times 1e4) are compared absolutely.

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "contour_codec/codec.hpp"
#include "contour_codec/losses.hpp"
#include "support.hpp"

namespace testing {

constexpr double kStep = 1e-5;
constexpr double kKink = 1e-6;

// Gap between the best and second-best squared distance for every query, the
// smallest over both directions. Below kKink a perturbation can flip an
// assignment.
inline double assignment_margin(std::span<const Complex> a, std::span<const Complex> b) {
  auto one_way = [](std::span<const Complex> from, std::span<const Complex> to) {
    double margin = std::numeric_limits<double>::infinity();
    for (Complex z : from) {
      double best = std::numeric_limits<double>::infinity();
      double second = best;
      for (Complex w : to) {
        const double d = std::abs(z - w);
        if (d < best) {
          second = best;
          best = d;
        } else if (d < second) {
          second = d;
        }
      }
      margin = std::min(margin, second - best);
    }
    return margin;
  };
  return std::min(one_way(a, b), one_way(b, a));
}

inline double roundoff_floor(double value) {
  return 1e4 * std::numeric_limits<double>::epsilon() * std::abs(value) / kStep;
}

inline double rel_error(double analytic, double numeric, double scale) {
  return std::abs(analytic - numeric) / std::max({std::abs(analytic), std::abs(numeric), scale});
}

template <class Loss>
double point_gradcheck(std::vector<Complex> z, const std::vector<Complex>& analytic, Loss&& loss) {
  double grad_scale = 0.0;
  for (Complex g : analytic) grad_scale = std::max(grad_scale, std::abs(g));
  const double floor = std::max({1e-8, 1e-6 * grad_scale, roundoff_floor(loss(z))});
  double worst = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    for (int axis = 0; axis < 2; ++axis) {
      const Complex h = axis == 0 ? Complex(kStep, 0) : Complex(0, kStep);
      const Complex orig = z[i];
      z[i] = orig + h;
      const double up = loss(z);
      z[i] = orig - h;
      const double down = loss(z);
      z[i] = orig;
      const double numeric = (up - down) / (2.0 * kStep);
      const double a = axis == 0 ? analytic[i].real() : analytic[i].imag();
      worst = std::max(worst, rel_error(a, numeric, floor));
    }
  }
  return worst;
}

template <class Loss>
double coeff_gradcheck(contour::FourierDescriptor d, const contour::FourierDescriptor& analytic,
                       Loss&& loss) {
  double grad_scale = 0.0;
  for (Complex g : analytic.coeffs()) grad_scale = std::max(grad_scale, std::abs(g));
  const double floor = std::max({1e-8, 1e-6 * grad_scale, roundoff_floor(loss(d))});
  double worst = 0.0;
  auto& c = d.coeffs();
  for (std::size_t i = 0; i < c.size(); ++i) {
    for (int axis = 0; axis < 2; ++axis) {
      const Complex h = axis == 0 ? Complex(kStep, 0) : Complex(0, kStep);
      const Complex orig = c[i];
      c[i] = orig + h;
      const double up = loss(d);
      c[i] = orig - h;
      const double down = loss(d);
      c[i] = orig;
      const double numeric = (up - down) / (2.0 * kStep);
      const double a = axis == 0 ? analytic.coeffs()[i].real() : analytic.coeffs()[i].imag();
      worst = std::max(worst, rel_error(a, numeric, floor));
    }
  }
  return worst;
}

inline contour::FourierDescriptor random_descriptor(std::mt19937_64& rng, std::size_t n,
                                                    double radius) {
  std::normal_distribution<double> g(0.0, 1.0);
  contour::FourierDescriptor d(n);
  d.set(0, {200.0 + 20.0 * g(rng), 200.0 + 20.0 * g(rng)});
  d.set(1, radius * std::polar(1.0, 3.0 * g(rng)));
  const long ln = static_cast<long>(n);
  for (long k = -ln; k <= ln; ++k) {
    if (k == 0 || k == 1) continue;
    d.set(k, d.at(k) + radius / (1.0 + static_cast<double>(k * k)) * Complex(g(rng), g(rng)));
  }
  return d;
}

// Smallest |F_k| that the L1 term touches; below kKink the modulus is not
// differentiable within the stencil.
inline double coeff_margin(const contour::FourierDescriptor& d) {
  double m = std::numeric_limits<double>::infinity();
  const long n = static_cast<long>(d.max_harmonic());
  for (long k = -n; k <= n; ++k) {
    if (std::labs(k) > 1) m = std::min(m, std::abs(d.at(k)));
  }
  return m;
}

// One trial of each gradient family. Returns the max relative error, or -1
// when the trial is skipped near a kink.
inline double chamfer_trial(std::mt19937_64& rng, std::size_t n) {
  const auto a = random_points(rng, n, 50.0);
  const auto b = random_points(rng, n, 50.0);
  if (assignment_margin(a, b) < 2.0 * kStep + kKink) return -1.0;
  const auto analytic = contour::loss_chamfer(a, b).grad;
  return point_gradcheck(a, analytic, [&](const std::vector<Complex>& z) {
    return contour::chamfer_distance(z, b);
  });
}

inline double perimeter_trial(std::mt19937_64& rng, std::size_t n, double lambda) {
  const contour::ContourSamples c = contour::resample(random_polygon(rng, 12), n);
  std::vector<Complex> z = c.samples();
  const auto analytic = contour::loss_perimeter(z, lambda).grad;
  return point_gradcheck(z, analytic, [&](const std::vector<Complex>& p) {
    return contour::loss_perimeter(p, lambda).value;
  });
}

inline double coeff_trial(std::mt19937_64& rng, std::size_t n) {
  const contour::FourierDescriptor d = random_descriptor(rng, n, 40.0);
  if (coeff_margin(d) < kStep + kKink) return -1.0;
  contour::LossConfig cfg;
  const auto analytic = contour::loss_coeff(d, cfg).grad;
  return coeff_gradcheck(d, analytic, [&](const contour::FourierDescriptor& x) {
    return contour::loss_coeff(x, cfg).value;
  });
}

inline double total_trial(std::mt19937_64& rng, std::size_t n, std::size_t n_pts) {
  const contour::FourierDescriptor d = random_descriptor(rng, n, 40.0);
  const contour::ContourSamples target = contour::resample(random_polygon(rng, 15), n_pts);
  if (coeff_margin(d) < kStep + kKink) return -1.0;
  const contour::ContourSamples decoded = contour::decode(d, n_pts);
  // coefficient steps move every decoded point by at most kStep
  if (assignment_margin(decoded.view(), target.view()) < 2.0 * kStep + kKink) return -1.0;
  contour::LossConfig cfg;
  cfg.lambda_perim = 0.5;
  cfg.lambda_coeff = 20.0;
  const auto analytic = contour::total_shape_loss(d, target, cfg, 0).grad;
  return coeff_gradcheck(d, analytic, [&](const contour::FourierDescriptor& x) {
    return contour::total_shape_loss(x, target, cfg, 0).total;
  });
}

}  // namespace testing
