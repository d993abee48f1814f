#include "contour_codec/losses.hpp"

#include <cmath>
#include <deque>
#include <numeric>
#include <random>
#include <string>

#include "contour_codec/error.hpp"

namespace contour {

void LossConfig::validate() const {
  if (!(lambda_cd >= 0.0) || !(lambda_perim >= 0.0) || !(lambda_coeff >= 0.0)) {
    throw ValidationError("loss config: weights must be non-negative");
  }
  if (n_c && *n_c == 0) throw ValidationError("loss config: n_c must be >= 1");
  if (perim_decay_iteration && *perim_decay_iteration == 0) {
    throw ValidationError("loss config: decay iteration must be positive");
  }
}

PointLoss loss_chamfer(std::span<const Complex> decoded, std::span<const Complex> target,
                       const ChamferOptions& opts) {
  if (decoded.empty() || target.empty()) throw ValidationError("loss_chamfer: empty input");
  PointLoss out;
  out.grad.assign(decoded.size(), Complex{});

  const bool mean = opts.reduction == ChamferReduction::Mean;
  // d/dz of |z - w|^2 is 2 (z - w); of |z - w| it is (z - w) / |z - w|.
  auto pair_term = [&](Complex z, Complex w, double weight) {
    const Complex diff = z - w;
    const double d2 = std::norm(diff);
    if (opts.squared) {
      out.value += weight * d2;
      return weight * 2.0 * diff;
    }
    const double d = std::sqrt(d2);
    out.value += weight * d;
    return d > 0.0 ? weight * diff / d : Complex{};
  };

  const double wa = mean ? 1.0 / static_cast<double>(decoded.size()) : 1.0;
  const auto nn_ab = nearest_neighbors(decoded, target);
  for (std::size_t i = 0; i < decoded.size(); ++i) {
    out.grad[i] += pair_term(decoded[i], target[nn_ab[i]], wa);
  }
  const double wb = mean ? 1.0 / static_cast<double>(target.size()) : 1.0;
  const auto nn_ba = nearest_neighbors(target, decoded);
  for (std::size_t j = 0; j < target.size(); ++j) {
    out.grad[nn_ba[j]] += pair_term(decoded[nn_ba[j]], target[j], wb);
  }
  return out;
}

PointLoss loss_perimeter(std::span<const Complex> decoded, double lambda, PerimeterMode mode) {
  const std::size_t n = decoded.size();
  if (n < 3) throw ValidationError("loss_perimeter: at least 3 points required");
  PointLoss out;
  out.grad.assign(n, Complex{});
  if (lambda == 0.0) return out;

  if (mode == PerimeterMode::SumSquared) {
    double sum_sq = 0.0;
    for (std::size_t i = 0; i < n; ++i) sum_sq += std::norm(decoded[i] - decoded[(i + 1) % n]);
    if (sum_sq == 0.0) return out;
    const double root = std::sqrt(sum_sq);
    out.value = lambda * root;
    // d sqrt(S) / dz_i = (2(z_i - z_{i+1}) + 2(z_i - z_{i-1})) / (2 sqrt(S))
    const double scale = lambda / root;
    for (std::size_t i = 0; i < n; ++i) {
      const Complex next = decoded[(i + 1) % n];
      const Complex prev = decoded[(i + n - 1) % n];
      out.grad[i] = scale * ((decoded[i] - next) + (decoded[i] - prev));
    }
    return out;
  }

  for (std::size_t i = 0; i < n; ++i) {
    const Complex e = decoded[(i + 1) % n] - decoded[i];
    const double len = std::abs(e);
    out.value += lambda * len;
    if (len == 0.0) continue;
    out.grad[i] -= lambda * e / len;
    out.grad[(i + 1) % n] += lambda * e / len;
  }
  return out;
}

CoeffLoss loss_coeff(const FourierDescriptor& d, const LossConfig& cfg) {
  CoeffLoss out;
  out.grad = FourierDescriptor(d.max_harmonic());
  const double n_c = static_cast<double>(cfg.n_c.value_or(d.complex_count()));
  const double scale = cfg.lambda_coeff / n_c;
  const long n = static_cast<long>(d.max_harmonic());
  double sum = 0.0;
  for (long k = -n; k <= n; ++k) {
    if (std::labs(k) <= 1) continue;
    const Complex f = d.at(k);
    const double mag = std::abs(f);
    sum += mag;
    if (mag > 0.0) out.grad.set(k, scale * f / mag);
  }
  out.value = scale * sum;
  return out;
}

ShapeLoss total_shape_loss(const FourierDescriptor& d, const ContourSamples& target,
                           const LossConfig& cfg, std::size_t iteration, bool perim_active) {
  const ContourSamples decoded = decode(d, target.size());
  const std::size_t n_pts = decoded.size();
  std::vector<Complex> point_grad(n_pts, Complex{});

  ShapeLoss out;
  if (cfg.lambda_cd != 0.0) {
    const PointLoss cd = loss_chamfer(decoded.view(), target.view(), cfg.chamfer);
    out.l_cd = cfg.lambda_cd * cd.value;
    for (std::size_t i = 0; i < n_pts; ++i) point_grad[i] += cfg.lambda_cd * cd.grad[i];
  }
  const double lambda_perim = perim_active ? cfg.lambda_perim_at(iteration) : 0.0;
  if (lambda_perim != 0.0) {
    const PointLoss perim = loss_perimeter(decoded.view(), lambda_perim, cfg.perimeter_mode);
    out.l_perim = perim.value;
    for (std::size_t i = 0; i < n_pts; ++i) point_grad[i] += perim.grad[i];
  }

  out.grad = decode_adjoint(point_grad, d.max_harmonic());
  if (cfg.lambda_coeff != 0.0) {
    const CoeffLoss coeff = loss_coeff(d, cfg);
    out.l_coeff = coeff.value;
    for (std::size_t i = 0; i < out.grad.coeffs().size(); ++i) {
      out.grad.coeffs()[i] += coeff.grad.coeffs()[i];
    }
  }
  out.total = out.l_cd + out.l_perim + out.l_coeff;
  return out;
}

FourierDescriptor initial_descriptor(const ContourSamples& target, std::size_t n,
                                     FitInit init, std::uint64_t seed, double noise) {
  if (init == FitInit::Encode) return encode(target, n);

  const Complex center = vertex_centroid(target.view());
  double radius = 0.0;
  for (Complex z : target.samples()) radius += std::abs(z - center);
  radius /= static_cast<double>(target.size());

  FourierDescriptor d(n);
  d.set(0, center);
  if (n == 0) return d;
  const Complex start = target[0] - center;
  const Complex phase = std::abs(start) > 0.0 ? start / std::abs(start) : Complex{1.0, 0.0};
  // Counter-clockwise (in the sample frame) loops live on k = 1, clockwise on k = -1.
  d.set(signed_area(target.view()) >= 0.0 ? 1 : -1, radius * phase);

  if (init == FitInit::Random) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, noise * radius / std::sqrt(2.0));
    const long ln = static_cast<long>(n);
    for (long k = -ln; k <= ln; ++k) {
      if (k == 0) continue;
      const double re = gauss(rng);
      const double im = gauss(rng);
      d.set(k, d.at(k) + Complex{re, im});
    }
  }
  return d;
}

FitResult fit_descriptor(const Polygon& target, const LossConfig& cfg, const FitOptions& opts) {
  cfg.validate();
  if (opts.steps < 1) throw ValidationError("fit: steps must be >= 1");
  if (!(opts.step_size > 0.0)) throw ValidationError("fit: step size must be positive");
  if (opts.momentum < 0.0 || opts.momentum >= 1.0) {
    throw ValidationError("fit: momentum must lie in [0, 1)");
  }
  const ContourSamples samples = resample(target, opts.n_pts);
  if (2 * opts.n + 1 > opts.n_pts) throw ValidationError("harmonics exceed samples");

  FitResult result;
  result.descriptor = initial_descriptor(samples, opts.n, opts.init, opts.seed, opts.init_noise);
  result.trace.reserve(opts.steps);

  std::vector<Complex> velocity(result.descriptor.coeffs().size(), Complex{});
  bool perim_active = true;
  std::deque<double> window;
  double window_sum = 0.0;
  std::optional<double> previous_mean;

  const bool proximal = opts.optimizer == Optimizer::Proximal && cfg.lambda_coeff > 0.0;
  LossConfig smooth_cfg = cfg;
  if (proximal) smooth_cfg.lambda_coeff = 0.0;
  const double shrink = opts.step_size * cfg.lambda_coeff /
                        static_cast<double>(cfg.n_c.value_or(2 * opts.n + 1));

  for (std::size_t it = 0; it < opts.steps; ++it) {
    ShapeLoss loss = total_shape_loss(result.descriptor, samples, smooth_cfg, it, perim_active);
    if (proximal) {
      loss.l_coeff = loss_coeff(result.descriptor, cfg).value;
      loss.total += loss.l_coeff;
    }
    if (!std::isfinite(loss.total)) {
      throw NumericalError("divergence at iteration " + std::to_string(it));
    }
    result.trace.push_back({loss.l_cd, loss.l_perim, loss.l_coeff, loss.total});
    if (!result.perim_dropped_at && (!perim_active || cfg.lambda_perim_at(it) == 0.0)) {
      result.perim_dropped_at = it;
    }

    if (opts.plateau_decay && perim_active && cfg.lambda_perim_at(it) != 0.0) {
      window.push_back(loss.l_perim);
      window_sum += loss.l_perim;
      if (window.size() > opts.plateau_window) {
        window_sum -= window.front();
        window.pop_front();
      }
      if (window.size() == opts.plateau_window) {
        const double mean = window_sum / static_cast<double>(window.size());
        if (previous_mean && std::abs(mean - *previous_mean) <=
                                 opts.plateau_tolerance * std::abs(*previous_mean)) {
          perim_active = false;
        }
        if (it % opts.plateau_window == 0) previous_mean = mean;
      }
    }

    auto& coeffs = result.descriptor.coeffs();
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
      velocity[i] = opts.momentum * velocity[i] - opts.step_size * loss.grad.coeffs()[i];
      coeffs[i] += velocity[i];
    }
    if (proximal) {
      const long n = static_cast<long>(opts.n);
      for (long k = -n; k <= n; ++k) {
        if (std::labs(k) <= 1) continue;
        const Complex f = result.descriptor.at(k);
        const double mag = std::abs(f);
        result.descriptor.set(k, mag > shrink ? f * (1.0 - shrink / mag) : Complex{});
      }
    }
  }
  result.iterations = result.trace.size();

  for (Complex c : result.descriptor.coeffs()) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
      throw NumericalError("divergence at iteration " + std::to_string(opts.steps));
    }
  }
  const ContourSamples fitted = decode(result.descriptor, opts.n_pts);
  result.final_chamfer = chamfer_distance(fitted.view(), samples.view());
  return result;
}

}  // namespace contour
