#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "contour_codec/codec.hpp"
#include "contour_codec/geometry.hpp"

namespace contour {

enum class PerimeterMode {
  /// lambda * sqrt(sum_i |z_i - z_{i+1}|^2), closing edge included.
  SumSquared,
  /// lambda * sum_i |z_i - z_{i+1}|, the ordinary perimeter.
  TruePerimeter,
};

struct LossConfig {
  double lambda_cd = 1.0;
  double lambda_perim = 0.01;
  double lambda_coeff = 500.0;
  /// The perimeter weight drops to zero from this iteration on. Empty: never.
  std::optional<std::size_t> perim_decay_iteration = 2000;
  /// Normalizer of the coefficient penalty. Empty: 2n+1.
  std::optional<std::size_t> n_c;
  PerimeterMode perimeter_mode = PerimeterMode::SumSquared;
  ChamferOptions chamfer;

  /// Throws ValidationError on negative weights or n_c == 0.
  void validate() const;

  double lambda_perim_at(std::size_t iteration) const {
    if (perim_decay_iteration && iteration >= *perim_decay_iteration) return 0.0;
    return lambda_perim;
  }
};

/// Loss value with per-point gradients g = dL/dx + i dL/dy.
struct PointLoss {
  double value = 0.0;
  std::vector<Complex> grad;
};

/// Loss value with per-coefficient gradients dL/dRe + i dL/dIm.
struct CoeffLoss {
  double value = 0.0;
  FourierDescriptor grad;
};

/// Chamfer distance of `decoded` against `target` and its gradient with respect
/// to the decoded points. Ties resolve to the lowest index.
PointLoss loss_chamfer(std::span<const Complex> decoded, std::span<const Complex> target,
                       const ChamferOptions& opts = {});

/// Perimeter regularizer. All-coincident points give value 0 and gradient 0.
PointLoss loss_perimeter(std::span<const Complex> decoded, double lambda,
                         PerimeterMode mode = PerimeterMode::SumSquared);

/// (lambda_coeff / n_c) * sum over k not in {-1, 0, 1} of |F_k|. The
/// subgradient at F_k = 0 is taken as 0.
CoeffLoss loss_coeff(const FourierDescriptor& d, const LossConfig& cfg);

struct ShapeLoss {
  double total = 0.0;
  double l_cd = 0.0;     // lambda_cd * chamfer
  double l_perim = 0.0;  // lambda_perim(iteration) * perimeter term
  double l_coeff = 0.0;
  FourierDescriptor grad;
};

/// Decodes `d` at |target| points, sums the weighted Chamfer, perimeter and
/// coefficient terms, and pulls the point gradients back through the decode
/// adjoint. `perim_active == false` forces the perimeter weight to zero.
ShapeLoss total_shape_loss(const FourierDescriptor& d, const ContourSamples& target,
                           const LossConfig& cfg, std::size_t iteration,
                           bool perim_active = true);

// ---------------------------------------------------------------------------
// Descriptor fitting by gradient descent.

enum class FitInit {
  /// encode(resample(target, n_pts), n).
  Encode,
  /// Centroid plus the best single-harmonic circle with the target's
  /// orientation and start point.
  Circle,
  /// Circle plus seeded Gaussian noise on every harmonic.
  Random,
};

enum class Optimizer {
  /// Fixed-step (sub)gradient descent on the full loss.
  Gradient,
  /// Gradient step on the smooth terms followed by the exact proximal step of
  /// the coefficient penalty (soft-thresholding of |F_k|).
  Proximal,
};

struct FitOptions {
  std::size_t n = 8;
  std::size_t n_pts = 60;
  std::size_t steps = 3000;
  double step_size = 0.1;
  double momentum = 0.0;
  Optimizer optimizer = Optimizer::Proximal;
  FitInit init = FitInit::Encode;
  std::uint64_t seed = 0;
  /// Noise scale of FitInit::Random, relative to the circle radius.
  double init_noise = 0.3;
  /// Drop the perimeter weight once its moving average plateaus, instead of
  /// (or before) the fixed decay iteration.
  bool plateau_decay = false;
  std::size_t plateau_window = 200;
  double plateau_tolerance = 1e-4;
};

struct TraceRow {
  double l_cd = 0.0;
  double l_perim = 0.0;
  double l_coeff = 0.0;
  double total = 0.0;
};

struct FitResult {
  FourierDescriptor descriptor;
  std::vector<TraceRow> trace;
  std::size_t iterations = 0;
  /// Unweighted Chamfer of the final descriptor decoded at n_pts against the
  /// resampled target.
  double final_chamfer = 0.0;
  /// First iteration at which the perimeter weight was zero, if any.
  std::optional<std::size_t> perim_dropped_at;
};

/// Starting descriptor for a fit.
FourierDescriptor initial_descriptor(const ContourSamples& target, std::size_t n,
                                     FitInit init, std::uint64_t seed, double noise);

/// Throws NumericalError "divergence at iteration i" on a non-finite loss.
FitResult fit_descriptor(const Polygon& target, const LossConfig& cfg,
                         const FitOptions& opts);

}  // namespace contour
