#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "contour_codec/geometry.hpp"

namespace contour {

/// Complex Fourier-series coefficients F_k, k in [-n, n], of a closed contour
/// C(t) = X(t) + iY(t). The 1/N factor sits on the analysis side, so the
/// coefficients do not depend on how densely the contour was sampled.
class FourierDescriptor {
 public:
  FourierDescriptor() = default;
  /// All-zero descriptor with max harmonic `n`.
  explicit FourierDescriptor(std::size_t n);
  /// `coeffs` indexed by k + n.
  FourierDescriptor(std::size_t n, std::vector<Complex> coeffs);

  std::size_t max_harmonic() const noexcept { return n_; }
  std::size_t complex_count() const noexcept { return 2 * n_ + 1; }
  /// One complex coefficient counts as two real values.
  std::size_t real_count() const noexcept { return 2 * complex_count(); }

  Complex at(long k) const;
  void set(long k, Complex value);

  /// Coefficients indexed by k + n, i.e. frequencies -n..n.
  const std::vector<Complex>& coeffs() const noexcept { return coeffs_; }
  std::vector<Complex>& coeffs() noexcept { return coeffs_; }

  friend bool operator==(const FourierDescriptor&, const FourierDescriptor&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<Complex> coeffs_{Complex{}};
};

/// Frequencies in serialization order: 0, 1, -1, 2, -2, ..., n, -n.
std::vector<long> serialization_order(std::size_t n);

enum class TransformMethod { Auto, Direct, Fft };

/// F_k = (1/N) sum_j z_j exp(-2 pi i j k / N), k in [-n, n]. Auto uses direct
/// summation while n * N < 2^14 and an FFT above that.
FourierDescriptor encode(const ContourSamples& c, std::size_t n,
                         TransformMethod method = TransformMethod::Auto);

/// z_t = sum_k F_k exp(2 pi i k t / m_pts), t = 0..m_pts-1.
ContourSamples decode(const FourierDescriptor& d, std::size_t m_pts,
                      TransformMethod method = TransformMethod::Auto);

/// Adjoint of the linear map `decode(., m_pts)` with respect to the real inner
/// product on (x, y) pairs: maps per-point cotangents g_t = dL/dx_t + i dL/dy_t
/// to per-coefficient cotangents sum_t g_t exp(-2 pi i k t / m_pts).
FourierDescriptor decode_adjoint(std::span<const Complex> point_grads, std::size_t n);

/// Zeroes every |k| > n_keep. The frequency range is unchanged.
FourierDescriptor truncate(const FourierDescriptor& d, std::size_t n_keep);

/// Zeroes every F_k with |F_k| < threshold, except k in {-1, 0, 1}.
FourierDescriptor sparsify(const FourierDescriptor& d, double threshold);

/// Number of coefficients equal to zero.
std::size_t zero_count(const FourierDescriptor& d);

// ---------------------------------------------------------------------------
// Polar baseline: rho(theta) about a fixed center.

enum class RayHit { Farthest, Nearest };

struct PolarDescriptor {
  Point center;
  std::size_t m = 0;
  /// Coefficients of rho, indexed by k + m. Conjugate symmetric.
  std::vector<Complex> rho_coeffs;

  /// Independent real values of the real-valued rho spectrum (F_0 real, F_k
  /// and F_-k conjugate). The center is not counted.
  std::size_t real_count() const noexcept { return 2 * m + 1; }
};

struct PolarEncoding {
  PolarDescriptor descriptor;
  /// Sampled rho_j at theta_j = 2 pi j / n_rays.
  std::vector<double> rho_samples;
  /// Some ray crosses the boundary more than once, so the region is not
  /// star-shaped with respect to the center.
  bool non_star = false;
};

struct PolarOptions {
  RayHit hit = RayHit::Farthest;
};

/// Casts `n_rays` rays from `center`, takes the configured boundary hit per ray
/// and returns the Fourier coefficients of the resulting rho samples.
/// Throws "center outside contour" when a ray misses the boundary.
PolarEncoding encode_polar(const Polygon& p, Point center, std::size_t m,
                           std::size_t n_rays, const PolarOptions& opts = {});

/// rho_j for every ray, without the spectral step.
std::vector<double> cast_rays(const Polygon& p, Point center, std::size_t n_rays,
                              RayHit hit = RayHit::Farthest, bool* non_star = nullptr);

struct PolarDecoding {
  ContourSamples samples;
  /// Reconstructed rho went negative somewhere.
  bool negative_rho = false;
};

PolarDecoding decode_polar(const PolarDescriptor& d, std::size_t m_pts);

}  // namespace contour
