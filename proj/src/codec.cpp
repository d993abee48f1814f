#include "contour_codec/codec.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <unsupported/Eigen/FFT>

#include "contour_codec/error.hpp"

namespace contour {

namespace {

constexpr std::size_t kDirectLimit = std::size_t{1} << 14;

// table[r] = exp(sign * 2 pi i r / m), r = 0..m-1. Indexing by (k * t) mod m
// keeps every phase exactly reduced.
std::vector<Complex> twiddles(std::size_t m, double sign) {
  std::vector<Complex> table(m);
  for (std::size_t r = 0; r < m; ++r) {
    const double angle = sign * 2.0 * std::numbers::pi * static_cast<double>(r) /
                         static_cast<double>(m);
    table[r] = std::polar(1.0, angle);
  }
  return table;
}

std::size_t wrap(long k, std::size_t m) {
  const long mm = static_cast<long>(m);
  return static_cast<std::size_t>(((k % mm) + mm) % mm);
}

bool use_direct(TransformMethod method, std::size_t work) {
  if (method == TransformMethod::Direct) return true;
  if (method == TransformMethod::Fft) return false;
  return work < kDirectLimit;
}

}  // namespace

FourierDescriptor::FourierDescriptor(std::size_t n)
    : n_(n), coeffs_(2 * n + 1, Complex{}) {}

FourierDescriptor::FourierDescriptor(std::size_t n, std::vector<Complex> coeffs)
    : n_(n), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != 2 * n + 1) {
    throw ValidationError("descriptor: expected " + std::to_string(2 * n + 1) +
                          " coefficients, got " + std::to_string(coeffs_.size()));
  }
  for (Complex c : coeffs_) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
      throw ValidationError("descriptor: non-finite coefficient");
    }
  }
}

Complex FourierDescriptor::at(long k) const {
  if (static_cast<std::size_t>(std::labs(k)) > n_) return Complex{};
  return coeffs_[static_cast<std::size_t>(k + static_cast<long>(n_))];
}

void FourierDescriptor::set(long k, Complex value) {
  if (static_cast<std::size_t>(std::labs(k)) > n_) {
    throw ValidationError("descriptor: frequency " + std::to_string(k) +
                          " outside [-n, n]");
  }
  coeffs_[static_cast<std::size_t>(k + static_cast<long>(n_))] = value;
}

std::vector<long> serialization_order(std::size_t n) {
  std::vector<long> order{0};
  for (long k = 1; k <= static_cast<long>(n); ++k) {
    order.push_back(k);
    order.push_back(-k);
  }
  return order;
}

FourierDescriptor encode(const ContourSamples& c, std::size_t n, TransformMethod method) {
  const std::size_t big_n = c.size();
  if (2 * n + 1 > big_n) throw ValidationError("harmonics exceed samples");
  const long ln = static_cast<long>(n);
  FourierDescriptor d(n);
  const double scale = 1.0 / static_cast<double>(big_n);

  if (use_direct(method, n * big_n)) {
    const auto w = twiddles(big_n, -1.0);
    for (long k = -ln; k <= ln; ++k) {
      const std::size_t kk = wrap(k, big_n);
      Complex sum{};
      for (std::size_t j = 0; j < big_n; ++j) sum += c[j] * w[(kk * j) % big_n];
      d.set(k, sum * scale);
    }
    return d;
  }

  Eigen::FFT<double> fft;
  std::vector<Complex> spectrum;
  fft.fwd(spectrum, c.samples());
  for (long k = -ln; k <= ln; ++k) d.set(k, spectrum[wrap(k, big_n)] * scale);
  return d;
}

ContourSamples decode(const FourierDescriptor& d, std::size_t m_pts, TransformMethod method) {
  const std::size_t n = d.max_harmonic();
  if (m_pts < 2 * n + 1 || m_pts == 0) {
    throw ValidationError("decode: m_pts (" + std::to_string(m_pts) +
                          ") must be at least 2n+1 (" + std::to_string(2 * n + 1) + ")");
  }
  const long ln = static_cast<long>(n);

  if (use_direct(method, n * m_pts)) {
    const auto w = twiddles(m_pts, 1.0);
    std::vector<Complex> out(m_pts);
    for (std::size_t t = 0; t < m_pts; ++t) {
      Complex sum{};
      for (long k = -ln; k <= ln; ++k) sum += d.at(k) * w[(wrap(k, m_pts) * t) % m_pts];
      out[t] = sum;
    }
    return ContourSamples(std::move(out));
  }

  std::vector<Complex> bins(m_pts, Complex{});
  for (long k = -ln; k <= ln; ++k) bins[wrap(k, m_pts)] += d.at(k);
  Eigen::FFT<double> fft;
  fft.SetFlag(Eigen::FFT<double>::Unscaled);
  std::vector<Complex> out;
  fft.inv(out, bins);
  return ContourSamples(std::move(out));
}

FourierDescriptor decode_adjoint(std::span<const Complex> point_grads, std::size_t n) {
  const std::size_t m = point_grads.size();
  if (m < 2 * n + 1) throw ValidationError("decode_adjoint: fewer points than 2n+1");
  const auto w = twiddles(m, -1.0);
  const long ln = static_cast<long>(n);
  FourierDescriptor g(n);
  for (long k = -ln; k <= ln; ++k) {
    const std::size_t kk = wrap(k, m);
    Complex sum{};
    for (std::size_t t = 0; t < m; ++t) sum += point_grads[t] * w[(kk * t) % m];
    g.set(k, sum);
  }
  return g;
}

FourierDescriptor truncate(const FourierDescriptor& d, std::size_t n_keep) {
  if (n_keep > d.max_harmonic()) {
    throw ValidationError("truncate: n_keep exceeds the descriptor's max harmonic");
  }
  FourierDescriptor out = d;
  const long ln = static_cast<long>(d.max_harmonic());
  for (long k = -ln; k <= ln; ++k) {
    if (static_cast<std::size_t>(std::labs(k)) > n_keep) out.set(k, Complex{});
  }
  return out;
}

FourierDescriptor sparsify(const FourierDescriptor& d, double threshold) {
  if (!(threshold >= 0.0)) throw ValidationError("sparsify: threshold must be >= 0");
  FourierDescriptor out = d;
  const long ln = static_cast<long>(d.max_harmonic());
  for (long k = -ln; k <= ln; ++k) {
    if (std::labs(k) <= 1) continue;
    if (std::abs(out.at(k)) < threshold) out.set(k, Complex{});
  }
  return out;
}

std::size_t zero_count(const FourierDescriptor& d) {
  return static_cast<std::size_t>(
      std::count(d.coeffs().begin(), d.coeffs().end(), Complex{}));
}

std::vector<double> cast_rays(const Polygon& p, Point center, std::size_t n_rays,
                              RayHit hit, bool* non_star) {
  const std::vector<Complex> v = to_complex(p);
  const Complex c = to_complex(center);
  const BoundingBox box = bounding_box(p);
  const double scale = std::max(box.max_x - box.min_x, box.max_y - box.min_y);
  const double merge_tol = 1e-9 * std::max(scale, 1.0);

  std::vector<double> rho(n_rays);
  bool crossed_twice = false;
  std::vector<double> hits;
  for (std::size_t j = 0; j < n_rays; ++j) {
    const double theta =
        2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n_rays);
    const Complex u = std::polar(1.0, theta);
    hits.clear();
    for (std::size_t i = 0; i < v.size(); ++i) {
      const Complex a = v[i];
      const Complex e = v[(i + 1) % v.size()] - a;
      const double denom = u.real() * e.imag() - u.imag() * e.real();
      if (std::abs(denom) < 1e-15 * std::abs(e)) continue;  // parallel
      const Complex ac = a - c;
      const double s = (ac.real() * e.imag() - ac.imag() * e.real()) / denom;
      const double r = (ac.real() * u.imag() - ac.imag() * u.real()) / denom;
      if (s <= 0.0 || r < -1e-12 || r > 1.0 + 1e-12) continue;
      hits.push_back(s);
    }
    if (hits.empty()) throw ValidationError("center outside contour");
    std::sort(hits.begin(), hits.end());
    std::size_t distinct = 1;
    for (std::size_t h = 1; h < hits.size(); ++h) {
      if (hits[h] - hits[h - 1] > merge_tol) ++distinct;
    }
    if (distinct > 1) crossed_twice = true;
    rho[j] = hit == RayHit::Farthest ? hits.back() : hits.front();
  }
  if (non_star != nullptr) *non_star = crossed_twice;
  return rho;
}

PolarEncoding encode_polar(const Polygon& p, Point center, std::size_t m,
                           std::size_t n_rays, const PolarOptions& opts) {
  if (n_rays < 2 * m + 1) throw ValidationError("encode_polar: n_rays must be >= 2m+1");
  if (!bounding_box(p).strictly_contains(center)) {
    throw ValidationError("encode_polar: center must lie strictly inside the bounding box");
  }
  PolarEncoding enc;
  enc.rho_samples = cast_rays(p, center, n_rays, opts.hit, &enc.non_star);

  std::vector<Complex> rho(enc.rho_samples.begin(), enc.rho_samples.end());
  const FourierDescriptor spectrum = encode(ContourSamples(std::move(rho)), m);
  const long lm = static_cast<long>(m);
  enc.descriptor.center = center;
  enc.descriptor.m = m;
  enc.descriptor.rho_coeffs.resize(2 * m + 1);
  for (long k = -lm; k <= lm; ++k) {
    const Complex sym = 0.5 * (spectrum.at(k) + std::conj(spectrum.at(-k)));
    enc.descriptor.rho_coeffs[static_cast<std::size_t>(k + lm)] = sym;
  }
  return enc;
}

PolarDecoding decode_polar(const PolarDescriptor& d, std::size_t m_pts) {
  if (d.rho_coeffs.size() != 2 * d.m + 1) {
    throw ValidationError("decode_polar: expected 2m+1 rho coefficients");
  }
  if (m_pts < 2 * d.m + 1) throw ValidationError("decode_polar: m_pts must be >= 2m+1");
  const long lm = static_cast<long>(d.m);
  auto coeff = [&](long k) { return d.rho_coeffs[static_cast<std::size_t>(k + lm)]; };

  double magnitude = 0.0;
  for (Complex c : d.rho_coeffs) magnitude = std::max(magnitude, std::abs(c));
  for (long k = 0; k <= lm; ++k) {
    if (std::abs(coeff(-k) - std::conj(coeff(k))) > 1e-9 * std::max(1.0, magnitude)) {
      throw ValidationError("decode_polar: rho coefficients are not conjugate symmetric");
    }
  }

  FourierDescriptor spectrum(d.m, d.rho_coeffs);
  const ContourSamples rho = decode(spectrum, m_pts);
  PolarDecoding out;
  std::vector<Complex> pts(m_pts);
  const Complex c = to_complex(d.center);
  for (std::size_t t = 0; t < m_pts; ++t) {
    const double theta =
        2.0 * std::numbers::pi * static_cast<double>(t) / static_cast<double>(m_pts);
    const double r = rho[t].real();
    if (r < 0.0) out.negative_rho = true;
    pts[t] = c + std::polar(1.0, theta) * r;
  }
  out.samples = ContourSamples(std::move(pts));
  return out;
}

}  // namespace contour
