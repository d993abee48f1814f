#include "contour_codec/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "contour_codec/error.hpp"

namespace contour {

namespace {

constexpr double kDuplicateTolerance = 1e-12;
constexpr double kCollinearEps = 1e-12;

bool finite(Point p) { return std::isfinite(p.x) && std::isfinite(p.y); }

double cross(Complex a, Complex b) {
  return a.real() * b.imag() - a.imag() * b.real();
}

// Orientation of c relative to the directed line a->b, snapped to zero inside
// the collinearity band.
int orientation(Complex a, Complex b, Complex c) {
  const double v = cross(b - a, c - a);
  if (std::abs(v) <= kCollinearEps) return 0;
  return v > 0 ? 1 : -1;
}

bool on_segment(Complex a, Complex b, Complex c) {
  return std::min(a.real(), b.real()) - kCollinearEps <= c.real() &&
         c.real() <= std::max(a.real(), b.real()) + kCollinearEps &&
         std::min(a.imag(), b.imag()) - kCollinearEps <= c.imag() &&
         c.imag() <= std::max(a.imag(), b.imag()) + kCollinearEps;
}

bool segments_intersect(Complex p1, Complex p2, Complex q1, Complex q2) {
  const int o1 = orientation(p1, p2, q1);
  const int o2 = orientation(p1, p2, q2);
  const int o3 = orientation(q1, q2, p1);
  const int o4 = orientation(q1, q2, p2);
  if (o1 != o2 && o3 != o4) return true;
  if (o1 == 0 && on_segment(p1, p2, q1)) return true;
  if (o2 == 0 && on_segment(p1, p2, q2)) return true;
  if (o3 == 0 && on_segment(q1, q2, p1)) return true;
  if (o4 == 0 && on_segment(q1, q2, p2)) return true;
  return false;
}

void require_nonempty(std::span<const Complex> s, const char* name) {
  if (s.empty()) throw ValidationError(std::string(name) + ": empty point set");
}

}  // namespace

Polygon::Polygon(std::vector<Point> points) {
  for (const Point& p : points) {
    if (!finite(p)) throw ValidationError("polygon: non-finite coordinate");
  }
  std::vector<Point> kept;
  kept.reserve(points.size());
  for (const Point& p : points) {
    if (!kept.empty() && std::hypot(p.x - kept.back().x, p.y - kept.back().y) <
                             kDuplicateTolerance) {
      continue;
    }
    kept.push_back(p);
  }
  while (kept.size() > 1 &&
         std::hypot(kept.back().x - kept.front().x,
                    kept.back().y - kept.front().y) < kDuplicateTolerance) {
    kept.pop_back();
  }
  if (kept.size() < 3) {
    throw ValidationError("polygon: fewer than 3 distinct vertices");
  }
  points_ = std::move(kept);
}

Polygon Polygon::from_complex(std::span<const Complex> points) {
  std::vector<Point> pts;
  pts.reserve(points.size());
  for (Complex z : points) pts.push_back(to_point(z));
  return Polygon(std::move(pts));
}

ContourSamples::ContourSamples(std::vector<Complex> samples)
    : samples_(std::move(samples)) {
  for (Complex z : samples_) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw ValidationError("contour samples: non-finite coordinate");
    }
  }
}

std::vector<Complex> to_complex(const Polygon& p) {
  std::vector<Complex> out;
  out.reserve(p.size());
  for (const Point& q : p.points()) out.push_back(to_complex(q));
  return out;
}

double perimeter(std::span<const Complex> loop) {
  double total = 0.0;
  const std::size_t n = loop.size();
  for (std::size_t i = 0; i < n; ++i) total += std::abs(loop[(i + 1) % n] - loop[i]);
  return total;
}

double perimeter(const Polygon& p) { return perimeter(to_complex(p)); }

double signed_area(std::span<const Complex> loop) {
  double twice = 0.0;
  const std::size_t n = loop.size();
  for (std::size_t i = 0; i < n; ++i) twice += cross(loop[i], loop[(i + 1) % n]);
  return 0.5 * twice;
}

double signed_area(const Polygon& p) { return signed_area(to_complex(p)); }

Complex vertex_centroid(std::span<const Complex> loop) {
  require_nonempty(loop, "centroid");
  Complex sum{};
  for (Complex z : loop) sum += z;
  return sum / static_cast<double>(loop.size());
}

BoundingBox bounding_box(std::span<const Complex> loop) {
  require_nonempty(loop, "bounding_box");
  BoundingBox box{loop[0].real(), loop[0].imag(), loop[0].real(), loop[0].imag()};
  for (Complex z : loop) {
    box.min_x = std::min(box.min_x, z.real());
    box.min_y = std::min(box.min_y, z.imag());
    box.max_x = std::max(box.max_x, z.real());
    box.max_y = std::max(box.max_y, z.imag());
  }
  return box;
}

BoundingBox bounding_box(const Polygon& p) { return bounding_box(to_complex(p)); }

ContourSamples resample(const Polygon& p, std::size_t n_pts) {
  if (n_pts < 4) throw ValidationError("resample: n_pts must be at least 4");
  const std::vector<Complex> v = to_complex(p);
  const std::size_t n = v.size();

  std::vector<double> cumulative(n + 1, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    cumulative[i + 1] = cumulative[i] + std::abs(v[(i + 1) % n] - v[i]);
  }
  const double total = cumulative[n];
  if (!(total > 0.0)) throw ValidationError("degenerate contour");

  std::vector<Complex> out;
  out.reserve(n_pts);
  std::size_t edge = 0;
  for (std::size_t j = 0; j < n_pts; ++j) {
    const double s = total * static_cast<double>(j) / static_cast<double>(n_pts);
    while (edge + 1 < n && cumulative[edge + 1] <= s) ++edge;
    const double len = cumulative[edge + 1] - cumulative[edge];
    const double t = len > 0.0 ? (s - cumulative[edge]) / len : 0.0;
    out.push_back(v[edge] + t * (v[(edge + 1) % n] - v[edge]));
  }
  return ContourSamples(std::move(out));
}

std::vector<std::size_t> nearest_neighbors(std::span<const Complex> from,
                                           std::span<const Complex> to) {
  require_nonempty(to, "nearest_neighbors");
  std::vector<std::size_t> idx(from.size(), 0);
  for (std::size_t i = 0; i < from.size(); ++i) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < to.size(); ++j) {
      const double d = std::norm(from[i] - to[j]);
      if (d < best) {
        best = d;
        idx[i] = j;
      }
    }
  }
  return idx;
}

double chamfer_distance(std::span<const Complex> a, std::span<const Complex> b,
                        const ChamferOptions& opts) {
  require_nonempty(a, "chamfer_distance");
  require_nonempty(b, "chamfer_distance");
  auto directional = [&](std::span<const Complex> from, std::span<const Complex> to) {
    const auto nn = nearest_neighbors(from, to);
    double sum = 0.0;
    for (std::size_t i = 0; i < from.size(); ++i) {
      const double d2 = std::norm(from[i] - to[nn[i]]);
      sum += opts.squared ? d2 : std::sqrt(d2);
    }
    if (opts.reduction == ChamferReduction::Mean) sum /= static_cast<double>(from.size());
    return sum;
  };
  return directional(a, b) + directional(b, a);
}

std::size_t count_self_intersections(std::span<const Complex> loop) {
  const std::size_t n = loop.size();
  if (n < 4) return 0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const Complex p1 = loop[i];
    const Complex p2 = loop[(i + 1) % n];
    for (std::size_t j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;  // adjacent through the closing edge
      if (segments_intersect(p1, p2, loop[j], loop[(j + 1) % n])) ++count;
    }
  }
  return count;
}

std::size_t count_self_intersections(const Polygon& p) {
  return count_self_intersections(to_complex(p));
}

double total_turning(std::span<const Complex> loop) {
  std::vector<Complex> edges;
  const std::size_t n = loop.size();
  edges.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Complex e = loop[(i + 1) % n] - loop[i];
    if (std::abs(e) > 0.0) edges.push_back(e);
  }
  double turning = 0.0;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const Complex a = edges[i];
    const Complex b = edges[(i + 1) % edges.size()];
    turning += std::arg(b * std::conj(a));
  }
  return turning;
}

bool contains(const Polygon& p, Point q) {
  bool inside = false;
  const auto& v = p.points();
  const std::size_t n = v.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    if ((v[i].y > q.y) != (v[j].y > q.y)) {
      const double x = v[j].x + (q.y - v[j].y) * (v[i].x - v[j].x) / (v[i].y - v[j].y);
      if (q.x < x) inside = !inside;
    }
  }
  return inside;
}

}  // namespace contour
