#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace contour {

using Complex = std::complex<double>;

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

inline Complex to_complex(Point p) { return {p.x, p.y}; }
inline Point to_point(Complex z) { return {z.real(), z.imag()}; }

/// Closed polygon in pixel coordinates. The last vertex connects back to the
/// first. Consecutive duplicates (closer than 1e-12) are dropped on
/// construction, including a repeated closing vertex.
class Polygon {
 public:
  /// Throws ValidationError when fewer than 3 distinct vertices remain or a
  /// coordinate is not finite.
  explicit Polygon(std::vector<Point> points);

  static Polygon from_complex(std::span<const Complex> points);

  const std::vector<Point>& points() const noexcept { return points_; }
  std::size_t size() const noexcept { return points_.size(); }
  const Point& operator[](std::size_t i) const { return points_[i]; }

 private:
  std::vector<Point> points_;
};

/// N complex samples, equally spaced in arc length along some source curve.
class ContourSamples {
 public:
  ContourSamples() = default;
  explicit ContourSamples(std::vector<Complex> samples);

  const std::vector<Complex>& samples() const noexcept { return samples_; }
  std::span<const Complex> view() const noexcept { return samples_; }
  std::size_t size() const noexcept { return samples_.size(); }
  const Complex& operator[](std::size_t i) const { return samples_[i]; }

 private:
  std::vector<Complex> samples_;
};

struct BoundingBox {
  double min_x = 0.0;
  double min_y = 0.0;
  double max_x = 0.0;
  double max_y = 0.0;

  bool strictly_contains(Point p) const {
    return p.x > min_x && p.x < max_x && p.y > min_y && p.y < max_y;
  }

  friend bool operator==(const BoundingBox&, const BoundingBox&) = default;
};

/// Sum of edge lengths, closing edge included.
double perimeter(const Polygon& p);
double perimeter(std::span<const Complex> loop);

/// Signed shoelace area; positive for counter-clockwise loops in a y-up frame.
double signed_area(std::span<const Complex> loop);
double signed_area(const Polygon& p);

/// Arithmetic mean of the vertices.
Complex vertex_centroid(std::span<const Complex> loop);

BoundingBox bounding_box(const Polygon& p);
BoundingBox bounding_box(std::span<const Complex> loop);

/// Places `n_pts` samples at arc lengths j * perimeter / n_pts, starting at
/// vertex 0 and following the polygon orientation.
ContourSamples resample(const Polygon& p, std::size_t n_pts);

enum class ChamferReduction { Mean, Sum };

struct ChamferOptions {
  ChamferReduction reduction = ChamferReduction::Mean;
  bool squared = true;
};

/// Index of the nearest point in `to` for every point in `from`. Ties go to the
/// lowest index.
std::vector<std::size_t> nearest_neighbors(std::span<const Complex> from,
                                           std::span<const Complex> to);

/// Symmetric Chamfer distance. Default: sum of the two directional means of
/// squared nearest-neighbour distances.
double chamfer_distance(std::span<const Complex> a, std::span<const Complex> b,
                        const ChamferOptions& opts = {});

/// Number of unordered pairs of non-adjacent edges of the closed loop that
/// intersect. Touching counts; shared endpoints of adjacent edges do not.
std::size_t count_self_intersections(std::span<const Complex> loop);
std::size_t count_self_intersections(const Polygon& p);

/// Sum of signed exterior angles along the closed loop (2*pi times the turning
/// number). Zero-length edges are skipped.
double total_turning(std::span<const Complex> loop);

/// Even-odd point-in-polygon test.
bool contains(const Polygon& p, Point q);

std::vector<Complex> to_complex(const Polygon& p);

}  // namespace contour
