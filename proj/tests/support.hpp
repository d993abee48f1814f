#pragma once

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "contour_codec/geometry.hpp"
#include "contour_codec/io.hpp"
#include "json.hpp"

namespace testing {

using contour::Complex;
using contour::Point;
using contour::Polygon;

inline std::filesystem::path data_path(const std::string& name) {
  return std::filesystem::path(CONTOUR_TEST_DATA) / name;
}

inline std::string read_text(const std::string& name) {
  std::ifstream in(data_path(name), std::ios::binary);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline nlohmann::json load_json(const std::string& name) {
  std::ifstream in(data_path(name));
  std::stringstream buf;
  buf << in.rdbuf();
  return nlohmann::json::parse(buf.str());
}

inline const nlohmann::json& golden() {
  static const nlohmann::json g = load_json("golden.json");
  return g;
}

inline Polygon fixture(const std::string& name) {
  return contour::read_polygon(data_path(name + ".txt"));
}

// Star-shaped polygon about a random center with jittered radii; never
// degenerate.
inline Polygon random_polygon(std::mt19937_64& rng, std::size_t verts) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double cx = 50.0 + 400.0 * u(rng);
  const double cy = 50.0 + 400.0 * u(rng);
  const double r = 10.0 + 90.0 * u(rng);
  std::vector<Point> pts;
  for (std::size_t i = 0; i < verts; ++i) {
    const double t = 2.0 * std::numbers::pi * (static_cast<double>(i) + 0.8 * u(rng)) /
                     static_cast<double>(verts);
    const double rad = r * (0.5 + u(rng));
    pts.push_back({cx + rad * std::cos(t), cy + rad * std::sin(t)});
  }
  return Polygon(std::move(pts));
}

inline std::vector<Complex> random_points(std::mt19937_64& rng, std::size_t n, double scale) {
  std::uniform_real_distribution<double> u(-scale, scale);
  std::vector<Complex> out(n);
  for (Complex& z : out) z = {u(rng), u(rng)};
  return out;
}

inline double max_abs_diff(std::span<const Complex> a, std::span<const Complex> b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

// max_i |a_i - n_i| / max(|a_i|, |n_i|, floor)
inline double max_rel_error(const std::vector<double>& analytic, const std::vector<double>& numeric,
                            double floor = 1e-6) {
  double worst = 0.0;
  for (std::size_t i = 0; i < analytic.size(); ++i) {
    const double scale = std::max({std::abs(analytic[i]), std::abs(numeric[i]), floor});
    worst = std::max(worst, std::abs(analytic[i] - numeric[i]) / scale);
  }
  return worst;
}

}  // namespace testing
