#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "contour_codec/codec.hpp"
#include "contour_codec/geometry.hpp"
#include "contour_codec/losses.hpp"

namespace contour {

// Descriptor records. Both list frequencies in serialization_order(n) and
// round-trip bit-exactly.
//
// Text:   first line `n`, then 2n+1 lines `k re im`.
// Binary: (re, im) pairs as little-endian IEEE-754 doubles, nothing else; n
//         follows from the byte count.
std::string descriptor_to_text(const FourierDescriptor& d);
FourierDescriptor descriptor_from_text(const std::string& text);
std::vector<std::uint8_t> descriptor_to_binary(const FourierDescriptor& d);
FourierDescriptor descriptor_from_binary(std::span<const std::uint8_t> bytes);

/// Picks the binary reader for `.bin` files and the text reader otherwise.
FourierDescriptor read_descriptor(const std::filesystem::path& path);
void write_descriptor(const std::filesystem::path& path, const FourierDescriptor& d);

/// One `x y` pair per line; blank lines and `#` comments ignored.
Polygon parse_polygon_text(const std::string& text);
Polygon read_polygon(const std::filesystem::path& path);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& contents);

/// Shortest decimal form that parses back to the same double.
std::string format_double(double v);

std::string points_csv(std::span<const Complex> pts);
/// GeoJSON Feature with a Polygon geometry; the ring repeats the first point.
std::string points_geojson(std::span<const Complex> pts);
/// Single closed `path` element.
std::string points_svg(std::span<const Complex> pts);

struct OverlayLayer {
  std::vector<Complex> points;
  std::string stroke;
  double width = 1.0;
  bool dashed = false;
};
std::string overlay_svg(const std::vector<OverlayLayer>& layers);

/// Polyline chart of y against x with axis ticks at the data range.
std::string line_chart_svg(std::span<const double> x, std::span<const double> y,
                           const std::string& x_label, const std::string& y_label);

/// `iter,l_cd,l_perim,l_coeff,total`.
std::string trace_csv(const std::vector<TraceRow>& trace);

}  // namespace contour
