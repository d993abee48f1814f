#include <filesystem>
#include <random>

#include "contour_codec/error.hpp"
#include "contour_codec/io.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace contour;
namespace fs = std::filesystem;

namespace {

FourierDescriptor random_descriptor(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  FourierDescriptor d(n);
  for (Complex& c : d.coeffs()) c = testing::random_points(rng, 1, 1e3)[0];
  return d;
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "contour_codec_io_test";
  fs::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("text descriptor layout") {
  FourierDescriptor d(1);
  d.set(0, {1.5, -2});
  d.set(1, {0.1, 0});
  d.set(-1, {3, 4});
  CHECK(descriptor_to_text(d) == "1\n0 1.5 -2\n1 0.1 0\n-1 3 4\n");
}

TEST_CASE("text and binary round trips are bit exact") {
  for (std::size_t n : {0u, 1u, 8u, 31u}) {
    const FourierDescriptor d = random_descriptor(n, 100 + n);
    CHECK(descriptor_from_text(descriptor_to_text(d)) == d);
    const auto bytes = descriptor_to_binary(d);
    CHECK(bytes.size() == 16 * (2 * n + 1));
    CHECK(descriptor_from_binary(bytes) == d);
  }
}

TEST_CASE("binary layout is little-endian re, im in serialization order") {
  FourierDescriptor d(1);
  d.set(0, {1.0, 0.0});
  d.set(1, {2.0, 0.0});
  d.set(-1, {0.0, -2.0});
  const auto b = descriptor_to_binary(d);
  // 1.0 = 0x3FF0000000000000, 2.0 = 0x4000000000000000
  CHECK(b[7] == 0x3F);
  CHECK(b[6] == 0xF0);
  CHECK(b[16 + 7] == 0x40);
  CHECK(b[32 + 15] == 0xC0);
}

TEST_CASE("descriptor parse errors") {
  CHECK_THROWS_AS(descriptor_from_text(""), ParseError);
  CHECK_THROWS_AS(descriptor_from_text("1\n0 1 2\n1 0 0\n"), ParseError);
  CHECK_THROWS_AS(descriptor_from_text("1\n0 1 2\n1 0 0\n1 0 0\n"), ParseError);
  CHECK_THROWS_AS(descriptor_from_text("1\n0 1 x\n1 0 0\n-1 0 0\n"), ParseError);
  CHECK_THROWS_AS(descriptor_from_text("1\n0 1 2\n5 0 0\n-1 0 0\n"), ParseError);
  CHECK_THROWS_AS(descriptor_from_binary(std::vector<std::uint8_t>(20)), ParseError);
  CHECK_THROWS_AS(descriptor_from_binary(std::vector<std::uint8_t>(32)), ParseError);
}

TEST_CASE("descriptor files pick the format from the extension") {
  const FourierDescriptor d = random_descriptor(4, 9);
  write_descriptor(scratch("d.bin"), d);
  write_descriptor(scratch("d.txt"), d);
  CHECK(fs::file_size(scratch("d.bin")) == 16 * 9);
  CHECK(read_descriptor(scratch("d.bin")) == d);
  CHECK(read_descriptor(scratch("d.txt")) == d);
  CHECK_THROWS_AS(read_descriptor(scratch("none.txt")), IoError);
}

TEST_CASE("polygon text") {
  const Polygon p = parse_polygon_text("# square\n0 0\n\n10 0\n10 10  \n0 10\n");
  CHECK(p.size() == 4);
  CHECK(p[2] == Point{10, 10});
  CHECK_THROWS_AS(parse_polygon_text("0 0\n1\n"), ParseError);
  CHECK_THROWS_AS(parse_polygon_text("0 0\n1 1\n"), ValidationError);
  CHECK_THROWS_AS(read_polygon(scratch("nope.txt")), IoError);
  CHECK(read_polygon(testing::data_path("giraffe.txt")).size() == 25);
}

TEST_CASE("point writers") {
  const std::vector<Complex> pts{{0, 0}, {1, 0}, {1, 2}};
  CHECK(points_csv(pts) == "x,y\n0,0\n1,0\n1,2\n");
  CHECK(points_geojson(pts) ==
        "{\"type\":\"Feature\",\"properties\":{},\"geometry\":{\"type\":\"Polygon\","
        "\"coordinates\":[[[0,0],[1,0],[1,2],[0,0]]]}}\n");
  const std::string svg = points_svg(pts);
  CHECK(svg.find("<svg") == 0);
  CHECK(svg.find("<path") != std::string::npos);
  CHECK(svg.find("<path", svg.find("<path") + 1) == std::string::npos);
  CHECK(svg.find("Z\"") != std::string::npos);
  const std::string overlay = overlay_svg({{pts, "#888", 2.0, true}, {pts, "#d00", 1.0, false}});
  CHECK(overlay.find("stroke-dasharray") != std::string::npos);
  CHECK(overlay.find("#d00") != std::string::npos);
}

TEST_CASE("format_double is shortest round trip") {
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(-2.0) == "-2");
  CHECK(format_double(1e-300) == "1e-300");
}

TEST_CASE("trace csv") {
  const std::vector<TraceRow> rows{{1, 2, 3, 6}, {0.5, 0, 0.25, 0.75}};
  CHECK(trace_csv(rows) == "iter,l_cd,l_perim,l_coeff,total\n0,1,2,3,6\n1,0.5,0,0.25,0.75\n");
}

TEST_CASE("chart") {
  const std::vector<double> x{6, 10, 18};
  const std::vector<double> y{3, 2, 1};
  const std::string svg = line_chart_svg(x, y, "n", "cd");
  CHECK(svg.find("<polyline") != std::string::npos);
  CHECK_THROWS_AS(line_chart_svg(x, std::vector<double>{1.0}, "a", "b"), ValidationError);
}
