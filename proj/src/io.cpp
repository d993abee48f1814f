#include "contour_codec/io.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include "contour_codec/error.hpp"

namespace contour {

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

namespace {

double parse_double(std::string_view token, std::size_t line) {
  double v = 0.0;
  const auto res = std::from_chars(token.data(), token.data() + token.size(), v);
  if (res.ec != std::errc{} || res.ptr != token.data() + token.size()) {
    throw ParseError("line " + std::to_string(line) + ": bad number '" + std::string(token) + "'");
  }
  return v;
}

std::vector<std::string_view> tokens(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

std::vector<std::string_view> content_lines(const std::string& text,
                                            std::vector<std::size_t>& line_numbers) {
  std::vector<std::string_view> lines;
  std::string_view rest(text);
  std::size_t no = 0;
  while (!rest.empty()) {
    const auto nl = rest.find('\n');
    std::string_view line = rest.substr(0, nl);
    rest = nl == std::string_view::npos ? std::string_view{} : rest.substr(nl + 1);
    ++no;
    const auto hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    lines.push_back(line);
    line_numbers.push_back(no);
  }
  return lines;
}

void put_le(std::vector<std::uint8_t>& out, double v) {
  auto bits = std::bit_cast<std::uint64_t>(v);
  for (int b = 0; b < 8; ++b) {
    out.push_back(static_cast<std::uint8_t>(bits & 0xffu));
    bits >>= 8;
  }
}

double get_le(std::span<const std::uint8_t> bytes) {
  std::uint64_t bits = 0;
  for (int b = 7; b >= 0; --b) bits = (bits << 8) | bytes[static_cast<std::size_t>(b)];
  return std::bit_cast<double>(bits);
}

}  // namespace

std::string descriptor_to_text(const FourierDescriptor& d) {
  std::string out = std::to_string(d.max_harmonic()) + "\n";
  for (long k : serialization_order(d.max_harmonic())) {
    const Complex c = d.at(k);
    out += std::to_string(k) + " " + format_double(c.real()) + " " + format_double(c.imag()) + "\n";
  }
  return out;
}

FourierDescriptor descriptor_from_text(const std::string& text) {
  std::vector<std::size_t> numbers;
  const auto lines = content_lines(text, numbers);
  if (lines.empty()) throw ParseError("descriptor: empty record");
  const auto head = tokens(lines[0]);
  long n = -1;
  if (head.size() != 1 ||
      std::from_chars(head[0].data(), head[0].data() + head[0].size(), n).ec != std::errc{} ||
      n < 0) {
    throw ParseError("descriptor: first line must hold the max harmonic n");
  }
  const auto un = static_cast<std::size_t>(n);
  if (lines.size() != 2 * un + 2) {
    throw ParseError("descriptor: expected " + std::to_string(2 * un + 1) +
                     " coefficient lines, got " + std::to_string(lines.size() - 1));
  }
  FourierDescriptor d(un);
  std::vector<bool> seen(2 * un + 1, false);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto tok = tokens(lines[i]);
    if (tok.size() != 3) {
      throw ParseError("line " + std::to_string(numbers[i]) + ": expected `k re im`");
    }
    long k = 0;
    if (std::from_chars(tok[0].data(), tok[0].data() + tok[0].size(), k).ec != std::errc{} ||
        std::labs(k) > n) {
      throw ParseError("line " + std::to_string(numbers[i]) + ": bad frequency");
    }
    const auto slot = static_cast<std::size_t>(k + n);
    if (seen[slot]) throw ParseError("line " + std::to_string(numbers[i]) + ": repeated frequency");
    seen[slot] = true;
    d.set(k, {parse_double(tok[1], numbers[i]), parse_double(tok[2], numbers[i])});
  }
  return FourierDescriptor(un, d.coeffs());
}

std::vector<std::uint8_t> descriptor_to_binary(const FourierDescriptor& d) {
  std::vector<std::uint8_t> out;
  out.reserve(16 * d.complex_count());
  for (long k : serialization_order(d.max_harmonic())) {
    put_le(out, d.at(k).real());
    put_le(out, d.at(k).imag());
  }
  return out;
}

FourierDescriptor descriptor_from_binary(std::span<const std::uint8_t> bytes) {
  if (bytes.empty() || bytes.size() % 16 != 0 || (bytes.size() / 16) % 2 != 1) {
    throw ParseError("descriptor: binary record must hold an odd number of 16-byte pairs");
  }
  const std::size_t n = (bytes.size() / 16 - 1) / 2;
  FourierDescriptor d(n);
  std::size_t offset = 0;
  for (long k : serialization_order(n)) {
    const double re = get_le(bytes.subspan(offset, 8));
    const double im = get_le(bytes.subspan(offset + 8, 8));
    d.set(k, {re, im});
    offset += 16;
  }
  return FourierDescriptor(n, d.coeffs());
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << contents;
  if (!out) throw IoError("write failed for " + path.string());
}

FourierDescriptor read_descriptor(const std::filesystem::path& path) {
  const std::string data = read_file(path);
  if (path.extension() == ".bin") {
    return descriptor_from_binary(
        std::span(reinterpret_cast<const std::uint8_t*>(data.data()), data.size()));
  }
  return descriptor_from_text(data);
}

void write_descriptor(const std::filesystem::path& path, const FourierDescriptor& d) {
  if (path.extension() == ".bin") {
    const auto bytes = descriptor_to_binary(d);
    write_file(path, std::string(bytes.begin(), bytes.end()));
    return;
  }
  write_file(path, descriptor_to_text(d));
}

Polygon parse_polygon_text(const std::string& text) {
  std::vector<std::size_t> numbers;
  const auto lines = content_lines(text, numbers);
  std::vector<Point> pts;
  pts.reserve(lines.size());
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto tok = tokens(lines[i]);
    if (tok.size() != 2) {
      throw ParseError("line " + std::to_string(numbers[i]) + ": expected `x y`");
    }
    pts.push_back({parse_double(tok[0], numbers[i]), parse_double(tok[1], numbers[i])});
  }
  return Polygon(std::move(pts));
}

Polygon read_polygon(const std::filesystem::path& path) {
  return parse_polygon_text(read_file(path));
}

std::string points_csv(std::span<const Complex> pts) {
  std::string out = "x,y\n";
  for (Complex z : pts) out += format_double(z.real()) + "," + format_double(z.imag()) + "\n";
  return out;
}

std::string points_geojson(std::span<const Complex> pts) {
  std::string ring;
  auto coord = [](Complex z) {
    return "[" + format_double(z.real()) + "," + format_double(z.imag()) + "]";
  };
  for (Complex z : pts) ring += coord(z) + ",";
  if (!pts.empty()) ring += coord(pts.front());
  return "{\"type\":\"Feature\",\"properties\":{},\"geometry\":{\"type\":\"Polygon\","
         "\"coordinates\":[[" + ring + "]]}}\n";
}

namespace {

struct Frame {
  double min_x, min_y, scale, pad;
  double width, height;

  Frame(const BoundingBox& box, double target_size) {
    pad = 10.0;
    const double w = std::max(box.max_x - box.min_x, 1e-9);
    const double h = std::max(box.max_y - box.min_y, 1e-9);
    scale = target_size / std::max(w, h);
    min_x = box.min_x;
    min_y = box.min_y;
    width = w * scale + 2 * pad;
    height = h * scale + 2 * pad;
  }

  std::string xy(Complex z) const {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3f,%.3f", (z.real() - min_x) * scale + pad,
                  (z.imag() - min_y) * scale + pad);
    return buf;
  }

  std::string header() const {
    char buf[200];
    std::snprintf(buf, sizeof buf,
                  "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%.0f\" height=\"%.0f\" "
                  "viewBox=\"0 0 %.3f %.3f\">\n",
                  std::ceil(width), std::ceil(height), width, height);
    return buf;
  }
};

std::string path_d(const Frame& f, std::span<const Complex> pts) {
  std::string d;
  for (std::size_t i = 0; i < pts.size(); ++i) d += (i == 0 ? "M " : " L ") + f.xy(pts[i]);
  return d + " Z";
}

}  // namespace

std::string points_svg(std::span<const Complex> pts) {
  const Frame f(bounding_box(pts), 400.0);
  return f.header() + "<path d=\"" + path_d(f, pts) +
         "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n</svg>\n";
}

std::string overlay_svg(const std::vector<OverlayLayer>& layers) {
  std::vector<Complex> all;
  for (const auto& l : layers) all.insert(all.end(), l.points.begin(), l.points.end());
  const Frame f(bounding_box(all), 400.0);
  std::string out = f.header();
  char attr[160];
  for (const auto& l : layers) {
    std::snprintf(attr, sizeof attr, "\" fill=\"none\" stroke=\"%s\" stroke-width=\"%.2f\"%s/>\n",
                  l.stroke.c_str(), l.width, l.dashed ? " stroke-dasharray=\"4 3\"" : "");
    out += "<path d=\"" + path_d(f, l.points) + attr;
  }
  return out + "</svg>\n";
}

std::string line_chart_svg(std::span<const double> x, std::span<const double> y,
                           const std::string& x_label, const std::string& y_label) {
  if (x.size() != y.size() || x.empty()) throw ValidationError("chart: bad series");
  const double w = 480.0, h = 320.0, m = 50.0;
  const auto [x0, x1] = std::minmax_element(x.begin(), x.end());
  const auto [y0, y1] = std::minmax_element(y.begin(), y.end());
  const double xs = (*x1 > *x0) ? (w - 2 * m) / (*x1 - *x0) : 1.0;
  const double ys = (*y1 > *y0) ? (h - 2 * m) / (*y1 - *y0) : 1.0;
  auto px = [&](double v) { return m + (v - *x0) * xs; };
  auto py = [&](double v) { return h - m - (v - *y0) * ys; };

  std::string out =
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"480\" height=\"320\" "
      "viewBox=\"0 0 480 320\" font-family=\"sans-serif\" font-size=\"11\">\n";
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"black\"/>\n"
                "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"black\"/>\n",
                m, h - m, w - m, h - m, m, m, m, h - m);
  out += buf;
  std::string poly;
  for (std::size_t i = 0; i < x.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.2f,%.2f ", px(x[i]), py(y[i]));
    poly += buf;
    std::snprintf(buf, sizeof buf,
                  "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"2.5\"/>\n"
                  "<text x=\"%.2f\" y=\"%.1f\" text-anchor=\"middle\">%g</text>\n",
                  px(x[i]), py(y[i]), px(x[i]), h - m + 15, x[i]);
    out += buf;
  }
  poly.pop_back();
  out += "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"1.5\" points=\"" + poly + "\"/>\n";
  std::snprintf(buf, sizeof buf,
                "<text x=\"%.1f\" y=\"%.1f\" text-anchor=\"end\">%.4g</text>\n"
                "<text x=\"%.1f\" y=\"%.1f\" text-anchor=\"end\">%.4g</text>\n",
                m - 4, py(*y1) + 4, *y1, m - 4, py(*y0) + 4, *y0);
  out += buf;
  out += "<text x=\"240\" y=\"310\" text-anchor=\"middle\">" + x_label + "</text>\n";
  out += "<text x=\"12\" y=\"160\" transform=\"rotate(-90 12 160)\" text-anchor=\"middle\">" +
         y_label + "</text>\n</svg>\n";
  return out;
}

std::string trace_csv(const std::vector<TraceRow>& trace) {
  std::string out = "iter,l_cd,l_perim,l_coeff,total\n";
  char buf[200];
  for (std::size_t i = 0; i < trace.size(); ++i) {
    const TraceRow& r = trace[i];
    std::snprintf(buf, sizeof buf, "%zu,%.10g,%.10g,%.10g,%.10g\n", i, r.l_cd, r.l_perim,
                  r.l_coeff, r.total);
    out += buf;
  }
  return out;
}

}  // namespace contour
