#include "contour_codec/metrics.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

#include "contour_codec/codec.hpp"
#include "contour_codec/error.hpp"
#include "json.hpp"

namespace contour {

using nlohmann::json;

std::size_t AnnotationSet::skipped_total() const {
  std::size_t total = 0;
  for (const auto& [reason, count] : skipped) total += count;
  return total;
}

namespace {

const json& require(const json& obj, const std::string& field, const std::string& where) {
  if (!obj.is_object() || !obj.contains(field)) {
    throw ParseError("schema: missing field '" + field + "' in " + where);
  }
  return obj.at(field);
}

std::int64_t require_int(const json& obj, const std::string& field, const std::string& where) {
  const json& v = require(obj, field, where);
  if (!v.is_number_integer()) {
    throw ParseError("schema: field '" + field + "' in " + where + " must be an integer");
  }
  return v.get<std::int64_t>();
}

}  // namespace

AnnotationSet parse_annotations(const std::string& json_text, std::optional<std::size_t> limit) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError("parse error at byte " + std::to_string(e.byte) + ": " + e.what());
  }
  const json& anns = require(doc, "annotations", "document root");
  if (!anns.is_array()) throw ParseError("schema: field 'annotations' must be an array");

  struct Raw {
    std::int64_t id;
    std::int64_t image_id;
    std::int64_t category_id;
    const json* segmentation;
    bool crowd;
  };
  std::vector<Raw> raw;
  raw.reserve(anns.size());
  for (std::size_t i = 0; i < anns.size(); ++i) {
    const std::string where = "annotations[" + std::to_string(i) + "]";
    const json& a = anns[i];
    Raw r{require_int(a, "id", where), require_int(a, "image_id", where),
          require_int(a, "category_id", where), &require(a, "segmentation", where), false};
    if (a.contains("iscrowd") && a.at("iscrowd").is_number()) {
      r.crowd = a.at("iscrowd").get<double>() != 0.0;
    }
    raw.push_back(r);
  }
  std::stable_sort(raw.begin(), raw.end(),
                   [](const Raw& a, const Raw& b) { return a.id < b.id; });

  AnnotationSet set;
  for (const Raw& r : raw) {
    const json& seg = *r.segmentation;
    const std::string where = "annotation " + std::to_string(r.id);
    if (seg.is_object()) {
      ++set.skipped["rle-unsupported"];
      continue;
    }
    if (r.crowd) {
      ++set.skipped["crowd"];
      continue;
    }
    if (!seg.is_array()) {
      throw ParseError("schema: field 'segmentation' in " + where + " must be a list");
    }
    for (std::size_t part = 0; part < seg.size(); ++part) {
      const json& flat = seg[part];
      if (!flat.is_array()) {
        throw ParseError("schema: field 'segmentation' in " + where +
                         " must hold coordinate lists");
      }
      if (flat.size() % 2 != 0) {
        throw ParseError("schema: field 'segmentation' in " + where +
                         " has an odd number of coordinates");
      }
      std::vector<Point> pts;
      pts.reserve(flat.size() / 2);
      for (std::size_t k = 0; k + 1 < flat.size(); k += 2) {
        if (!flat[k].is_number() || !flat[k + 1].is_number()) {
          throw ParseError("schema: field 'segmentation' in " + where +
                           " holds a non-numeric coordinate");
        }
        pts.push_back({flat[k].get<double>(), flat[k + 1].get<double>()});
      }
      if (pts.size() < 3) {
        ++set.skipped["too-few-points"];
        continue;
      }
      try {
        set.entries.push_back({r.id, r.image_id, r.category_id, part, Polygon(std::move(pts))});
      } catch (const ValidationError&) {
        ++set.skipped["degenerate"];
      }
    }
  }
  if (limit && set.entries.size() > *limit) {
    set.entries.erase(set.entries.begin() + static_cast<std::ptrdiff_t>(*limit), set.entries.end());
  }
  return set;
}

AnnotationSet load_annotations(const std::filesystem::path& path,
                               std::optional<std::size_t> limit) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_annotations(buf.str(), limit);
}

std::size_t threads_from_env(std::size_t fallback) {
  const char* env = std::getenv("CONTOUR_CODEC_THREADS");
  if (env == nullptr) return fallback;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (end == env || v < 1) return fallback;
  return static_cast<std::size_t>(v);
}

SweepReport reconstruction_sweep(const AnnotationSet& a, const SweepOptions& opts) {
  if (a.entries.empty()) throw ValidationError("sweep: empty annotation set");
  if (opts.cutoffs.empty()) throw ValidationError("sweep: no cutoffs given");
  for (std::size_t i = 1; i < opts.cutoffs.size(); ++i) {
    if (opts.cutoffs[i] <= opts.cutoffs[i - 1]) {
      throw ValidationError("sweep: cutoffs must be strictly ascending");
    }
  }
  const std::size_t max_cut = opts.cutoffs.back();
  if (opts.n_pts < 2 * max_cut + 1) {
    throw ValidationError("sweep: n_pts must be at least 2 * max(cutoffs) + 1 = " +
                          std::to_string(2 * max_cut + 1));
  }
  const std::size_t full = (opts.n_pts - 1) / 2;
  const std::size_t n_poly = a.entries.size();
  const std::size_t n_cut = opts.cutoffs.size();

  // chamfer[i * n_cut + c]
  std::vector<double> chamfer(n_poly * n_cut, 0.0);
  auto work = [&](std::size_t i) {
    const ContourSamples samples = resample(a.entries[i].polygon, opts.n_pts);
    const FourierDescriptor spectrum = encode(samples, full);
    for (std::size_t c = 0; c < n_cut; ++c) {
      const ContourSamples rec = decode(truncate(spectrum, opts.cutoffs[c]), opts.n_pts);
      chamfer[i * n_cut + c] = chamfer_distance(rec.view(), samples.view());
    }
  };

  const std::size_t threads =
      std::clamp<std::size_t>(opts.threads == 0 ? threads_from_env(1) : opts.threads, 1, n_poly);
  if (threads == 1) {
    for (std::size_t i = 0; i < n_poly; ++i) work(i);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        for (std::size_t i = t; i < n_poly; i += threads) work(i);
      });
    }
  }

  SweepReport report;
  std::vector<double> column(n_poly);
  for (std::size_t c = 0; c < n_cut; ++c) {
    double sum = 0.0;
    for (std::size_t i = 0; i < n_poly; ++i) {
      column[i] = chamfer[i * n_cut + c];
      sum += column[i];
    }
    std::sort(column.begin(), column.end());
    const double median = n_poly % 2 == 1
                              ? column[n_poly / 2]
                              : 0.5 * (column[n_poly / 2 - 1] + column[n_poly / 2]);
    report.rows.push_back({opts.cutoffs[c], 2 * (2 * opts.cutoffs[c] + 1),
                           sum / static_cast<double>(n_poly), median, n_poly});
  }
  return report;
}

std::string sweep_csv(const SweepReport& report) {
  std::string out = "n_keep,n_real_coeffs,mean_chamfer,median_chamfer,count\n";
  char line[160];
  for (const SweepRow& r : report.rows) {
    std::snprintf(line, sizeof line, "%zu,%zu,%.6f,%.6f,%zu\n", r.n_keep, r.n_real_coeffs,
                  r.mean_chamfer, r.median_chamfer, r.count);
    out += line;
  }
  return out;
}

std::int64_t compute_sec(std::int64_t n_real_coeffs, std::int64_t bits_per_value) {
  if (n_real_coeffs <= 0 || bits_per_value <= 0) {
    throw ValidationError("compute_sec: arguments must be positive");
  }
  return n_real_coeffs * bits_per_value;
}

double compute_oes(double map_percent, double fps, std::int64_t sec_bits) {
  if (!(map_percent > 0.0) || !(fps > 0.0) || sec_bits <= 0) {
    throw ValidationError("compute_oes: arguments must be positive");
  }
  return 100.0 * map_percent * fps / static_cast<double>(sec_bits);
}

EfficiencyScore score(std::string method, double map_percent, double fps,
                      std::int64_t sec_bits) {
  return {std::move(method), map_percent, fps, sec_bits,
          compute_oes(map_percent, fps, sec_bits)};
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) {
    const auto b = cell.find_first_not_of(" \t\r");
    const auto e = cell.find_last_not_of(" \t\r");
    cells.push_back(b == std::string::npos ? "" : cell.substr(b, e - b + 1));
  }
  return cells;
}

double parse_number(const std::string& cell, const std::string& what, std::size_t line) {
  char* end = nullptr;
  const double v = std::strtod(cell.c_str(), &end);
  if (cell.empty() || end != cell.c_str() + cell.size()) {
    throw ParseError("line " + std::to_string(line) + ": '" + what + "' is not a number");
  }
  return v;
}

}  // namespace

std::vector<EfficiencyScore> parse_efficiency_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::string> header;
  while (header.empty() && std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") != std::string::npos) header = split_csv_line(line);
  }
  auto column = [&](const std::string& name) {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw ParseError("schema: missing column '" + name + "'");
    return static_cast<std::size_t>(it - header.begin());
  };
  const std::size_t c_method = column("method");
  const std::size_t c_map = column("map");
  const std::size_t c_fps = column("fps");
  const std::size_t c_sec = column("sec");

  std::vector<EfficiencyScore> rows;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto cells = split_csv_line(line);
    if (cells.size() < header.size()) {
      throw ParseError("line " + std::to_string(line_no) + ": expected " +
                       std::to_string(header.size()) + " columns");
    }
    const double sec = parse_number(cells[c_sec], "sec", line_no);
    if (sec != static_cast<double>(static_cast<std::int64_t>(sec))) {
      throw ParseError("line " + std::to_string(line_no) + ": 'sec' must be an integer");
    }
    rows.push_back(score(cells[c_method], parse_number(cells[c_map], "map", line_no),
                         parse_number(cells[c_fps], "fps", line_no),
                         static_cast<std::int64_t>(sec)));
  }
  return rows;
}

std::string efficiency_csv(const std::vector<EfficiencyScore>& rows) {
  std::string out = "method,map,fps,sec,oes\n";
  char buf[256];
  for (const EfficiencyScore& r : rows) {
    std::snprintf(buf, sizeof buf, ",%.10g,%.10g,%lld,%.4f\n", r.map_percent, r.fps,
                  static_cast<long long>(r.sec_bits), r.oes);
    out += r.method;
    out += buf;
  }
  return out;
}

}  // namespace contour
