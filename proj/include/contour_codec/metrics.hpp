#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "contour_codec/geometry.hpp"

namespace contour {

struct Annotation {
  std::int64_t annotation_id = 0;
  std::int64_t image_id = 0;
  std::int64_t category_id = 0;
  /// Index of the polygon within a multi-part segmentation.
  std::size_t part = 0;
  Polygon polygon;
};

/// Polygons loaded from a COCO-format annotation file, ordered by annotation
/// id (then part index).
struct AnnotationSet {
  std::vector<Annotation> entries;
  /// Skip reason -> count. Reasons: "too-few-points", "rle-unsupported",
  /// "crowd", "degenerate".
  std::map<std::string, std::size_t> skipped;

  std::size_t skipped_total() const;
};

/// Throws IoError when unreadable, ParseError (with byte offset) on malformed
/// JSON, and ParseError naming the field on schema violations.
AnnotationSet load_annotations(const std::filesystem::path& path,
                               std::optional<std::size_t> limit = std::nullopt);
AnnotationSet parse_annotations(const std::string& json_text,
                                std::optional<std::size_t> limit = std::nullopt);

struct SweepRow {
  std::size_t n_keep = 0;
  std::size_t n_real_coeffs = 0;
  double mean_chamfer = 0.0;
  double median_chamfer = 0.0;
  std::size_t count = 0;
};

struct SweepReport {
  std::vector<SweepRow> rows;
};

struct SweepOptions {
  std::size_t n_pts = 60;
  std::vector<std::size_t> cutoffs{1, 2, 4, 8, 16, 32};
  /// Worker threads; 0 reads CONTOUR_CODEC_THREADS, defaulting to 1.
  std::size_t threads = 0;
};

/// For every polygon: resample to n_pts, encode the full spectrum, truncate to
/// each cutoff, decode at n_pts and take the Chamfer distance against the
/// resampled polygon. Output is independent of the thread count.
SweepReport reconstruction_sweep(const AnnotationSet& a, const SweepOptions& opts);

/// Threads requested through CONTOUR_CODEC_THREADS, or `fallback`.
std::size_t threads_from_env(std::size_t fallback = 1);

std::string sweep_csv(const SweepReport& report);

/// Shape encoding complexity in bits.
std::int64_t compute_sec(std::int64_t n_real_coeffs, std::int64_t bits_per_value);

/// 100 * mAP * FPS / SEC.
double compute_oes(double map_percent, double fps, std::int64_t sec_bits);

struct EfficiencyScore {
  std::string method;
  double map_percent = 0.0;
  double fps = 0.0;
  std::int64_t sec_bits = 0;
  double oes = 0.0;
};

EfficiencyScore score(std::string method, double map_percent, double fps,
                      std::int64_t sec_bits);

/// Reads rows of `method,map,fps,sec` (header required) and scores them.
std::vector<EfficiencyScore> parse_efficiency_csv(const std::string& text);
std::string efficiency_csv(const std::vector<EfficiencyScore>& rows);

}  // namespace contour
