// contour-codec: encode, decode, fit and benchmark Fourier contour descriptors.
//
// Exit codes: 0 success, 1 I/O, 2 validation, 3 numerical failure.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "contour_codec/chebyshev.hpp"
#include "contour_codec/codec.hpp"
#include "contour_codec/error.hpp"
#include "contour_codec/geometry.hpp"
#include "contour_codec/io.hpp"
#include "contour_codec/losses.hpp"
#include "contour_codec/metrics.hpp"

namespace fs = std::filesystem;
using namespace contour;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitIo = 1;
constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;

struct PolygonSource {
  std::string path;
  std::optional<std::int64_t> ann_id;
  std::size_t part = 0;
};

Polygon load_polygon(const PolygonSource& src) {
  const fs::path path(src.path);
  if (!fs::exists(path)) throw IoError("no such file: " + src.path);
  if (!src.ann_id && path.extension() != ".json") return read_polygon(path);

  const AnnotationSet set = load_annotations(path);
  if (set.entries.empty()) throw ValidationError("no usable polygons in " + src.path);
  if (!src.ann_id) return set.entries.front().polygon;
  for (const Annotation& a : set.entries) {
    if (a.annotation_id == *src.ann_id && a.part == src.part) return a.polygon;
  }
  throw ValidationError("annotation " + std::to_string(*src.ann_id) + " (part " +
                        std::to_string(src.part) + ") not found");
}

void add_polygon_source(CLI::App* cmd, PolygonSource& src) {
  cmd->add_option("input", src.path, "Polygon file (`x y` per line) or COCO JSON")->required();
  cmd->add_option("--ann-id", src.ann_id, "Annotation id when the input is COCO JSON");
  cmd->add_option("--part", src.part, "Polygon index within a multi-part segmentation");
}

int bits_for(const std::string& precision) {
  if (precision == "fp16") return 16;
  if (precision == "fp32") return 32;
  if (precision == "fp64") return 64;
  throw ValidationError("unknown precision " + precision);
}

// --- encode ----------------------------------------------------------------

struct EncodeArgs {
  PolygonSource src;
  std::size_t n = 8;
  std::size_t n_pts = 60;
  std::string output = "descriptor.txt";
  std::string precision = "fp32";
  bool drop_conjugates = false;
};

int run_encode(const EncodeArgs& args) {
  const Polygon poly = load_polygon(args.src);
  const FourierDescriptor d = encode(resample(poly, args.n_pts), args.n);
  write_descriptor(args.output, d);
  const int bits = bits_for(args.precision);
  std::cout << "SEC: " << compute_sec(static_cast<std::int64_t>(d.real_count()), bits)
            << " bits @ " << args.precision << "\n";
  if (args.drop_conjugates) {
    std::cout << "SEC (table-compatible): "
              << compute_sec(static_cast<std::int64_t>(d.complex_count()), bits) << " bits @ "
              << args.precision << "\n";
  }
  std::cout << "wrote " << args.output << "\n";
  return kExitOk;
}

// --- decode ----------------------------------------------------------------

struct DecodeArgs {
  std::string input;
  std::size_t m_pts = 64;
  std::string format = "svg";
  std::string output;
};

int run_decode(const DecodeArgs& args) {
  if (!fs::exists(args.input)) throw IoError("no such file: " + args.input);
  const FourierDescriptor d = read_descriptor(args.input);
  const ContourSamples c = decode(d, args.m_pts);
  std::string body;
  if (args.format == "svg") {
    body = points_svg(c.view());
  } else if (args.format == "geojson") {
    body = points_geojson(c.view());
  } else {
    body = points_csv(c.view());
  }
  const std::string out = args.output.empty() ? "decoded." + args.format : args.output;
  write_file(out, body);
  std::cout << "wrote " << out << " (" << c.size() << " points)\n";
  return kExitOk;
}

// --- fit -------------------------------------------------------------------

struct FitArgs {
  PolygonSource src;
  LossConfig cfg;
  FitOptions opts;
  std::size_t decay_at = 2000;
  bool no_decay = false;
  std::size_t n_c = 0;
  bool true_perimeter = false;
  std::string init = "encode";
  std::string optimizer = "proximal";
  std::string out_dir = ".";
};

int run_fit(FitArgs args) {
  const Polygon target = load_polygon(args.src);
  args.cfg.perim_decay_iteration =
      args.no_decay ? std::nullopt : std::optional<std::size_t>(args.decay_at);
  if (args.n_c > 0) args.cfg.n_c = args.n_c;
  if (args.true_perimeter) args.cfg.perimeter_mode = PerimeterMode::TruePerimeter;
  if (args.init == "encode") {
    args.opts.init = FitInit::Encode;
  } else if (args.init == "circle") {
    args.opts.init = FitInit::Circle;
  } else {
    args.opts.init = FitInit::Random;
  }

  args.opts.optimizer = args.optimizer == "gradient" ? Optimizer::Gradient : Optimizer::Proximal;

  FitResult result;
  try {
    result = fit_descriptor(target, args.cfg, args.opts);
  } catch (const NumericalError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }

  const fs::path dir(args.out_dir);
  fs::create_directories(dir);
  write_file(dir / "trace.csv", trace_csv(result.trace));
  write_descriptor(dir / "fitted.txt", result.descriptor);

  const ContourSamples fitted = decode(result.descriptor, args.opts.n_pts);
  const ContourSamples dense = decode(result.descriptor, std::max<std::size_t>(args.opts.n_pts, 400));
  write_file(dir / "overlay.svg",
             overlay_svg({{to_complex(target), "#888888", 2.0, true},
                          {dense.samples(), "#d62728", 1.5, false}}));

  std::printf("final chamfer: %.6f\n", result.final_chamfer);
  std::printf("self-intersections: %zu\n", count_self_intersections(fitted.view()));
  std::printf("turning number: %.3f\n", total_turning(fitted.view()) / (2.0 * std::numbers::pi));
  std::printf("perimeter: %.6f (target %.6f)\n", perimeter(fitted.view()), perimeter(target));
  if (result.perim_dropped_at) std::printf("perimeter weight dropped at iteration %zu\n", *result.perim_dropped_at);
  std::cout << "wrote " << (dir / "trace.csv").string() << ", " << (dir / "overlay.svg").string()
            << ", " << (dir / "fitted.txt").string() << "\n";
  return kExitOk;
}

// --- sweep -----------------------------------------------------------------

struct SweepArgs {
  std::string input;
  std::optional<std::size_t> n_pts;
  std::vector<std::size_t> cutoffs{1, 2, 4, 8, 16, 32};
  std::optional<std::size_t> limit;
  std::size_t threads = 0;
  std::string output;
  std::string plot;
};

int run_sweep(const SweepArgs& args) {
  if (!fs::exists(args.input)) throw IoError("no such file: " + args.input);
  const AnnotationSet set = load_annotations(args.input, args.limit);
  if (set.entries.empty()) throw ValidationError("sweep: empty annotation set");

  SweepOptions opts;
  opts.cutoffs = args.cutoffs;
  std::sort(opts.cutoffs.begin(), opts.cutoffs.end());
  opts.n_pts = args.n_pts.value_or(std::max<std::size_t>(60, 2 * opts.cutoffs.back() + 1));
  opts.threads = args.threads;
  const SweepReport report = reconstruction_sweep(set, opts);
  const std::string csv = sweep_csv(report);
  if (args.output.empty()) {
    std::cout << csv;
  } else {
    write_file(args.output, csv);
  }
  if (!args.plot.empty()) {
    std::vector<double> x, y;
    for (const SweepRow& r : report.rows) {
      x.push_back(static_cast<double>(r.n_real_coeffs));
      y.push_back(r.mean_chamfer);
    }
    write_file(args.plot, line_chart_svg(x, y, "real coefficients", "mean Chamfer (px^2)"));
  }
  if (set.skipped_total() > 0) {
    for (const auto& [reason, count] : set.skipped) std::cerr << "skipped " << count << " (" << reason << ")\n";
  }
  return kExitOk;
}

// --- chebyshev-demo ----------------------------------------------------------

struct ChebArgs {
  PolygonSource src;
  std::size_t degree = 8;
  std::optional<double> center_x;
  std::optional<double> center_y;
  std::size_t samples = 360;
  bool constrained = false;
  std::string output = "chebyshev.csv";
};

int run_chebyshev(const ChebArgs& args) {
  const Polygon poly = load_polygon(args.src);
  const Complex centroid = vertex_centroid(to_complex(poly));
  const Point center{args.center_x.value_or(centroid.real()), args.center_y.value_or(centroid.imag())};
  const ChebyshevFit fit =
      cheb_fit_rho(poly, center, args.degree, args.samples, {.periodic_constraint = args.constrained});

  std::string csv = "theta,rho_true,rho_cheb_fit\n";
  for (std::size_t j = 0; j < fit.theta.size(); ++j) {
    csv += format_double(fit.theta[j]) + "," + format_double(fit.rho[j]) + "," +
           format_double(cheb_eval(fit.series, theta_to_x(fit.theta[j]))) + "\n";
  }
  // Closing sample at theta = 2 pi, where the fitted curve jumps.
  csv += format_double(2.0 * std::numbers::pi) + "," + format_double(fit.rho.front()) + "," +
         format_double(cheb_eval(fit.series, 1.0)) + "\n";
  write_file(args.output, csv);

  std::printf("gap: %.12g\n", fit.gap);
  std::printf("rms residual: %.6g\n", fit.rms_residual);
  std::cout << "wrote " << args.output << "\n";
  return kExitOk;
}

// --- oes -------------------------------------------------------------------

struct OesArgs {
  std::string input;
  std::string output;
};

int run_oes(const OesArgs& args) {
  const std::string text = read_file(args.input);
  const std::string csv = efficiency_csv(parse_efficiency_csv(text));
  if (args.output.empty()) {
    std::cout << csv;
  } else {
    write_file(args.output, csv);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fourier contour codec: encode, decode, fit and benchmark closed contours"};
  app.require_subcommand(1);

  EncodeArgs enc;
  auto* c_enc = app.add_subcommand("encode", "Encode a polygon as a Fourier descriptor");
  add_polygon_source(c_enc, enc.src);
  c_enc->add_option("-n,--harmonics", enc.n, "Max harmonic n")->capture_default_str();
  c_enc->add_option("--n-pts", enc.n_pts, "Resampling resolution")->capture_default_str();
  c_enc->add_option("-o,--output", enc.output, "Descriptor file (.bin for binary)")->capture_default_str();
  c_enc->add_option("--precision", enc.precision, "fp16 | fp32 | fp64")->capture_default_str()
      ->check(CLI::IsMember({"fp16", "fp32", "fp64"}));
  c_enc->add_flag("--drop-conjugates", enc.drop_conjugates,
                  "Also print SEC counting one real value per frequency");

  DecodeArgs dec;
  auto* c_dec = app.add_subcommand("decode", "Decode a descriptor to a contour");
  c_dec->add_option("input", dec.input, "Descriptor file")->required();
  c_dec->add_option("-m,--m-pts", dec.m_pts, "Output points")->capture_default_str();
  c_dec->add_option("-f,--format", dec.format, "svg | geojson | csv")->capture_default_str()
      ->check(CLI::IsMember({"svg", "geojson", "csv"}));
  c_dec->add_option("-o,--output", dec.output, "Output file (default decoded.<format>)");

  FitArgs fit;
  auto* c_fit = app.add_subcommand("fit", "Fit a descriptor to a polygon by gradient descent");
  add_polygon_source(c_fit, fit.src);
  c_fit->add_option("-n,--harmonics", fit.opts.n, "Max harmonic n")->capture_default_str();
  c_fit->add_option("--n-pts", fit.opts.n_pts, "Decoded / target points")->capture_default_str();
  c_fit->add_option("--lambda-cd", fit.cfg.lambda_cd)->capture_default_str();
  c_fit->add_option("--lambda-perim", fit.cfg.lambda_perim)->capture_default_str();
  c_fit->add_option("--lambda-coeff", fit.cfg.lambda_coeff)->capture_default_str();
  c_fit->add_option("--n-c", fit.n_c, "Coefficient-penalty normalizer (default 2n+1)");
  c_fit->add_option("--decay-at", fit.decay_at, "Iteration at which the perimeter weight drops to 0")
      ->capture_default_str();
  c_fit->add_flag("--no-decay", fit.no_decay, "Keep the perimeter weight for the whole run");
  c_fit->add_flag("--plateau-decay", fit.opts.plateau_decay,
                  "Drop the perimeter weight once its moving average plateaus");
  c_fit->add_flag("--true-perimeter", fit.true_perimeter,
                  "Penalize the ordinary perimeter instead of sqrt(sum of squared edges)");
  c_fit->add_option("--steps", fit.opts.steps)->capture_default_str();
  c_fit->add_option("--step-size", fit.opts.step_size)->capture_default_str();
  c_fit->add_option("--momentum", fit.opts.momentum)->capture_default_str();
  c_fit->add_option("--init", fit.init, "encode | circle | random")->capture_default_str()
      ->check(CLI::IsMember({"encode", "circle", "random"}));
  c_fit->add_option("--optimizer", fit.optimizer, "proximal | gradient")->capture_default_str()
      ->check(CLI::IsMember({"proximal", "gradient"}));
  c_fit->add_option("--seed", fit.opts.seed)->capture_default_str();
  c_fit->add_option("--init-noise", fit.opts.init_noise)->capture_default_str();
  c_fit->add_option("--out-dir", fit.out_dir)->capture_default_str();

  SweepArgs sweep;
  auto* c_sweep = app.add_subcommand("sweep", "Reconstruction error against coefficient count");
  c_sweep->add_option("input", sweep.input, "COCO annotation JSON")->required();
  c_sweep->add_option("--n-pts", sweep.n_pts, "Resampling resolution (default max(60, 2*max cutoff+1))");
  c_sweep->add_option("--cutoffs", sweep.cutoffs, "Harmonic cutoffs")->delimiter(',')->capture_default_str();
  c_sweep->add_option("--limit", sweep.limit, "Use at most this many polygons");
  c_sweep->add_option("--threads", sweep.threads, "Worker threads (default CONTOUR_CODEC_THREADS or 1)");
  c_sweep->add_option("-o,--output", sweep.output, "CSV file (default stdout)");
  c_sweep->add_option("--plot", sweep.plot, "SVG line plot of mean Chamfer");

  ChebArgs cheb;
  auto* c_cheb = app.add_subcommand("chebyshev-demo", "Chebyshev fit of rho(theta) and its periodicity gap");
  add_polygon_source(c_cheb, cheb.src);
  c_cheb->add_option("--degree", cheb.degree)->capture_default_str();
  c_cheb->add_option("--center-x", cheb.center_x, "Ray center x (default vertex centroid)");
  c_cheb->add_option("--center-y", cheb.center_y, "Ray center y (default vertex centroid)");
  c_cheb->add_option("--samples", cheb.samples)->capture_default_str();
  c_cheb->add_flag("--constrained", cheb.constrained, "Enforce a zero sum of odd coefficients");
  c_cheb->add_option("-o,--output", cheb.output)->capture_default_str();

  OesArgs oes;
  auto* c_oes = app.add_subcommand("oes", "Overall efficiency scores from method,map,fps,sec rows");
  c_oes->add_option("input", oes.input, "CSV with columns method,map,fps,sec")->required();
  c_oes->add_option("-o,--output", oes.output, "CSV file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (*c_enc) return run_encode(enc);
    if (*c_dec) return run_decode(dec);
    if (*c_fit) return run_fit(fit);
    if (*c_sweep) return run_sweep(sweep);
    if (*c_cheb) return run_chebyshev(cheb);
    if (*c_oes) return run_oes(oes);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    switch (e.kind()) {
      case ErrorKind::Io:
        return kExitIo;
      case ErrorKind::Numerical:
        return kExitNumerical;
      default:
        return kExitValidation;
    }
  } catch (const fs::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  }
  return kExitValidation;
}
