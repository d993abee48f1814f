#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "contour_codec/chebyshev.hpp"
#include "contour_codec/codec.hpp"
#include "contour_codec/error.hpp"
#include "contour_codec/geometry.hpp"
#include "contour_codec/losses.hpp"
#include "contour_codec/metrics.hpp"

namespace py = pybind11;
using namespace contour;

namespace {

using PointArray = py::array_t<double, py::array::c_style | py::array::forcecast>;
using CoeffArray = py::array_t<std::complex<double>, py::array::c_style | py::array::forcecast>;

std::vector<Complex> to_points(const PointArray& a) {
  if (a.ndim() != 2 || a.shape(1) != 2) throw ValidationError("expected an (N, 2) array");
  auto r = a.unchecked<2>();
  std::vector<Complex> out(static_cast<std::size_t>(a.shape(0)));
  for (py::ssize_t i = 0; i < a.shape(0); ++i) out[i] = {r(i, 0), r(i, 1)};
  return out;
}

PointArray from_points(const std::vector<Complex>& z) {
  PointArray out({static_cast<py::ssize_t>(z.size()), py::ssize_t{2}});
  auto w = out.mutable_unchecked<2>();
  for (std::size_t i = 0; i < z.size(); ++i) {
    w(i, 0) = z[i].real();
    w(i, 1) = z[i].imag();
  }
  return out;
}

FourierDescriptor to_descriptor(const CoeffArray& a) {
  if (a.ndim() != 1 || a.shape(0) % 2 == 0) {
    throw ValidationError("expected a 1-D array of odd length 2n+1");
  }
  auto r = a.unchecked<1>();
  std::vector<Complex> c(static_cast<std::size_t>(a.shape(0)));
  for (py::ssize_t i = 0; i < a.shape(0); ++i) c[i] = r(i);
  const std::size_t n = c.size() / 2;
  return FourierDescriptor(n, std::move(c));
}

CoeffArray from_descriptor(const FourierDescriptor& d) {
  const auto& c = d.coeffs();
  CoeffArray out(std::vector<py::ssize_t>{static_cast<py::ssize_t>(c.size())});
  auto w = out.mutable_unchecked<1>();
  for (std::size_t i = 0; i < c.size(); ++i) w(i) = c[i];
  return out;
}

Polygon to_polygon(const PointArray& a) { return Polygon::from_complex(to_points(a)); }

FitInit parse_init(const std::string& s) {
  if (s == "encode") return FitInit::Encode;
  if (s == "circle") return FitInit::Circle;
  if (s == "random") return FitInit::Random;
  throw ValidationError("init must be encode, circle or random");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Fourier contour descriptors";

  auto base = py::register_exception<Error>(m, "ContourError", PyExc_RuntimeError);
  py::register_exception<ValidationError>(m, "ValidationError", base.ptr());
  py::register_exception<IoError>(m, "IoError", base.ptr());
  py::register_exception<ParseError>(m, "ParseError", base.ptr());
  py::register_exception<NumericalError>(m, "NumericalError", base.ptr());

  m.def("resample", [](const PointArray& poly, std::size_t n_pts) {
    return from_points(resample(to_polygon(poly), n_pts).samples());
  }, py::arg("polygon"), py::arg("n_pts"));

  m.def("encode", [](const PointArray& samples, std::size_t n) {
    return from_descriptor(encode(ContourSamples(to_points(samples)), n));
  }, py::arg("samples"), py::arg("n"));

  m.def("decode", [](const CoeffArray& coeffs, std::size_t m_pts) {
    return from_points(decode(to_descriptor(coeffs), m_pts).samples());
  }, py::arg("coeffs"), py::arg("m_pts"));

  m.def("truncate", [](const CoeffArray& coeffs, std::size_t n_keep) {
    return from_descriptor(truncate(to_descriptor(coeffs), n_keep));
  }, py::arg("coeffs"), py::arg("n_keep"));

  m.def("sparsify", [](const CoeffArray& coeffs, double threshold) {
    return from_descriptor(sparsify(to_descriptor(coeffs), threshold));
  }, py::arg("coeffs"), py::arg("threshold"));

  m.def("chamfer_distance", [](const PointArray& a, const PointArray& b) {
    return chamfer_distance(to_points(a), to_points(b));
  }, py::arg("a"), py::arg("b"));

  m.def("count_self_intersections", [](const PointArray& loop) {
    return count_self_intersections(to_points(loop));
  }, py::arg("loop"));

  m.def("periodicity_gap", [](std::vector<double> alphas) {
    return periodicity_gap(ChebyshevSeries(std::move(alphas)));
  }, py::arg("alphas"));

  m.def("compute_sec", &compute_sec, py::arg("n_real_coeffs"), py::arg("bits_per_value"));
  m.def("compute_oes", &compute_oes, py::arg("map_percent"), py::arg("fps"), py::arg("sec_bits"));

  m.def("fit", [](const PointArray& target, std::size_t n, std::size_t n_pts, std::size_t steps,
                  double step_size, double lambda_cd, double lambda_perim, double lambda_coeff,
                  std::optional<std::size_t> decay_at, const std::string& init, std::uint64_t seed) {
    LossConfig cfg;
    cfg.lambda_cd = lambda_cd;
    cfg.lambda_perim = lambda_perim;
    cfg.lambda_coeff = lambda_coeff;
    cfg.perim_decay_iteration = decay_at;
    FitOptions opts;
    opts.n = n;
    opts.n_pts = n_pts;
    opts.steps = steps;
    opts.step_size = step_size;
    opts.init = parse_init(init);
    opts.seed = seed;
    const Polygon poly = to_polygon(target);
    FitResult r;
    {
      py::gil_scoped_release release;
      r = fit_descriptor(poly, cfg, opts);
    }
    py::array_t<double> trace({static_cast<py::ssize_t>(r.trace.size()), py::ssize_t{4}});
    auto w = trace.mutable_unchecked<2>();
    for (std::size_t i = 0; i < r.trace.size(); ++i) {
      w(i, 0) = r.trace[i].l_cd;
      w(i, 1) = r.trace[i].l_perim;
      w(i, 2) = r.trace[i].l_coeff;
      w(i, 3) = r.trace[i].total;
    }
    py::dict out;
    out["coeffs"] = from_descriptor(r.descriptor);
    out["final_chamfer"] = r.final_chamfer;
    out["trace"] = trace;
    out["perim_dropped_at"] = r.perim_dropped_at;
    return out;
  }, py::arg("target"), py::arg("n") = 8, py::arg("n_pts") = 60, py::arg("steps") = 3000,
     py::arg("step_size") = 0.1, py::arg("lambda_cd") = 1.0, py::arg("lambda_perim") = 0.01,
     py::arg("lambda_coeff") = 500.0, py::arg("decay_at") = std::optional<std::size_t>(2000),
     py::arg("init") = "encode", py::arg("seed") = 0);
}
