#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "holo_interp/certificates.hpp"
#include "holo_interp/cli.hpp"
#include "holo_interp/construction.hpp"
#include "holo_interp/errors.hpp"
#include "holo_interp/rkhs.hpp"

namespace py = pybind11;
using namespace holo_interp;

namespace {

using Coords = std::vector<cplx>;

std::vector<Point> to_points(const std::vector<Coords>& raw) {
  std::vector<Point> out;
  out.reserve(raw.size());
  for (const auto& c : raw) out.emplace_back(c);
  return out;
}

PointSet make_pointset(const std::vector<Coords>& points, std::optional<std::vector<cplx>> values) {
  if (values) return PointSet(to_points(points), std::move(*values));
  return PointSet(to_points(points));
}

py::dict separation_dict(const SeparationReport& r) {
  py::dict d;
  d["min_pairwise_distance"] = r.min_pairwise_distance;
  d["delta0"] = r.delta0;
  d["arg_pair"] = r.arg_pair ? py::cast(*r.arg_pair) : py::none();
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Certificates, constructions and kernel interpolation for weighted holomorphic spaces";

  auto base = py::register_exception<NumericalGuardError>(m, "NumericalGuardError", PyExc_RuntimeError);
  py::register_exception<ConditioningError>(m, "ConditioningError", base.ptr());
  py::register_exception<QuadratureError>(m, "QuadratureError", base.ptr());
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<UnsupportedSpaceError>(m, "UnsupportedSpaceError", PyExc_ValueError);
  py::register_exception<SizeError>(m, "SizeError", PyExc_RuntimeError);
  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);

  py::class_<ModelSpace>(m, "ModelSpace")
      .def_static("flat", &ModelSpace::flat, py::arg("n") = 1)
      .def_static("hyperbolic_ball", &ModelSpace::hyperbolic_ball, py::arg("n") = 1,
                  py::arg("kappa") = 1.0, py::arg("k") = py::none())
      .def_property_readonly("n", &ModelSpace::n)
      .def_property_readonly("k", &ModelSpace::k)
      .def_property_readonly("kappa", &ModelSpace::kappa)
      .def_property_readonly("is_flat", &ModelSpace::is_flat)
      .def("contains", [](const ModelSpace& s, const Coords& z) { return s.contains(Point(z)); })
      .def("__repr__", [](const ModelSpace& s) {
        std::ostringstream os;
        os << "ModelSpace(" << (s.is_flat() ? "flat" : "hyperbolic") << ", n=" << s.n();
        if (s.kappa()) os << ", kappa=" << *s.kappa();
        os << ", k=" << s.k() << ")";
        return os.str();
      });

  m.def("distance", [](const ModelSpace& s, const Coords& x, const Coords& y) {
    return distance(s, Point(x), Point(y));
  });
  m.def("exp_map", [](const ModelSpace& s, const Coords& p, const std::vector<double>& u, double r) {
    return exp_map(s, Point(p), u, r).coords;
  });
  m.def("hessian_comparison_factor", &hessian_comparison_factor, py::arg("k"), py::arg("rho"));
  m.def("ball_volume_bound", &ball_volume_bound, py::arg("k"), py::arg("rho"), py::arg("dim"));
  m.def("ricci_eigen", [](const ModelSpace& s, const Coords& z) { return ricci_eigen(s, Point(z)); });

  m.def("separation",
        [](const ModelSpace& s, const std::vector<Coords>& pts, double r0, bool bucketing) {
          SeparationOptions o;
          o.bucketing = bucketing;
          return separation_dict(separation(s, make_pointset(pts, std::nullopt), r0, o));
        },
        py::arg("space"), py::arg("points"), py::arg("r0") = std::numeric_limits<double>::infinity(),
        py::arg("bucketing") = false);
  m.def("count_in_ball",
        [](const ModelSpace& s, const std::vector<Coords>& pts, const Coords& z, double rho) {
          return count_in_ball(s, make_pointset(pts, std::nullopt), Point(z), rho);
        });
  m.def("seip_density",
        [](const ModelSpace& s, const std::vector<Coords>& pts, const Coords& x, double cutoff) {
          return seip_density(s, make_pointset(pts, std::nullopt), Point(x), cutoff);
        },
        py::arg("space"), py::arg("points"), py::arg("x"), py::arg("cutoff") = 1.0);
  m.def("square_lattice", [](int n, double s, double R) {
    std::vector<Coords> out;
    const auto lattice = square_lattice(n, s, R);
    for (const auto& p : lattice.points()) out.push_back(p.coords);
    return out;
  });

  py::class_<HermitianWeight>(m, "HermitianWeight")
      .def_static("fock", &HermitianWeight::fock, py::arg("alpha") = 1.0, py::arg("n") = 1)
      .def_static("bergman", &HermitianWeight::bergman, py::arg("A"), py::arg("kappa") = 1.0,
                  py::arg("n") = 1, py::arg("working_fraction") = 0.9)
      .def_property_readonly("n", &HermitianWeight::n)
      .def("value", [](const HermitianWeight& w, const Coords& z) { return w.value(Point(z)); })
      .def("complex_hessian",
           [](const HermitianWeight& w, const Coords& z) { return w.complex_hessian(Point(z)); });

  m.def("curvature_eigen_min",
        [](const HermitianWeight& w, const ModelSpace& s, const Coords& z, bool fd) {
          return curvature_eigen_min(w, s, Point(z),
                                     fd ? CurvatureMethod::FiniteDifference : CurvatureMethod::Analytic);
        },
        py::arg("weight"), py::arg("space"), py::arg("z"), py::arg("finite_difference") = false);

  py::class_<CertificateReport>(m, "CertificateReport")
      .def_property_readonly("criterion", [](const CertificateReport& r) { return to_string(r.criterion); })
      .def_readonly("passed", &CertificateReport::passed)
      .def_readonly("epsilon", &CertificateReport::epsilon)
      .def_readonly("rho", &CertificateReport::rho)
      .def_readonly("comparison_factor", &CertificateReport::comparison_factor)
      .def_readonly("worst_margin", &CertificateReport::worst_margin)
      .def_readonly("worst_index", &CertificateReport::worst_index)
      .def_readonly("warnings", &CertificateReport::warnings)
      .def_property_readonly("margins", [](const CertificateReport& r) {
        Eigen::VectorXd v(static_cast<Eigen::Index>(r.per_sample.size()));
        for (std::size_t i = 0; i < r.per_sample.size(); ++i) v(static_cast<Eigen::Index>(i)) = r.per_sample[i].margin;
        return v;
      })
      .def_property_readonly("density_grid_sup", [](const CertificateReport& r) {
        return r.density ? py::cast(r.density->grid_sup) : py::none();
      });

  m.def("bos_certificate",
        [](const HermitianWeight& w, const std::vector<Coords>& pts, double rho, double eps,
           const std::vector<Coords>& grid, unsigned threads) {
          CertificateOptions o;
          o.threads = threads;
          return bos_certificate(w, make_pointset(pts, std::nullopt), rho, eps, to_points(grid), o);
        },
        py::arg("weight"), py::arg("points"), py::arg("rho"), py::arg("eps"), py::arg("grid"),
        py::arg("threads") = 1);
  m.def("theorem1_certificate",
        [](const HermitianWeight& w, const ModelSpace& s, const std::vector<Coords>& pts, double rho,
           double eps, const std::vector<Coords>& grid, std::optional<double> k, unsigned threads) {
          Theorem1Options o;
          o.threads = threads;
          o.k_bound = k;
          return theorem1_certificate(w, s, make_pointset(pts, std::nullopt), rho, eps,
                                      to_points(grid), o);
        },
        py::arg("weight"), py::arg("space"), py::arg("points"), py::arg("rho"), py::arg("eps"),
        py::arg("grid"), py::arg("k") = py::none(), py::arg("threads") = 1);
  m.def("theorem2_certificate",
        [](const HermitianWeight& w, const ModelSpace& s, const std::vector<Coords>& pts, double eps,
           const std::vector<Coords>& grid, double threshold, double cutoff, unsigned threads) {
          Theorem2Options o;
          o.threads = threads;
          o.density_threshold = threshold;
          o.cutoff = cutoff;
          return theorem2_certificate(w, s, make_pointset(pts, std::nullopt), eps, to_points(grid), o);
        },
        py::arg("weight"), py::arg("space"), py::arg("points"), py::arg("eps"), py::arg("grid"),
        py::arg("threshold") = 10.0, py::arg("cutoff") = 1.0, py::arg("threads") = 1);

  py::class_<GluedExtension>(m, "GluedExtension")
      .def_static("create",
                  [](const ModelSpace& s, const HermitianWeight& w, const std::vector<Coords>& pts,
                     const std::vector<cplx>& values, std::optional<double> delta0) {
                    return GluedExtension::create(s, w, make_pointset(pts, values), delta0);
                  },
                  py::arg("space"), py::arg("weight"), py::arg("points"), py::arg("values"),
                  py::arg("delta0") = py::none())
      .def_property_readonly("delta0", &GluedExtension::delta0)
      .def_property_readonly("separation", &GluedExtension::separation)
      .def("__call__", [](const GluedExtension& e, const Coords& z) { return e.evaluate(Point(z)); })
      .def("dbar", [](const GluedExtension& e, const Coords& z) { return e.dbar(Point(z)); })
      .def("dbar_energy",
           [](const GluedExtension& e, double rho, int radial, int angular, unsigned threads) {
             const AuxiliaryWeight aux(e.space(), e.points(), rho);
             const auto r = dbar_energy(e, aux, {radial, angular, threads});
             py::dict d;
             d["coarse"] = r.coarse;
             d["fine"] = r.fine;
             d["relative_drift"] = r.relative_drift;
             d["v_min_on_annuli"] = r.v_min_on_annuli;
             d["v_lower_bound"] = r.v_lower_bound;
             return d;
           },
           py::arg("rho"), py::arg("radial") = 12, py::arg("angular") = 24, py::arg("threads") = 1);

  m.def("auxiliary_weight_value",
        [](const ModelSpace& s, const std::vector<Coords>& pts, double rho, const Coords& z) {
          return AuxiliaryWeight(s, make_pointset(pts, std::nullopt), rho).value(Point(z));
        });

  py::class_<KernelSpace>(m, "KernelSpace")
      .def_static("fock", &KernelSpace::fock, py::arg("alpha") = 1.0, py::arg("n") = 1)
      .def_static("bergman",
                  [](double A, double kappa, int n, const std::string& measure) {
                    if (measure != "hyperbolic" && measure != "lebesgue") {
                      throw InputError("measure is \"hyperbolic\" or \"lebesgue\"");
                    }
                    return KernelSpace::bergman(A, kappa, n,
                                                measure == "lebesgue" ? BergmanMeasure::Lebesgue
                                                                      : BergmanMeasure::Hyperbolic);
                  },
                  py::arg("A"), py::arg("kappa") = 1.0, py::arg("n") = 1,
                  py::arg("measure") = "hyperbolic")
      .def_property_readonly("exponent", &KernelSpace::exponent)
      .def("kernel", [](const KernelSpace& k, const Coords& z, const Coords& w) {
        return k.kernel(Point(z), Point(w));
      });

  m.def("gram_matrix",
        [](const KernelSpace& k, const std::vector<Coords>& pts, unsigned threads) {
          const auto d = gram_matrix(k, make_pointset(pts, std::nullopt), kDefaultGramGuard, threads);
          py::dict out;
          out["gram"] = d.gram;
          out["eig_min"] = d.eig_min;
          out["eig_max"] = d.eig_max;
          out["condition"] = d.condition;
          return out;
        },
        py::arg("kernel"), py::arg("points"), py::arg("threads") = 1);

  py::class_<Interpolant>(m, "Interpolant")
      .def_property_readonly("eig_min", &Interpolant::eig_min)
      .def_property_readonly("norm_sq", &Interpolant::norm_sq)
      .def_property_readonly("coefficients", &Interpolant::coefficients)
      .def_property_readonly("normalized_coefficients", &Interpolant::normalized_coefficients)
      .def("__call__", [](const Interpolant& f, const Coords& z) { return f(Point(z)); });

  m.def("min_norm_interpolant",
        [](const KernelSpace& k, const std::vector<Coords>& pts, const std::vector<cplx>& values,
           double eig_floor) {
          InterpolationOptions o;
          o.eig_floor = eig_floor;
          return min_norm_interpolant(k, make_pointset(pts, values), o);
        },
        py::arg("kernel"), py::arg("points"), py::arg("values"), py::arg("eig_floor") = 1e-10);

  m.def("feasibility_sweep",
        [](const KernelSpace& k, const std::vector<double>& spacings, const std::vector<double>& radii,
           unsigned threads) {
          const auto r = feasibility_sweep(k, spacings, radii, threads);
          py::list rows;
          for (const auto& row : r.rows) {
            py::dict d;
            d["s"] = row.spacing;
            d["eig_min"] = row.eig_min;
            d["eig_max"] = row.eig_max;
            d["R"] = row.radius;
            d["n_points"] = row.n_points;
            rows.append(d);
          }
          return py::make_tuple(rows, r.monotone);
        },
        py::arg("kernel"), py::arg("spacings"), py::arg("radii"), py::arg("threads") = 1);

  m.def("run_cli",
        [](std::vector<std::string> args) {
          args.insert(args.begin(), "holo-interp");
          std::ostringstream out, err;
          const int code = cli::run(args, out, err);
          return py::make_tuple(code, out.str(), err.str());
        },
        "Runs the command line in-process; returns (exit_code, stdout, stderr).");
}
