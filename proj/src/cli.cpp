#include "holo_interp/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>

#include "CLI11.hpp"

#include "holo_interp/certificates.hpp"
#include "holo_interp/construction.hpp"
#include "holo_interp/errors.hpp"
#include "holo_interp/io.hpp"
#include "holo_interp/parallel.hpp"
#include "holo_interp/rkhs.hpp"

namespace holo_interp::cli {

namespace {

using io::json;

struct Config {
  std::string space;
  std::string weight;
  std::string points;
  std::string grid;
  std::string out;
  std::optional<double> rho;
  std::optional<double> eps;
  std::uint64_t seed = 20240601;
  std::optional<unsigned> threads;
  double cutoff = 1.0;
  double threshold = 10.0;
  std::optional<double> k_bound;
  std::optional<double> delta0;
  std::optional<double> frame_radius;
  bool bucketing = false;
  int radial = 12;
  int angular = 24;
  double eig_floor = 1e-10;
  std::vector<double> spacings;
  std::vector<double> radii;
  int samples = 200;
  double tolerance = 1e-4;
};

struct Result {
  json report;
  std::string csv;
  int code = kSuccess;
};

json envelope(const std::string& command) {
  return {{"schema", io::kReportSchema}, {"command", command}, {"conventions", io::conventions()}};
}

double required(const std::optional<double>& v, const char* flag) {
  if (!v) throw InputError(std::string("missing required flag ") + flag);
  return *v;
}

std::string required(const std::string& v, const char* flag) {
  if (v.empty()) throw InputError(std::string("missing required flag ") + flag);
  return v;
}

/// --space wins; otherwise the point set's embedded "space".
ModelSpace load_space(const Config& c, const json* points) {
  if (!c.space.empty()) return io::space_from_json(io::load_json_arg(c.space));
  if (points && points->is_object() && points->contains("space")) {
    return io::space_from_json((*points)["space"]);
  }
  throw InputError("missing required flag --space (and the point set has no \"space\")");
}

std::vector<Point> load_grid(const Config& c, const ModelSpace& space) {
  auto grid = io::grid_from_json(io::load_json_arg(required(c.grid, "--grid")), space, c.seed);
  if (grid.empty()) throw InputError("the sample grid is empty");
  return grid;
}

std::string point_columns(int n) {
  std::string out;
  for (int k = 1; k <= n; ++k) out += ",re_z" + std::to_string(k) + ",im_z" + std::to_string(k);
  return out;
}

std::string point_cells(const Point& p) {
  std::string out;
  for (const auto& z : p.coords) out += "," + io::format_double(z.real()) + "," + io::format_double(z.imag());
  return out;
}

Result cmd_separation(const Config& c) {
  const json pj = io::load_json_arg(required(c.points, "--points"));
  const ModelSpace space = load_space(c, &pj);
  const PointSet pts = io::pointset_from_json(pj, space.n());
  SeparationOptions opts;
  opts.bucketing = c.bucketing;
  const auto rep = separation(space, pts, c.frame_radius.value_or(std::numeric_limits<double>::infinity()), opts);
  Result r;
  r.report = envelope("separation");
  r.report["space"] = io::to_json(space);
  r.report["points"] = pts.size();
  r.report["separation"] = io::to_json(rep);
  return r;
}

Result cmd_density(const Config& c) {
  const json pj = io::load_json_arg(required(c.points, "--points"));
  const ModelSpace space = load_space(c, &pj);
  const PointSet pts = io::pointset_from_json(pj, space.n());
  const auto grid = load_grid(c, space);
  const unsigned threads = resolve_threads(c.threads);
  std::vector<double> values(grid.size());
  parallel_for(grid.size(), threads,
               [&](std::size_t i) { values[i] = seip_density(space, pts, grid[i], c.cutoff); });
  const auto sup = sup_density(space, pts, grid, c.cutoff, threads);
  Result r;
  r.report = envelope("density");
  r.report["space"] = io::to_json(space);
  r.report["points"] = pts.size();
  r.report["cutoff"] = c.cutoff;
  r.report["grid_samples"] = grid.size();
  r.report["grid_supremum"] = sup.value;
  r.report["argmax"] = sup.argmax;
  r.report["argmax_point"] = io::to_json(grid[sup.argmax]);
  r.csv = "index" + point_columns(space.n()) + ",density\n";
  for (std::size_t i = 0; i < grid.size(); ++i) {
    r.csv += std::to_string(i) + point_cells(grid[i]) + "," + io::format_double(values[i]) + "\n";
  }
  return r;
}

Result certificate_result(const std::string& command, const ModelSpace& space,
                          const CertificateReport& rep) {
  Result r;
  r.report = envelope(command);
  r.report["space"] = io::to_json(space);
  r.report["certificate"] = io::to_json(rep);
  r.csv = io::certificate_csv(rep);
  r.code = rep.passed ? kSuccess : kCriterionFailed;
  return r;
}

Result cmd_certify_bos(const Config& c) {
  const ModelSpace space = ModelSpace::flat(1);
  const json pj = io::load_json_arg(required(c.points, "--points"));
  const PointSet pts = io::pointset_from_json(pj, 1);
  const HermitianWeight w = io::weight_from_json(io::load_json_arg(required(c.weight, "--weight")), 1);
  CertificateOptions opts;
  opts.threads = resolve_threads(c.threads);
  const auto rep = bos_certificate(w, pts, required(c.rho, "--rho"), required(c.eps, "--eps"),
                                   load_grid(c, space), opts);
  return certificate_result("certify-bos", space, rep);
}

Result cmd_certify_t1(const Config& c) {
  const json pj = io::load_json_arg(required(c.points, "--points"));
  const ModelSpace space = load_space(c, &pj);
  const PointSet pts = io::pointset_from_json(pj, space.n());
  const HermitianWeight w =
      io::weight_from_json(io::load_json_arg(required(c.weight, "--weight")), space.n());
  Theorem1Options opts;
  opts.threads = resolve_threads(c.threads);
  opts.k_bound = c.k_bound;
  const auto rep = theorem1_certificate(w, space, pts, required(c.rho, "--rho"),
                                        required(c.eps, "--eps"), load_grid(c, space), opts);
  return certificate_result("certify-t1", space, rep);
}

Result cmd_certify_t2(const Config& c) {
  const json pj = io::load_json_arg(required(c.points, "--points"));
  const ModelSpace space = load_space(c, &pj);
  const PointSet pts = io::pointset_from_json(pj, space.n());
  const HermitianWeight w =
      io::weight_from_json(io::load_json_arg(required(c.weight, "--weight")), space.n());
  Theorem2Options opts;
  opts.threads = resolve_threads(c.threads);
  opts.density_threshold = c.threshold;
  opts.cutoff = c.cutoff;
  const auto rep = theorem2_certificate(w, space, pts, required(c.eps, "--eps"),
                                        load_grid(c, space), opts);
  return certificate_result("certify-t2", space, rep);
}

Result cmd_construct(const Config& c) {
  const json pj = io::load_json_arg(required(c.points, "--points"));
  const ModelSpace space = load_space(c, &pj);
  PointSet pts = io::pointset_from_json(pj, space.n());
  if (!pts.has_values()) throw InputError("construct needs target \"values\" in the point set");
  const HermitianWeight w =
      io::weight_from_json(io::load_json_arg(required(c.weight, "--weight")), space.n());
  const auto ext = GluedExtension::create(space, w, pts, c.delta0);
  const AuxiliaryWeight aux(space, pts, required(c.rho, "--rho"));
  QuadratureSpec quad;
  quad.radial = c.radial;
  quad.angular = c.angular;
  quad.threads = resolve_threads(c.threads);
  const auto energy = dbar_energy(ext, aux, quad);
  const auto norm = extension_norm_sq(ext, quad);

  double worst_residual = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const cplx a = pts.values()[i];
    const double res = std::abs(ext.evaluate(pts[i]) - a) / std::max(1.0, std::abs(a));
    worst_residual = std::max(worst_residual, res);
  }

  const auto grid = load_grid(c, space);
  std::vector<cplx> values(grid.size());
  parallel_for(grid.size(), quad.threads, [&](std::size_t i) { values[i] = ext.evaluate(grid[i]); });

  Result r;
  r.report = envelope("construct");
  r.report["space"] = io::to_json(space);
  r.report["weight"] = io::to_json(w);
  r.report["points"] = pts.size();
  r.report["separation"] = ext.separation();
  r.report["delta0"] = ext.delta0();
  r.report["rho"] = aux.rho();
  r.report["max_node_residual"] = worst_residual;
  r.report["quadrature"] = {{"radial", quad.radial}, {"angular", quad.angular}};
  r.report["dbar_energy"] = io::to_json(energy);
  r.report["extension_norm_sq"] = {{"coarse", norm.coarse}, {"fine", norm.fine}};
  r.csv = "index" + point_columns(space.n()) + ",re_F,im_F\n";
  for (std::size_t i = 0; i < grid.size(); ++i) {
    r.csv += std::to_string(i) + point_cells(grid[i]) + "," + io::format_double(values[i].real()) +
             "," + io::format_double(values[i].imag()) + "\n";
  }
  return r;
}

Result cmd_interpolate(const Config& c) {
  const json pj = io::load_json_arg(required(c.points, "--points"));
  const json wj = io::load_json_arg(required(c.weight, "--weight"));
  const int n = c.space.empty() && !(pj.is_object() && pj.contains("space"))
                    ? 1
                    : load_space(c, &pj).n();
  const KernelSpace kernel = io::kernel_from_json(wj, n);
  const PointSet pts = io::pointset_from_json(pj, n);
  if (!pts.has_values()) throw InputError("interpolate needs target \"values\" in the point set");
  InterpolationOptions opts;
  opts.eig_floor = c.eig_floor;
  opts.threads = resolve_threads(c.threads);
  const auto f = min_norm_interpolant(kernel, pts, opts);

  double worst = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const cplx a = pts.values()[i];
    // Residual relative to the kernel scale √K(p,p) of the node.
    const double scale = std::max(std::abs(a), std::exp(0.5 * kernel.log_diagonal(pts[i])));
    worst = std::max(worst, std::abs(f(pts[i]) - a) / scale);
  }
  const auto coef = f.coefficients();
  json nodes = json::array();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const auto j = static_cast<Eigen::Index>(i);
    nodes.push_back({{"point", io::to_json(pts[i])},
                     {"value", io::complex_to_json(pts.values()[i])},
                     {"coefficient", io::complex_to_json(coef(j))},
                     {"normalized_coefficient", io::complex_to_json(f.normalized_coefficients()(j))}});
  }
  Result r;
  r.report = envelope("interpolate");
  r.report["kernel"] = wj;
  r.report["kernel_exponent"] = kernel.kind() == KernelKind::Bergman ? json(kernel.exponent()) : json(nullptr);
  r.report["eig_min"] = f.eig_min();
  r.report["norm_sq"] = f.norm_sq();
  r.report["max_relative_residual"] = worst;
  r.report["nodes"] = nodes;
  return r;
}

Result cmd_sweep(const Config& c) {
  const json wj = io::load_json_arg(required(c.weight, "--weight"));
  const int n = c.space.empty() ? 1 : io::space_from_json(io::load_json_arg(c.space)).n();
  const KernelSpace kernel = io::kernel_from_json(wj, n);
  if (c.spacings.empty()) throw InputError("missing required flag --spacings");
  const std::vector<double> radii = c.radii.empty() ? std::vector<double>{6.0} : c.radii;
  for (double s : c.spacings) {
    if (!(s > 0.0)) throw InputError("spacings must be positive");
  }
  for (double R : radii) {
    if (!(R >= 0.0)) throw InputError("radii must be nonnegative");
  }
  const auto sweep = feasibility_sweep(kernel, c.spacings, radii, resolve_threads(c.threads));
  Result r;
  r.report = envelope("sweep");
  r.report["kernel"] = wj;
  r.report["monotone"] = sweep.monotone;
  json rows = json::array();
  for (const auto& row : sweep.rows) {
    rows.push_back({{"s", row.spacing}, {"eig_min", row.eig_min}, {"eig_max", row.eig_max},
                    {"R", row.radius}, {"n_points", row.n_points}});
  }
  r.report["rows"] = rows;
  r.csv = io::sweep_csv(sweep);
  r.code = sweep.monotone ? kSuccess : kCriterionFailed;
  return r;
}

Result cmd_verify_geometry(const Config& c) {
  const ModelSpace space = c.space.empty() ? ModelSpace::hyperbolic_ball(1, 1.0)
                                           : io::space_from_json(io::load_json_arg(c.space));
  if (c.samples < 2) throw InputError("--samples must be at least 2");
  const int n = space.n();
  const int dim = 2 * n;
  const double scale = space.kappa().value_or(1.0);
  const Point origin(std::vector<cplx>(static_cast<std::size_t>(n)));
  const double d_lo = 0.1 * scale;
  const double d_hi = 3.0 * scale;

  auto direction = [&](int i) {
    std::vector<double> u(static_cast<std::size_t>(dim), 0.0);
    const double t = 2.0 * M_PI * (0.5 + i) / c.samples;
    u[static_cast<std::size_t>(i % (dim / 2)) * 2] = std::cos(t);
    u[static_cast<std::size_t>(i % (dim / 2)) * 2 + 1] = std::sin(t);
    return u;
  };

  // Squared-distance Hessian against the comparison factor.
  double worst_ratio = 0.0;
  double worst_flat_dev = 0.0;
  std::size_t worst_cmp = 0;
  for (int i = 0; i < c.samples; ++i) {
    const double d = d_lo + (d_hi - d_lo) * i / (c.samples - 1);
    const auto u = direction(i);
    const Point z = exp_map(space, origin, u, d);
    const auto H = complex_hessian_fd(
        [&](const Point& x) { const double r = distance(space, origin, x); return r * r; }, z);
    const auto eig = relative_eigenvalues(space, z, H);
    const double bound = space.is_flat() ? 2.0 : hessian_comparison_factor(space.k(), d);
    const double ratio = eig.maxCoeff() / bound;
    if (ratio > worst_ratio) {
      worst_ratio = ratio;
      worst_cmp = static_cast<std::size_t>(i);
    }
    if (space.is_flat()) {
      worst_flat_dev = std::max({worst_flat_dev, std::abs(eig.maxCoeff() - 2.0),
                                 std::abs(eig.minCoeff() - 2.0)});
    }
  }
  const bool cmp_ok = worst_ratio <= 1.0 + c.tolerance && worst_flat_dev <= 1e-6;

  json report = envelope("verify-geometry");
  report["space"] = io::to_json(space);
  report["comparison"] = {{"samples", c.samples},
                          {"distance_range", {d_lo, d_hi}},
                          {"worst_ratio", worst_ratio},
                          {"worst_sample", worst_cmp},
                          {"tolerance", c.tolerance},
                          {"passed", cmp_ok}};
  if (space.is_flat()) report["comparison"]["flat_deviation"] = worst_flat_dev;
  bool ok = cmp_ok;

  // Plurisubharmonicity of log tanh²(d/2κ) away from the pole.
  if (!space.is_flat()) {
    const double kappa = *space.kappa();
    const auto f = [&](const Point& x) {
      return -density_term(distance(space, origin, x), kappa);
    };
    double worst_eig = std::numeric_limits<double>::infinity();
    double worst_lap = 0.0;
    for (int i = 0; i < c.samples; ++i) {
      const double rad = kappa * (0.05 + 0.9 * i / (c.samples - 1));
      const Point z = from_real([&] {
        auto u = direction(i);
        for (auto& x : u) x *= rad;
        return u;
      }());
      const auto H = complex_hessian_fd(f, z);
      worst_eig = std::min(worst_eig, relative_eigenvalues(space, z, H).minCoeff());
      if (n == 1) worst_lap = std::max(worst_lap, std::abs(4.0 * H(0, 0).real()));
    }
    const bool psh_ok = worst_eig >= -1e-6 && (n != 1 || worst_lap <= 1e-5);
    report["log_tanh_psh"] = {{"min_relative_eigenvalue", worst_eig},
                              {"passed", psh_ok}};
    if (n == 1) report["log_tanh_psh"]["max_abs_laplacian"] = worst_lap;
    ok = ok && psh_ok;

    double ricci_dev = 0.0;
    for (int i = 0; i < c.samples; ++i) {
      const double rad = kappa * 0.9 * i / (c.samples - 1);
      auto u = direction(i);
      for (auto& x : u) x *= rad;
      const Point z = from_real(u);
      const auto eig = relative_eigenvalues(space, z, ricci_matrix(space, z));
      ricci_dev = std::max(ricci_dev, std::abs(eig.minCoeff() - ricci_eigen(space, z)));
    }
    report["ricci"] = {{"expected", -n / (kappa * kappa)},
                       {"max_deviation", ricci_dev},
                       {"passed", ricci_dev <= 1e-9}};
    ok = ok && ricci_dev <= 1e-9;
  }
  report["passed"] = ok;
  Result r;
  r.report = report;
  r.code = ok ? kSuccess : kCriterionFailed;
  return r;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot write \"" + path + "\"");
  f << text;
  if (!f) throw InputError("failed writing \"" + path + "\"");
}

void emit(const Result& r, const Config& c, std::ostream& out) {
  const std::string text = r.report.dump(2) + "\n";
  if (c.out.empty()) {
    out << text;
    return;
  }
  write_file(c.out + ".json", text);
  if (!r.csv.empty()) write_file(c.out + ".csv", r.csv);
  out << r.report.value("command", std::string()) << ": wrote " << c.out << ".json";
  if (!r.csv.empty()) out << " and " << c.out << ".csv";
  out << "\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Config c;
  CLI::App app{"Certificates and constructions for holomorphic interpolation", "holo-interp"};
  app.require_subcommand(1);

  auto threads = [&](CLI::App* s) {
    s->add_option("--threads", c.threads, "worker threads (default $HOLO_INTERP_THREADS or 1)");
    s->add_option("--out", c.out, "output prefix; writes <prefix>.json and <prefix>.csv");
  };
  auto with_points = [&](CLI::App* s) {
    s->add_option("--space", c.space, "model space JSON (inline or file)");
    s->add_option("--points", c.points, "point set JSON (inline or file)")->required();
  };
  auto with_grid = [&](CLI::App* s) {
    s->add_option("--grid", c.grid, "sample grid JSON (inline or file)")->required();
    s->add_option("--seed", c.seed, "seed for grid jitter and random grids");
  };

  auto* sep = app.add_subcommand("separation", "minimum pairwise distance and delta0");
  with_points(sep);
  threads(sep);
  sep->add_flag("--bucketing", c.bucketing, "uniform bucketing for large flat sets");
  sep->add_option("--r0", c.frame_radius, "frame radius r0 entering delta0");

  auto* den = app.add_subcommand("density", "grid supremum of the hyperbolic density");
  with_points(den);
  with_grid(den);
  threads(den);
  den->add_option("--cutoff", c.cutoff, "only nodes at distance >= cutoff contribute");

  auto* bos = app.add_subcommand("certify-bos", "planar Laplacian criterion on flat C");
  bos->add_option("--points", c.points, "point set JSON")->required();
  bos->add_option("--weight", c.weight, "weight JSON")->required();
  bos->add_option("--rho", c.rho, "counting radius")->required();
  bos->add_option("--eps", c.eps, "required slack")->required();
  with_grid(bos);
  threads(bos);

  auto* t1 = app.add_subcommand("certify-t1", "curvature-versus-counting criterion");
  with_points(t1);
  t1->add_option("--weight", c.weight, "weight JSON")->required();
  t1->add_option("--rho", c.rho, "counting radius")->required();
  t1->add_option("--eps", c.eps, "required slack")->required();
  t1->add_option("--k", c.k_bound, "curvature bound magnitude (>= the space's k)");
  with_grid(t1);
  threads(t1);

  auto* t2 = app.add_subcommand("certify-t2", "density criterion on the hyperbolic ball");
  with_points(t2);
  t2->add_option("--weight", c.weight, "weight JSON")->required();
  t2->add_option("--eps", c.eps, "required curvature slack")->required();
  t2->add_option("--threshold", c.threshold, "user bound for the density grid supremum");
  t2->add_option("--cutoff", c.cutoff, "density cutoff distance");
  with_grid(t2);
  threads(t2);

  auto* con = app.add_subcommand("construct", "glued extension and its dbar energy");
  with_points(con);
  con->add_option("--weight", c.weight, "weight JSON")->required();
  con->add_option("--rho", c.rho, "auxiliary weight radius")->required();
  con->add_option("--delta0", c.delta0, "gluing radius (default half the separation)");
  con->add_option("--radial", c.radial, "radial quadrature cells (coarse level)");
  con->add_option("--angular", c.angular, "angular quadrature resolution (coarse level)");
  with_grid(con);
  threads(con);

  auto* itp = app.add_subcommand("interpolate", "minimal-norm kernel interpolant");
  with_points(itp);
  itp->add_option("--weight", c.weight, "builtin weight JSON selecting the kernel")->required();
  itp->add_option("--eig-floor", c.eig_floor, "smallest admissible normalized Gram eigenvalue");
  threads(itp);

  auto* swp = app.add_subcommand("sweep", "Riesz bounds of truncated square lattices");
  swp->add_option("--space", c.space, "model space JSON (sets n)");
  swp->add_option("--weight", c.weight, "builtin weight JSON selecting the kernel")->required();
  swp->add_option("--spacings", c.spacings, "lattice spacings")->required()->delimiter(',');
  swp->add_option("--radius", c.radii, "truncation radii (default 6)")->delimiter(',');
  threads(swp);

  auto* geo = app.add_subcommand("verify-geometry", "finite-difference checks of the model space");
  geo->add_option("--space", c.space, "model space JSON (default hyperbolic disk, kappa 1)");
  geo->add_option("--samples", c.samples, "samples per check");
  geo->add_option("--tol", c.tolerance, "relative tolerance of the comparison check");
  threads(geo);

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }

  try {
    Result r;
    if (sep->parsed()) r = cmd_separation(c);
    else if (den->parsed()) r = cmd_density(c);
    else if (bos->parsed()) r = cmd_certify_bos(c);
    else if (t1->parsed()) r = cmd_certify_t1(c);
    else if (t2->parsed()) r = cmd_certify_t2(c);
    else if (con->parsed()) r = cmd_construct(c);
    else if (itp->parsed()) r = cmd_interpolate(c);
    else if (swp->parsed()) r = cmd_sweep(c);
    else r = cmd_verify_geometry(c);
    emit(r, c, out);
    return r.code;
  } catch (const NumericalGuardError& e) {
    err << "numerical guard: " << e.what() << "\n";
    return kNumericalGuard;
  } catch (const SizeError& e) {
    err << "size guard: " << e.what() << "\n";
    return kNumericalGuard;
  } catch (const InputError& e) {
    err << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const json::exception& e) {
    err << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::logic_error& e) {
    // DomainError, UnsupportedSpaceError and other argument errors.
    err << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    err << "numerical guard: " << e.what() << "\n";
    return kNumericalGuard;
  }
}

int run(int argc, const char* const* argv) {
  std::vector<std::string> args(argv, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace holo_interp::cli
