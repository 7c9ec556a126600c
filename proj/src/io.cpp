#include "holo_interp/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>

#include "holo_interp/errors.hpp"

namespace holo_interp::io {

namespace {

std::pair<std::size_t, std::size_t> line_column(const std::string& text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

const json& require(const json& j, const char* key, const char* what) {
  if (!j.is_object()) throw InputError(std::string(what) + " must be a JSON object");
  const auto it = j.find(key);
  if (it == j.end()) throw InputError(std::string(what) + " is missing \"" + key + "\"");
  return *it;
}

double number(const json& j, const char* what) {
  if (!j.is_number()) throw InputError(std::string(what) + " must be a number");
  return j.get<double>();
}

double number_or(const json& j, const char* key, double fallback) {
  const auto it = j.find(key);
  if (it == j.end() || it->is_null()) return fallback;
  return number(*it, key);
}

int integer(const json& j, const char* what) {
  if (!j.is_number_integer()) throw InputError(std::string(what) + " must be an integer");
  return j.get<int>();
}

std::vector<int> exponents(const json& j, int n, const char* what) {
  if (j.is_null()) return std::vector<int>(static_cast<std::size_t>(n), 0);
  if (!j.is_array() || static_cast<int>(j.size()) != n) {
    throw InputError(std::string(what) + " must be an array of " + std::to_string(n) +
                     " integers");
  }
  std::vector<int> out;
  for (const auto& e : j) {
    const int v = integer(e, what);
    if (v < 0) throw InputError(std::string(what) + " must be nonnegative");
    out.push_back(v);
  }
  return out;
}

Polynomial polynomial_from_json(const json& j, int n) {
  const json& terms = j.is_object() ? require(j, "terms", "polynomial") : j;
  if (!terms.is_array()) throw InputError("polynomial must be an array of monomials");
  std::vector<Monomial> out;
  for (const auto& t : terms) {
    Monomial m;
    m.coef = complex_from_json(require(t, "coef", "monomial"));
    m.exponents = exponents(t.value("exp", json()), n, "monomial \"exp\"");
    out.push_back(std::move(m));
  }
  return Polynomial(n, std::move(out));
}

DeformationTerm term_from_json(const json& t, int n) {
  const std::string type = require(t, "type", "phi_def term").get<std::string>();
  if (type == "poly") {
    return RealPolyTerm{complex_from_json(require(t, "coef", "poly term")),
                        exponents(t.value("z", json()), n, "poly term \"z\""),
                        exponents(t.value("zbar", json()), n, "poly term \"zbar\"")};
  }
  if (type == "bergman_log") {
    return BergmanLogTerm{number(require(t, "A", "bergman_log term"), "A"),
                          number_or(t, "kappa", 1.0)};
  }
  if (type == "cosine") {
    const auto& freq = require(t, "frequency", "cosine term");
    if (!freq.is_array() || static_cast<int>(freq.size()) != n) {
      throw InputError("cosine \"frequency\" must list one complex number per coordinate");
    }
    std::vector<cplx> xi;
    for (const auto& f : freq) xi.push_back(complex_from_json(f));
    return CosineTerm{number(require(t, "amplitude", "cosine term"), "amplitude"), std::move(xi)};
  }
  throw InputError("unknown phi_def term type \"" + type + "\"");
}

json monomials_to_json(const Polynomial& p) {
  json out = json::array();
  for (const auto& m : p.terms()) out.push_back({{"coef", complex_to_json(m.coef)}, {"exp", m.exponents}});
  return out;
}

json finite_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

std::vector<Point> jittered(std::vector<Point> grid, const json& j, const ModelSpace& space,
                            std::uint64_t seed) {
  const double a = number_or(j, "jitter", 0.0);
  if (a < 0.0) throw InputError("grid \"jitter\" must be nonnegative");
  if (a == 0.0) return grid;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-a, a);
  for (auto& p : grid) {
    auto r = to_real(p);
    for (auto& x : r) x += u(rng);
    p = from_real(r);
  }
  std::vector<Point> kept;
  for (auto& p : grid) {
    if (space.contains(p)) kept.push_back(std::move(p));
  }
  return kept;
}

}  // namespace

json parse_json_text(const std::string& text, const std::string& origin) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    const auto [line, col] = line_column(text, e.byte > 0 ? e.byte - 1 : 0);
    throw InputError("malformed JSON in " + origin + " at line " + std::to_string(line) +
                     ", column " + std::to_string(col) + ": " + e.what());
  }
}

json load_json_arg(const std::string& arg) {
  const auto first = arg.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && (arg[first] == '{' || arg[first] == '[')) {
    return parse_json_text(arg, "inline argument");
  }
  std::ifstream in(arg, std::ios::binary);
  if (!in) throw InputError("cannot open \"" + arg + "\"");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_json_text(buf.str(), "\"" + arg + "\"");
}

cplx complex_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw InputError("complex numbers are written [re, im], got " + j.dump());
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

json complex_to_json(cplx c) { return json::array({c.real(), c.imag()}); }

ModelSpace space_from_json(const json& j) {
  const std::string kind = require(j, "kind", "space").get<std::string>();
  const int n = j.contains("n") ? integer(j["n"], "space \"n\"") : 1;
  if (kind == "flat") {
    if (j.contains("k") && number(j["k"], "space \"k\"") != 0.0) {
      throw InputError("flat space has k = 0");
    }
    return ModelSpace::flat(n);
  }
  if (kind == "hyperbolic" || kind == "hyperbolic_ball" || kind == "ball") {
    const double kappa = number_or(j, "kappa", 1.0);
    std::optional<double> k;
    if (j.contains("k") && !j["k"].is_null()) k = number(j["k"], "space \"k\"");
    return ModelSpace::hyperbolic_ball(n, kappa, k);
  }
  throw InputError("unknown space kind \"" + kind + "\"");
}

json to_json(const ModelSpace& space) {
  json out{{"kind", space.is_flat() ? "flat" : "hyperbolic"}, {"n", space.n()}, {"k", space.k()}};
  if (space.kappa()) out["kappa"] = *space.kappa();
  return out;
}

Point point_from_json(const json& j, int n) {
  if (!j.is_array()) throw InputError("points are arrays, got " + j.dump());
  if (n == 1 && j.size() == 2 && j[0].is_number()) return Point{complex_from_json(j)};
  if (static_cast<int>(j.size()) != n) {
    throw InputError("point " + j.dump() + " does not have " + std::to_string(n) +
                     " complex coordinates");
  }
  std::vector<cplx> c;
  for (const auto& e : j) c.push_back(complex_from_json(e));
  return Point(std::move(c));
}

json to_json(const Point& p) {
  if (p.dim() == 1) return complex_to_json(p[0]);
  json out = json::array();
  for (const auto& c : p.coords) out.push_back(complex_to_json(c));
  return out;
}

PointSet pointset_from_json(const json& j, int n) {
  const json& pts = j.is_array() ? j : require(j, "points", "point set");
  if (!pts.is_array()) throw InputError("\"points\" must be an array");
  std::vector<Point> points;
  for (const auto& p : pts) points.push_back(point_from_json(p, n));
  if (j.is_object() && j.contains("values") && !j["values"].is_null()) {
    const auto& vals = j["values"];
    if (!vals.is_array()) throw InputError("\"values\" must be an array");
    std::vector<cplx> values;
    for (const auto& v : vals) values.push_back(complex_from_json(v));
    return PointSet(std::move(points), std::move(values));
  }
  return PointSet(std::move(points));
}

json to_json(const PointSet& points) {
  json out{{"points", json::array()}};
  for (const auto& p : points.points()) out["points"].push_back(to_json(p));
  if (points.has_values()) {
    out["values"] = json::array();
    for (const auto& v : points.values()) out["values"].push_back(complex_to_json(v));
  }
  return out;
}

HermitianWeight weight_from_json(const json& j, int n) {
  if (!j.is_object()) throw InputError("weight must be a JSON object");
  if (j.contains("builtin")) {
    const std::string b = j["builtin"].get<std::string>();
    if (b == "fock") return HermitianWeight::fock(number_or(j, "alpha", 1.0), n);
    if (b == "bergman") {
      return HermitianWeight::bergman(number(require(j, "A", "bergman weight"), "A"),
                                      number_or(j, "kappa", 1.0), n,
                                      number_or(j, "working_fraction", 0.9));
    }
    throw InputError("unknown builtin weight \"" + b + "\"");
  }
  std::vector<Polynomial> sigmas;
  if (j.contains("sigmas")) {
    if (!j["sigmas"].is_array()) throw InputError("\"sigmas\" must be an array of polynomials");
    for (const auto& s : j["sigmas"]) sigmas.push_back(polynomial_from_json(s, n));
  }
  std::vector<DeformationTerm> terms;
  if (j.contains("phi_def") && !j["phi_def"].is_null()) {
    const json& d = j["phi_def"];
    const json& list = d.is_object() ? require(d, "terms", "phi_def") : d;
    if (!list.is_array()) throw InputError("\"phi_def\" terms must be an array");
    for (const auto& t : list) terms.push_back(term_from_json(t, n));
  }
  FrameParameters frame;
  frame.m2 = number_or(j, "M2", 0.0);
  frame.r0 = number_or(j, "r0", std::numeric_limits<double>::infinity());
  frame.mu = number_or(j, "mu", 1.0);
  if (j.contains("lambda") && !j["lambda"].is_null()) frame.lambda = number(j["lambda"], "lambda");
  return HermitianWeight(n, std::move(sigmas), Deformation(std::move(terms)), frame);
}

json to_json(const HermitianWeight& w) {
  json out;
  if (const auto& b = w.builtin()) {
    if (b->kind == BuiltinWeight::Fock) {
      out = {{"builtin", "fock"}, {"alpha", b->parameter}};
    } else {
      out = {{"builtin", "bergman"}, {"A", b->parameter}, {"kappa", b->kappa}};
    }
  } else {
    out["sigmas"] = json::array();
    for (const auto& s : w.sigmas()) out["sigmas"].push_back(monomials_to_json(s));
    json terms = json::array();
    for (const auto& t : w.deformation().terms()) {
      if (const auto* p = std::get_if<RealPolyTerm>(&t)) {
        terms.push_back({{"type", "poly"}, {"coef", complex_to_json(p->coef)},
                         {"z", p->z_exponents}, {"zbar", p->zbar_exponents}});
      } else if (const auto* bl = std::get_if<BergmanLogTerm>(&t)) {
        terms.push_back({{"type", "bergman_log"}, {"A", bl->A}, {"kappa", bl->kappa}});
      } else if (const auto* c = std::get_if<CosineTerm>(&t)) {
        json f = json::array();
        for (const auto& x : c->frequency) f.push_back(complex_to_json(x));
        terms.push_back({{"type", "cosine"}, {"amplitude", c->amplitude}, {"frequency", f}});
      }
    }
    out["phi_def"] = terms;
  }
  const auto& f = w.frame();
  out["M2"] = f.m2;
  out["r0"] = finite_or_null(f.r0);
  out["mu"] = f.mu;
  if (f.lambda) out["lambda"] = *f.lambda;
  out["n"] = w.n();
  return out;
}

KernelSpace kernel_from_json(const json& j, int n) {
  const std::string b = j.is_object() && j.contains("builtin") ? j["builtin"].get<std::string>()
                                                               : std::string();
  if (b == "fock") return KernelSpace::fock(number_or(j, "alpha", 1.0), n);
  if (b == "bergman") {
    const std::string m = j.value("measure", std::string("hyperbolic"));
    if (m != "hyperbolic" && m != "lebesgue") {
      throw InputError("Bergman \"measure\" is \"hyperbolic\" or \"lebesgue\"");
    }
    return KernelSpace::bergman(number(require(j, "A", "bergman weight"), "A"),
                                number_or(j, "kappa", 1.0), n,
                                m == "lebesgue" ? BergmanMeasure::Lebesgue
                                                : BergmanMeasure::Hyperbolic);
  }
  throw InputError("interpolation needs a builtin weight (fock or bergman)");
}

std::vector<Point> grid_from_json(const json& j, const ModelSpace& space, std::uint64_t seed) {
  if (j.is_array()) {
    std::vector<Point> out;
    for (const auto& p : j) out.push_back(point_from_json(p, space.n()));
    for (const auto& p : out) space.require_contains(p);
    return out;
  }
  const std::string type = require(j, "type", "grid").get<std::string>();
  std::vector<Point> out;
  if (type == "points") {
    for (const auto& p : require(j, "points", "grid")) out.push_back(point_from_json(p, space.n()));
    for (const auto& p : out) space.require_contains(p);
    return jittered(std::move(out), j, space, seed);
  }
  if (type == "box") {
    if (space.n() != 1) throw InputError("box grids are for n = 1; use \"points\" or \"random_ball\"");
    const auto& lo = require(j, "min", "box grid");
    const auto& hi = require(j, "max", "box grid");
    const auto& cnt = require(j, "count", "box grid");
    const double x0 = number(lo.at(0), "min"), y0 = number(lo.at(1), "min");
    const double x1 = number(hi.at(0), "max"), y1 = number(hi.at(1), "max");
    const int nx = cnt.is_array() ? integer(cnt.at(0), "count") : integer(cnt, "count");
    const int ny = cnt.is_array() ? integer(cnt.at(1), "count") : nx;
    if (nx < 1 || ny < 1) throw InputError("box grid counts must be positive");
    for (int b = 0; b < ny; ++b) {
      const double y = ny == 1 ? 0.5 * (y0 + y1) : y0 + (y1 - y0) * b / (ny - 1);
      for (int a = 0; a < nx; ++a) {
        const double x = nx == 1 ? 0.5 * (x0 + x1) : x0 + (x1 - x0) * a / (nx - 1);
        Point p{cplx(x, y)};
        if (space.contains(p)) out.push_back(std::move(p));
      }
    }
    return jittered(std::move(out), j, space, seed);
  }
  if (type == "disk") {
    if (space.n() != 1) throw InputError("disk grids are for n = 1; use \"points\" or \"random_ball\"");
    const cplx c = j.contains("center") ? complex_from_json(j["center"]) : cplx(0.0, 0.0);
    const double r = number(require(j, "radius", "disk grid"), "radius");
    const int rings = integer(require(j, "rings", "disk grid"), "rings");
    const int per = j.contains("per_ring") ? integer(j["per_ring"], "per_ring") : 16;
    if (!(r > 0.0) || rings < 1 || per < 1) throw InputError("disk grid needs radius, rings, per_ring > 0");
    out.push_back(Point{c});
    for (int i = 1; i <= rings; ++i) {
      const double ri = r * i / rings;
      for (int a = 0; a < per; ++a) {
        out.push_back(Point{c + std::polar(ri, 2.0 * M_PI * a / per)});
      }
    }
    for (const auto& p : out) space.require_contains(p);
    return jittered(std::move(out), j, space, seed);
  }
  if (type == "random_ball") {
    const int count = integer(require(j, "count", "random_ball grid"), "count");
    const double r = number(require(j, "radius", "random_ball grid"), "radius");
    const Point center = j.contains("center")
                             ? point_from_json(j["center"], space.n())
                             : Point(std::vector<cplx>(static_cast<std::size_t>(space.n())));
    const int dim = 2 * space.n();
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    std::uniform_real_distribution<double> u;
    for (int i = 0; i < count; ++i) {
      std::vector<double> x(static_cast<std::size_t>(dim));
      double norm = 0.0;
      for (auto& v : x) {
        v = g(rng);
        norm += v * v;
      }
      norm = std::sqrt(norm);
      const double rad = r * std::pow(u(rng), 1.0 / dim);
      for (auto& v : x) v *= rad / norm;
      Point p = center + from_real(x);
      if (space.contains(p)) out.push_back(std::move(p));
    }
    return out;
  }
  throw InputError("unknown grid type \"" + type + "\"");
}

json conventions() {
  return {
      {"omega", "(i/2) lambda^2 sum_j dz_j ^ dzbar_j; lambda = 1 flat, 2/(1-|z|^2/kappa^2) ball"},
      {"relative_eigenvalue", "eig(2 H / lambda^2), H = [d^2 f / dz_j dzbar_m]"},
      {"laplacian", "Delta Phi = 4 d^2 Phi / dz dzbar"},
      {"balls", "open: d(z, p) < rho"},
      {"comparison_factor", "1 + k rho coth(k rho), 2 at k = 0"},
      {"density_term", "-log tanh^2(d / 2 kappa)"},
  };
}

json to_json(const CertificateReport& r) {
  json out{{"criterion", to_string(r.criterion)},
           {"passed", r.passed},
           {"epsilon", r.epsilon},
           {"worst_margin", r.worst_margin},
           {"worst_index", r.worst_index},
           {"samples", r.per_sample.size()},
           {"warnings", r.warnings}};
  if (r.rho) out["rho"] = *r.rho;
  if (r.k) out["k"] = *r.k;
  if (r.comparison_factor) out["comparison_factor"] = *r.comparison_factor;
  if (!r.per_sample.empty()) out["worst_point"] = to_json(r.per_sample[r.worst_index].point);
  if (r.density) {
    out["density"] = {{"grid_supremum", r.density->grid_sup},
                      {"argmax", r.density->argmax},
                      {"threshold", r.density->threshold},
                      {"cutoff", r.density->cutoff},
                      {"curvature_margin", r.density->curvature_margin}};
  }
  return out;
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string certificate_csv(const CertificateReport& r) {
  std::string out = "index";
  const int n = r.per_sample.empty() ? 1 : static_cast<int>(r.per_sample.front().point.dim());
  for (int k = 1; k <= n; ++k) out += ",re_z" + std::to_string(k) + ",im_z" + std::to_string(k);
  out += ",required,available,margin\n";
  for (std::size_t i = 0; i < r.per_sample.size(); ++i) {
    const auto& s = r.per_sample[i];
    out += std::to_string(i);
    for (const auto& c : s.point.coords) {
      out += "," + format_double(c.real()) + "," + format_double(c.imag());
    }
    out += "," + format_double(s.required) + "," + format_double(s.available) + "," +
           format_double(s.margin) + "\n";
  }
  return out;
}

json to_json(const SeparationReport& r) {
  json out{{"min_pairwise_distance", finite_or_null(r.min_pairwise_distance)},
           {"delta0", finite_or_null(r.delta0)},
           {"separated", r.min_pairwise_distance > 0.0}};
  if (r.arg_pair) out["arg_pair"] = {r.arg_pair->first, r.arg_pair->second};
  return out;
}

json to_json(const EnergyReport& r) {
  return {{"coarse", r.coarse},
          {"fine", r.fine},
          {"relative_drift", r.relative_drift},
          {"per_node", r.per_node},
          {"v_min_on_annuli", r.v_min_on_annuli},
          {"v_lower_bound", r.v_lower_bound}};
}

json to_json(const AuxCurvatureReport& r) {
  return {{"samples", r.samples.size()},
          {"skipped_near_pole", r.skipped_near_pole},
          {"worst_slack", r.worst_slack},
          {"worst_index", r.worst_index},
          {"tolerance", r.tolerance},
          {"passed", r.passed}};
}

json to_json(const GramDiagnostic& d, bool include_matrix) {
  json out{{"eig_min", d.eig_min},
           {"eig_max", d.eig_max},
           {"condition", finite_or_null(d.condition)},
           {"size", d.gram.rows()}};
  if (include_matrix) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < d.gram.rows(); ++i) {
      json row = json::array();
      for (Eigen::Index k = 0; k < d.gram.cols(); ++k) row.push_back(complex_to_json(d.gram(i, k)));
      rows.push_back(row);
    }
    out["gram"] = rows;
  }
  return out;
}

std::string sweep_csv(const SweepResult& sweep) {
  std::string out = "s,eig_min,eig_max,R,n_points\n";
  for (const auto& row : sweep.rows) {
    out += format_double(row.spacing) + "," + format_double(row.eig_min) + "," +
           format_double(row.eig_max) + "," + format_double(row.radius) + "," +
           std::to_string(row.n_points) + "\n";
  }
  return out;
}

}  // namespace holo_interp::io
