#include "holo_interp/geometry.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "holo_interp/errors.hpp"

namespace holo_interp {

double Point::norm_sq() const noexcept {
  double s = 0.0;
  for (const auto& c : coords) s += std::norm(c);
  return s;
}

double Point::norm() const noexcept { return std::sqrt(norm_sq()); }

namespace {

void require_same_dim(const Point& a, const Point& b) {
  if (a.dim() != b.dim()) {
    throw DomainError("point dimensions differ: " + std::to_string(a.dim()) + " vs " +
                      std::to_string(b.dim()));
  }
}

}  // namespace

Point operator+(const Point& a, const Point& b) {
  require_same_dim(a, b);
  Point r = a;
  for (std::size_t i = 0; i < r.dim(); ++i) r[i] += b[i];
  return r;
}

Point operator-(const Point& a, const Point& b) {
  require_same_dim(a, b);
  Point r = a;
  for (std::size_t i = 0; i < r.dim(); ++i) r[i] -= b[i];
  return r;
}

Point operator*(double s, const Point& a) {
  Point r = a;
  for (auto& c : r.coords) c *= s;
  return r;
}

cplx hermitian_product(const Point& a, const Point& b) {
  require_same_dim(a, b);
  cplx s = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) s += a[i] * std::conj(b[i]);
  return s;
}

std::vector<double> to_real(const Point& z) {
  std::vector<double> u(2 * z.dim());
  for (std::size_t i = 0; i < z.dim(); ++i) {
    u[2 * i] = z[i].real();
    u[2 * i + 1] = z[i].imag();
  }
  return u;
}

Point from_real(std::span<const double> u) {
  Point z;
  z.coords.resize(u.size() / 2);
  for (std::size_t i = 0; i < z.dim(); ++i) z[i] = {u[2 * i], u[2 * i + 1]};
  return z;
}

ModelSpace ModelSpace::flat(int n) {
  if (n < 1) throw DomainError("complex dimension must be positive");
  return ModelSpace(SpaceKind::Flat, n, 0.0, std::nullopt);
}

ModelSpace ModelSpace::hyperbolic_ball(int n, double kappa, std::optional<double> k) {
  if (n < 1) throw DomainError("complex dimension must be positive");
  if (!(kappa > 0.0) || !std::isfinite(kappa)) throw DomainError("kappa must be positive");
  const double kk = k.value_or(1.0 / kappa);
  // Lower curvature bound −k² must sit below the model curvature −1/κ².
  if (!(kk * kappa >= 1.0 - 1e-12)) {
    throw DomainError("hyperbolic ball requires k >= 1/kappa");
  }
  return ModelSpace(SpaceKind::HyperbolicBall, n, kk, kappa);
}

double ModelSpace::require_kappa(const char* operation) const {
  if (!kappa_) {
    throw UnsupportedSpaceError(std::string(operation) + " requires a hyperbolic ball (kappa)");
  }
  return *kappa_;
}

bool ModelSpace::contains(const Point& z) const noexcept {
  if (static_cast<int>(z.dim()) != n_) return false;
  for (const auto& c : z.coords) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
  }
  if (kind_ == SpaceKind::HyperbolicBall) return z.norm_sq() < (*kappa_) * (*kappa_);
  return true;
}

void ModelSpace::require_contains(const Point& z) const {
  if (static_cast<int>(z.dim()) != n_) {
    throw DomainError("point has dimension " + std::to_string(z.dim()) + ", space has n = " +
                      std::to_string(n_));
  }
  if (!contains(z)) throw DomainError("point lies outside the ball model");
}

double ModelSpace::metric_factor(const Point& z) const {
  if (kind_ == SpaceKind::Flat) return 1.0;
  const double s = z.norm_sq() / ((*kappa_) * (*kappa_));
  if (!(s < 1.0)) throw DomainError("point lies outside the ball model");
  const double lam = 2.0 / (1.0 - s);
  return lam * lam;
}

double distance(const ModelSpace& space, const Point& x, const Point& y) {
  space.require_contains(x);
  space.require_contains(y);
  const double diff = (x - y).norm();
  if (space.is_flat()) return diff;
  const double kappa = *space.kappa();
  const double k2 = kappa * kappa;
  const double denom = std::sqrt((k2 - x.norm_sq()) * (k2 - y.norm_sq()));
  return 2.0 * kappa * std::asinh(diff * kappa / denom);
}

Point exp_map(const ModelSpace& space, const Point& p, std::span<const double> u, double r) {
  space.require_contains(p);
  if (u.size() != 2 * p.dim()) throw DomainError("direction has wrong real dimension");
  if (space.is_flat()) {
    Point z = p;
    for (std::size_t i = 0; i < z.dim(); ++i) z[i] += r * cplx(u[2 * i], u[2 * i + 1]);
    return z;
  }
  // Point at distance r from the origin, then Möbius translation 0 ↦ p.
  const double kappa = *space.kappa();
  const double t = std::tanh(r / (2.0 * kappa));
  Point b = from_real(u);
  b = t * b;
  const Point a = (1.0 / kappa) * p;
  const double ab = hermitian_product(a, b).real();
  const double a2 = a.norm_sq();
  const double b2 = b.norm_sq();
  const double den = 1.0 + 2.0 * ab + a2 * b2;
  Point z = ((1.0 + 2.0 * ab + b2) / den) * a + ((1.0 - a2) / den) * b;
  return kappa * z;
}

double polar_density(const ModelSpace& space, double r) {
  const int m = 2 * space.n();
  if (space.is_flat()) return std::pow(r, m - 1);
  const double kappa = *space.kappa();
  return std::pow(kappa * std::sinh(r / kappa), m - 1);
}

std::vector<SphereNode> sphere_midpoint_rule(int dim, int resolution) {
  if (dim < 2) throw DomainError("sphere rule needs dimension >= 2");
  if (resolution < 2) throw DomainError("sphere rule needs resolution >= 2");
  const int polar_cells = std::max(1, resolution / 2);
  const int polar_angles = dim - 2;
  const double pi = std::numbers::pi;
  std::vector<SphereNode> nodes;
  std::vector<int> idx(static_cast<std::size_t>(polar_angles), 0);
  while (true) {
    std::vector<double> phi(static_cast<std::size_t>(polar_angles));
    double jac = 1.0;
    for (int a = 0; a < polar_angles; ++a) {
      phi[a] = (idx[a] + 0.5) * pi / polar_cells;
      jac *= std::pow(std::sin(phi[a]), dim - 2 - a) * (pi / polar_cells);
    }
    for (int t = 0; t < resolution; ++t) {
      const double theta = (t + 0.5) * 2.0 * pi / resolution;
      std::vector<double> x(static_cast<std::size_t>(dim));
      double prod = 1.0;
      for (int a = 0; a < polar_angles; ++a) {
        x[a] = prod * std::cos(phi[a]);
        prod *= std::sin(phi[a]);
      }
      x[dim - 2] = prod * std::cos(theta);
      x[dim - 1] = prod * std::sin(theta);
      nodes.push_back({std::move(x), jac * 2.0 * pi / resolution});
    }
    int a = polar_angles - 1;
    while (a >= 0 && ++idx[a] == polar_cells) idx[a--] = 0;
    if (a < 0) break;
  }
  return nodes;
}

double comparison_factor_of_product(double x) {
  if (x < 0.0) throw DomainError("comparison factor needs k*rho >= 0");
  // x coth x = 1 + x²/3 − x⁴/45 + 2x⁶/945 − ...
  if (x < 1e-3) {
    const double x2 = x * x;
    return 2.0 + x2 / 3.0 - x2 * x2 / 45.0;
  }
  return 1.0 + x / std::tanh(x);
}

double hessian_comparison_factor(double k, double rho) {
  if (!(rho > 0.0)) throw DomainError("rho must be positive");
  if (!(k >= 0.0)) throw DomainError("k must be non-negative");
  return comparison_factor_of_product(k * rho);
}

double unit_sphere_area(int dim) {
  if (dim < 1) throw DomainError("dimension must be positive");
  const double half = 0.5 * dim;
  return 2.0 * std::pow(std::numbers::pi, half) / std::tgamma(half);
}

double ball_volume_bound(double k, double rho, int dim) {
  if (!(rho > 0.0)) throw DomainError("rho must be positive");
  if (!(k >= 0.0)) throw DomainError("k must be non-negative");
  if (dim < 1) throw DomainError("dimension must be positive");
  const double area = unit_sphere_area(dim);
  if (k == 0.0) return area * std::pow(rho, dim) / dim;
  auto integrand = [k, dim](double t) { return std::pow(std::sinh(k * t) / k, dim - 1); };
  double error = 0.0;
  const double radial = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
      integrand, 0.0, rho, 20, 1e-10, &error);
  return area * radial;
}

double default_fd_step(const Point& z) { return 1e-4 * std::max(1.0, z.norm()); }

namespace {

// Real Hessian of f at u by central differences with step h.
Eigen::MatrixXd real_hessian(const ScalarField& f, const std::vector<double>& u, double h) {
  const std::size_t m = u.size();
  Eigen::MatrixXd hess(m, m);
  auto eval = [&](std::size_t a, double da, std::size_t b, double db) {
    std::vector<double> v = u;
    v[a] += da;
    v[b] += db;
    return f(from_real(v));
  };
  const double f0 = f(from_real(u));
  for (std::size_t a = 0; a < m; ++a) {
    hess(a, a) = (eval(a, h, a, 0.0) - 2.0 * f0 + eval(a, -h, a, 0.0)) / (h * h);
    for (std::size_t b = a + 1; b < m; ++b) {
      const double v = (eval(a, h, b, h) - eval(a, h, b, -h) - eval(a, -h, b, h) +
                        eval(a, -h, b, -h)) /
                       (4.0 * h * h);
      hess(a, b) = v;
      hess(b, a) = v;
    }
  }
  return hess;
}

}  // namespace

Eigen::MatrixXcd complex_hessian_fd(const ScalarField& f, const Point& z,
                                    std::optional<double> step) {
  const double h = step.value_or(default_fd_step(z));
  if (!(h > 0.0)) throw DomainError("finite-difference step must be positive");
  const auto u = to_real(z);
  const Eigen::MatrixXd coarse = real_hessian(f, u, h);
  const Eigen::MatrixXd fine = real_hessian(f, u, 0.5 * h);
  const Eigen::MatrixXd r = (4.0 * fine - coarse) / 3.0;

  const std::size_t n = z.dim();
  Eigen::MatrixXcd hc(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t m = 0; m < n; ++m) {
      const double xx = r(2 * j, 2 * m);
      const double yy = r(2 * j + 1, 2 * m + 1);
      const double xy = r(2 * j, 2 * m + 1);
      const double yx = r(2 * j + 1, 2 * m);
      hc(j, m) = 0.25 * cplx(xx + yy, xy - yx);
    }
  }
  return 0.5 * (hc + hc.adjoint());
}

Eigen::VectorXd relative_eigenvalues(const ModelSpace& space, const Point& z,
                                     const Eigen::MatrixXcd& hessian) {
  const double scale = 2.0 / space.metric_factor(z);
  const Eigen::MatrixXcd m = scale * 0.5 * (hessian + hessian.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m, Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

Eigen::MatrixXcd ricci_matrix(const ModelSpace& space, const Point& z) {
  space.require_contains(z);
  const int n = space.n();
  Eigen::MatrixXcd ric = Eigen::MatrixXcd::Zero(n, n);
  if (space.is_flat()) return ric;
  // log det g = n log 2 − 2n log(1 − s), s = |z|²/κ².
  const double kappa = *space.kappa();
  const double k2 = kappa * kappa;
  const double one_minus_s = 1.0 - z.norm_sq() / k2;
  for (int j = 0; j < n; ++j) {
    for (int m = 0; m < n; ++m) {
      cplx v = std::conj(z[j]) * z[m] / (k2 * k2 * one_minus_s * one_minus_s);
      if (j == m) v += 1.0 / (k2 * one_minus_s);
      ric(j, m) = -2.0 * n * v;
    }
  }
  return ric;
}

double ricci_eigen(const ModelSpace& space, const Point& z) {
  space.require_contains(z);
  if (space.is_flat()) return 0.0;
  const double kappa = *space.kappa();
  return -static_cast<double>(space.n()) / (kappa * kappa);
}

}  // namespace holo_interp
