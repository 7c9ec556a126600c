#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace holo_interp {

using cplx = std::complex<double>;

/// A point of ℂⁿ given by its complex coordinates.
struct Point {
  std::vector<cplx> coords;

  Point() = default;
  explicit Point(std::vector<cplx> c) : coords(std::move(c)) {}
  Point(std::initializer_list<cplx> c) : coords(c) {}

  std::size_t dim() const noexcept { return coords.size(); }
  cplx& operator[](std::size_t i) { return coords[i]; }
  const cplx& operator[](std::size_t i) const { return coords[i]; }
  double norm_sq() const noexcept;
  double norm() const noexcept;

  friend bool operator==(const Point&, const Point&) = default;
};

Point operator+(const Point& a, const Point& b);
Point operator-(const Point& a, const Point& b);
Point operator*(double s, const Point& a);

/// Hermitian product Σ a_j conj(b_j).
cplx hermitian_product(const Point& a, const Point& b);

/// Real coordinates (Re z₁, Im z₁, Re z₂, ...) and back.
std::vector<double> to_real(const Point& z);
Point from_real(std::span<const double> u);

enum class SpaceKind { Flat, HyperbolicBall };

/// Model Kähler space: flat ℂⁿ, or the ball of radius κ with the metric
/// 4|dz|²/(1 − |z|²/κ²)² (sectional curvature −1/κ²).
///
/// `k` is the magnitude of the sectional-curvature lower bound −k² used by
/// comparison estimates; it is 0 on flat space and at least 1/κ on the ball.
class ModelSpace {
 public:
  static ModelSpace flat(int n);
  /// k defaults to 1/κ, the exact curvature of the model.
  static ModelSpace hyperbolic_ball(int n, double kappa, std::optional<double> k = std::nullopt);

  SpaceKind kind() const noexcept { return kind_; }
  bool is_flat() const noexcept { return kind_ == SpaceKind::Flat; }
  int n() const noexcept { return n_; }
  double k() const noexcept { return k_; }
  std::optional<double> kappa() const noexcept { return kappa_; }
  /// κ, or UnsupportedSpaceError on flat space.
  double require_kappa(const char* operation) const;

  bool contains(const Point& z) const noexcept;
  /// Throws DomainError when z has the wrong dimension or lies outside the ball.
  void require_contains(const Point& z) const;

  /// λ² where the Riemannian metric is λ²|dz|²; 1 on flat space.
  double metric_factor(const Point& z) const;

 private:
  ModelSpace(SpaceKind kind, int n, double k, std::optional<double> kappa)
      : kind_(kind), n_(n), k_(k), kappa_(kappa) {}

  SpaceKind kind_;
  int n_;
  double k_;
  std::optional<double> kappa_;
};

/// Geodesic distance. On the ball this is the Poincaré-ball closed form
/// cosh(d/κ) = 1 + 2|x−y|²κ²/((κ²−|x|²)(κ²−|y|²)), evaluated through
/// sinh(d/2κ) for accuracy at short range.
double distance(const ModelSpace& space, const Point& x, const Point& y);

/// Point at geodesic distance r from p in the real unit direction u ∈ S^{2n−1}
/// (u given in real coordinates, see to_real).
Point exp_map(const ModelSpace& space, const Point& p, std::span<const double> u, double r);

/// Density of the volume form in geodesic polar coordinates, so that
/// dV = polar_density(r) dr dS(u).
double polar_density(const ModelSpace& space, double r);

struct SphereNode {
  std::vector<double> direction;  // unit vector in real coordinates
  double weight;
};

/// Tensor midpoint rule on S^{dim−1} in hyperspherical coordinates with
/// `resolution` cells along the azimuth and resolution/2 along each polar angle.
std::vector<SphereNode> sphere_midpoint_rule(int dim, int resolution);

/// 1 + kρ·coth(kρ); equals 2 in the limit kρ → 0.
double hessian_comparison_factor(double k, double rho);

/// Same factor as a function of the product x = kρ ≥ 0.
double comparison_factor_of_product(double x);

/// Area of the unit sphere S^{dim−1} ⊂ ℝ^dim.
double unit_sphere_area(int dim);

/// Exact volume of the radius-ρ ball in the simply connected space form of
/// curvature −k² and real dimension `dim`.
double ball_volume_bound(double k, double rho, int dim);

using ScalarField = std::function<double(const Point&)>;

/// Default finite-difference step 1e-4·max(1, |z|).
double default_fd_step(const Point& z);

/// Central-difference complex Hessian [∂²f/∂z_j∂z̄_m](z) with one level of
/// Richardson extrapolation, symmetrized to a Hermitian matrix.
Eigen::MatrixXcd complex_hessian_fd(const ScalarField& f, const Point& z,
                                    std::optional<double> step = std::nullopt);

/// Eigenvalues (ascending) of the (1,1)-form i∂∂̄f relative to ω, given the
/// complex Hessian of f. With ω = (i/2)λ²Σdz∧dz̄ this is eig(2H/λ²).
Eigen::VectorXd relative_eigenvalues(const ModelSpace& space, const Point& z,
                                     const Eigen::MatrixXcd& hessian);

/// Coefficient matrix [∂_j∂̄_m] of the Ricci form −i∂∂̄ log det(g).
Eigen::MatrixXcd ricci_matrix(const ModelSpace& space, const Point& z);

/// Smallest eigenvalue of ricci(ω) relative to ω: 0 on flat space, −n/κ² on the ball.
double ricci_eigen(const ModelSpace& space, const Point& z);

}  // namespace holo_interp
