#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "holo_interp/geometry.hpp"
#include "holo_interp/pointset.hpp"

namespace holo_interp {

enum class KernelKind { Fock, Bergman };

/// Measure the Bergman kernel is reproducing for: the ball's hyperbolic volume
/// (exponent A − n + 1) or Lebesgue measure (exponent A + n + 1).
enum class BergmanMeasure { Hyperbolic, Lebesgue };

/// Reproducing kernel of a weighted space of holomorphic functions:
///   Fock     K(z,w) = exp(α⟨z,w⟩)              for e^{−α|z|²} dV on ℂⁿ,
///   Bergman  K(z,w) = (1 − ⟨z,w⟩/κ²)^{−e}       for (1 − |z|²/κ²)^A on the κ-ball.
/// Constant normalizations are dropped; they cancel in normalized Grams.
class KernelSpace {
 public:
  static KernelSpace fock(double alpha, int n = 1);
  static KernelSpace bergman(double A, double kappa, int n = 1,
                             BergmanMeasure measure = BergmanMeasure::Hyperbolic);

  KernelKind kind() const noexcept { return kind_; }
  int n() const noexcept { return n_; }
  double parameter() const noexcept { return parameter_; }
  double kappa() const noexcept { return kappa_; }
  /// Bergman kernel exponent e (unused for Fock).
  double exponent() const noexcept { return exponent_; }

  void require_point(const Point& z) const;

  /// log K(z,w) on the principal branch.
  cplx log_kernel(const Point& z, const Point& w) const;
  cplx kernel(const Point& z, const Point& w) const;
  /// log K(z,z), real.
  double log_diagonal(const Point& z) const;

 private:
  KernelSpace(KernelKind kind, int n, double parameter, double kappa, double exponent)
      : kind_(kind), n_(n), parameter_(parameter), kappa_(kappa), exponent_(exponent) {}

  KernelKind kind_;
  int n_;
  double parameter_;
  double kappa_;
  double exponent_;
};

/// Gram matrix of the normalized kernels K(·,p)/√K(p,p) and its Riesz bounds.
struct GramDiagnostic {
  Eigen::MatrixXcd gram;
  double eig_min = 1.0;
  double eig_max = 1.0;
  double condition = 1.0;  // eig_max / eig_min (∞ when eig_min ≤ 0)
};

inline constexpr std::size_t kDefaultGramGuard = 2000;

GramDiagnostic gram_matrix(const KernelSpace& space, const PointSet& points,
                           std::size_t size_guard = kDefaultGramGuard, unsigned threads = 1);

/// f = Σ_j c_j K(·, p_j) with f(p_i) = a_i and minimal space norm.
class Interpolant {
 public:
  Interpolant(KernelSpace space, std::vector<Point> nodes, Eigen::VectorXcd scaled,
              std::vector<double> log_scale, double eig_min, double norm_sq);

  /// c_j = b_j / √K(p_j,p_j); may underflow for far nodes of a Fock space.
  Eigen::VectorXcd coefficients() const;
  /// b_j = c_j √K(p_j,p_j), the coefficients against normalized kernels.
  const Eigen::VectorXcd& normalized_coefficients() const noexcept { return scaled_; }
  const std::vector<Point>& nodes() const noexcept { return nodes_; }
  const KernelSpace& space() const noexcept { return space_; }
  double eig_min() const noexcept { return eig_min_; }
  /// ‖f‖² = c* K c
  double norm_sq() const noexcept { return norm_sq_; }

  cplx operator()(const Point& z) const;

 private:
  KernelSpace space_;
  std::vector<Point> nodes_;
  Eigen::VectorXcd scaled_;
  std::vector<double> log_scale_;  // ½ log K(p_j, p_j)
  double eig_min_;
  double norm_sq_;
};

struct InterpolationOptions {
  std::size_t size_guard = kDefaultGramGuard;
  /// Smallest admissible eigenvalue of the normalized Gram.
  double eig_floor = 1e-10;
  unsigned threads = 1;
};

/// Throws ConditioningError when the normalized Gram has eig_min < eig_floor.
Interpolant min_norm_interpolant(const KernelSpace& space, const PointSet& points,
                                 const InterpolationOptions& options = {});

struct SweepRow {
  double spacing = 0.0;
  double eig_min = 1.0;
  double eig_max = 1.0;
  double radius = 0.0;
  std::size_t n_points = 0;
};

struct SweepResult {
  std::vector<SweepRow> rows;  // sorted by radius, then spacing descending
  /// eig_min nonincreasing as the spacing decreases, for every radius.
  bool monotone = true;
};

/// Riesz bounds of sℤ^{2n} truncated to |z| ≤ R, for each spacing and radius.
SweepResult feasibility_sweep(const KernelSpace& space, std::span<const double> spacings,
                              std::span<const double> radii, unsigned threads = 1,
                              double monotone_tolerance = 1e-12);

}  // namespace holo_interp
