#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "holo_interp/geometry.hpp"

namespace holo_interp {

/// c · z₁^{a₁} ⋯ z_n^{a_n}
struct Monomial {
  cplx coef;
  std::vector<int> exponents;
};

/// Holomorphic polynomial in n complex variables.
class Polynomial {
 public:
  Polynomial(int n, std::vector<Monomial> terms);

  /// The coordinate function c·z_k.
  static Polynomial coordinate(int n, int k, cplx c = 1.0);

  int n() const noexcept { return n_; }
  const std::vector<Monomial>& terms() const noexcept { return terms_; }

  cplx operator()(const Point& z) const;
  /// ∂σ/∂z_k
  cplx derivative(const Point& z, int k) const;

  /// Same polynomial written in the variable h = z − center.
  Polynomial shifted(const Point& center) const;

  /// Upper bound of sup_{|h| ≤ r} |σ(center + h) − σ(center)|² from the
  /// coefficients of the shifted expansion.
  double oscillation_bound(const Point& center, double radius) const;

 private:
  int n_;
  std::vector<Monomial> terms_;
};

/// Re(c · z^a · z̄^b)
struct RealPolyTerm {
  cplx coef;
  std::vector<int> z_exponents;
  std::vector<int> zbar_exponents;
};

/// −A log(1 − |z|²/κ²)
struct BergmanLogTerm {
  double A;
  double kappa;
};

/// amplitude · cos(Re Σ ξ_j z_j)
struct CosineTerm {
  double amplitude;
  std::vector<cplx> frequency;
};

using DeformationTerm = std::variant<RealPolyTerm, BergmanLogTerm, CosineTerm>;

/// Real deformation weight Φ_def as a finite sum of closed-form terms.
class Deformation {
 public:
  Deformation() = default;
  explicit Deformation(std::vector<DeformationTerm> terms) : terms_(std::move(terms)) {}

  const std::vector<DeformationTerm>& terms() const noexcept { return terms_; }
  bool empty() const noexcept { return terms_.empty(); }

  double value(const Point& z) const;
  /// ∂Φ_def/∂z_k for all k.
  std::vector<cplx> gradient_dz(const Point& z) const;
  /// [∂²Φ_def/∂z_j∂z̄_m]
  Eigen::MatrixXcd complex_hessian(const Point& z) const;

 private:
  std::vector<DeformationTerm> terms_;
};

/// Frame constants: M₂ bounds the real second derivatives of Φ_def (and, for
/// regular frames, the oscillation of the σ_α); r₀ is the frame radius; μ ≤ ‖dΨ‖
/// and the optional λ ≥ ‖dΨ‖ bound the chart distortion.
struct FrameParameters {
  double m2 = 0.0;
  double r0 = std::numeric_limits<double>::infinity();
  double mu = 1.0;
  std::optional<double> lambda;
};

enum class BuiltinWeight { Fock, Bergman };

struct BuiltinTag {
  BuiltinWeight kind;
  double parameter;  // α for Fock, A for Bergman
  double kappa = 1.0;
};

/// Hermitian weight Φ = Σ|σ_α|² + Φ_def on ℂⁿ (or the κ-ball).
class HermitianWeight {
 public:
  HermitianWeight(int n, std::vector<Polynomial> sigmas, Deformation deformation,
                  FrameParameters frame);

  /// Φ = α|z|²: σ_k = √α·z_k, Φ_def = 0.
  static HermitianWeight fock(double alpha, int n = 1);
  /// Φ = −A log(1 − |z|²/κ²). M₂ is the bound of the real second derivatives
  /// on |z| ≤ working_fraction·κ; μ = 2 since the ball metric dominates 2|dz|.
  static HermitianWeight bergman(double A, double kappa, int n = 1,
                                 double working_fraction = 0.9);

  int n() const noexcept { return n_; }
  const std::vector<Polynomial>& sigmas() const noexcept { return sigmas_; }
  const Deformation& deformation() const noexcept { return deformation_; }
  const FrameParameters& frame() const noexcept { return frame_; }
  const std::optional<BuiltinTag>& builtin() const noexcept { return builtin_; }

  /// Copy with different frame constants (used to probe dishonest M₂).
  HermitianWeight with_frame(FrameParameters frame) const;

  double value(const Point& z) const;
  /// [∂²Φ/∂z_j∂z̄_m], closed form.
  Eigen::MatrixXcd complex_hessian(const Point& z) const;

 private:
  void require_dim(const Point& z) const;

  int n_;
  std::vector<Polynomial> sigmas_;
  Deformation deformation_;
  FrameParameters frame_;
  std::optional<BuiltinTag> builtin_;
};

/// Φ(z) = Σ|σ_α(z)|² + Φ_def(z).
double weight_value(const HermitianWeight& w, const Point& z);

enum class CurvatureMethod { Analytic, FiniteDifference };

/// Smallest eigenvalue of i∂∂̄Φ + ricci(ω) relative to ω.
double curvature_eigen_min(const HermitianWeight& w, const ModelSpace& space, const Point& z,
                           CurvatureMethod method = CurvatureMethod::Analytic);

/// Σ_k ∂Φ_def/∂z_k(p)(z_k − p_k) + Σ_α conj(σ_α(p))(σ_α(z) − σ_α(p)).
cplx normal_frame_exponent(const HermitianWeight& w, const Point& p, const Point& z);

struct FrameNormReport {
  double constant = 1.0;  // C = exp(½M₂(2n)²δ₀²/μ²)
  double worst_ratio = 0.0;  // max ‖f_p(z)‖²_h / (C‖a(p)‖²_h)
  std::size_t worst_index = 0;
  bool passed = true;
};

/// Checks ‖f_p(z)‖²_h ≤ C‖a(p)‖²_h at each sample z with d(p, z) ≤ δ₀.
FrameNormReport frame_norm_bound_check(const HermitianWeight& w, const ModelSpace& space,
                                       const Point& p, std::span<const Point> samples,
                                       double delta0);

/// Constant of the weighted mean-value estimate
/// ‖f(x)‖²_h ≤ C ∫_{B(x,r/2)} ‖f‖²_h dV on flat space.
double mean_value_constant(const HermitianWeight& w, const Point& x, double r);

struct M2SpotCheck {
  double max_second_derivative = 0.0;
  bool passed = true;
};

/// Finite-difference spot check that the declared M₂ bounds the real second
/// derivatives of Φ_def on balls of the given radius around the centers.
M2SpotCheck spot_check_m2(const HermitianWeight& w, std::span<const Point> centers,
                          double radius, int samples_per_center = 16, unsigned seed = 7);

}  // namespace holo_interp
