#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "holo_interp/geometry.hpp"
#include "holo_interp/pointset.hpp"
#include "holo_interp/weights.hpp"

namespace holo_interp {

/// Smooth nonincreasing cutoff: ≡1 on [0, inner], ≡0 on [outer, ∞), built from
/// the bump s(u) = exp(−1/u).
struct CutoffParameters {
  double inner = 0.25;
  double outer = 1.0;
};

double cutoff(double t, const CutoffParameters& params = {});

/// f_p(z) = a_p · exp(normal_frame_exponent(w, p, z)); requires d(p, z) < δ₀.
cplx local_section(const ModelSpace& space, const HermitianWeight& w, const Point& p, cplx a_p,
                   const Point& z, double delta0);

/// F = Σ_p f_p · χ(d(p,·)²/δ₀²): the smooth solution of the interpolation
/// problem before the ∂̄-correction.
class GluedExtension {
 public:
  /// δ₀ defaults to min(separation, r₀)/2. Throws DomainError if the point set
  /// has no values or 2δ₀ > min(separation, r₀).
  static GluedExtension create(ModelSpace space, HermitianWeight weight, PointSet points,
                               std::optional<double> delta0 = std::nullopt,
                               CutoffParameters cutoff = {});

  const ModelSpace& space() const noexcept { return space_; }
  const HermitianWeight& weight() const noexcept { return weight_; }
  const PointSet& points() const noexcept { return points_; }
  double delta0() const noexcept { return delta0_; }
  double separation() const noexcept { return separation_; }
  const CutoffParameters& cutoff_parameters() const noexcept { return cutoff_; }

  /// Same nodes and weight with different target values.
  GluedExtension with_values(std::vector<cplx> values) const;

  cplx evaluate(const Point& z) const;

  /// χ(d(p_i, z)²/δ₀²)
  double cutoff_factor(std::size_t node, const Point& z) const;

  /// Coefficients ∂F/∂z̄_k. Only the cutoff factors are differentiated (by
  /// finite differences); the local sections are holomorphic.
  std::vector<cplx> dbar(const Point& z) const;

  /// Pointwise ‖∂̄F‖²_h = e^{−Φ} Σ_k |∂F/∂z̄_k|²·|dz̄_k|²_ω.
  double dbar_norm_sq(const Point& z) const;

 private:
  GluedExtension(ModelSpace space, HermitianWeight weight, PointSet points, double delta0,
                 double separation, CutoffParameters cutoff)
      : space_(std::move(space)),
        weight_(std::move(weight)),
        points_(std::move(points)),
        delta0_(delta0),
        separation_(separation),
        cutoff_(cutoff) {}

  ModelSpace space_;
  HermitianWeight weight_;
  PointSet points_;
  double delta0_;
  double separation_;
  CutoffParameters cutoff_;
};

/// v(z) = n Σ_q (1 − d(q,z)²/ρ² + log(d(q,z)²/ρ²)) 1_{B(q,ρ)}(z).
class AuxiliaryWeight {
 public:
  AuxiliaryWeight(ModelSpace space, PointSet points, double rho);

  const ModelSpace& space() const noexcept { return space_; }
  const PointSet& points() const noexcept { return points_; }
  double rho() const noexcept { return rho_; }
  int n() const noexcept { return space_.n(); }

  /// −∞ on Λ.
  double value(const Point& z) const;

 private:
  ModelSpace space_;
  PointSet points_;
  double rho_;
};

double auxiliary_weight_value(const AuxiliaryWeight& v, const Point& z);

struct SeipWeightOptions {
  /// Nodes farther than tail_radius form the tail of the sum; the guard trips
  /// when the tail exceeds tail_tolerance·max(1, |v|). Disabled by default.
  double tail_radius = std::numeric_limits<double>::infinity();
  double tail_tolerance = 1e-3;
};

/// v(z) = Σ_p n log tanh²(d(p,z)/2κ); −∞ on Λ.
double seip_weight_value(const ModelSpace& space, const PointSet& points, const Point& z,
                         const SeipWeightOptions& options = {});

/// Tensor midpoint rule in geodesic polar coordinates around each node.
struct QuadratureSpec {
  int radial = 12;
  int angular = 24;
  unsigned threads = 1;
};

struct EnergyReport {
  double coarse = 0.0;  // at (radial, angular)
  double fine = 0.0;    // at (2·radial, 2·angular)
  double relative_drift = 0.0;
  std::vector<double> per_node;  // fine level
  /// Minimum of v sampled on the annuli and the bound n·m·log(δ₀²/4ρ²), where m
  /// is the largest number of ρ-balls meeting a sample.
  double v_min_on_annuli = 0.0;
  double v_lower_bound = 0.0;
};

/// ∫ ‖∂̄F‖²_h e^{−v} dV over the annuli δ₀/2 ≤ d(p,·) ≤ δ₀, where ∂̄F lives.
EnergyReport dbar_energy(const GluedExtension& extension, const AuxiliaryWeight& aux,
                         const QuadratureSpec& quad = {});

struct NormReport {
  double coarse = 0.0;
  double fine = 0.0;
  std::vector<double> per_node;  // fine level
};

/// ∫ ‖F‖²_h dV, F being supported on the balls B(p, δ₀).
NormReport extension_norm_sq(const GluedExtension& extension, const QuadratureSpec& quad = {});

struct CurvatureSample {
  Point point;
  double eigen_min = 0.0;  // λ_min(i∂∂̄v) relative to ω, finite differences
  double bound = 0.0;      // −n·#(B(z,ρ)∩Λ)/ρ²·(1 + kρ coth kρ)
};

struct AuxCurvatureReport {
  std::vector<CurvatureSample> samples;
  std::size_t skipped_near_pole = 0;
  double worst_slack = 0.0;  // min(eigen_min − bound)
  std::size_t worst_index = 0;
  double tolerance = 1e-4;
  bool passed = true;
};

/// Finite-difference check of i∂∂̄v ≥ −n·#(B(z,ρ)∩Λ)/ρ²·(1 + kρ coth kρ)·ω − tol.
/// Grid points closer than 0.05ρ to Λ are skipped and counted.
AuxCurvatureReport auxiliary_curvature_check(const AuxiliaryWeight& aux,
                                             std::span<const Point> grid, double tol = 1e-4,
                                             unsigned threads = 1);

}  // namespace holo_interp
