#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "holo_interp/geometry.hpp"
#include "holo_interp/pointset.hpp"
#include "holo_interp/weights.hpp"

namespace holo_interp {

enum class Criterion { Bos, Theorem1, Theorem2 };

std::string to_string(Criterion c);

struct SampleMargin {
  Point point;
  double required = 0.0;
  double available = 0.0;
  double margin = 0.0;
};

/// Extra fields of the density criterion.
struct DensitySummary {
  double grid_sup = 0.0;
  std::size_t argmax = 0;
  double threshold = 0.0;
  double cutoff = 1.0;
  double curvature_margin = 0.0;
};

struct CertificateReport {
  Criterion criterion = Criterion::Bos;
  bool passed = false;
  double epsilon = 0.0;
  std::optional<double> rho;
  /// Comparison factor 1 + kρ coth kρ and the k it was evaluated at (Theorem1).
  std::optional<double> comparison_factor;
  std::optional<double> k;
  std::vector<SampleMargin> per_sample;
  double worst_margin = 0.0;
  std::size_t worst_index = 0;
  std::vector<std::string> warnings;
  std::optional<DensitySummary> density;
};

struct CertificateOptions {
  unsigned threads = 1;
  /// Run the separation check and warn when it is not confirmed positive.
  bool check_separation = true;
};

/// ΔΦ(z) ≥ #(B(z,ρ)∩Λ)/ρ² + ε on flat ℂ, with ΔΦ = 4∂²Φ/∂z∂z̄.
CertificateReport bos_certificate(const HermitianWeight& w, const PointSet& points, double rho,
                                  double eps, std::span<const Point> grid,
                                  const CertificateOptions& options = {});

struct Theorem1Options : CertificateOptions {
  /// Curvature lower-bound magnitude used in the comparison factor; any value
  /// ≥ space.k() is a valid (weaker) bound. Defaults to space.k().
  std::optional<double> k_bound;
};

/// λ_min(i∂∂̄Φ + ricci(ω)) ≥ n·#(B(z,ρ)∩Λ)/ρ²·(1 + kρ coth kρ) + ε at every grid point.
CertificateReport theorem1_certificate(const HermitianWeight& w, const ModelSpace& space,
                                       const PointSet& points, double rho, double eps,
                                       std::span<const Point> grid,
                                       const Theorem1Options& options = {});

struct Theorem2Options : CertificateOptions {
  /// User threshold standing in for "sup D < ∞"; flagged in every report.
  double density_threshold = 10.0;
  double cutoff = 1.0;
};

/// Grid sup of the density below the threshold and λ_min(i∂∂̄Φ + ricci(ω)) ≥ ε
/// on the grid. Hyperbolic ball only.
CertificateReport theorem2_certificate(const HermitianWeight& w, const ModelSpace& space,
                                       const PointSet& points, double eps,
                                       std::span<const Point> grid,
                                       const Theorem2Options& options = {});

}  // namespace holo_interp
