#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "holo_interp/geometry.hpp"

namespace holo_interp {

/// Finite discrete set Λ with optional target values a(p), one per point.
class PointSet {
 public:
  PointSet() = default;
  /// Throws DomainError on repeated points or mismatched dimensions.
  explicit PointSet(std::vector<Point> points);
  PointSet(std::vector<Point> points, std::vector<cplx> values);

  std::size_t size() const noexcept { return points_.size(); }
  bool empty() const noexcept { return points_.empty(); }
  const std::vector<Point>& points() const noexcept { return points_; }
  const Point& operator[](std::size_t i) const { return points_[i]; }

  bool has_values() const noexcept { return values_.has_value(); }
  const std::vector<cplx>& values() const;
  PointSet with_values(std::vector<cplx> values) const;

  /// Union of two sets; values are kept only if both sides carry them.
  PointSet merged(const PointSet& other) const;

 private:
  std::vector<Point> points_;
  std::optional<std::vector<cplx>> values_;
};

/// Uniform-bucketing switch for separation on large flat sets.
struct SeparationOptions {
  std::size_t max_pairs = 10'000'000;
  bool bucketing = false;
};

struct SeparationReport {
  double min_pairwise_distance = std::numeric_limits<double>::infinity();
  std::optional<std::pair<std::size_t, std::size_t>> arg_pair;
  double delta0 = std::numeric_limits<double>::infinity();
};

/// Minimum pairwise distance (exact). δ₀ = min(separation, r0)/2.
SeparationReport separation(const ModelSpace& space, const PointSet& points,
                            double frame_radius = std::numeric_limits<double>::infinity(),
                            const SeparationOptions& options = {});

/// Number of p ∈ Λ with distance(z, p) < ρ (open ball).
std::size_t count_in_ball(const ModelSpace& space, const PointSet& points, const Point& z,
                          double rho);

/// D_{Λ,κ}(x) = Σ_{d(x,p) ≥ cutoff} −log tanh²(d(x,p)/2κ). Hyperbolic ball only.
double seip_density(const ModelSpace& space, const PointSet& points, const Point& x,
                    double cutoff = 1.0);

/// −log tanh²(d/2κ) for a single node, accurate for large d.
double density_term(double d, double kappa);

struct DensitySup {
  double value = 0.0;
  std::size_t argmax = 0;
};

/// Grid supremum of seip_density; ties resolve to the lowest grid index.
DensitySup sup_density(const ModelSpace& space, const PointSet& points,
                       std::span<const Point> grid, double cutoff = 1.0, unsigned threads = 1);

/// s·ℤ^{2n} ∩ {|z| ≤ radius}, in lexicographic order of the integer coordinates.
PointSet square_lattice(int n, double spacing, double radius);

/// s·ℤ² ∩ [−w, w]² for n = 1, row-major.
PointSet lattice_box(double spacing, double half_width);

}  // namespace holo_interp
