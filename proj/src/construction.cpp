#include "holo_interp/construction.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "holo_interp/errors.hpp"
#include "holo_interp/parallel.hpp"

namespace holo_interp {

namespace {

double bump(double u) { return u > 0.0 ? std::exp(-1.0 / u) : 0.0; }

}  // namespace

double cutoff(double t, const CutoffParameters& params) {
  if (!(t >= 0.0)) throw DomainError("cutoff argument must be non-negative");
  const double width = params.outer - params.inner;
  const double up = bump((params.outer - t) / width);
  const double down = bump((t - params.inner) / width);
  return up / (up + down);
}

cplx local_section(const ModelSpace& space, const HermitianWeight& w, const Point& p, cplx a_p,
                   const Point& z, double delta0) {
  if (!(distance(space, p, z) < delta0)) {
    throw DomainError("local section evaluated outside the delta0-ball");
  }
  return a_p * std::exp(normal_frame_exponent(w, p, z));
}

GluedExtension GluedExtension::create(ModelSpace space, HermitianWeight weight, PointSet points,
                                      std::optional<double> delta0, CutoffParameters cutoff) {
  if (!points.has_values()) throw DomainError("glued extension needs target values a(p)");
  if (weight.n() != space.n()) throw DomainError("weight and space dimensions differ");
  if (!(cutoff.inner >= 0.0 && cutoff.outer > cutoff.inner)) {
    throw DomainError("cutoff needs 0 <= inner < outer");
  }
  const double r0 = weight.frame().r0;
  const auto sep = holo_interp::separation(space, points, r0);
  const double limit = std::min(sep.min_pairwise_distance, r0);
  double d0 = delta0.value_or(sep.delta0);
  if (!std::isfinite(d0)) d0 = 1.0;  // single node with a global frame
  if (!(d0 > 0.0)) throw DomainError("delta0 must be positive");
  if (2.0 * d0 > limit * (1.0 + 1e-12)) {
    throw DomainError("separation guard: 2*delta0 = " + std::to_string(2.0 * d0) +
                      " exceeds min(separation, r0) = " + std::to_string(limit));
  }
  return GluedExtension(std::move(space), std::move(weight), std::move(points), d0,
                        sep.min_pairwise_distance, cutoff);
}

GluedExtension GluedExtension::with_values(std::vector<cplx> values) const {
  return GluedExtension(space_, weight_, points_.with_values(std::move(values)), delta0_,
                        separation_, cutoff_);
}

double GluedExtension::cutoff_factor(std::size_t node, const Point& z) const {
  const double d = distance(space_, points_[node], z);
  return cutoff(d * d / (delta0_ * delta0_), cutoff_);
}

cplx GluedExtension::evaluate(const Point& z) const {
  space_.require_contains(z);
  cplx sum = 0.0;
  const auto& values = points_.values();
  for (std::size_t i = 0; i < points_.size(); ++i) {
    const Point& p = points_[i];
    const double d = distance(space_, p, z);
    if (!(d < delta0_)) continue;
    const double chi = cutoff(d * d / (delta0_ * delta0_), cutoff_);
    if (chi == 0.0) continue;
    sum += values[i] * std::exp(normal_frame_exponent(weight_, p, z)) * chi;
  }
  return sum;
}

std::vector<cplx> GluedExtension::dbar(const Point& z) const {
  space_.require_contains(z);
  const std::size_t n = z.dim();
  std::vector<cplx> out(n, 0.0);
  const auto& values = points_.values();
  const double h = std::min(default_fd_step(z), 1e-3 * delta0_);
  for (std::size_t i = 0; i < points_.size(); ++i) {
    const Point& p = points_[i];
    // Stencil reaches at most 2h from z.
    if (!(distance(space_, p, z) < delta0_ + 4.0 * h * std::sqrt(space_.metric_factor(z)))) {
      continue;
    }
    auto chi_at = [&](std::size_t axis, double offset) {
      auto u = to_real(z);
      u[axis] += offset;
      return cutoff_factor(i, from_real(u));
    };
    auto central = [&](std::size_t axis, double step) {
      return (chi_at(axis, step) - chi_at(axis, -step)) / (2.0 * step);
    };
    auto derivative = [&](std::size_t axis) {
      return (4.0 * central(axis, 0.5 * h) - central(axis, h)) / 3.0;
    };
    const cplx section = values[i] * std::exp(normal_frame_exponent(weight_, p, z));
    for (std::size_t k = 0; k < n; ++k) {
      // ∂/∂z̄_k = (∂/∂x_k + i ∂/∂y_k)/2
      const cplx dchi = 0.5 * cplx(derivative(2 * k), derivative(2 * k + 1));
      out[k] += section * dchi;
    }
  }
  return out;
}

double GluedExtension::dbar_norm_sq(const Point& z) const {
  const auto d = dbar(z);
  double s = 0.0;
  for (const auto& c : d) s += std::norm(c);
  // |dz̄_k|²_ω = 2/λ²
  return s * 2.0 / space_.metric_factor(z) * std::exp(-weight_.value(z));
}

AuxiliaryWeight::AuxiliaryWeight(ModelSpace space, PointSet points, double rho)
    : space_(std::move(space)), points_(std::move(points)), rho_(rho) {
  if (!(rho > 0.0)) throw DomainError("rho must be positive");
  for (const auto& p : points_.points()) space_.require_contains(p);
}

double AuxiliaryWeight::value(const Point& z) const {
  double v = 0.0;
  const double r2 = rho_ * rho_;
  for (const auto& q : points_.points()) {
    const double d = distance(space_, q, z);
    if (d == 0.0) return -std::numeric_limits<double>::infinity();
    if (!(d < rho_)) continue;
    const double x = d * d / r2;
    v += 1.0 - x + std::log(x);
  }
  return space_.n() * v;
}

double auxiliary_weight_value(const AuxiliaryWeight& v, const Point& z) { return v.value(z); }

double seip_weight_value(const ModelSpace& space, const PointSet& points, const Point& z,
                         const SeipWeightOptions& options) {
  const double kappa = space.require_kappa("seip_weight_value");
  const double n = space.n();
  double total = 0.0;
  double tail = 0.0;
  for (const auto& p : points.points()) {
    const double d = distance(space, p, z);
    if (d == 0.0) return -std::numeric_limits<double>::infinity();
    const double term = -n * density_term(d, kappa);
    total += term;
    if (d > options.tail_radius) tail += term;
  }
  if (!std::isfinite(total)) throw NumericalGuardError("seip weight sum is not finite");
  if (std::abs(tail) > options.tail_tolerance * std::max(1.0, std::abs(total))) {
    throw NumericalGuardError("seip weight sum has not converged: tail beyond radius " +
                              std::to_string(options.tail_radius) + " contributes " +
                              std::to_string(tail));
  }
  return total;
}

namespace {

struct Level {
  int radial;
  int angular;
};

// Σ over nodes of ∫_{r_lo·δ₀}^{r_hi·δ₀} ∫_S integrand(exp_p(r u)) dV, per node.
template <class Integrand>
std::vector<double> polar_integrals(const ModelSpace& space, const PointSet& points,
                                    double r_lo, double r_hi, Level level, unsigned threads,
                                    Integrand&& integrand) {
  const auto sphere = sphere_midpoint_rule(2 * space.n(), level.angular);
  const double dr = (r_hi - r_lo) / level.radial;
  std::vector<double> per_node(points.size(), 0.0);
  parallel_for(points.size(), threads, [&](std::size_t node) {
    double acc = 0.0;
    for (int i = 0; i < level.radial; ++i) {
      const double r = r_lo + (i + 0.5) * dr;
      const double radial_weight = polar_density(space, r) * dr;
      double shell = 0.0;
      for (const auto& s : sphere) {
        const Point z = exp_map(space, points[node], s.direction, r);
        shell += s.weight * integrand(node, z);
      }
      acc += radial_weight * shell;
    }
    if (!std::isfinite(acc)) {
      throw QuadratureError("quadrature diverged on the annulus of node " + std::to_string(node),
                            node);
    }
    per_node[node] = acc;
  });
  return per_node;
}

double total(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s;
}

double drift(double coarse, double fine) {
  if (fine == 0.0) return coarse == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return std::abs(fine - coarse) / std::abs(fine);
}

}  // namespace

EnergyReport dbar_energy(const GluedExtension& extension, const AuxiliaryWeight& aux,
                         const QuadratureSpec& quad) {
  if (quad.radial < 1 || quad.angular < 2) throw DomainError("quadrature spec too coarse");
  if (aux.space().n() != extension.space().n()) {
    throw DomainError("auxiliary weight lives on a different space");
  }
  EnergyReport rep;
  const double d0 = extension.delta0();
  const auto& pts = extension.points();
  if (pts.empty()) return rep;
  auto integrand = [&](std::size_t, const Point& z) {
    return extension.dbar_norm_sq(z) * std::exp(-aux.value(z));
  };
  const Level coarse{quad.radial, quad.angular};
  const Level fine{2 * quad.radial, 2 * quad.angular};
  const auto c = polar_integrals(extension.space(), pts, 0.5 * d0, d0, coarse, quad.threads,
                                 integrand);
  rep.per_node = polar_integrals(extension.space(), pts, 0.5 * d0, d0, fine, quad.threads,
                                 integrand);
  rep.coarse = total(c);
  rep.fine = total(rep.per_node);
  rep.relative_drift = drift(rep.coarse, rep.fine);

  // v on the annuli against n·m·log(δ₀²/4ρ²).
  const auto sphere = sphere_midpoint_rule(2 * extension.space().n(), quad.angular);
  double vmin = 0.0;
  std::size_t overlap = 0;
  for (std::size_t node = 0; node < pts.size(); ++node) {
    for (int i = 0; i <= quad.radial; ++i) {
      const double r = d0 * (0.5 + 0.5 * i / quad.radial);
      for (const auto& s : sphere) {
        const Point z = exp_map(extension.space(), pts[node], s.direction, r);
        vmin = std::min(vmin, aux.value(z));
        overlap = std::max(overlap, count_in_ball(aux.space(), aux.points(), z, aux.rho()));
      }
    }
  }
  rep.v_min_on_annuli = vmin;
  const double log_bound = std::min(0.0, std::log(d0 * d0 / (4.0 * aux.rho() * aux.rho())));
  rep.v_lower_bound = aux.n() * static_cast<double>(overlap) * log_bound;
  return rep;
}

NormReport extension_norm_sq(const GluedExtension& extension, const QuadratureSpec& quad) {
  if (quad.radial < 1 || quad.angular < 2) throw DomainError("quadrature spec too coarse");
  NormReport rep;
  const auto& pts = extension.points();
  if (pts.empty()) return rep;
  const auto& w = extension.weight();
  auto integrand = [&](std::size_t, const Point& z) {
    return std::norm(extension.evaluate(z)) * std::exp(-w.value(z));
  };
  const double d0 = extension.delta0();
  const auto c = polar_integrals(extension.space(), pts, 0.0, d0, {quad.radial, quad.angular},
                                 quad.threads, integrand);
  rep.per_node = polar_integrals(extension.space(), pts, 0.0, d0,
                                 {2 * quad.radial, 2 * quad.angular}, quad.threads, integrand);
  rep.coarse = total(c);
  rep.fine = total(rep.per_node);
  return rep;
}

AuxCurvatureReport auxiliary_curvature_check(const AuxiliaryWeight& aux,
                                             std::span<const Point> grid, double tol,
                                             unsigned threads) {
  const auto& space = aux.space();
  const double rho = aux.rho();
  const double factor = hessian_comparison_factor(space.k(), rho);
  AuxCurvatureReport rep;
  rep.tolerance = tol;
  std::vector<Point> usable;
  for (const auto& z : grid) {
    double nearest = std::numeric_limits<double>::infinity();
    for (const auto& q : aux.points().points()) nearest = std::min(nearest, distance(space, q, z));
    if (nearest < 0.05 * rho) {
      ++rep.skipped_near_pole;
    } else {
      usable.push_back(z);
    }
  }
  if (usable.empty()) throw DomainError("no grid point lies at least 0.05*rho away from the poles");
  rep.samples.resize(usable.size());
  parallel_for(usable.size(), threads, [&](std::size_t i) {
    const Point& z = usable[i];
    const auto hess = complex_hessian_fd([&aux](const Point& x) { return aux.value(x); }, z);
    const double eig = relative_eigenvalues(space, z, hess)(0);
    // v is only C^{1,1} across ∂B(q,ρ): balls whose boundary the stencil
    // touches count as containing z.
    const double reach = 2.0 * default_fd_step(z) * std::sqrt(space.metric_factor(z));
    const double count = static_cast<double>(count_in_ball(space, aux.points(), z, rho + reach));
    rep.samples[i] = {z, eig, -aux.n() * count / (rho * rho) * factor};
  });
  rep.worst_slack = rep.samples[0].eigen_min - rep.samples[0].bound;
  for (std::size_t i = 1; i < rep.samples.size(); ++i) {
    const double slack = rep.samples[i].eigen_min - rep.samples[i].bound;
    if (slack < rep.worst_slack) {
      rep.worst_slack = slack;
      rep.worst_index = i;
    }
  }
  rep.passed = rep.worst_slack >= -tol;
  return rep;
}

}  // namespace holo_interp
