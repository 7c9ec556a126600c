#include "holo_interp/certificates.hpp"

#include <cmath>

#include "holo_interp/errors.hpp"
#include "holo_interp/parallel.hpp"

namespace holo_interp {

std::string to_string(Criterion c) {
  switch (c) {
    case Criterion::Bos:
      return "BOS";
    case Criterion::Theorem1:
      return "Theorem1";
    case Criterion::Theorem2:
      return "Theorem2";
  }
  return "unknown";
}

namespace {

void require_grid(std::span<const Point> grid) {
  if (grid.empty()) throw DomainError("sample grid is empty");
}

void finish(CertificateReport& rep) {
  rep.worst_index = 0;
  rep.worst_margin = rep.per_sample.front().margin;
  for (std::size_t i = 1; i < rep.per_sample.size(); ++i) {
    if (rep.per_sample[i].margin < rep.worst_margin) {
      rep.worst_margin = rep.per_sample[i].margin;
      rep.worst_index = i;
    }
  }
  rep.passed = rep.worst_margin >= 0.0;
}

void separation_warning(const ModelSpace& space, const PointSet& points,
                        const CertificateOptions& options, CertificateReport& rep) {
  if (!options.check_separation) {
    rep.warnings.push_back("separation not verified (check disabled)");
    return;
  }
  try {
    const auto sep = separation(space, points);
    if (!(sep.min_pairwise_distance > 0.0)) {
      rep.warnings.push_back("separation not confirmed positive");
    }
  } catch (const SizeError& e) {
    rep.warnings.push_back(std::string("separation not verified: ") + e.what());
  }
}

}  // namespace

CertificateReport bos_certificate(const HermitianWeight& w, const PointSet& points, double rho,
                                  double eps, std::span<const Point> grid,
                                  const CertificateOptions& options) {
  if (w.n() != 1) throw UnsupportedSpaceError("BOS criterion is stated on flat C (n = 1)");
  if (!(rho > 0.0)) throw DomainError("rho must be positive");
  if (!(eps > 0.0)) throw DomainError("epsilon must be positive");
  require_grid(grid);
  const auto space = ModelSpace::flat(1);
  CertificateReport rep;
  rep.criterion = Criterion::Bos;
  rep.epsilon = eps;
  rep.rho = rho;
  rep.per_sample.resize(grid.size());
  parallel_for(grid.size(), options.threads, [&](std::size_t i) {
    const Point& z = grid[i];
    space.require_contains(z);
    const double laplacian = 4.0 * w.complex_hessian(z)(0, 0).real();
    const double count = static_cast<double>(count_in_ball(space, points, z, rho));
    const double required = count / (rho * rho) + eps;
    rep.per_sample[i] = {z, required, laplacian, laplacian - required};
  });
  separation_warning(space, points, options, rep);
  finish(rep);
  return rep;
}

CertificateReport theorem1_certificate(const HermitianWeight& w, const ModelSpace& space,
                                       const PointSet& points, double rho, double eps,
                                       std::span<const Point> grid,
                                       const Theorem1Options& options) {
  if (!(rho > 0.0)) throw DomainError("rho must be positive");
  if (!(eps > 0.0)) throw DomainError("epsilon must be positive");
  require_grid(grid);
  const double k = options.k_bound.value_or(space.k());
  if (!(k >= space.k())) {
    throw DomainError("k bound must be at least the space's curvature bound k");
  }
  const double factor = hessian_comparison_factor(k, rho);
  const double n = space.n();
  CertificateReport rep;
  rep.criterion = Criterion::Theorem1;
  rep.epsilon = eps;
  rep.rho = rho;
  rep.k = k;
  rep.comparison_factor = factor;
  rep.per_sample.resize(grid.size());
  parallel_for(grid.size(), options.threads, [&](std::size_t i) {
    const Point& z = grid[i];
    const double available = curvature_eigen_min(w, space, z);
    const double count = static_cast<double>(count_in_ball(space, points, z, rho));
    const double required = n * count / (rho * rho) * factor + eps;
    rep.per_sample[i] = {z, required, available, available - required};
  });
  separation_warning(space, points, options, rep);
  finish(rep);
  return rep;
}

CertificateReport theorem2_certificate(const HermitianWeight& w, const ModelSpace& space,
                                       const PointSet& points, double eps,
                                       std::span<const Point> grid,
                                       const Theorem2Options& options) {
  space.require_kappa("Theorem 2 certificate");
  if (!(eps > 0.0)) throw DomainError("epsilon must be positive");
  require_grid(grid);
  CertificateReport rep;
  rep.criterion = Criterion::Theorem2;
  rep.epsilon = eps;
  rep.per_sample.resize(grid.size());
  parallel_for(grid.size(), options.threads, [&](std::size_t i) {
    const Point& z = grid[i];
    const double available = curvature_eigen_min(w, space, z);
    rep.per_sample[i] = {z, eps, available, available - eps};
  });
  const auto sup = sup_density(space, points, grid, options.cutoff, options.threads);
  separation_warning(space, points, options, rep);
  finish(rep);

  DensitySummary dens;
  dens.grid_sup = sup.value;
  dens.argmax = sup.argmax;
  dens.threshold = options.density_threshold;
  dens.cutoff = options.cutoff;
  dens.curvature_margin = rep.worst_margin;
  rep.density = dens;
  rep.warnings.push_back(
      "density bound is a grid supremum compared against a user-set threshold");
  // A density excess counts as a negative margin so passed ⇔ worst_margin ≥ 0.
  rep.worst_margin = std::min(rep.worst_margin, options.density_threshold - sup.value);
  rep.passed = rep.worst_margin >= 0.0;
  return rep;
}

}  // namespace holo_interp
