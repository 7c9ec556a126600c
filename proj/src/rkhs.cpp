#include "holo_interp/rkhs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "holo_interp/errors.hpp"
#include "holo_interp/parallel.hpp"

namespace holo_interp {

KernelSpace KernelSpace::fock(double alpha, int n) {
  if (!(alpha > 0.0)) throw DomainError("Fock parameter alpha must be positive");
  if (n < 1) throw DomainError("complex dimension must be positive");
  return KernelSpace(KernelKind::Fock, n, alpha, 1.0, 0.0);
}

KernelSpace KernelSpace::bergman(double A, double kappa, int n, BergmanMeasure measure) {
  if (n < 1) throw DomainError("complex dimension must be positive");
  if (!(kappa > 0.0)) throw DomainError("kappa must be positive");
  // Weight (1−s)^A against λ^{2n} dLeb = 4ⁿ(1−s)^{−2n} dLeb, i.e. β = A − 2n;
  // the ball's weighted Bergman kernel has exponent n + 1 + β.
  const double beta = measure == BergmanMeasure::Hyperbolic ? A - 2.0 * n : A;
  if (!(beta > -1.0)) {
    throw DomainError("Bergman space is trivial: need A > " +
                      std::to_string(measure == BergmanMeasure::Hyperbolic ? 2 * n - 1 : -1));
  }
  return KernelSpace(KernelKind::Bergman, n, A, kappa, n + 1.0 + beta);
}

void KernelSpace::require_point(const Point& z) const {
  if (static_cast<int>(z.dim()) != n_) throw DomainError("point dimension does not match kernel");
  if (kind_ == KernelKind::Bergman && !(z.norm_sq() < kappa_ * kappa_)) {
    throw DomainError("Bergman kernel evaluated outside the ball");
  }
}

cplx KernelSpace::log_kernel(const Point& z, const Point& w) const {
  const cplx ip = hermitian_product(z, w);
  if (kind_ == KernelKind::Fock) return parameter_ * ip;
  return -exponent_ * std::log(1.0 - ip / (kappa_ * kappa_));
}

cplx KernelSpace::kernel(const Point& z, const Point& w) const {
  require_point(z);
  require_point(w);
  return std::exp(log_kernel(z, w));
}

double KernelSpace::log_diagonal(const Point& z) const {
  require_point(z);
  const double s = z.norm_sq();
  if (kind_ == KernelKind::Fock) return parameter_ * s;
  return -exponent_ * std::log1p(-s / (kappa_ * kappa_));
}

namespace {

Eigen::MatrixXcd normalized_gram(const KernelSpace& space, const PointSet& points,
                                 const std::vector<double>& half_log_diag, unsigned threads) {
  const auto m = static_cast<Eigen::Index>(points.size());
  Eigen::MatrixXcd g(m, m);
  parallel_for(points.size(), threads, [&](std::size_t i) {
    const auto ii = static_cast<Eigen::Index>(i);
    g(ii, ii) = 1.0;
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      const auto jj = static_cast<Eigen::Index>(j);
      const cplx v =
          std::exp(space.log_kernel(points[i], points[j]) - half_log_diag[i] - half_log_diag[j]);
      g(ii, jj) = v;
      g(jj, ii) = std::conj(v);
    }
  });
  return g;
}

std::vector<double> half_log_diagonal(const KernelSpace& space, const PointSet& points) {
  std::vector<double> out(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) out[i] = 0.5 * space.log_diagonal(points[i]);
  return out;
}

void check_size(const PointSet& points, std::size_t guard) {
  if (points.size() > guard) {
    throw SizeError("Gram of " + std::to_string(points.size()) + " points exceeds the guard of " +
                    std::to_string(guard));
  }
}

}  // namespace

GramDiagnostic gram_matrix(const KernelSpace& space, const PointSet& points,
                           std::size_t size_guard, unsigned threads) {
  check_size(points, size_guard);
  GramDiagnostic diag;
  if (points.empty()) {
    diag.gram = Eigen::MatrixXcd(0, 0);
    return diag;
  }
  for (const auto& p : points.points()) space.require_point(p);
  diag.gram = normalized_gram(space, points, half_log_diagonal(space, points), threads);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(diag.gram, Eigen::EigenvaluesOnly);
  const auto& ev = solver.eigenvalues();
  diag.eig_min = ev(0);
  diag.eig_max = ev(ev.size() - 1);
  diag.condition =
      diag.eig_min > 0.0 ? diag.eig_max / diag.eig_min : std::numeric_limits<double>::infinity();
  return diag;
}

Interpolant::Interpolant(KernelSpace space, std::vector<Point> nodes, Eigen::VectorXcd scaled,
                         std::vector<double> log_scale, double eig_min, double norm_sq)
    : space_(space),
      nodes_(std::move(nodes)),
      scaled_(std::move(scaled)),
      log_scale_(std::move(log_scale)),
      eig_min_(eig_min),
      norm_sq_(norm_sq) {}

Eigen::VectorXcd Interpolant::coefficients() const {
  Eigen::VectorXcd c(scaled_.size());
  for (Eigen::Index j = 0; j < c.size(); ++j) {
    c(j) = scaled_(j) * std::exp(-log_scale_[static_cast<std::size_t>(j)]);
  }
  return c;
}

cplx Interpolant::operator()(const Point& z) const {
  space_.require_point(z);
  cplx s = 0.0;
  for (std::size_t j = 0; j < nodes_.size(); ++j) {
    s += scaled_(static_cast<Eigen::Index>(j)) *
         std::exp(space_.log_kernel(z, nodes_[j]) - log_scale_[j]);
  }
  return s;
}

Interpolant min_norm_interpolant(const KernelSpace& space, const PointSet& points,
                                 const InterpolationOptions& options) {
  const auto& values = points.values();
  check_size(points, options.size_guard);
  if (points.empty()) throw DomainError("interpolation needs at least one node");
  for (const auto& p : points.points()) space.require_point(p);

  const auto half = half_log_diagonal(space, points);
  const Eigen::MatrixXcd g = normalized_gram(space, points, half, options.threads);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(g, Eigen::EigenvaluesOnly);
  const double eig_min = solver.eigenvalues()(0);
  if (!(eig_min >= options.eig_floor)) {
    throw ConditioningError("normalized Gram is near-singular: eig_min = " +
                                std::to_string(eig_min) + " < " +
                                std::to_string(options.eig_floor),
                            eig_min);
  }

  // K = D G D with D = diag √K(p,p): solve G b = D⁻¹a, then c = D⁻¹b.
  const auto m = static_cast<Eigen::Index>(points.size());
  Eigen::VectorXcd rhs(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    rhs(i) = values[static_cast<std::size_t>(i)] * std::exp(-half[static_cast<std::size_t>(i)]);
  }
  const Eigen::LDLT<Eigen::MatrixXcd> ldlt(g);
  Eigen::VectorXcd b = ldlt.solve(rhs);
  b += ldlt.solve(rhs - g * b);  // one step of iterative refinement
  const double norm_sq = (b.adjoint() * g * b)(0, 0).real();
  return Interpolant(space, points.points(), std::move(b), half, eig_min, norm_sq);
}

SweepResult feasibility_sweep(const KernelSpace& space, std::span<const double> spacings,
                              std::span<const double> radii, unsigned threads,
                              double monotone_tolerance) {
  std::vector<double> s(spacings.begin(), spacings.end());
  std::vector<double> r(radii.begin(), radii.end());
  std::sort(s.begin(), s.end(), std::greater<>());
  std::sort(r.begin(), r.end());
  SweepResult out;
  out.rows.resize(s.size() * r.size());
  parallel_for(out.rows.size(), threads, [&](std::size_t idx) {
    const double radius = r[idx / s.size()];
    const double spacing = s[idx % s.size()];
    const auto lattice = square_lattice(space.n(), spacing, radius);
    const auto diag = gram_matrix(space, lattice, kDefaultGramGuard, 1);
    out.rows[idx] = {spacing, diag.eig_min, diag.eig_max, radius, lattice.size()};
  });
  for (std::size_t ri = 0; ri < r.size(); ++ri) {
    for (std::size_t si = 1; si < s.size(); ++si) {
      const auto& larger = out.rows[ri * s.size() + si - 1];
      const auto& smaller = out.rows[ri * s.size() + si];
      if (smaller.eig_min > larger.eig_min + monotone_tolerance) out.monotone = false;
    }
  }
  return out;
}

}  // namespace holo_interp
