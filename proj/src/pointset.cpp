#include "holo_interp/pointset.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "holo_interp/errors.hpp"
#include "holo_interp/parallel.hpp"

namespace holo_interp {

namespace {

bool lex_less(const Point& a, const Point& b) {
  for (std::size_t i = 0; i < a.dim(); ++i) {
    if (a[i].real() != b[i].real()) return a[i].real() < b[i].real();
    if (a[i].imag() != b[i].imag()) return a[i].imag() < b[i].imag();
  }
  return false;
}

void validate_points(const std::vector<Point>& points) {
  if (points.empty()) return;
  const std::size_t n = points.front().dim();
  std::vector<const Point*> order;
  order.reserve(points.size());
  for (const auto& p : points) {
    if (p.dim() != n) throw DomainError("points have mixed dimensions");
    order.push_back(&p);
  }
  std::sort(order.begin(), order.end(), [](auto* a, auto* b) { return lex_less(*a, *b); });
  for (std::size_t i = 1; i < order.size(); ++i) {
    if (*order[i] == *order[i - 1]) throw DomainError("point set contains a repeated point");
  }
}

}  // namespace

PointSet::PointSet(std::vector<Point> points) : points_(std::move(points)) {
  validate_points(points_);
}

PointSet::PointSet(std::vector<Point> points, std::vector<cplx> values)
    : points_(std::move(points)), values_(std::move(values)) {
  validate_points(points_);
  if (values_->size() != points_.size()) {
    throw DomainError("values length " + std::to_string(values_->size()) +
                      " differs from point count " + std::to_string(points_.size()));
  }
}

const std::vector<cplx>& PointSet::values() const {
  if (!values_) throw DomainError("point set carries no values");
  return *values_;
}

PointSet PointSet::with_values(std::vector<cplx> values) const {
  return PointSet(points_, std::move(values));
}

PointSet PointSet::merged(const PointSet& other) const {
  std::vector<Point> pts = points_;
  pts.insert(pts.end(), other.points_.begin(), other.points_.end());
  if (values_ && other.values_) {
    std::vector<cplx> vals = *values_;
    vals.insert(vals.end(), other.values_->begin(), other.values_->end());
    return PointSet(std::move(pts), std::move(vals));
  }
  return PointSet(std::move(pts));
}

namespace {

void consider_pair(const ModelSpace& space, const PointSet& pts, std::size_t i, std::size_t j,
                   SeparationReport& rep) {
  const double d = distance(space, pts[i], pts[j]);
  if (d < rep.min_pairwise_distance) {
    rep.min_pairwise_distance = d;
    rep.arg_pair = std::make_pair(std::min(i, j), std::max(i, j));
  }
}

// Uniform grid of cell size h over the real coordinates; any pair closer than
// h lies in the same or an adjacent cell.
std::optional<SeparationReport> bucketed_separation(const ModelSpace& space,
                                                    const PointSet& pts, double h) {
  using Key = std::vector<long long>;
  std::map<Key, std::vector<std::size_t>> cells;
  const std::size_t m = 2 * pts[0].dim();
  auto key_of = [&](const Point& p) {
    const auto u = to_real(p);
    Key k(m);
    for (std::size_t a = 0; a < m; ++a) k[a] = static_cast<long long>(std::floor(u[a] / h));
    return k;
  };
  for (std::size_t i = 0; i < pts.size(); ++i) cells[key_of(pts[i])].push_back(i);

  SeparationReport rep;
  std::size_t offsets = 1;
  for (std::size_t a = 0; a < m; ++a) offsets *= 3;
  for (const auto& [key, members] : cells) {
    for (std::size_t o = 0; o < offsets; ++o) {
      Key nb = key;
      std::size_t code = o;
      for (std::size_t a = 0; a < m; ++a) {
        nb[a] += static_cast<long long>(code % 3) - 1;
        code /= 3;
      }
      if (nb < key) continue;  // each unordered cell pair once
      auto it = cells.find(nb);
      if (it == cells.end()) continue;
      const bool same = nb == key;
      for (std::size_t x = 0; x < members.size(); ++x) {
        for (std::size_t y = same ? x + 1 : 0; y < it->second.size(); ++y) {
          consider_pair(space, pts, members[x], it->second[y], rep);
        }
      }
    }
  }
  if (rep.min_pairwise_distance < h) return rep;
  return std::nullopt;
}

}  // namespace

SeparationReport separation(const ModelSpace& space, const PointSet& points,
                            double frame_radius, const SeparationOptions& options) {
  if (!(frame_radius > 0.0)) throw DomainError("frame radius must be positive");
  for (const auto& p : points.points()) space.require_contains(p);
  SeparationReport rep;
  const std::size_t count = points.size();
  if (count >= 2) {
    const std::size_t pairs = count * (count - 1) / 2;
    if (options.bucketing && space.is_flat()) {
      double lo = std::numeric_limits<double>::infinity();
      double hi = -lo;
      for (const auto& p : points.points()) {
        for (double c : to_real(p)) {
          lo = std::min(lo, c);
          hi = std::max(hi, c);
        }
      }
      const double extent = std::max(hi - lo, 1e-300);
      const double dim = 2.0 * static_cast<double>(points[0].dim());
      double h = extent / std::pow(static_cast<double>(count), 1.0 / dim);
      std::optional<SeparationReport> found;
      while (!(found = bucketed_separation(space, points, h)) && h <= 2.0 * extent) h *= 2.0;
      if (!found) found = bucketed_separation(space, points, (std::sqrt(dim) + 1.0) * extent);
      rep = *found;
    } else {
      if (pairs > options.max_pairs) {
        throw SizeError("separation over " + std::to_string(pairs) +
                        " pairs exceeds the guard of " + std::to_string(options.max_pairs) +
                        "; enable spatial bucketing (--bucketing) for flat spaces");
      }
      for (std::size_t i = 0; i < count; ++i) {
        for (std::size_t j = i + 1; j < count; ++j) consider_pair(space, points, i, j, rep);
      }
    }
  }
  rep.delta0 = 0.5 * std::min(rep.min_pairwise_distance, frame_radius);
  return rep;
}

std::size_t count_in_ball(const ModelSpace& space, const PointSet& points, const Point& z,
                          double rho) {
  if (!(rho > 0.0)) throw DomainError("rho must be positive");
  std::size_t count = 0;
  for (const auto& p : points.points()) {
    if (distance(space, z, p) < rho) ++count;
  }
  return count;
}

double density_term(double d, double kappa) {
  if (!(d > 0.0)) return std::numeric_limits<double>::infinity();
  const double e = std::exp(-d / kappa);  // e^{−2u}, u = d/2κ
  // log tanh u = log(1 − e^{−2u}) − log(1 + e^{−2u})
  const double log_tanh = std::log(-std::expm1(-d / kappa)) - std::log1p(e);
  return -2.0 * log_tanh;
}

double seip_density(const ModelSpace& space, const PointSet& points, const Point& x,
                    double cutoff) {
  const double kappa = space.require_kappa("seip_density");
  double sum = 0.0;
  for (const auto& p : points.points()) {
    const double d = distance(space, x, p);
    if (d >= cutoff) sum += density_term(d, kappa);
  }
  return sum;
}

DensitySup sup_density(const ModelSpace& space, const PointSet& points,
                       std::span<const Point> grid, double cutoff, unsigned threads) {
  space.require_kappa("sup_density");
  if (grid.empty()) throw DomainError("sample grid is empty");
  std::vector<double> values(grid.size());
  parallel_for(grid.size(), threads,
               [&](std::size_t i) { values[i] = seip_density(space, points, grid[i], cutoff); });
  DensitySup out{values[0], 0};
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] > out.value) out = {values[i], i};
  }
  return out;
}

namespace {

void lattice_rec(std::size_t axis, std::vector<long long>& idx, long long bound, double spacing,
                 double radius, std::vector<Point>& out) {
  if (axis == idx.size()) {
    double r2 = 0.0;
    std::vector<double> u(idx.size());
    for (std::size_t a = 0; a < idx.size(); ++a) {
      u[a] = spacing * static_cast<double>(idx[a]);
      r2 += u[a] * u[a];
    }
    if (r2 <= radius * radius * (1.0 + 1e-12)) out.push_back(from_real(u));
    return;
  }
  for (long long i = -bound; i <= bound; ++i) {
    idx[axis] = i;
    lattice_rec(axis + 1, idx, bound, spacing, radius, out);
  }
}

}  // namespace

PointSet square_lattice(int n, double spacing, double radius) {
  if (n < 1) throw DomainError("complex dimension must be positive");
  if (!(spacing > 0.0)) throw DomainError("lattice spacing must be positive");
  if (!(radius >= 0.0)) throw DomainError("truncation radius must be non-negative");
  const auto bound = static_cast<long long>(std::floor(radius / spacing * (1.0 + 1e-12)));
  std::vector<long long> idx(2 * static_cast<std::size_t>(n));
  std::vector<Point> pts;
  lattice_rec(0, idx, bound, spacing, radius, pts);
  return PointSet(std::move(pts));
}

PointSet lattice_box(double spacing, double half_width) {
  if (!(spacing > 0.0)) throw DomainError("lattice spacing must be positive");
  const auto bound = static_cast<long long>(std::floor(half_width / spacing * (1.0 + 1e-12)));
  std::vector<Point> pts;
  for (long long i = -bound; i <= bound; ++i) {
    for (long long j = -bound; j <= bound; ++j) {
      pts.push_back(Point{cplx(spacing * static_cast<double>(i), spacing * static_cast<double>(j))});
    }
  }
  return PointSet(std::move(pts));
}

}  // namespace holo_interp
