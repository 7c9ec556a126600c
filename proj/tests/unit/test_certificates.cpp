#include <cmath>
#include <random>

#include "doctest.h"
#include "holo_interp/certificates.hpp"
#include "holo_interp/errors.hpp"

using namespace holo_interp;

namespace {

std::vector<Point> box_grid(double half, int m) {
  std::vector<Point> out;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      out.push_back(Point{cplx(-half + 2 * half * i / (m - 1), -half + 2 * half * j / (m - 1))});
    }
  }
  return out;
}

std::vector<Point> disk_grid(double radius, int rings, int per_ring) {
  std::vector<Point> out{Point{cplx(0, 0)}};
  for (int r = 1; r <= rings; ++r) {
    for (int a = 0; a < per_ring; ++a) {
      out.push_back(Point{std::polar(radius * r / rings, 2 * M_PI * (a + 0.5 * r) / per_ring)});
    }
  }
  return out;
}

}  // namespace

TEST_CASE("BOS certificate examples") {
  const auto fock = HermitianWeight::fock(1.0);
  const auto grid = box_grid(4.0, 17);

  const auto empty = bos_certificate(fock, PointSet(), 1.0, 3.0, grid);
  CHECK(empty.passed);
  CHECK(empty.worst_margin == doctest::Approx(1.0).epsilon(1e-12));
  for (const auto& s : empty.per_sample) CHECK(s.margin == doctest::Approx(1.0).epsilon(1e-12));

  const auto dense = bos_certificate(fock, lattice_box(0.1, 3.0), 1.0, 0.1, grid);
  CHECK_FALSE(dense.passed);
  CHECK(dense.worst_margin < -300.0);

  const auto sparse = bos_certificate(fock, lattice_box(5.0, 10.0), 2.0, 3.0, grid);
  CHECK(sparse.passed);
  CHECK(sparse.worst_margin == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(sparse.criterion == Criterion::Bos);
  CHECK(sparse.warnings.empty());

  CHECK_THROWS_AS(bos_certificate(HermitianWeight::fock(1.0, 2), PointSet(), 1.0, 1.0,
                                  std::vector<Point>{Point{cplx(0, 0), cplx(0, 0)}}),
                  UnsupportedSpaceError);
  CHECK_THROWS_AS(bos_certificate(fock, PointSet(), 1.0, 1.0, {}), DomainError);
  CHECK_THROWS_AS(bos_certificate(fock, PointSet(), 0.0, 1.0, grid), DomainError);
}

TEST_CASE("Theorem 1 certificate examples") {
  const auto fock = HermitianWeight::fock(1.0);
  const auto flat = ModelSpace::flat(1);
  const auto grid = box_grid(4.0, 17);

  for (double eps : {0.5, 1.0, 2.0}) {
    CHECK(theorem1_certificate(fock, flat, PointSet(), 1.0, eps, grid).passed);
  }
  CHECK_FALSE(theorem1_certificate(fock, flat, PointSet(), 1.0, 2.01, grid).passed);

  const auto lattice = lattice_box(5.0, 10.0);
  const auto k0 = theorem1_certificate(fock, flat, lattice, 2.0, 1.0, grid);
  CHECK(k0.passed);
  CHECK(*k0.comparison_factor == 2.0);
  CHECK(k0.worst_margin == doctest::Approx(2.0 - 1.5).epsilon(1e-14));

  Theorem1Options k1;
  k1.k_bound = 1.0;
  const auto r1 = theorem1_certificate(fock, flat, lattice, 2.0, 1.0, grid, k1);
  const double required = 0.25 * (1.0 + 2.0 / std::tanh(2.0)) + 1.0;  // ≈ 1.7687
  CHECK(required == doctest::Approx(1.76865).epsilon(1e-5));
  CHECK(r1.passed);
  CHECK(r1.worst_margin == doctest::Approx(2.0 - required).epsilon(1e-13));
  CHECK(r1.worst_margin < k0.worst_margin);

  double prev = k0.worst_margin;
  for (double k : {0.25, 0.5, 1.0, 2.0, 4.0}) {
    Theorem1Options o;
    o.k_bound = k;
    const double m = theorem1_certificate(fock, flat, lattice, 2.0, 1.0, grid, o).worst_margin;
    CHECK(m < prev);
    prev = m;
  }

  Theorem1Options below;
  below.k_bound = 0.5;
  CHECK_THROWS_AS(theorem1_certificate(HermitianWeight::bergman(3.0, 1.0), ModelSpace::hyperbolic_ball(1, 1.0),
                                       PointSet(), 0.5, 0.1, std::vector<Point>{Point{cplx(0, 0)}}, below),
                  DomainError);
}

TEST_CASE("Theorem 1 with k = 0 relates to BOS") {
  // With ΔΦ = 4∂∂̄Φ and λ_min = 2∂∂̄Φ on flat ℂ: 2·m_T1 = m_BOS − 3·count/ρ² when ε_BOS = 2ε_T1.
  const auto flat = ModelSpace::flat(1);
  const auto grid = box_grid(3.0, 13);
  for (double alpha : {0.8, 1.0, 2.5}) {
    const auto w = HermitianWeight::fock(alpha);
    for (double s : {1.5, 2.0, 4.0}) {
      const auto lattice = lattice_box(s, 6.0);
      const double rho = 1.3;
      const double eps = 0.2;
      const auto t1 = theorem1_certificate(w, flat, lattice, rho, eps, grid);
      const auto bos = bos_certificate(w, lattice, rho, 2 * eps, grid);
      for (std::size_t i = 0; i < grid.size(); ++i) {
        const double count = count_in_ball(flat, lattice, grid[i], rho);
        CHECK(2.0 * t1.per_sample[i].margin ==
              doctest::Approx(bos.per_sample[i].margin - 3.0 * count / (rho * rho)).epsilon(1e-13));
        if (count == 0) CHECK(2.0 * t1.per_sample[i].margin == doctest::Approx(bos.per_sample[i].margin));
      }
    }
  }
  // Away from Λ the decisions coincide exactly.
  const auto w = HermitianWeight::fock(1.0);
  const std::vector<Point> far{Point{cplx(20, 20)}, Point{cplx(-30, 5)}};
  for (double eps : {1.0, 1.9, 2.1}) {
    CHECK(theorem1_certificate(w, flat, lattice_box(1.0, 3.0), 1.0, eps, far).passed ==
          bos_certificate(w, lattice_box(1.0, 3.0), 1.0, 2 * eps, far).passed);
  }
}

TEST_CASE("certificates are monotone in the point set and in epsilon") {
  const auto flat = ModelSpace::flat(1);
  const auto w = HermitianWeight::fock(1.0);
  const auto grid = box_grid(3.0, 9);
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(-4.0, 4.0);
  std::vector<Point> pts;
  bool was_failing = false;
  for (int step = 0; step < 40; ++step) {
    pts.push_back(Point{cplx(u(rng), u(rng))});
    const PointSet lam(pts);
    const bool pass = theorem1_certificate(w, flat, lam, 2.0, 0.5, grid).passed;
    if (was_failing) CHECK_FALSE(pass);
    was_failing = was_failing || !pass;
    if (!pass) CHECK_FALSE(theorem1_certificate(w, flat, lam, 2.0, 0.6, grid).passed);
  }
  CHECK(was_failing);

  const auto lattice = lattice_box(3.0, 6.0);
  bool failed = false;
  for (double eps = 0.05; eps < 2.5; eps += 0.05) {
    const auto r = theorem1_certificate(w, flat, lattice, 2.0, eps, grid);
    if (failed) CHECK_FALSE(r.passed);
    failed = failed || !r.passed;
  }
  CHECK(failed);
}

TEST_CASE("Theorem 1 margins are independent of the thread count") {
  const auto flat = ModelSpace::flat(1);
  const auto w = HermitianWeight::fock(1.0);
  const auto grid = box_grid(3.0, 21);
  Theorem1Options one, four;
  four.threads = 4;
  const auto a = theorem1_certificate(w, flat, lattice_box(2.0, 6.0), 2.5, 0.05, grid, one);
  const auto b = theorem1_certificate(w, flat, lattice_box(2.0, 6.0), 2.5, 0.05, grid, four);
  REQUIRE(a.per_sample.size() == b.per_sample.size());
  for (std::size_t i = 0; i < a.per_sample.size(); ++i) CHECK(a.per_sample[i].margin == b.per_sample[i].margin);
  CHECK(a.worst_index == b.worst_index);
}

TEST_CASE("Theorem 1 homogeneity on Fock fixtures") {
  // Coordinates and ρ scale by √t, α by 1/t: margins scale by 1/t.
  const auto flat = ModelSpace::flat(1);
  const auto grid = box_grid(2.0, 9);
  for (double t : {4.0, 0.25, 2.25}) {
    const double r = std::sqrt(t);
    const auto base_lattice = lattice_box(1.5, 6.0);
    std::vector<Point> scaled_pts, scaled_grid;
    for (const auto& p : base_lattice.points()) scaled_pts.push_back(r * p);
    for (const auto& z : grid) scaled_grid.push_back(r * z);
    const double rho = 1.75;
    const double eps = 0.1;
    const auto base = theorem1_certificate(HermitianWeight::fock(1.0), flat, base_lattice, rho, eps, grid);
    const auto scaled = theorem1_certificate(HermitianWeight::fock(1.0 / t), flat, PointSet(scaled_pts),
                                             r * rho, eps / t, scaled_grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      CHECK(std::abs(t * scaled.per_sample[i].margin - base.per_sample[i].margin) <= 1e-12);
    }
    CHECK(base.passed == scaled.passed);
  }
}

TEST_CASE("Theorem 2 certificate") {
  const auto disk = ModelSpace::hyperbolic_ball(1, 1.0);
  const auto grid = disk_grid(0.9, 6, 12);
  const auto b3 = HermitianWeight::bergman(3.0, 1.0);

  const auto empty = theorem2_certificate(b3, disk, PointSet(), 0.1, grid);
  CHECK(empty.passed);
  REQUIRE(empty.density.has_value());
  CHECK(empty.density->grid_sup == 0.0);
  CHECK(empty.density->curvature_margin == doctest::Approx(0.4));
  CHECK(empty.worst_margin == doctest::Approx(0.4));
  CHECK_FALSE(empty.warnings.empty());

  // A below the curvature floor A = 2n fails on the ε clause.
  const auto low = theorem2_certificate(HermitianWeight::bergman(1.8, 1.0), disk, PointSet(), 0.01, grid);
  CHECK_FALSE(low.passed);
  CHECK(low.density->curvature_margin < 0.0);
  const auto fd_margin = curvature_eigen_min(HermitianWeight::bergman(1.8, 1.0), disk, grid[5],
                                             CurvatureMethod::FiniteDifference) - 0.01;
  CHECK(low.per_sample[5].margin == doctest::Approx(fd_margin).epsilon(1e-6));

  // Density excess fails through the threshold.
  std::vector<Point> nodes;
  for (int i = -8; i <= 8; ++i) {
    for (int j = -8; j <= 8; ++j) {
      const cplx z(0.1 * i, 0.1 * j);
      if (std::abs(z) < 0.97) nodes.push_back(Point{z});
    }
  }
  const PointSet dense(nodes);
  Theorem2Options strict;
  strict.density_threshold = 1.0;
  const auto excess = theorem2_certificate(b3, disk, dense, 0.1, grid, strict);
  CHECK_FALSE(excess.passed);
  CHECK(excess.worst_margin == doctest::Approx(1.0 - excess.density->grid_sup));
  Theorem2Options loose;
  loose.density_threshold = 1e6;
  CHECK(theorem2_certificate(b3, disk, dense, 0.1, grid, loose).passed);

  CHECK_THROWS_AS(theorem2_certificate(HermitianWeight::fock(1.0), ModelSpace::flat(1), PointSet(), 0.1,
                                       std::vector<Point>{Point{cplx(0, 0)}}),
                  UnsupportedSpaceError);
}

TEST_CASE("density terms shrink as kappa shrinks at fixed coordinates") {
  // tanh(d/2κ) = |x − p|κ/|κ² − x p̄| grows as κ decreases, so each −log tanh² term decreases.
  const std::vector<Point> nodes{Point{cplx(0.9, 0)}, Point{cplx(-0.6, 0.6)}, Point{cplx(0.1, -0.95)}};
  const PointSet lam(nodes);
  const auto grid = disk_grid(0.5, 4, 8);
  const auto big = ModelSpace::hyperbolic_ball(1, 2.0);
  const auto small = ModelSpace::hyperbolic_ball(1, 1.0);
  for (const auto& x : grid) {
    for (const auto& p : nodes) {
      const double t_small = std::abs(x[0] - p[0]) / std::abs(1.0 - x[0] * std::conj(p[0]));
      CHECK(std::tanh(distance(small, x, p) / 2.0) == doctest::Approx(t_small).epsilon(1e-12));
      CHECK(density_term(distance(small, x, p), 1.0) < density_term(distance(big, x, p), 2.0));
    }
  }
  Theorem2Options o;
  o.cutoff = 0.0;
  const double sup_big =
      theorem2_certificate(HermitianWeight::bergman(6.0, 2.0), big, lam, 0.1, grid, o).density->grid_sup;
  const double sup_small =
      theorem2_certificate(HermitianWeight::bergman(6.0, 1.0), small, lam, 0.1, grid, o).density->grid_sup;
  CHECK(sup_small <= sup_big);
}
