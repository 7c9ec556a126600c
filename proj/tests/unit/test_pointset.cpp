#include <cmath>
#include <random>

#include "doctest.h"
#include "holo_interp/errors.hpp"
#include "holo_interp/pointset.hpp"

using namespace holo_interp;

namespace {

PointSet random_disk_set(std::size_t m, double radius, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<Point> pts;
  while (pts.size() < m) {
    const cplx z(u(rng), u(rng));
    if (std::abs(z) < 1.0) pts.push_back(Point{z * radius});
  }
  return PointSet(std::move(pts));
}

}  // namespace

TEST_CASE("point set validation") {
  CHECK_THROWS_AS(PointSet({Point{cplx(1, 0)}, Point{cplx(1, 0)}}), DomainError);
  CHECK_THROWS_AS(PointSet({Point{cplx(1, 0)}, Point{cplx(1, 0), cplx(0, 0)}}), DomainError);
  CHECK_THROWS_AS(PointSet({Point{cplx(1, 0)}}, {cplx(1, 0), cplx(2, 0)}), DomainError);
  const PointSet plain({Point{cplx(1, 0)}});
  CHECK_FALSE(plain.has_values());
  CHECK_THROWS_AS(plain.values(), DomainError);
  const auto valued = plain.with_values({cplx(2, 1)});
  CHECK(valued.values()[0] == cplx(2, 1));
  const PointSet other({Point{cplx(0, 1)}}, {cplx(3, 0)});
  CHECK(valued.merged(other).size() == 2);
  CHECK(valued.merged(other).has_values());
  CHECK_FALSE(plain.merged(other).has_values());
  CHECK_THROWS_AS(plain.merged(plain), DomainError);
}

TEST_CASE("separation examples") {
  const auto flat = ModelSpace::flat(1);
  for (double s : {0.5, 1.0, 1.5}) {
    const auto rep = separation(flat, lattice_box(s, 3.0));
    CHECK(rep.min_pairwise_distance == doctest::Approx(s).epsilon(1e-15));
    CHECK(rep.delta0 == doctest::Approx(s / 2));
    CHECK(rep.arg_pair.has_value());
  }
  const auto single = separation(flat, PointSet({Point{cplx(2, 2)}}));
  CHECK(std::isinf(single.min_pairwise_distance));
  CHECK_FALSE(single.arg_pair.has_value());
  CHECK(separation(flat, PointSet({Point{cplx(2, 2)}}), 3.0).delta0 == 1.5);

  const auto disk = ModelSpace::hyperbolic_ball(1, 1.0);
  const Point a{cplx(0, 0)};
  const Point b{cplx(std::tanh(0.35), 0)};
  const auto rep = separation(disk, PointSet({a, b}));
  CHECK(rep.min_pairwise_distance == doctest::Approx(0.7).epsilon(1e-14));
  CHECK(rep.delta0 == doctest::Approx(0.35).epsilon(1e-14));
  CHECK(separation(disk, PointSet({a, b}), 0.4).delta0 == doctest::Approx(0.2));
}

TEST_CASE("separation guard and bucketing") {
  const auto flat = ModelSpace::flat(1);
  const auto pts = random_disk_set(600, 5.0, 3);
  SeparationOptions tight;
  tight.max_pairs = 1000;
  CHECK_THROWS_AS(separation(flat, pts, INFINITY, tight), SizeError);

  const auto brute = separation(flat, pts);
  SeparationOptions bucket;
  bucket.bucketing = true;
  bucket.max_pairs = 10;
  const auto fast = separation(flat, pts, INFINITY, bucket);
  CHECK(fast.min_pairwise_distance == brute.min_pairwise_distance);
  CHECK(fast.arg_pair == brute.arg_pair);

  // Coarse clusters force the bucket size to grow.
  const PointSet far({Point{cplx(0, 0)}, Point{cplx(100, 0)}, Point{cplx(0, 250)}});
  CHECK(separation(flat, far, INFINITY, bucket).min_pairwise_distance == doctest::Approx(100.0));

  const auto c2 = ModelSpace::flat(2);
  const PointSet pts2({Point{cplx(0, 0), cplx(0, 0)}, Point{cplx(0.3, 0), cplx(0, 0.4)},
                       Point{cplx(2, 0), cplx(1, 1)}});
  CHECK(separation(c2, pts2, INFINITY, bucket).min_pairwise_distance == doctest::Approx(0.5));
}

TEST_CASE("count in ball") {
  const auto flat = ModelSpace::flat(1);
  const auto lattice = lattice_box(1.0, 2.0);
  CHECK(lattice.size() == 25);
  CHECK(count_in_ball(flat, lattice, Point{cplx(0, 0)}, 1.5) == 9);
  // Open balls: the four neighbours at distance exactly 1 are excluded.
  CHECK(count_in_ball(flat, lattice, Point{cplx(0, 0)}, 1.0) == 1);
  CHECK(count_in_ball(flat, PointSet(), Point{cplx(0, 0)}, 1.0) == 0);
  CHECK(count_in_ball(flat, lattice, Point{cplx(1, 1)}, 1e-9) == 1);
  CHECK_THROWS_AS(count_in_ball(flat, lattice, Point{cplx(0, 0)}, 0.0), DomainError);

  // Nondecreasing in ρ, and |Λ| beyond the diameter.
  const auto pts = random_disk_set(80, 3.0, 5);
  std::size_t prev = 0;
  for (double rho = 0.05; rho < 7.0; rho += 0.05) {
    const auto c = count_in_ball(flat, pts, Point{cplx(0.4, -0.2)}, rho);
    CHECK(c >= prev);
    prev = c;
  }
  CHECK(prev == pts.size());
}

TEST_CASE("count homogeneity on rational lattices") {
  const auto flat = ModelSpace::flat(1);
  for (double t : {4.0, 0.25, 2.25}) {
    const double r = std::sqrt(t);
    const auto base = lattice_box(0.5, 3.0);
    std::vector<Point> scaled;
    for (const auto& p : base.points()) scaled.push_back(r * p);
    const PointSet big(std::move(scaled));
    for (double rho : {0.75, 1.25, 2.0}) {
      for (const auto& z : {Point{cplx(0.125, 0.375)}, Point{cplx(-1.0, 0.25)}}) {
        const double lhs = count_in_ball(flat, base, z, rho) / (rho * rho);
        const double rhs = t * count_in_ball(flat, big, r * z, r * rho) / ((r * rho) * (r * rho));
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-15));
      }
    }
  }
}

TEST_CASE("density examples") {
  const auto disk = ModelSpace::hyperbolic_ball(1, 1.0);
  const Point x{cplx(0, 0)};
  CHECK(seip_density(disk, PointSet(), x) == 0.0);
  CHECK(seip_density(disk, PointSet({Point{cplx(std::tanh(0.25), 0)}}), x) == 0.0);
  CHECK(seip_density(disk, PointSet({Point{cplx(0.5, 0)}}), x) ==
        doctest::Approx(std::log(4.0)).epsilon(1e-14));
  CHECK_THROWS_AS(seip_density(ModelSpace::flat(1), PointSet(), x), UnsupportedSpaceError);
  // The cutoff override admits nearer nodes.
  CHECK(seip_density(disk, PointSet({Point{cplx(std::tanh(0.25), 0)}}), x, 0.1) ==
        doctest::Approx(density_term(0.5, 1.0)));
}

TEST_CASE("density term") {
  double prev = INFINITY;
  for (double d = 0.01; d < 60.0; d *= 1.1) {
    const double v = density_term(d, 1.0);
    CHECK(v < prev);
    CHECK(v > 0.0);
    prev = v;
  }
  // Tail: −log tanh²(u) ≈ 4e^{−2u}
  CHECK(density_term(40.0, 1.0) == doctest::Approx(4.0 * std::exp(-40.0)).epsilon(1e-12));
  CHECK(density_term(0.3, 0.5) == doctest::Approx(-2.0 * std::log(std::tanh(0.3))).epsilon(1e-14));
}

TEST_CASE("density additivity and sup") {
  const auto disk = ModelSpace::hyperbolic_ball(1, 1.0);
  const PointSet a({Point{cplx(0.9, 0)}, Point{cplx(0, 0.8)}, Point{cplx(-0.7, -0.3)}});
  const PointSet b({Point{cplx(0.2, -0.9)}, Point{cplx(-0.5, 0.6)}});
  std::vector<Point> grid;
  for (int i = -4; i <= 4; ++i) {
    for (int j = -4; j <= 4; ++j) {
      if (i * i + j * j <= 16) grid.push_back(Point{cplx(0.2 * i, 0.2 * j)});
    }
  }
  for (const auto& x : grid) {
    CHECK(seip_density(disk, a.merged(b), x) ==
          doctest::Approx(seip_density(disk, a, x) + seip_density(disk, b, x)).epsilon(1e-14));
  }
  CHECK(sup_density(disk, PointSet(), grid).value == 0.0);
  CHECK(sup_density(disk, PointSet(), grid).argmax == 0);
  CHECK_THROWS_AS(sup_density(disk, a, std::vector<Point>{}), DomainError);

  const PointSet single({Point{cplx(0.5, 0)}});
  const std::vector<Point> far{Point{cplx(0, 0)}};
  CHECK(sup_density(disk, single, far).value == doctest::Approx(std::log(4.0)));

  const auto serial = sup_density(disk, a, grid, 1.0, 1);
  const auto threaded = sup_density(disk, a, grid, 1.0, 4);
  CHECK(serial.value == threaded.value);
  CHECK(serial.argmax == threaded.argmax);
}

TEST_CASE("density sup is nondecreasing under grid refinement") {
  const auto disk = ModelSpace::hyperbolic_ball(1, 1.0);
  std::vector<Point> nodes;
  for (int i = -6; i <= 6; ++i) {
    for (int j = -6; j <= 6; ++j) {
      const cplx z(0.15 * i, 0.15 * j);
      if (std::abs(z) < 0.95) nodes.push_back(Point{z});
    }
  }
  const PointSet lattice(std::move(nodes));
  double prev = -1.0;
  // Nested grids: step 0.4/2^r on [−0.8, 0.8]².
  for (int r = 0; r < 4; ++r) {
    const int m = 4 << r;
    std::vector<Point> grid;
    for (int i = -m; i <= m; ++i) {
      for (int j = -m; j <= m; ++j) {
        const cplx z(0.8 * i / m, 0.8 * j / m);
        if (std::abs(z) < 0.95) grid.push_back(Point{z});
      }
    }
    const double v = sup_density(disk, lattice, grid).value;
    CHECK(v >= prev);
    prev = v;
  }
}

TEST_CASE("lattices") {
  CHECK(square_lattice(1, 2.0, 4.0).size() == 13);
  CHECK(square_lattice(1, 7.0, 6.0).size() == 1);
  CHECK(square_lattice(2, 1.0, 1.0).size() == 9);
  CHECK(square_lattice(1, 1.5, 6.0).size() == 49);
  CHECK(lattice_box(2.0, 4.0).size() == 25);
  CHECK(lattice_box(2.0, 4.0)[0] == Point{cplx(-4, -4)});
  CHECK_THROWS_AS(square_lattice(1, 0.0, 1.0), DomainError);
}
