#include <cmath>
#include <random>

#include "doctest.h"
#include "holo_interp/construction.hpp"
#include "holo_interp/errors.hpp"

using namespace holo_interp;

namespace {

double bump(double u) { return u > 0.0 ? std::exp(-1.0 / u) : 0.0; }

std::vector<Point> ring(const Point& c, double r, int m, double phase = 0.0) {
  std::vector<Point> out;
  for (int i = 0; i < m; ++i) out.push_back(Point{c[0] + std::polar(r, 2.0 * M_PI * (i + phase) / m)});
  return out;
}

}  // namespace

TEST_CASE("cutoff") {
  CHECK(cutoff(0.0) == 1.0);
  CHECK(cutoff(0.1) == 1.0);
  CHECK(cutoff(0.25) == 1.0);
  CHECK(cutoff(1.0) == 0.0);
  CHECK(cutoff(2.0) == 0.0);
  const double t = 5.0 / 8.0;
  const double expected = bump((1 - t) / 0.75) / (bump((1 - t) / 0.75) + bump((t - 0.25) / 0.75));
  CHECK(cutoff(t) == doctest::Approx(expected).epsilon(1e-15));
  CHECK(cutoff(t) > 0.0);
  CHECK(cutoff(t) < 1.0);
  double prev = 1.0;
  for (double x = 0.0; x <= 1.2; x += 0.001) {
    const double c = cutoff(x);
    CHECK(c <= prev);
    prev = c;
  }
  CHECK_THROWS_AS(cutoff(-0.1), DomainError);
  CHECK(cutoff(0.5, {0.5, 2.0}) == 1.0);
}

TEST_CASE("local sections") {
  const auto flat = ModelSpace::flat(1);
  const auto fock = HermitianWeight::fock(1.0);
  const cplx a(0.7, -1.2);
  const Point p1{cplx(1, 0)};
  CHECK(local_section(flat, fock, p1, a, p1, 0.5) == a);
  for (const auto& z : ring(Point{cplx(0, 0)}, 0.4, 7)) {
    CHECK(local_section(flat, fock, Point{cplx(0, 0)}, a, z, 0.5) == a);
  }
  for (const auto& z : ring(p1, 0.3, 9)) {
    const cplx f = local_section(flat, fock, p1, a, z, 0.5);
    CHECK(std::abs(f - a * std::exp(z[0] - 1.0)) < 1e-14);
    // ‖f_p(z)‖²_h = |a|² e^{−|z−1|²} e^{−1} ≤ ‖a‖²_h = |a|² e^{−1}
    CHECK(std::norm(f) * std::exp(-fock.value(z)) <= std::norm(a) * std::exp(-fock.value(p1)));
  }
  CHECK_THROWS_AS(local_section(flat, fock, p1, a, Point{cplx(2, 0)}, 0.5), DomainError);
}

TEST_CASE("glued extension values") {
  const auto flat = ModelSpace::flat(1);
  const auto fock = HermitianWeight::fock(1.0);
  const PointSet pts({Point{cplx(0, 0)}, Point{cplx(2, 0)}, Point{cplx(0.5, 1.8)}},
                     {cplx(1, 0), cplx(-0.5, 2), cplx(0, 3)});
  const auto ext = GluedExtension::create(flat, fock, pts);
  CHECK(ext.separation() == doctest::Approx(std::sqrt(0.25 + 3.24)));
  CHECK(ext.delta0() == doctest::Approx(0.5 * std::sqrt(0.25 + 3.24)));
  for (std::size_t i = 0; i < pts.size(); ++i) CHECK(ext.evaluate(pts[i]) == pts.values()[i]);
  CHECK(ext.evaluate(Point{cplx(10, 10)}) == cplx(0, 0));
  CHECK(ext.evaluate(Point{cplx(-1.0, 0)}) == cplx(0, 0));

  const Point z{cplx(2.0 + 0.8 * ext.delta0(), 0.0)};
  const double chi = cutoff(0.64);
  const cplx expected = local_section(flat, fock, pts[1], pts.values()[1], z, ext.delta0()) * chi;
  CHECK(std::abs(ext.evaluate(z) - expected) < 1e-13 * std::abs(expected));
  CHECK(ext.cutoff_factor(1, z) == doctest::Approx(chi).epsilon(1e-13));

  const auto twice = ext.with_values({cplx(2, 0), cplx(-1, 4), cplx(0, 6)});
  CHECK(twice.evaluate(z) == 2.0 * ext.evaluate(z));

  CHECK_THROWS_AS(GluedExtension::create(flat, fock, pts, 1.0), DomainError);
  CHECK_THROWS_AS(GluedExtension::create(flat, fock, PointSet({Point{cplx(0, 0)}})), DomainError);
  FrameParameters small_frame;
  small_frame.r0 = 0.5;
  CHECK_THROWS_AS(GluedExtension::create(flat, fock.with_frame(small_frame), pts, 0.5), DomainError);
  CHECK(GluedExtension::create(flat, fock.with_frame(small_frame), pts).delta0() == 0.25);

  const auto single = GluedExtension::create(flat, fock, PointSet({Point{cplx(0, 0)}}, {cplx(1, 0)}));
  CHECK(single.delta0() == 1.0);
}

TEST_CASE("dbar of the glued extension") {
  const auto flat = ModelSpace::flat(1);
  const auto fock = HermitianWeight::fock(1.0);
  const PointSet pts({Point{cplx(0, 0)}, Point{cplx(2, 0)}}, {cplx(1, 0), cplx(0, 1)});
  const auto ext = GluedExtension::create(flat, fock, pts);
  const double d0 = ext.delta0();
  for (double r : {0.0, 0.1 * d0, 0.45 * d0}) {
    for (const auto& z : ring(pts[1], r, 5, 0.3)) CHECK(std::abs(ext.dbar(z)[0]) <= 1e-8);
  }
  for (const auto& z : ring(pts[1], 3.0 * d0, 5)) CHECK(ext.dbar(z)[0] == cplx(0, 0));

  // Annulus: against the product rule with the cutoff differentiated in closed form.
  for (double r : {0.6 * d0, 0.75 * d0, 0.9 * d0}) {
    for (const auto& z : ring(pts[1], r, 6, 0.1)) {
      const cplx h = z[0] - pts[1][0];
      const double t = std::norm(h) / (d0 * d0);
      const double u1 = (1 - t) / 0.75, u2 = (t - 0.25) / 0.75;
      const double s1 = bump(u1), s2 = bump(u2);
      const double ds1 = -s1 / (u1 * u1) / 0.75, ds2 = s2 / (u2 * u2) / 0.75;
      const double dchi_dt = (ds1 * (s1 + s2) - s1 * (ds1 + ds2)) / ((s1 + s2) * (s1 + s2));
      const cplx dt_dzbar = h / (d0 * d0);
      const cplx expected = local_section(flat, fock, pts[1], pts.values()[1], z, d0) * dchi_dt * dt_dzbar;
      CHECK(std::abs(ext.dbar(z)[0] - expected) <= 1e-7 * std::max(1.0, std::abs(expected)));
    }
  }
  CHECK(ext.dbar_norm_sq(Point{cplx(2.0 + 0.7 * d0, 0)}) > 0.0);
}

TEST_CASE("auxiliary weight") {
  const auto flat = ModelSpace::flat(1);
  const Point q{cplx(0.5, -0.5)};
  const double rho = 1.3;
  const AuxiliaryWeight v(flat, PointSet({q}), rho);
  CHECK(std::abs(v.value(Point{q[0] + rho})) < 1e-15);
  CHECK(v.value(Point{q[0] + rho / std::exp(0.5)}) == doctest::Approx(-1.0 / std::exp(1.0)).epsilon(1e-14));
  CHECK(std::isinf(v.value(q)));
  CHECK(v.value(q) < 0.0);
  CHECK(v.value(Point{q[0] + 1e-8}) < -30.0);
  CHECK(auxiliary_weight_value(v, Point{cplx(5, 5)}) == 0.0);

  // Pole of order 2n in n = 2: v ≈ 2 log|z − q|² near q.
  const auto c2 = ModelSpace::flat(2);
  const AuxiliaryWeight v2(c2, PointSet({Point{cplx(0, 0), cplx(0, 0)}}), 1.0);
  const double a = v2.value(Point{cplx(1e-3, 0), cplx(0, 0)});
  const double b = v2.value(Point{cplx(1e-4, 0), cplx(0, 0)});
  CHECK(a - b == doctest::Approx(2.0 * std::log(100.0)).epsilon(1e-6));

  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  const PointSet lam({Point{cplx(0, 0)}, Point{cplx(1, 1)}, Point{cplx(-1.5, 0.3)}});
  const AuxiliaryWeight vv(flat, lam, 1.7);
  for (int i = 0; i < 2000; ++i) CHECK(vv.value(Point{cplx(u(rng), u(rng))}) <= 0.0);
  CHECK_THROWS_AS(AuxiliaryWeight(flat, lam, 0.0), DomainError);
}

TEST_CASE("seip weight") {
  const auto disk = ModelSpace::hyperbolic_ball(1, 1.0);
  const Point x{cplx(0, 0)};
  CHECK(seip_weight_value(disk, PointSet(), x) == 0.0);
  CHECK(seip_weight_value(disk, PointSet({Point{cplx(0.5, 0)}}), x) ==
        doctest::Approx(std::log(0.25)).epsilon(1e-14));
  CHECK(std::isinf(seip_weight_value(disk, PointSet({x}), x)));
  CHECK(seip_weight_value(disk, PointSet({Point{cplx(1e-9, 0)}}), x) < -35.0);

  const PointSet far({Point{cplx(0.5, 0)}, Point{cplx(0.99, 0)}});
  SeipWeightOptions guard;
  guard.tail_radius = 2.0;
  guard.tail_tolerance = 1e-6;
  CHECK_THROWS_AS(seip_weight_value(disk, far, x, guard), NumericalGuardError);
  guard.tail_tolerance = 0.5;
  CHECK(seip_weight_value(disk, far, x, guard) < 0.0);
  CHECK_THROWS_AS(seip_weight_value(ModelSpace::flat(1), PointSet(), x), UnsupportedSpaceError);
}

TEST_CASE("dbar energy") {
  const auto flat = ModelSpace::flat(1);
  const auto fock = HermitianWeight::fock(1.0);
  const PointSet one({Point{cplx(0.3, 0.2)}}, {cplx(1.5, -0.5)});
  const auto ext = GluedExtension::create(flat, fock, one, 0.8);
  const AuxiliaryWeight aux(flat, PointSet(one.points()), 1.0);
  const auto e = dbar_energy(ext, aux);
  CHECK(e.fine > 0.0);
  CHECK(std::isfinite(e.fine));
  CHECK(e.relative_drift <= 0.05);
  CHECK(e.v_min_on_annuli >= e.v_lower_bound);
  CHECK(e.per_node.size() == 1);

  const auto doubled = dbar_energy(ext.with_values({cplx(3.0, -1.0)}), aux);
  CHECK(doubled.coarse == 4.0 * e.coarse);
  CHECK(doubled.fine == 4.0 * e.fine);

  QuadratureSpec q2;
  q2.threads = 3;
  const auto threaded = dbar_energy(ext, aux, q2);
  CHECK(threaded.fine == e.fine);

  const auto disk = ModelSpace::hyperbolic_ball(1, 1.0);
  const auto b = HermitianWeight::bergman(3.0, 1.0);
  const PointSet dpts({Point{cplx(0, 0)}, Point{cplx(0.6, 0)}}, {cplx(1, 0), cplx(1, 1)});
  const auto dext = GluedExtension::create(disk, b, dpts);
  const auto de = dbar_energy(dext, AuxiliaryWeight(disk, PointSet(dpts.points()), 0.8));
  CHECK(de.fine > 0.0);
  CHECK(de.relative_drift <= 0.05);

  const auto norm = extension_norm_sq(ext);
  CHECK(norm.fine > 0.0);
  CHECK(std::abs(norm.fine - norm.coarse) <= 0.05 * norm.fine);
}

TEST_CASE("auxiliary curvature check") {
  const auto flat = ModelSpace::flat(1);
  const double rho = 1.5;
  const Point q{cplx(0, 0)};
  const AuxiliaryWeight v(flat, PointSet({q}), rho);
  // Inside: i∂∂̄(−|z|²/ρ²) = −(2/ρ²)ω and log|z|² is pluriharmonic.
  for (const auto& z : ring(q, 0.7, 5)) {
    const auto H = complex_hessian_fd([&](const Point& x) { return v.value(x); }, z);
    CHECK(relative_eigenvalues(flat, z, H)(0) == doctest::Approx(-2.0 / (rho * rho)).epsilon(1e-6));
  }
  for (const auto& z : ring(q, 2.5, 5)) {
    const auto H = complex_hessian_fd([&](const Point& x) { return v.value(x); }, z);
    CHECK(std::abs(relative_eigenvalues(flat, z, H)(0)) < 1e-12);
  }
  std::vector<Point> grid;
  for (int i = -12; i <= 12; ++i) {
    for (int j = -12; j <= 12; ++j) grid.push_back(Point{cplx(0.2 * i + 0.01, 0.2 * j)});
  }
  const auto rep = auxiliary_curvature_check(v, grid);
  CHECK(rep.passed);
  CHECK(rep.worst_slack >= -1e-4);

  const auto disk = ModelSpace::hyperbolic_ball(1, 1.0);
  const AuxiliaryWeight vh(disk, PointSet({Point{cplx(0.2, 0.1)}}), 0.9);
  std::vector<Point> dgrid;
  for (int i = -9; i <= 9; ++i) {
    for (int j = -9; j <= 9; ++j) {
      const cplx z(0.1 * i + 0.003, 0.1 * j);
      if (std::abs(z) < 0.95) dgrid.push_back(Point{z});
    }
  }
  const auto hrep = auxiliary_curvature_check(vh, dgrid);
  CHECK(hrep.passed);
  CHECK(hrep.skipped_near_pole >= 1);

  CHECK_THROWS_AS(auxiliary_curvature_check(v, std::vector<Point>{q}), DomainError);
}
