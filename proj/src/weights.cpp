#include "holo_interp/weights.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <string>

#include "holo_interp/errors.hpp"

namespace holo_interp {

namespace {

cplx monomial_value(const Point& z, const std::vector<int>& exps) {
  cplx v = 1.0;
  for (std::size_t j = 0; j < exps.size(); ++j) {
    for (int e = 0; e < exps[j]; ++e) v *= z[j];
  }
  return v;
}

cplx conj_monomial_value(const Point& z, const std::vector<int>& exps) {
  return std::conj(monomial_value(z, exps));
}

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

void check_exponents(int n, const std::vector<int>& exps) {
  if (static_cast<int>(exps.size()) != n) {
    throw DomainError("monomial has " + std::to_string(exps.size()) +
                      " exponents, expected " + std::to_string(n));
  }
  for (int e : exps) {
    if (e < 0) throw DomainError("negative exponent in polynomial");
  }
}

}  // namespace

Polynomial::Polynomial(int n, std::vector<Monomial> terms) : n_(n), terms_(std::move(terms)) {
  if (n < 1) throw DomainError("complex dimension must be positive");
  for (const auto& t : terms_) check_exponents(n_, t.exponents);
}

Polynomial Polynomial::coordinate(int n, int k, cplx c) {
  std::vector<int> e(n, 0);
  e.at(k) = 1;
  return Polynomial(n, {Monomial{c, e}});
}

cplx Polynomial::operator()(const Point& z) const {
  cplx s = 0.0;
  for (const auto& t : terms_) s += t.coef * monomial_value(z, t.exponents);
  return s;
}

cplx Polynomial::derivative(const Point& z, int k) const {
  cplx s = 0.0;
  for (const auto& t : terms_) {
    const int a = t.exponents[k];
    if (a == 0) continue;
    auto e = t.exponents;
    e[k] -= 1;
    s += t.coef * static_cast<double>(a) * monomial_value(z, e);
  }
  return s;
}

Polynomial Polynomial::shifted(const Point& center) const {
  std::map<std::vector<int>, cplx> acc;
  for (const auto& t : terms_) {
    // Π_j (c_j + h_j)^{a_j}, expanded one variable at a time.
    std::map<std::vector<int>, cplx> partial{{std::vector<int>(n_, 0), t.coef}};
    for (int j = 0; j < n_; ++j) {
      const int a = t.exponents[j];
      if (a == 0) continue;
      std::map<std::vector<int>, cplx> next;
      for (const auto& [e, c] : partial) {
        for (int b = 0; b <= a; ++b) {
          auto e2 = e;
          e2[j] = b;
          next[e2] += c * binomial(a, b) * std::pow(center[j], a - b);
        }
      }
      partial = std::move(next);
    }
    for (const auto& [e, c] : partial) acc[e] += c;
  }
  std::vector<Monomial> out;
  for (const auto& [e, c] : acc) out.push_back({c, e});
  return Polynomial(n_, std::move(out));
}

double Polynomial::oscillation_bound(const Point& center, double radius) const {
  double s = 0.0;
  const Polynomial local = shifted(center);
  for (const auto& t : local.terms()) {
    int deg = 0;
    for (int e : t.exponents) deg += e;
    if (deg == 0) continue;
    s += std::abs(t.coef) * std::pow(radius, deg);
  }
  return s * s;
}

namespace {

struct TermValue {
  const Point& z;

  double operator()(const RealPolyTerm& t) const {
    return (t.coef * monomial_value(z, t.z_exponents) * conj_monomial_value(z, t.zbar_exponents))
        .real();
  }
  double operator()(const BergmanLogTerm& t) const {
    const double s = z.norm_sq() / (t.kappa * t.kappa);
    if (!(s < 1.0)) throw DomainError("Bergman weight evaluated outside the ball");
    return -t.A * std::log1p(-s);
  }
  double operator()(const CosineTerm& t) const {
    cplx l = 0.0;
    for (std::size_t j = 0; j < z.dim(); ++j) l += t.frequency[j] * z[j];
    return t.amplitude * std::cos(l.real());
  }
};

// ∂_k of z^a z̄^b and ∂̄_k of the same monomial.
cplx mono_dz(const Point& z, const RealPolyTerm& t, std::size_t k) {
  const int a = t.z_exponents[k];
  if (a == 0) return 0.0;
  auto e = t.z_exponents;
  e[k] -= 1;
  return static_cast<double>(a) * monomial_value(z, e) * conj_monomial_value(z, t.zbar_exponents);
}

cplx mono_dzbar(const Point& z, const RealPolyTerm& t, std::size_t k) {
  const int b = t.zbar_exponents[k];
  if (b == 0) return 0.0;
  auto e = t.zbar_exponents;
  e[k] -= 1;
  return static_cast<double>(b) * monomial_value(z, t.z_exponents) * conj_monomial_value(z, e);
}

// ∂_j ∂̄_m of z^a z̄^b.
cplx mono_dz_dzbar(const Point& z, const RealPolyTerm& t, std::size_t j, std::size_t m) {
  const int a = t.z_exponents[j];
  const int b = t.zbar_exponents[m];
  if (a == 0 || b == 0) return 0.0;
  auto ea = t.z_exponents;
  auto eb = t.zbar_exponents;
  ea[j] -= 1;
  eb[m] -= 1;
  return static_cast<double>(a) * static_cast<double>(b) * monomial_value(z, ea) *
         conj_monomial_value(z, eb);
}

void validate_term(int n, const DeformationTerm& term) {
  std::visit(
      [n](const auto& t) {
        using T = std::decay_t<decltype(t)>;
        if constexpr (std::is_same_v<T, RealPolyTerm>) {
          check_exponents(n, t.z_exponents);
          check_exponents(n, t.zbar_exponents);
        } else if constexpr (std::is_same_v<T, BergmanLogTerm>) {
          if (!(t.kappa > 0.0)) throw DomainError("Bergman term needs kappa > 0");
        } else {
          if (static_cast<int>(t.frequency.size()) != n) {
            throw DomainError("cosine term frequency has wrong length");
          }
        }
      },
      term);
}

}  // namespace

double Deformation::value(const Point& z) const {
  double s = 0.0;
  for (const auto& t : terms_) s += std::visit(TermValue{z}, t);
  return s;
}

std::vector<cplx> Deformation::gradient_dz(const Point& z) const {
  std::vector<cplx> g(z.dim(), 0.0);
  for (const auto& term : terms_) {
    std::visit(
        [&](const auto& t) {
          using T = std::decay_t<decltype(t)>;
          for (std::size_t k = 0; k < z.dim(); ++k) {
            if constexpr (std::is_same_v<T, RealPolyTerm>) {
              // ∂_k Re(u) = (∂_k u + conj(∂̄_k u))/2
              g[k] += 0.5 * (t.coef * mono_dz(z, t, k) + std::conj(t.coef * mono_dzbar(z, t, k)));
            } else if constexpr (std::is_same_v<T, BergmanLogTerm>) {
              const double k2 = t.kappa * t.kappa;
              const double one_minus_s = 1.0 - z.norm_sq() / k2;
              g[k] += t.A * std::conj(z[k]) / (k2 * one_minus_s);
            } else {
              cplx l = 0.0;
              for (std::size_t j = 0; j < z.dim(); ++j) l += t.frequency[j] * z[j];
              g[k] += -t.amplitude * std::sin(l.real()) * 0.5 * t.frequency[k];
            }
          }
        },
        term);
  }
  return g;
}

Eigen::MatrixXcd Deformation::complex_hessian(const Point& z) const {
  const auto n = static_cast<Eigen::Index>(z.dim());
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(n, n);
  for (const auto& term : terms_) {
    std::visit(
        [&](const auto& t) {
          using T = std::decay_t<decltype(t)>;
          for (Eigen::Index j = 0; j < n; ++j) {
            for (Eigen::Index m = 0; m < n; ++m) {
              const auto uj = static_cast<std::size_t>(j);
              const auto um = static_cast<std::size_t>(m);
              if constexpr (std::is_same_v<T, RealPolyTerm>) {
                h(j, m) += 0.5 * (t.coef * mono_dz_dzbar(z, t, uj, um) +
                                  std::conj(t.coef * mono_dz_dzbar(z, t, um, uj)));
              } else if constexpr (std::is_same_v<T, BergmanLogTerm>) {
                const double k2 = t.kappa * t.kappa;
                const double oms = 1.0 - z.norm_sq() / k2;
                cplx v = std::conj(z[uj]) * z[um] / (k2 * k2 * oms * oms);
                if (j == m) v += 1.0 / (k2 * oms);
                h(j, m) += t.A * v;
              } else {
                cplx l = 0.0;
                for (std::size_t q = 0; q < z.dim(); ++q) l += t.frequency[q] * z[q];
                h(j, m) += -0.25 * t.amplitude * std::cos(l.real()) * t.frequency[uj] *
                           std::conj(t.frequency[um]);
              }
            }
          }
        },
        term);
  }
  return h;
}

HermitianWeight::HermitianWeight(int n, std::vector<Polynomial> sigmas, Deformation deformation,
                                 FrameParameters frame)
    : n_(n), sigmas_(std::move(sigmas)), deformation_(std::move(deformation)), frame_(frame) {
  if (n < 1) throw DomainError("complex dimension must be positive");
  for (const auto& s : sigmas_) {
    if (s.n() != n) throw DomainError("holomorphic part has wrong dimension");
  }
  for (const auto& t : deformation_.terms()) validate_term(n, t);
  if (!(frame_.m2 >= 0.0)) throw DomainError("M2 must be non-negative");
  if (!(frame_.r0 > 0.0)) throw DomainError("frame radius r0 must be positive");
  if (!(frame_.mu > 0.0)) throw DomainError("frame distortion mu must be positive");
  if (frame_.lambda && !(*frame_.lambda >= frame_.mu)) {
    throw DomainError("frame distortion lambda must be >= mu");
  }
}

HermitianWeight HermitianWeight::fock(double alpha, int n) {
  if (!(alpha > 0.0)) throw DomainError("Fock parameter alpha must be positive");
  std::vector<Polynomial> sigmas;
  for (int k = 0; k < n; ++k) sigmas.push_back(Polynomial::coordinate(n, k, std::sqrt(alpha)));
  HermitianWeight w(n, std::move(sigmas), Deformation{}, FrameParameters{});
  w.builtin_ = BuiltinTag{BuiltinWeight::Fock, alpha, 1.0};
  return w;
}

HermitianWeight HermitianWeight::bergman(double A, double kappa, int n, double working_fraction) {
  if (!(A > 0.0)) throw DomainError("Bergman parameter A must be positive");
  if (!(kappa > 0.0)) throw DomainError("kappa must be positive");
  if (!(working_fraction > 0.0 && working_fraction < 1.0)) {
    throw DomainError("working radius fraction must lie in (0, 1)");
  }
  // Real Hessian of −A log(1−s): 2A/(κ²(1−s)) I + 4A x xᵀ/(κ⁴(1−s)²);
  // its largest entry is the radial eigenvalue 2A(1+s)/(κ²(1−s)²).
  const double s = working_fraction * working_fraction;
  FrameParameters frame;
  frame.m2 = 2.0 * A * (1.0 + s) / (kappa * kappa * (1.0 - s) * (1.0 - s));
  frame.mu = 2.0;
  HermitianWeight w(n, {}, Deformation({BergmanLogTerm{A, kappa}}), frame);
  w.builtin_ = BuiltinTag{BuiltinWeight::Bergman, A, kappa};
  return w;
}

HermitianWeight HermitianWeight::with_frame(FrameParameters frame) const {
  HermitianWeight w(n_, sigmas_, deformation_, frame);
  w.builtin_ = builtin_;
  return w;
}

void HermitianWeight::require_dim(const Point& z) const {
  if (static_cast<int>(z.dim()) != n_) {
    throw DomainError("point has dimension " + std::to_string(z.dim()) +
                      ", weight has n = " + std::to_string(n_));
  }
}

double HermitianWeight::value(const Point& z) const {
  require_dim(z);
  double s = deformation_.value(z);
  for (const auto& sigma : sigmas_) s += std::norm(sigma(z));
  return s;
}

Eigen::MatrixXcd HermitianWeight::complex_hessian(const Point& z) const {
  require_dim(z);
  Eigen::MatrixXcd h = deformation_.complex_hessian(z);
  for (const auto& sigma : sigmas_) {
    std::vector<cplx> d(n_);
    for (int k = 0; k < n_; ++k) d[k] = sigma.derivative(z, k);
    for (int j = 0; j < n_; ++j) {
      for (int m = 0; m < n_; ++m) h(j, m) += d[j] * std::conj(d[m]);
    }
  }
  return h;
}

double weight_value(const HermitianWeight& w, const Point& z) { return w.value(z); }

double curvature_eigen_min(const HermitianWeight& w, const ModelSpace& space, const Point& z,
                           CurvatureMethod method) {
  space.require_contains(z);
  if (w.n() != space.n()) throw DomainError("weight and space dimensions differ");
  if (method == CurvatureMethod::Analytic && w.builtin()) {
    const auto& tag = *w.builtin();
    if (tag.kind == BuiltinWeight::Fock && space.is_flat()) return 2.0 * tag.parameter;
    if (tag.kind == BuiltinWeight::Bergman && !space.is_flat() && *space.kappa() == tag.kappa) {
      // Radial and tangential eigenvalues share the factor (A/2 − n)/κ²;
      // tangential directions carry an extra (1 − |z|²/κ²).
      const double k2 = tag.kappa * tag.kappa;
      const double base = (0.5 * tag.parameter - space.n()) / k2;
      if (space.n() == 1) return base;
      const double tangential = base * (1.0 - z.norm_sq() / k2);
      return std::min(base, tangential);
    }
  }
  Eigen::MatrixXcd h;
  if (method == CurvatureMethod::Analytic) {
    h = w.complex_hessian(z);
  } else {
    h = complex_hessian_fd([&w](const Point& x) { return w.value(x); }, z);
  }
  h += ricci_matrix(space, z);
  return relative_eigenvalues(space, z, h)(0);
}

cplx normal_frame_exponent(const HermitianWeight& w, const Point& p, const Point& z) {
  if (static_cast<int>(p.dim()) != w.n() || static_cast<int>(z.dim()) != w.n()) {
    throw DomainError("point dimension does not match the weight");
  }
  cplx e = 0.0;
  const auto grad = w.deformation().gradient_dz(p);
  for (std::size_t k = 0; k < p.dim(); ++k) e += grad[k] * (z[k] - p[k]);
  for (const auto& sigma : w.sigmas()) {
    const cplx sp = sigma(p);
    e += std::conj(sp) * (sigma(z) - sp);
  }
  return e;
}

FrameNormReport frame_norm_bound_check(const HermitianWeight& w, const ModelSpace& space,
                                       const Point& p, std::span<const Point> samples,
                                       double delta0) {
  if (!(delta0 > 0.0)) throw DomainError("delta0 must be positive");
  const auto& fr = w.frame();
  const double two_n = 2.0 * w.n();
  FrameNormReport rep;
  rep.constant = std::exp(0.5 * fr.m2 * two_n * two_n * delta0 * delta0 / (fr.mu * fr.mu));
  const double phi_p = w.value(p);
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const Point& z = samples[i];
    if (distance(space, p, z) > delta0 * (1.0 + 1e-12)) {
      throw DomainError("frame sample " + std::to_string(i) + " lies outside the delta0-ball");
    }
    const cplx e = normal_frame_exponent(w, p, z);
    // ‖f_p(z)‖²/‖a(p)‖² = exp(2 Re E − Φ(z) + Φ(p)); a(p) cancels.
    const double ratio = std::exp(2.0 * e.real() - w.value(z) + phi_p) / rep.constant;
    if (ratio > rep.worst_ratio || i == 0) {
      rep.worst_ratio = ratio;
      rep.worst_index = i;
    }
  }
  rep.passed = rep.worst_ratio <= 1.0 + 1e-12;
  return rep;
}

double mean_value_constant(const HermitianWeight& w, const Point& x, double r) {
  if (!(r > 0.0)) throw DomainError("radius must be positive");
  const auto& fr = w.frame();
  const double half = 0.5 * r;
  double exponent = 0.0;
  for (const auto& sigma : w.sigmas()) exponent += sigma.oscillation_bound(x, half);
  const double two_n = 2.0 * w.n();
  exponent += 0.5 * fr.m2 * two_n * two_n * half * half / (fr.mu * fr.mu);
  return std::exp(exponent) / ball_volume_bound(0.0, half, 2 * w.n());
}

M2SpotCheck spot_check_m2(const HermitianWeight& w, std::span<const Point> centers,
                          double radius, int samples_per_center, unsigned seed) {
  if (!(radius > 0.0)) throw DomainError("radius must be positive");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  const auto& def = w.deformation();
  auto phi_def = [&def](const std::vector<double>& u) { return def.value(from_real(u)); };
  M2SpotCheck out;
  for (const auto& c : centers) {
    const auto base = to_real(c);
    const std::size_t m = base.size();
    for (int s = 0; s < samples_per_center; ++s) {
      std::vector<double> u = base;
      std::vector<double> dir(m);
      double norm = 0.0;
      for (auto& d : dir) {
        d = unit(rng);
        norm += d * d;
      }
      norm = std::sqrt(norm);
      const double scale = radius * std::abs(unit(rng)) / std::max(norm, 1e-300);
      for (std::size_t a = 0; a < m; ++a) u[a] += scale * dir[a];
      const double h = 1e-4 * std::max(1.0, std::sqrt(std::inner_product(u.begin(), u.end(), u.begin(), 0.0)));
      const double f0 = phi_def(u);
      for (std::size_t a = 0; a < m; ++a) {
        for (std::size_t b = a; b < m; ++b) {
          auto shift = [&](double da, double db) {
            auto v = u;
            v[a] += da;
            v[b] += db;
            return phi_def(v);
          };
          double d2;
          if (a == b) {
            d2 = (shift(h, 0.0) - 2.0 * f0 + shift(-h, 0.0)) / (h * h);
          } else {
            d2 = (shift(h, h) - shift(h, -h) - shift(-h, h) + shift(-h, -h)) / (4.0 * h * h);
          }
          out.max_second_derivative = std::max(out.max_second_derivative, std::abs(d2));
        }
      }
    }
  }
  out.passed = out.max_second_derivative <= w.frame().m2 * (1.0 + 1e-4) + 1e-6;
  return out;
}

}  // namespace holo_interp
