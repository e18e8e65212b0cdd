#include <doctest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/hypergeometric_pFq.hpp>
#include <boost/math/special_functions/jacobi.hpp>
#include <cmath>
#include <numbers>

#include "adskg/errors.hpp"
#include "adskg/harmonics.hpp"
#include "adskg/modes.hpp"

using namespace adskg;
using doctest::Approx;

namespace {
double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

// Direct hypergeometric oracle, independent of the library series.
double oracle_radial(RadialKind kind, double w, int l, double rho, const AdsParams& p) {
  const double s = std::sin(rho), c = std::cos(rho);
  const double a = (l + p.delta_plus - w) / 2, b = (l + p.delta_plus + w) / 2;
  const double g = l + p.d / 2.0;
  using boost::math::hypergeometric_pFq;
  switch (kind) {
    case RadialKind::Sa:
      return std::pow(s, l) * std::pow(c, p.delta_plus) * hypergeometric_pFq({a, b}, {g}, s * s);
    case RadialKind::Sb:
      return -std::pow(s, 2 - l - p.d) * std::pow(c, p.delta_plus) *
             hypergeometric_pFq({a - g + 1, b - g + 1}, {2 - g}, s * s);
    case RadialKind::Ca:
      return std::pow(s, l) * std::pow(c, p.delta_plus) * hypergeometric_pFq({a, b}, {1 + p.nu}, c * c);
    case RadialKind::Cb:
      return std::pow(s, l) * std::pow(c, p.delta_minus) *
             hypergeometric_pFq({a - p.nu, b - p.nu}, {1 - p.nu}, c * c);
  }
  return 0.0;
}

double oracle_jacobi_radial(int n, int l, double rho, const AdsParams& p) {
  const double g = l + p.d / 2.0;
  const double pref = std::tgamma(n + 1.0) * std::tgamma(g) / std::tgamma(g + n);
  return pref * std::pow(std::sin(rho), l) * std::pow(std::cos(rho), p.delta_plus) *
         boost::math::jacobi(static_cast<unsigned>(n), g - 1, p.nu, std::cos(2 * rho));
}

double oracle_norm(int n, int l, const AdsParams& p) {
  auto f = [&](double r) {
    const double j = oracle_jacobi_radial(n, l, r, p);
    return std::pow(std::tan(r), p.d - 1) * j * j;
  };
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, 0.0, std::numbers::pi / 2, 15, 1e-14);
}
}  // namespace

TEST_CASE("hyper_params") {
  const AdsParams p = make_params(3, 1.0, 0.0);
  CHECK(hyper_params(RadialKind::Sa, p.delta_plus, 0, p).alpha == 0.0);
  CHECK(hyper_params(RadialKind::Sa, 1.7, 1, p).gamma == 2.5);
  CHECK(hyper_params(RadialKind::Cb, 1.7, 1, p).gamma == -0.5);
  const HyperParams sb = hyper_params(RadialKind::Sb, 1.7, 1, p);
  const HyperParams sa = hyper_params(RadialKind::Sa, 1.7, 1, p);
  CHECK(sb.alpha == Approx(sa.alpha - sa.gamma + 1));
  CHECK(sb.gamma == Approx(2 - sa.gamma));
}

TEST_CASE("radial functions against hypergeometric oracle") {
  const AdsParams p0 = make_params(3, 1.0, 0.0);
  const AdsParams pm1 = make_params(3, 1.0, -1.0);
  const AdsParams pm2 = make_params(3, 1.0, -2.0);
  // frozen from a long-double evaluation
  CHECK(rel(radial_eval(RadialKind::Sa, 2.3, 1, 0.6, p0), 0.48369761455046893) < 1e-12);
  CHECK(rel(radial_eval(RadialKind::Sb, 2.3, 1, 0.6, p0), -3.516431292654686) < 1e-12);
  CHECK(rel(radial_eval(RadialKind::Sa, 2.3, 1, 0.6, pm1), 0.46353820353500328) < 1e-12);
  CHECK(rel(radial_eval(RadialKind::Ca, 2.3, 1, 1.2, pm1), 0.074519862877054448) < 1e-12);
  CHECK(rel(radial_eval(RadialKind::Cb, 2.3, 1, 1.2, pm1), 1.3059239177848952) < 1e-12);
  CHECK(rel(radial_eval(RadialKind::Sb, 1.7, 2, 0.4, pm2), -15.109955088656208) < 1e-12);
  // live oracle inside each series' own disc
  for (const AdsParams* p : {&p0, &pm1, &pm2}) {
    for (double w : {0.9, 2.3, 4.1}) {
      for (int l = 0; l <= 3; ++l) {
        for (double rho : {0.3, 0.6, 0.8}) {
          CHECK(rel(radial_eval(RadialKind::Sa, w, l, rho, *p), oracle_radial(RadialKind::Sa, w, l, rho, *p)) < 1e-11);
          CHECK(rel(radial_eval(RadialKind::Sb, w, l, rho, *p), oracle_radial(RadialKind::Sb, w, l, rho, *p)) < 1e-11);
        }
        for (double rho : {0.9, 1.2, 1.45}) {
          if (p == &pm2) continue;  // C^b singular factor at nu = 1/2 is covered by the frozen set
          CHECK(rel(radial_eval(RadialKind::Ca, w, l, rho, *p), oracle_radial(RadialKind::Ca, w, l, rho, *p)) < 1e-11);
          CHECK(rel(radial_eval(RadialKind::Cb, w, l, rho, *p), oracle_radial(RadialKind::Cb, w, l, rho, *p)) < 1e-11);
        }
      }
    }
  }
}

TEST_CASE("radial evaluation edge cases") {
  const AdsParams p = make_params(3, 1.0, 0.0);
  CHECK(radial_eval(RadialKind::Sa, 1.9, 0, 0.0, p) == 1.0);
  CHECK(std::abs(radial_eval(RadialKind::Ca, 1.9, 1, 1.5707, p)) < 1e-11);
  CHECK_THROWS_AS(radial_eval(RadialKind::Sb, 1.9, 1, 0.0, p), SingularPoint);
  CHECK_THROWS_AS(radial_eval(RadialKind::Sa, 1.9, 1, 1.6, p), DomainError);
  // S^b rho^{l+d-2} tends to a finite nonzero limit on the axis
  const double a = radial_eval(RadialKind::Sb, 1.9, 1, 1e-3, p) * std::pow(1e-3, 2);
  const double b = radial_eval(RadialKind::Sb, 1.9, 1, 1e-4, p) * std::pow(1e-4, 2);
  CHECK(a == Approx(b).epsilon(1e-5));
  CHECK(std::abs(b) > 0.1);
  // derivative by central differences
  const double h = 1e-6;
  for (RadialKind k : {RadialKind::Sa, RadialKind::Sb, RadialKind::Ca, RadialKind::Cb}) {
    const double num = (radial_eval(k, 2.3, 2, 0.7 + h, p) - radial_eval(k, 2.3, 2, 0.7 - h, p)) / (2 * h);
    CHECK(radial_eval_d(k, 2.3, 2, 0.7, p).derivative == Approx(num).epsilon(1e-7));
  }
}

TEST_CASE("magic frequencies and Jacobi modes") {
  const AdsParams p0 = make_params(3, 1.0, 0.0);
  const AdsParams pm2 = make_params(3, 1.0, -2.0);
  CHECK(magic_frequency(Branch::Plus, 0, 0, p0) == 3.0);
  CHECK(magic_frequency(Branch::Plus, 1, 2, p0) == 7.0);
  CHECK(magic_frequency(Branch::Minus, 0, 0, pm2) == Approx(1.0).epsilon(1e-15));
  CHECK(jacobi_radial(Branch::Plus, 0, 0, 0.0, p0) == Approx(1.0).epsilon(1e-15));
  CHECK(std::abs(jacobi_radial(Branch::Plus, 2, 1, 1.5707, p0)) < 1e-10);
  CHECK(rel(jacobi_radial(Branch::Plus, 1, 1, 0.6, p0), 0.11502781273591724) < 1e-13);
  CHECK(rel(jacobi_radial(Branch::Plus, 1, 0, std::numbers::pi / 4, p0), -0.11785113019775792) < 1e-13);
  CHECK(rel(jacobi_radial(Branch::Plus, 2, 1, 0.8, pm2), -0.052394049242921958) < 1e-13);
  for (int n = 0; n <= 3; ++n) {
    for (int l = 0; l <= 3; ++l) {
      for (double rho : {0.2, 0.6, 1.1, 1.4}) {
        CHECK(rel(jacobi_radial(Branch::Plus, n, l, rho, p0), oracle_jacobi_radial(n, l, rho, p0)) < 1e-12);
        const double w = magic_frequency(Branch::Plus, n, l, p0);
        CHECK(std::abs(radial_eval(RadialKind::Sa, w, l, rho, p0) - jacobi_radial(Branch::Plus, n, l, rho, p0)) < 1e-10);
      }
    }
  }
}

TEST_CASE("norm constants") {
  const AdsParams p0 = make_params(3, 1.0, 0.0);
  const AdsParams pm2 = make_params(3, 1.0, -2.0);
  const AdsParams p1 = make_params(3, 1.0, 1.0);
  CHECK(norm_constant(Branch::Plus, 0, 0, p0) == Approx(std::numbers::pi / 32).epsilon(1e-14));
  CHECK(rel(norm_constant(Branch::Plus, 1, 1, p0), 0.0061359231515425649) < 1e-12);
  CHECK(rel(norm_constant(Branch::Plus, 2, 1, pm2), 0.0030053501150412563) < 1e-12);
  CHECK(rel(norm_constant(Branch::Plus, 1, 2, p1), 0.0015098130021734357) < 1e-12);
  for (const AdsParams* p : {&p0, &pm2, &p1}) {
    for (int n = 0; n <= 4; ++n)
      for (int l = 0; l <= 4; ++l) CHECK(rel(norm_constant(Branch::Plus, n, l, *p), oracle_norm(n, l, *p)) < 1e-9);
  }
}

TEST_CASE("wronskians and transfer matrix") {
  const AdsParams p = make_params(3, 1.0, -1.0);
  CHECK(wronskian(RadialKind::Sa, RadialKind::Sa, 2.3, 1, 0.7, p) == 0.0);
  const double w1 = wronskian(RadialKind::Sa, RadialKind::Sb, 2.3, 1, 0.4, p);
  const double w2 = wronskian(RadialKind::Sa, RadialKind::Sb, 2.3, 1, 1.0, p);
  CHECK(w1 == Approx(w2).epsilon(1e-10));
  const TransferMatrix M = transfer_matrix(2.3, 1, p);
  CHECK(rel(M.m11, -3.2364169028564696) < 1e-10);
  CHECK(rel(M.m12, 0.47635734502562816) < 1e-10);
  CHECK(rel(M.m21, 0.87596987547486456) < 1e-10);
  CHECK(rel(M.m22, -0.54347617241495904) < 1e-10);
  const double wc = wronskian(RadialKind::Ca, RadialKind::Cb, 2.3, 1, 1.0, p);
  CHECK(M.det() * wc == Approx(w1).epsilon(1e-8));
  const AdsParams p0 = make_params(3, 1.0, 0.0);
  const TransferMatrix Mm = transfer_matrix(magic_frequency(Branch::Plus, 1, 1, p0), 1, p0);
  CHECK(std::abs(Mm.m12) < 1e-8 * std::abs(Mm.m11));
}

TEST_CASE("mode_eval") {
  const AdsParams p = make_params(3, 1.0, 0.0);
  const SpacePoint x{0.0, 0.6, 0.9, 0.4};
  const cplx v = mode_eval(TubeLabel{2.3, 1, 1}, RadialKind::Sa, x, p);
  CHECK(std::abs(v - sph_harm({1, 1}, 0.9, 0.4) * radial_eval(RadialKind::Sa, 2.3, 1, 0.6, p)) < 1e-15);
  const SpacePoint y{0.8, 0.6, 0.9, 0.4};
  const cplx s = mode_eval(SliceLabel{1, 1, 0, Branch::Plus}, y, p);
  const double w = magic_frequency(Branch::Plus, 1, 1, p);
  CHECK(std::abs(s - std::polar(1.0, -w * 0.8) * sph_harm({1, 0}, 0.9, 0.4) * jacobi_radial(Branch::Plus, 1, 1, 0.6, p)) < 1e-15);
}
