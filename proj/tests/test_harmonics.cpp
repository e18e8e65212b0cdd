#include <doctest.h>

#include <boost/math/special_functions/spherical_harmonic.hpp>
#include <cmath>
#include <numbers>
#include <random>

#include "adskg/errors.hpp"
#include "adskg/harmonics.hpp"

using namespace adskg;
using doctest::Approx;

TEST_CASE("sph_harm normalization and conjugation") {
  CHECK(std::abs(sph_harm({0, 0}, 0.7, 2.1) - 1.0 / std::sqrt(4 * std::numbers::pi)) < 1e-15);
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> th(0.0, std::numbers::pi), ph(0.0, 2 * std::numbers::pi);
  for (int i = 0; i < 10; ++i) {
    const double t = th(rng), p = ph(rng);
    CHECK(std::abs(std::conj(sph_harm({2, 1}, t, p)) - sph_harm({2, -1}, t, p)) < 1e-14);
  }
  CHECK_THROWS_AS(sph_harm({1, 2}, 0.3, 0.3), IndexError);
}

TEST_CASE("sph_harm against boost") {
  // boost includes the Condon-Shortley phase on m > 0
  for (int l = 0; l <= 5; ++l) {
    for (int m = -l; m <= l; ++m) {
      const cplx ref = boost::math::spherical_harmonic(l, m, 1.1, 0.4);
      const double phase = (m > 0 && m % 2) ? -1.0 : 1.0;
      CHECK(std::abs(sph_harm({l, m}, 1.1, 0.4) - phase * ref) < 1e-13);
    }
  }
}

TEST_CASE("orthonormality on the angular grid") {
  const AngularGrid g = make_angular_grid(16, 32);
  for (int l1 = 0; l1 <= 3; ++l1) {
    for (int m1 = -l1; m1 <= l1; ++m1) {
      for (int l2 = 0; l2 <= 3; ++l2) {
        for (int m2 = -l2; m2 <= l2; ++m2) {
          cplx s = 0.0;
          for (size_t i = 0; i < g.theta.size(); ++i)
            for (double p : g.phi)
              s += g.weight_theta[i] * g.weight_phi * std::conj(sph_harm({l1, m1}, g.theta[i], p)) *
                   sph_harm({l2, m2}, g.theta[i], p);
          const double want = (l1 == l2 && m1 == m2) ? 1.0 : 0.0;
          CHECK(std::abs(s - want) < 1e-10);
        }
      }
    }
  }
}

TEST_CASE("sph_harm_dcos by finite differences") {
  const double th = 0.9, h = 1e-6;
  const double x = std::cos(th);
  const cplx num = (sph_harm({3, 2}, std::acos(x + h), 0.3) - sph_harm({3, 2}, std::acos(x - h), 0.3)) / (2 * h);
  CHECK(std::abs(sph_harm_dcos({3, 2}, th, 0.3) - num) < 1e-7);
}

TEST_CASE("contiguous coefficients") {
  const ContiguousCoeffs c0 = contiguous_coeffs(3, 0, 0);
  CHECK(c0.kappa_minus == 0.0);
  CHECK(c0.delta_minus == 0.0);
  CHECK(contiguous_coeffs(3, 1, 0).kappa_minus == Approx(std::sqrt(1.0 / 3.0)).epsilon(1e-14));
  CHECK(contiguous_coeffs(5, 3, 1).kappa_minus == Approx(contiguous_coeffs(5, 2, 1).kappa_plus).epsilon(1e-14));
  // cos(theta) Y_l^m = kappa_+ Y_{l+1}^m + kappa_- Y_{l-1}^m in d = 3
  for (int l = 1; l <= 4; ++l) {
    for (int m = -l + 1; m < l; ++m) {
      const ContiguousCoeffs c = contiguous_coeffs(3, l, m);
      const double th = 0.8, ph = 1.3;
      const cplx lhs = std::cos(th) * sph_harm({l, m}, th, ph);
      const cplx rhs = c.kappa_plus * sph_harm({l + 1, m}, th, ph) + c.kappa_minus * sph_harm({l - 1, m}, th, ph);
      CHECK(std::abs(lhs - rhs) < 1e-13);
    }
  }
  CHECK_THROWS_AS(contiguous_coeffs(4, 1, 0), DomainError);
}

TEST_CASE("wigner_d") {
  const WignerMatrix id = wigner_d(1, {0.0, 0.0, 0.0});
  for (int a = -1; a <= 1; ++a)
    for (int b = -1; b <= 1; ++b) CHECK(std::abs(id(a, b) - (a == b ? 1.0 : 0.0)) < 1e-15);
  const EulerAngles ang{0.4, 1.2, -0.7};
  const WignerMatrix D = wigner_d(2, ang);
  for (int a = -2; a <= 2; ++a) {
    for (int b = -2; b <= 2; ++b) {
      cplx s = 0.0;
      for (int m = -2; m <= 2; ++m) s += D(a, m) * std::conj(D(b, m));
      CHECK(std::abs(s - (a == b ? 1.0 : 0.0)) < 1e-13);
    }
  }
  // pullback: Y^m(R^{-1} w) = sum D_{m'm} Y^{m'}(w)
  const std::vector<double> r = rotation_matrix(ang);
  const double th = 1.0, ph = 0.5;
  const double w[3] = {std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph), std::cos(th)};
  double v[3];
  for (int i = 0; i < 3; ++i) v[i] = r[0 * 3 + i] * w[0] + r[1 * 3 + i] * w[1] + r[2 * 3 + i] * w[2];
  const double vth = std::acos(v[2]), vph = std::atan2(v[1], v[0]);
  for (int m = -2; m <= 2; ++m) {
    cplx s = 0.0;
    for (int mp = -2; mp <= 2; ++mp) s += sph_harm({2, mp}, th, ph) * D(mp, m);
    CHECK(std::abs(sph_harm({2, m}, vth, vph) - s) < 1e-12);
  }
}
