#include <doctest.h>

#include <cmath>
#include <numbers>

#include "adskg/errors.hpp"
#include "adskg/geometry.hpp"
#include "adskg/modes.hpp"

using namespace adskg;
using doctest::Approx;

namespace {
FieldFn test_field() {
  return [](double t, double rho, const Vec3& xi) {
    return cplx(std::cos(0.7 * t) * std::sin(rho) * (1.0 + xi[2]) + xi[0] * xi[1],
                std::sin(1.3 * t) * std::cos(rho) * xi[0]);
  };
}
std::vector<SpacePoint> interior_points() {
  std::vector<SpacePoint> pts;
  for (int i = 0; i < 6; ++i) pts.push_back({0.3 * i - 0.5, 0.3 + 0.15 * i, 0.4 + 0.3 * i, 0.2 + 0.9 * i});
  return pts;
}
}  // namespace

TEST_CASE("make_params") {
  const AdsParams p = make_params(3, 1.0, 0.0);
  CHECK(p.nu == 1.5);
  CHECK(p.delta_plus == 3.0);
  CHECK(p.delta_minus == 0.0);
  CHECK_FALSE(p.exceptional);
  const AdsParams q = make_params(3, 1.0, -2.0);
  CHECK(q.nu == Approx(0.5).epsilon(1e-15));
  CHECK(q.delta_minus == Approx(1.0).epsilon(1e-15));
  CHECK(q.exceptional);
  CHECK_THROWS_AS(make_params(3, 1.0, -2.3), BfViolation);
  CHECK_THROWS_AS(make_params(4, 1.0, 0.0), EvenDimension);
  CHECK_FALSE(make_params(3, 1.0, -1.25).c_modes_valid);
  CHECK_THROWS_AS(require_c_modes(make_params(3, 1.0, -1.25)), CapabilityError);
  CHECK(make_params(3, 1.0, -2.0).delta_plus * make_params(3, 1.0, -2.0).delta_minus == Approx(2.0));
}

TEST_CASE("kg_residual") {
  const AdsParams p0 = make_params(3, 1.0, 0.0);
  auto sa = [&](double r) { return radial_eval(RadialKind::Sa, 2.3, 1, r, p0); };
  CHECK(kg_residual(sa, 2.3, 1, p0, 0.2, 1.2) < 1e-6);
  auto j10 = [&](double r) { return jacobi_radial(Branch::Plus, 1, 0, r, p0); };
  CHECK(kg_residual(j10, magic_frequency(Branch::Plus, 1, 0, p0), 0, p0, 0.2, 1.2) < 1e-6);
  const AdsParams p1 = make_params(3, 1.0, 1.0);
  const double r = kg_residual([](double) { return 1.0; }, 0.0, 0, p1, 0.2, 1.2);
  CHECK(r == Approx(1.0).epsilon(1e-6));
  CHECK_THROWS_AS(kg_residual(sa, 2.3, 1, p0, 0.0, 1.2), WindowError);
}

TEST_CASE("killing_apply") {
  const AdsParams p = make_params(3, 1.0, 0.0);
  const double w = 2.7;
  const FieldFn f = [&](double t, double rho, const Vec3& xi) {
    return std::exp(cplx(0.0, -w * t)) * std::sin(rho) * (xi[0] + 2.0 * xi[2]);
  };
  const SpacePoint x{0.4, 0.7, 1.1, 0.3};
  const Vec3 xi = unit_vector(x.theta, x.phi);
  const cplx ref = cplx(0.0, -w) * f(x.t, x.rho, xi);
  const cplx got = killing_apply(GeneratorId::time_translation(), f, x, p);
  CHECK(std::abs(got - ref) < 1e-8 * std::abs(ref));
  const SpacePoint edge{0.5, std::numbers::pi / 2 - 1e-4, 1.0, 0.0};
  CHECK_THROWS_AS(killing_apply(GeneratorId::boost0(3), f, edge, p), BoundaryProximity);
}

TEST_CASE("boost vector fields are tangent to the boundary") {
  const Vec3 xi = unit_vector(0.8, 1.9);
  for (int j = 1; j <= 3; ++j) {
    for (const auto& g : {GeneratorId::boost0(j), GeneratorId::boost_d1(j)}) {
      // cos(pi/2) is not exactly zero in double precision
      CHECK(std::abs(killing_coeffs(embedding_pair(g, 3), 0.6, std::numbers::pi / 2, xi, 3).crho) < 1e-15);
    }
  }
}

TEST_CASE("lie brackets") {
  const AdsParams p = make_params(3, 1.0, 0.0);
  const auto pts = interior_points();
  CHECK(verify_lie_bracket(GeneratorId::time_translation(), GeneratorId::rotation(1, 2), test_field(), pts, p) < 1e-5);
  CHECK(verify_lie_bracket(GeneratorId::boost0(3), GeneratorId::boost_d1(3), test_field(), pts, p) < 1e-5);
  CHECK(verify_lie_bracket(GeneratorId::boost0(1), GeneratorId::boost0(1), test_field(), pts, p) == 0.0);
}

TEST_CASE("flat rescaling") {
  const AdsParams p = make_params(3, 10.0, 0.0);
  const FlatCoords c = flat_rescale(p, 0.1, 0.05);
  CHECK(c.tau == Approx(1.0).epsilon(1e-15));
  CHECK(c.r == Approx(0.5).epsilon(1e-15));
  double t = 0.0, rho = 0.0;
  flat_unrescale(p, c.tau, c.r, t, rho);
  CHECK(t == Approx(0.1).epsilon(1e-15));
  CHECK(rho == Approx(0.05).epsilon(1e-15));

  const AdsParams q = make_params(3, 100.0, 1.0);
  const FlatLabels lab = flat_labels(q, 150.0);
  CHECK(lab.omega_tilde == Approx(1.5).epsilon(1e-15));
  CHECK(lab.p_tilde == Approx(std::sqrt(1.25)).epsilon(1e-12));
  CHECK(flat_labels(q, 100.0).p_R == Approx(0.0));
}

TEST_CASE("minkowski time translation on a phase") {
  const AdsParams p = make_params(3, 100.0, 0.0);
  const double E = 1.3;
  const FieldFn f = [&](double tau, double r, const Vec3&) { return std::exp(cplx(0.0, -E * tau)) * r; };
  const KillingCoeffs k = mink_killing_coeffs(MinkKilling::T0, 0, 0.2, 1.0, {0.0, 0.0, 1.0});
  CHECK(k.ct == 1.0);
  CHECK(k.crho == 0.0);
  CHECK(flat_killing_deviation(MinkKilling::T0, 0, p, f, {{0.2, 1.0, 0.5, 0.5}}) < 1e-12);
}
