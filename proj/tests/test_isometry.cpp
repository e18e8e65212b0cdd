#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "adskg/errors.hpp"
#include "adskg/isometry.hpp"
#include "adskg/symplectic.hpp"

using namespace adskg;
using doctest::Approx;

namespace {
const SpacePoint kPoints[] = {{0.1, 0.5, 0.8, 0.3}, {0.7, 0.9, 2.1, 4.4}, {-0.4, 1.2, 1.3, 2.0}};

TubeRep tube_rep() {
  TubeRep t{OmegaGrid{0.5}, TubeBasis::S, {}};
  t.coeffs[{3, 1, 0}] = {cplx(1.0, 0.5), cplx(0.2, 0.0)};
  t.coeffs[{-2, 2, 2}] = {cplx(0.0, 0.3), cplx(0.1, 0.1)};
  t.coeffs[{1, 0, 0}] = {cplx(-0.4, 0.2), cplx(0.6, -0.3)};
  t.coeffs[{4, 2, -1}] = {cplx(0.2, 0.0), cplx(0.0, -0.4)};
  return t;
}
SliceRep slice_rep() {
  SliceRep s;
  s.coeffs[{0, 0, 0}] = {cplx(1.0, 0.2), cplx(0.3, -0.1)};
  s.coeffs[{1, 1, -1}] = {cplx(-0.4, 0.5), cplx(0.2, 0.2)};
  s.coeffs[{2, 2, 1}] = {cplx(0.1, 0.0), cplx(0.0, 0.6)};
  s.coeffs[{1, 2, 0}] = {cplx(0.0, -0.3), cplx(0.4, 0.0)};
  return s;
}
template <class Rep>
double block_norm(const Rep& rep, int l);
template <>
double block_norm(const TubeRep& rep, int l) {
  double s = 0.0;
  for (const auto& [k, v] : rep.coeffs)
    if (k.l == l && k.k == 3) s += std::norm(v.a) + std::norm(v.b);
  return s;
}
}  // namespace

TEST_CASE("time translations") {
  const AdsParams p = make_params(3, 1.0, -1.0);
  const TubeRep t = tube_rep();
  const TubeRep t0 = act_time_translation(t, 0.0);
  for (const auto& [k, v] : t.coeffs) {
    CHECK(t0.coeffs.at(k).a == v.a);
    CHECK(t0.coeffs.at(k).b == v.b);
  }
  const TubeRep c1 = act_time_translation(act_time_translation(t, 0.3), 0.5);
  const TubeRep c2 = act_time_translation(t, 0.8);
  for (const auto& [k, v] : c2.coeffs) CHECK(std::abs(c1.coeffs.at(k).a - v.a) < 1e-15);
  for (const auto& x : kPoints) {
    SpacePoint y = x;
    y.t -= 0.8;
    CHECK(std::abs(synth(c2, x, p) - synth(t, y, p)) < 1e-10);
  }
  const SliceRep s = slice_rep();
  const SliceRep s2 = act_time_translation(s, 1.1, p);
  for (const auto& x : kPoints) {
    SpacePoint y = x;
    y.t -= 1.1;
    CHECK(std::abs(synth(s2, x, p) - synth(s, y, p)) < 1e-10);
  }
  RodRep rod{OmegaGrid{0.5}, {}};
  rod.coeffs[{2, 1, 0}] = 1.0;
  const RodRep r2 = act_time_translation(rod, 0.4);
  for (const auto& x : kPoints) {
    SpacePoint y = x;
    y.t -= 0.4;
    CHECK(std::abs(synth(r2, x, p) - synth(rod, y, p)) < 1e-10);
  }
}

TEST_CASE("rotations") {
  const AdsParams p = make_params(3, 1.0, 0.0);
  const TubeRep t = tube_rep();
  const TubeRep same = act_rotation(t, {0.0, 0.0, 0.0}, p);
  for (const auto& [k, v] : t.coeffs) CHECK(std::abs(same.coeffs.at(k).a - v.a) < 1e-15);

  const EulerAngles ang{0.3, 1.1, -0.7};
  const TubeRep r = act_rotation(t, ang, p);
  for (int l = 0; l <= 2; ++l) CHECK(block_norm(r, l) == Approx(block_norm(t, l)).epsilon(1e-12));

  const std::vector<double> R = rotation_matrix(ang);
  const SliceRep s = slice_rep();
  const SliceRep rs = act_rotation(s, ang, p);
  for (const auto& x : kPoints) {
    const Vec3 w = unit_vector(x.theta, x.phi);
    Vec3 v{};
    for (int i = 0; i < 3; ++i) v[i] = R[0 * 3 + i] * w[0] + R[1 * 3 + i] * w[1] + R[2 * 3 + i] * w[2];
    SpacePoint y = x;
    angles_of(v, y.theta, y.phi);
    CHECK(std::abs(synth(r, x, p) - synth(t, y, p)) < 1e-9);
    CHECK(std::abs(synth(rs, x, p) - synth(s, y, p)) < 1e-9);
  }
  TubeRep real{OmegaGrid{0.5}, TubeBasis::S, {}};
  real.coeffs[{3, 1, 1}] = {cplx(0.4, 0.2), cplx(0.1, -0.3)};
  real.coeffs[{-3, 1, -1}] = {cplx(0.4, -0.2), cplx(0.1, 0.3)};
  CHECK(act_rotation(real, ang, p).is_real(1e-12));
}

TEST_CASE("boost tables") {
  const AdsParams p = make_params(3, 1.0, 0.0);
  const OmegaGrid g{0.5};
  const FrequencyWindow w{-8, 8, 3};
  const TubeBoostTable tt = extract_tube_boost_coeffs(GeneratorId::boost0(3), g, w, p);
  CHECK(tt.shift == 2);
  CHECK(tt.max_leakage < 1e-8);
  for (int k = -6; k <= 6; ++k) {
    for (int c = 0; c < 2; ++c)
      for (int c2 = 0; c2 < 2; ++c2) {
        CHECK(tt.at(k, 0).z[c][c2][0] == 0.0);
        CHECK(tt.at(k, 0).zt[c][c2][0] == 0.0);
      }
  }
  // (2l+d)/(2l+d-2) identity between a and b channels
  for (int k = -4; k <= 4; ++k) {
    for (int l = 0; l <= 1; ++l) {
      const double up = (2.0 * l + 3.0) / (2.0 * l + 1.0);
      CHECK(std::abs(tt.at(k - 2, l + 1).zt[0][0][0] - up * tt.at(k, l).z[1][1][1]) < 1e-8);
    }
  }
  const SliceBoostTable st = extract_slice_boost_coeffs(GeneratorId::boost_d1(3), {3, 3}, p);
  CHECK(st.max_leakage < 1e-8);
  CHECK(st.at(0, 0).z0m == 0.0);
  CHECK(st.at(0, 2).zmp == 0.0);
  auto wn = [&](int n, int l) { return magic_frequency(Branch::Plus, n, l, p) * norm_constant(Branch::Plus, n, l, p); };
  for (int n = 0; n <= 2; ++n)
    for (int l = 0; l <= 1; ++l) CHECK(std::abs(wn(n, l) * st.at(n, l + 1).z0m - wn(n, l + 1) * st.at(n, l).zt0p) < 1e-8);

  std::ostringstream os;
  write_boost_csv(os, st);
  CHECK(os.str().rfind("kind,channel,k_or_n,l,value\n", 0) == 0);
  CHECK_THROWS_AS(extract_tube_boost_coeffs(GeneratorId::boost0(3), OmegaGrid{0.3}, w, p), DomainError);
}

TEST_CASE("boost action") {
  const AdsParams p = make_params(3, 1.0, -1.0);
  const OmegaGrid g{0.5};
  const FrequencyWindow w{-10, 10, 4};
  const GeneratorId gen = GeneratorId::boost0(3);
  const TubeBoostTable tt = extract_tube_boost_coeffs(gen, g, w, p);
  const TubeRep t = tube_rep();
  const TubeRep same = act_boost(t, gen, 0.0, tt, p);
  for (const auto& [k, v] : t.coeffs) CHECK(std::abs(same.coeffs.at(k).a - v.a) < 1e-15);

  // Z = K_{0d} + i K_{d+1,d} lowers omega by one unit, Zbar raises it
  TubeRep single{g, TubeBasis::S, {}};
  single.coeffs[{4, 1, 0}] = {1.0, 0.0};
  const TubeBoostTable td1 = extract_tube_boost_coeffs(GeneratorId::boost_d1(3), g, w, p);
  const TubeRep k0 = boost_generator_action(single, gen, tt, p);
  const TubeRep kd1 = boost_generator_action(single, GeneratorId::boost_d1(3), td1, p);
  double stray = 0.0, kept = 0.0;
  for (const auto& [k, v] : k0.coeffs) {
    const ABPair z = kd1.coeffs.count(k) ? kd1.coeffs.at(k) : ABPair{};
    const cplx za = v.a + cplx(0.0, 1.0) * z.a, zb = v.b + cplx(0.0, 1.0) * z.b;
    if (k.k == 2) kept = std::max({kept, std::abs(za), std::abs(zb)});
    else stray = std::max({stray, std::abs(za), std::abs(zb)});
  }
  CHECK(kept > 1e-3);
  CHECK(stray < 1e-8);

  // pullback linearization: act_boost(eps) against the finite flow is second order in eps
  auto dev = [&](double eps) {
    const TubeRep moved = act_boost(t, gen, eps, tt, p);
    double e = 0.0;
    for (const auto& x : kPoints)
      e = std::max(e, std::abs(synth(moved, x, p) - synth(t, flow_point(gen, x, eps, p), p)));
    return e;
  };
  const double ratio = dev(1e-3) / dev(1e-4);
  CHECK(ratio >= 80.0);
  CHECK(ratio <= 120.0);

  TubeRep edge{g, TubeBasis::S, {}};
  edge.coeffs[{10, 1, 0}] = {1.0, 0.0};
  CHECK_THROWS_AS(boost_generator_action(edge, gen, tt, p), WindowOverflow);
}

TEST_CASE("invariance") {
  const AdsParams p = make_params(3, 1.0, 0.0);
  std::vector<std::pair<TubeRep, TubeRep>> pairs{{tube_rep(), act_time_translation(tube_rep(), 0.4)}};
  for (auto& [k, v] : pairs[0].second.coeffs) v = {v.b, cplx(0.0, 1.0) * v.a};
  const OmegaFn<TubeRep> om = [&](const TubeRep& a, const TubeRep& b) { return omega_tube_momentum(a, b, p).value; };
  const RepMap<TubeRep> shift = [](const TubeRep& t) { return act_time_translation(t, 1.3); };
  CHECK(invariance_suite(om, pairs, shift, IsometryKind::Finite) < 1e-9);

  const std::vector<std::pair<SliceRep, SliceRep>> sp{{slice_rep(), act_time_translation(slice_rep(), 0.5, p)}};
  const OmegaFn<SliceRep> so = [&](const SliceRep& a, const SliceRep& b) { return omega_slice_quadrature(a, b, 0.2, p).value; };
  const RepMap<SliceRep> rot = [&](const SliceRep& s) { return act_rotation(s, {0.2, 0.9, 1.4}, p); };
  CHECK(invariance_suite(so, sp, rot, IsometryKind::Finite) < 1e-8);

  const SliceBoostTable st = extract_slice_boost_coeffs(GeneratorId::boost0(3), {4, 4}, p);
  const OmegaFn<SliceRep> sm = [&](const SliceRep& a, const SliceRep& b) { return omega_slice_momentum(a, b, p).value; };
  const RepMap<SliceRep> boost = [&](const SliceRep& s) { return boost_generator_action(s, GeneratorId::boost0(3), st, p); };
  CHECK(invariance_suite(sm, sp, boost, IsometryKind::Infinitesimal) < 1e-6);
}

TEST_CASE("slice boosts agree with tube boosts at magic frequencies") {
  const AdsParams p = make_params(3, 1.0, 0.0);
  const OmegaGrid g{0.5};
  SliceRep s;
  s.coeffs[{0, 0, 0}] = {cplx(1.0, 0.2), 0.0};
  s.coeffs[{1, 1, -1}] = {cplx(-0.4, 0.5), 0.0};
  s.coeffs[{0, 2, 1}] = {cplx(0.3, 0.0), 0.0};
  const GeneratorId gen = GeneratorId::boost_d1(3);
  const SliceBoostTable st = extract_slice_boost_coeffs(gen, {3, 4}, p);
  const TubeBoostTable tt = extract_tube_boost_coeffs(gen, g, {-18, 18, 4}, p);
  const TubeRep a = slice_as_tube(boost_generator_action(s, gen, st, p), g, p);
  const TubeRep b = boost_generator_action(slice_as_tube(s, g, p), gen, tt, p);
  double e = 0.0;
  for (const auto& [k, v] : b.coeffs) {
    const ABPair w = a.coeffs.count(k) ? a.coeffs.at(k) : ABPair{};
    e = std::max({e, std::abs(v.a - w.a), std::abs(v.b - w.b)});
  }
  for (const auto& [k, v] : a.coeffs)
    if (!b.coeffs.count(k)) e = std::max({e, std::abs(v.a), std::abs(v.b)});
  CHECK(e < 1e-6);
}
