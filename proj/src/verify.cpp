#include "adskg/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <random>

#include "adskg/errors.hpp"
#include "adskg/isometry.hpp"
#include "adskg/minkowski.hpp"
#include "adskg/symplectic.hpp"

namespace adskg {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

CheckResult err_check(std::string name, double value, double tol) {
  return {std::move(name), value, 0.0, tol, false};
}

CheckResult range_check(std::string name, double value, double lo, double hi) {
  return {std::move(name), value, lo, hi, true};
}

const double kMasses[3] = {0.0, -2.0, 1.0};

class Rng {
 public:
  explicit Rng(unsigned seed) : gen_(seed) {}
  double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(gen_); }
  int integer(int a, int b) { return std::uniform_int_distribution<int>(a, b)(gen_); }
  cplx complex() { return {uniform(-1.0, 1.0), uniform(-1.0, 1.0)}; }

 private:
  std::mt19937 gen_;
};

double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

// ---- random representations ------------------------------------------------

SliceRep random_slice(Rng& rng, int n_labels, int n_max = 3, int l_max = 3) {
  SliceRep s;
  while (static_cast<int>(s.coeffs.size()) < n_labels) {
    const int l = rng.integer(0, l_max);
    s.coeffs[{rng.integer(0, n_max), l, rng.integer(-l, l)}] = {rng.complex(), rng.complex()};
  }
  return s;
}

// Labels come in (k, l, m) / (-k, l, -m) pairs so momentum pairings are nonzero.
TubeRep random_tube(Rng& rng, int n_pairs, TubeBasis basis = TubeBasis::S, int k_max = 6,
                    int l_max = 3) {
  TubeRep t{OmegaGrid{0.5}, basis, {}};
  for (int i = 0; i < n_pairs; ++i) {
    const int l = rng.integer(0, l_max);
    const int k = rng.integer(1, k_max), m = rng.integer(-l, l);
    t.coeffs[{k, l, m}] = {rng.complex(), rng.complex()};
    t.coeffs[{-k, l, -m}] = {rng.complex(), rng.complex()};
  }
  return t;
}

// Same labels, new coefficients.
template <class Rep>
Rep fresh_coeffs(Rng& rng, Rep rep) {
  for (auto& [k, v] : rep.coeffs) v = {rng.complex(), rng.complex()};
  return rep;
}

SliceRep dense_slice(Rng& rng) {
  SliceRep s;
  for (int n = 0; n <= 2; ++n) {
    for (int l = 0; l <= 2; ++l) {
      for (int m = -l; m <= l; ++m) s.coeffs[{n, l, m}] = {rng.complex(), rng.complex()};
    }
  }
  return s;
}

TubeRep dense_tube(Rng& rng, const OmegaGrid& grid) {
  TubeRep t{grid, TubeBasis::S, {}};
  for (int k = -4; k <= 4; ++k) {
    for (int l = 0; l <= 2; ++l) {
      for (int m = -l; m <= l; ++m) t.coeffs[{k, l, m}] = {rng.complex(), rng.complex()};
    }
  }
  return t;
}

template <class V>
double coeff_diff(const std::map<LabelKey, V>& a, const std::map<LabelKey, V>& b,
                  std::function<double(const V&, const V&)> dist) {
  double err = 0.0;
  for (const auto& [k, v] : a) {
    const auto it = b.find(k);
    err = std::max(err, dist(v, it == b.end() ? V{} : it->second));
  }
  for (const auto& [k, v] : b) {
    if (!a.count(k)) err = std::max(err, dist(V{}, v));
  }
  return err;
}

double tube_diff(const TubeRep& a, const TubeRep& b) {
  return coeff_diff<ABPair>(a.coeffs, b.coeffs, [](const ABPair& x, const ABPair& y) {
    return std::abs(x.a - y.a) + std::abs(x.b - y.b);
  });
}

double slice_diff(const SliceRep& a, const SliceRep& b) {
  return coeff_diff<SlicePair>(a.coeffs, b.coeffs, [](const SlicePair& x, const SlicePair& y) {
    return std::abs(x.plus - y.plus) + std::abs(x.minus_conj - y.minus_conj);
  });
}

double rod_diff(const RodRep& a, const RodRep& b) {
  return coeff_diff<cplx>(a.coeffs, b.coeffs,
                          [](const cplx& x, const cplx& y) { return std::abs(x - y); });
}

// ---- criterion 1: special functions ----------------------------------------

// Terms of the terminating 2F1(-n, b; c; x) series, summed by explicit products.
std::pair<double, double> terminating_sum(int n, double b, double c, double x) {
  double term = 1.0, sum = 1.0, abs_sum = 1.0;
  for (int j = 0; j < n; ++j) {
    term *= (j - n) * (b + j) / ((c + j) * (j + 1.0)) * x;
    sum += term;
    abs_sum += std::abs(term);
  }
  return {sum, abs_sum};
}

SuiteResult criterion_specfun() {
  SuiteResult r{"special functions", {}};
  Rng rng(101);
  double jac = 0.0;
  for (int i = 0; i < 50; ++i) {
    const double al = rng.uniform(-0.5, 3.0), be = rng.uniform(-0.5, 3.0);
    const int n = rng.integer(0, 8);
    const double x = rng.uniform(-1.0, 1.0);
    const double pre = pochhammer(al + 1.0, n) / std::tgamma(n + 1.0);
    const double h = pre * hyp2f1(-n, n + al + be + 1.0, al + 1.0, 0.5 * (1.0 - x));
    // scale: sum of absolute series terms, so cancellation near roots is not counted as error
    const double scale = std::abs(pre) * terminating_sum(n, n + al + be + 1.0, al + 1.0, 0.5 * (1.0 - x)).second;
    jac = std::max(jac, std::abs(jacobi_p(al, be, n, x) - h) / scale);
  }
  r.checks.push_back(err_check("jacobi_p vs 2F1 form, 50 samples", jac, 1e-11));

  double term = 0.0;
  for (int n = 0; n <= 6; ++n) {
    for (double x : {0.9, -2.0, 3.5}) {
      const auto [sum, scale] = terminating_sum(n, 1.7, 2.3, x);
      term = std::max(term, std::abs(hyp2f1(-n, 1.7, 2.3, x) - sum) / scale);
    }
  }
  r.checks.push_back(err_check("terminating 2F1 beyond |x| = 0.75", term, 1e-14));

  double poch = 0.0;
  for (double a : {0.3, 1.7, -2.5, 4.25}) {
    for (int k = 0; k <= 10; ++k) {
      const double lhs = double_pochhammer(2.0 * a, k), rhs = std::pow(2.0, k) * pochhammer(a, k);
      poch = std::max(poch, std::abs(lhs - rhs) / std::max(std::abs(rhs), 1e-300));
    }
  }
  r.checks.push_back(err_check("((2a))_k = 2^k (a)_k", poch, 1e-13));
  return r;
}

// ---- criterion 2: radial ODE residuals -------------------------------------

SuiteResult criterion_ode() {
  SuiteResult r{"radial ODE residuals", {}};
  Rng rng(202);
  const RadialKind kinds[4] = {RadialKind::Sa, RadialKind::Sb, RadialKind::Ca, RadialKind::Cb};
  const char* names[4] = {"S^a", "S^b", "C^a", "C^b"};
  for (double msq : kMasses) {
    const AdsParams p = make_params(3, 1.0, msq);
    double worst[6] = {};
    for (int i = 0; i < 10; ++i) {
      const double w = rng.uniform(0.5, 6.0);
      const int l = rng.integer(0, 3);
      for (int k = 0; k < 4; ++k) {
        auto f = [&](double rho) { return radial_eval(kinds[k], w, l, rho, p); };
        worst[k] = std::max(worst[k], kg_residual(f, w, l, p, 0.2, 1.2));
      }
      const int n = rng.integer(0, 4);
      for (int b = 0; b < (p.exceptional ? 2 : 1); ++b) {
        const Branch br = b == 0 ? Branch::Plus : Branch::Minus;
        auto f = [&](double rho) { return jacobi_radial(br, n, l, rho, p); };
        worst[4 + b] = std::max(worst[4 + b], kg_residual(f, magic_frequency(br, n, l, p), l, p, 0.2, 1.2));
      }
    }
    const std::string tag = " m2R2=" + std::to_string(static_cast<int>(msq));
    for (int k = 0; k < 4; ++k) r.checks.push_back(err_check(std::string(names[k]) + tag, worst[k], 1e-6));
    r.checks.push_back(err_check("J+" + tag, worst[4], 1e-6));
    if (p.exceptional) r.checks.push_back(err_check("J-" + tag, worst[5], 1e-6));
  }
  return r;
}

// ---- criterion 3: Wronskians -------------------------------------------------

SuiteResult criterion_wronskian() {
  SuiteResult r{"Wronskian constancy", {}};
  Rng rng(303);
  const RadialKind kinds[4] = {RadialKind::Sa, RadialKind::Sb, RadialKind::Ca, RadialKind::Cb};
  double spread = 0.0, det = 0.0;
  for (int i = 0; i < 10; ++i) {
    const AdsParams p = make_params(3, 1.0, kMasses[i % 3]);
    const double w = rng.uniform(0.5, 6.0);
    const int l = rng.integer(0, 3);
    for (int a = 0; a < 4; ++a) {
      for (int b = a + 1; b < 4; ++b) {
        double lo = kInf, hi = -kInf, mag = 0.0;
        for (double rho : {0.4, 0.7, 1.0}) {
          const double v = wronskian(kinds[a], kinds[b], w, l, rho, p);
          lo = std::min(lo, v);
          hi = std::max(hi, v);
          mag = std::max(mag, std::abs(v));
        }
        spread = std::max(spread, (hi - lo) / mag);
      }
    }
    const double ws = wronskian(RadialKind::Sa, RadialKind::Sb, w, l, 0.7, p);
    const double wc = wronskian(RadialKind::Ca, RadialKind::Cb, w, l, 0.7, p);
    det = std::max(det, std::abs(transfer_matrix(w, l, p).det() * wc - ws) / std::abs(ws));
  }
  r.checks.push_back(err_check("relative spread, 6 pairs x 10 labels", spread, 1e-8));
  r.checks.push_back(err_check("det(M) W(Ca,Cb) = W(Sa,Sb)", det, 1e-8));
  return r;
}

// ---- criterion 4: normalization ---------------------------------------------

SuiteResult criterion_norm() {
  SuiteResult r{"normalization", {}};
  const QuadRule q = gauss_legendre(200);
  double worst = 0.0;
  for (double msq : kMasses) {
    const AdsParams p = make_params(3, 1.0, msq);
    for (int b = 0; b < (p.exceptional ? 2 : 1); ++b) {
      const Branch br = b == 0 ? Branch::Plus : Branch::Minus;
      for (int n = 0; n <= 4; ++n) {
        for (int l = 0; l <= 4; ++l) {
          double s = 0.0;
          for (size_t i = 0; i < q.nodes.size(); ++i) {
            const double rho = 0.25 * kPi * (q.nodes[i] + 1.0);
            const double j = jacobi_radial(br, n, l, rho, p);
            s += 0.25 * kPi * q.weights[i] * std::pow(std::tan(rho), p.d - 1) * j * j;
          }
          worst = std::max(worst, std::abs(norm_constant(br, n, l, p) - s) / s);
        }
      }
    }
  }
  r.checks.push_back(err_check("closed form vs quadrature, n,l <= 4", worst, 1e-9));
  const double n00 = norm_constant(Branch::Plus, 0, 0, make_params(3, 1.0, 0.0));
  r.checks.push_back(err_check("N(0,0) = pi/32 at d=3, m=0", std::abs(n00 - kPi / 32.0), 1e-14));
  return r;
}

// ---- criterion 5: symplectic structures -------------------------------------

SuiteResult criterion_symplectic() {
  SuiteResult r{"symplectic agreement", {}};
  Rng rng(505);
  double slice_agree = 0.0, tube_agree = 0.0, c_agree = 0.0, sc = 0.0;
  double t_indep = 0.0, rho_indep = 0.0, lagr = 0.0, rod = 0.0, pot = 0.0;
  for (double msq : kMasses) {
    const AdsParams p = make_params(3, 1.0, msq);
    const SliceRep a = random_slice(rng, 6), b = fresh_coeffs(rng, a);
    const cplx sm = omega_slice_momentum(a, b, p).value;
    const cplx s0 = omega_slice_quadrature(a, b, 0.0, p).value;
    slice_agree = std::max(slice_agree, rel(s0, sm));
    for (double t0 : {0.37, 1.9}) {
      t_indep = std::max(t_indep, rel(omega_slice_quadrature(a, b, t0, p).value, s0));
    }
    const cplx th = 0.5 * (potential_slice(b, a, 0.3, p) - potential_slice(a, b, 0.3, p));
    pot = std::max(pot, rel(th, sm));

    const TubeRep ta = random_tube(rng, 3), tb = fresh_coeffs(rng, ta);
    const cplx tm = omega_tube_momentum(ta, tb, p).value;
    const cplx t5 = omega_tube_quadrature(ta, tb, 0.5, p).value;
    tube_agree = std::max(tube_agree, rel(t5, tm));
    for (double rho0 : {0.9, 1.3}) {
      rho_indep = std::max(rho_indep, rel(omega_tube_quadrature(ta, tb, rho0, p).value, t5));
    }
    const cplx tp = 0.5 * (potential_tube(tb, ta, 0.9, p) - potential_tube(ta, tb, 0.9, p));
    pot = std::max(pot, rel(tp, tm));
    if (p.c_modes_valid) {
      const TubeRep ca = s_to_c(ta, p), cb = s_to_c(tb, p);
      const cplx cm = omega_tube_momentum(ca, cb, p).value;
      c_agree = std::max(c_agree, rel(omega_tube_quadrature(ca, cb, 0.7, p).value, cm));
      sc = std::max(sc, rel(cm, tm));
    }

    // Lagrangian subspaces: (+,+), (-,-) on Sigma_t; (a,a), (b,b) on Sigma_rho.
    SliceRep ap = a, bp = b, am = a, bm = b;
    for (auto* s : {&ap, &bp}) for (auto& [k, v] : s->coeffs) v.minus_conj = 0.0;
    for (auto* s : {&am, &bm}) for (auto& [k, v] : s->coeffs) v.plus = 0.0;
    lagr = std::max({lagr, std::abs(omega_slice_quadrature(ap, bp, 0.4, p).value),
                     std::abs(omega_slice_quadrature(am, bm, 0.4, p).value)});
    TubeRep aa = ta, ba = tb, ab = ta, bb = tb;
    for (auto* t : {&aa, &ba}) for (auto& [k, v] : t->coeffs) v.b = 0.0;
    for (auto* t : {&ab, &bb}) for (auto& [k, v] : t->coeffs) v.a = 0.0;
    rod = std::max(rod, std::abs(omega_tube_quadrature(aa, ba, 0.8, p).value));
    lagr = std::max(lagr, std::abs(omega_tube_quadrature(ab, bb, 0.8, p).value));
    // rod boundary: antisymmetrized potential on the single boundary component
    const cplx rp = symplectic_potential(RodRegion{0.8}, aa, ba, p) -
                    symplectic_potential(RodRegion{0.8}, ba, aa, p);
    rod = std::max(rod, 0.5 * std::abs(rp));
    // slice solutions seen on the tube; magic frequencies 2n + l + Delta_+ must sit on the grid
    const OmegaGrid g{0.5};
    if (std::abs(std::remainder(p.delta_plus, g.d_omega)) < 1e-12) {
      const TubeRep sa = slice_as_tube(a, g, p), sb = slice_as_tube(b, g, p);
      rod = std::max(rod, std::abs(omega_tube_quadrature(sa, sb, 0.8, p).value));
    }
  }
  r.checks.push_back(err_check("Sigma_t quadrature vs momentum", slice_agree, 1e-7));
  r.checks.push_back(err_check("Sigma_rho quadrature vs momentum, S basis", tube_agree, 1e-7));
  r.checks.push_back(err_check("Sigma_rho quadrature vs momentum, C basis", c_agree, 1e-7));
  r.checks.push_back(err_check("S and C momentum forms agree", sc, 1e-7));
  r.checks.push_back(err_check("t0 independence", t_indep, 1e-8));
  r.checks.push_back(err_check("rho0 independence", rho_indep, 1e-8));
  r.checks.push_back(err_check("antisymmetrized potential reproduces omega", pot, 1e-8));
  r.checks.push_back(err_check("Lagrangian subspaces vanish", lagr, 1e-9));
  r.checks.push_back(err_check("rod solutions vanish", rod, 1e-9));
  return r;
}

// ---- criterion 6: magic frequencies ------------------------------------------

SuiteResult criterion_magic() {
  SuiteResult r{"magic-frequency identity", {}};
  double pt = 0.0, m12 = 0.0;
  for (double msq : kMasses) {
    const AdsParams p = make_params(3, 1.0, msq);
    for (int n = 0; n <= 3; ++n) {
      for (int l = 0; l <= 3; ++l) {
        const double w = magic_frequency(Branch::Plus, n, l, p);
        double scale = 0.0, diff = 0.0;
        for (int i = 1; i <= 15; ++i) {
          const double rho = 0.1 * i;
          const double j = jacobi_radial(Branch::Plus, n, l, rho, p);
          diff = std::max(diff, std::abs(radial_eval(RadialKind::Sa, w, l, rho, p) - j));
          scale = std::max(scale, std::abs(j));
        }
        pt = std::max(pt, diff / scale);
        if (p.c_modes_valid) {
          const TransferMatrix t = transfer_matrix(w, l, p);
          m12 = std::max(m12, std::abs(t.m12) / std::abs(t.m11));
        }
      }
    }
  }
  r.checks.push_back(err_check("S^a = J+ at magic frequencies, n,l <= 3", pt, 1e-10));
  r.checks.push_back(err_check("|m12| / |m11| at magic frequencies", m12, 1e-8));
  return r;
}

// ---- criterion 7: isometries -------------------------------------------------

SuiteResult criterion_isometry() {
  SuiteResult r{"isometry invariance", {}};
  Rng rng(707);
  const EulerAngles angles{0.3, 1.1, -0.7};
  double finite = 0.0, leibniz = 0.0, tube_id = 0.0, slice_id = 0.0;
  for (double msq : kMasses) {
    const AdsParams p = make_params(3, 1.0, msq);
    const OmegaGrid g{0.5};
    std::vector<std::pair<SliceRep, SliceRep>> sp;
    std::vector<std::pair<TubeRep, TubeRep>> tp;
    for (int i = 0; i < 2; ++i) {
      sp.push_back({dense_slice(rng), dense_slice(rng)});
      tp.push_back({dense_tube(rng, g), dense_tube(rng, g)});
    }
    const OmegaFn<SliceRep> sm = [&](const SliceRep& a, const SliceRep& b) {
      return omega_slice_momentum(a, b, p).value;
    };
    const OmegaFn<SliceRep> sq = [&](const SliceRep& a, const SliceRep& b) {
      return omega_slice_quadrature(a, b, 0.3, p).value;
    };
    const OmegaFn<TubeRep> tm = [&](const TubeRep& a, const TubeRep& b) {
      return omega_tube_momentum(a, b, p).value;
    };
    const OmegaFn<TubeRep> tq = [&](const TubeRep& a, const TubeRep& b) {
      return omega_tube_quadrature(a, b, 0.8, p).value;
    };
    const double s_scale = std::abs(sm(sp[0].first, sp[0].second));
    const double t_scale = std::abs(tm(tp[0].first, tp[0].second));

    const RepMap<SliceRep> s_time = [&](const SliceRep& s) { return act_time_translation(s, 0.7, p); };
    const RepMap<SliceRep> s_rot = [&](const SliceRep& s) { return act_rotation(s, angles, p); };
    const RepMap<TubeRep> t_time = [&](const TubeRep& t) { return act_time_translation(t, 0.7); };
    const RepMap<TubeRep> t_rot = [&](const TubeRep& t) { return act_rotation(t, angles, p); };
    for (const auto* om : {&sm, &sq}) {
      for (const auto* act : {&s_time, &s_rot}) {
        finite = std::max(finite, invariance_suite(*om, sp, *act, IsometryKind::Finite) / s_scale);
      }
    }
    for (const auto* om : {&tm, &tq}) {
      for (const auto* act : {&t_time, &t_rot}) {
        finite = std::max(finite, invariance_suite(*om, tp, *act, IsometryKind::Finite) / t_scale);
      }
    }

    const FrequencyWindow window{-10, 10, 4};
    for (const GeneratorId gen : {GeneratorId::boost0(3), GeneratorId::boost_d1(3)}) {
      const TubeBoostTable tt = extract_tube_boost_coeffs(gen, g, window, p);
      const SliceBoostTable st = extract_slice_boost_coeffs(gen, {4, 4}, p);
      const RepMap<TubeRep> ta = [&](const TubeRep& t) { return boost_generator_action(t, gen, tt, p); };
      const RepMap<SliceRep> sa = [&](const SliceRep& s) { return boost_generator_action(s, gen, st, p); };
      for (const auto* om : {&tm, &tq}) {
        const double part = std::abs((*om)(ta(tp[0].first), tp[0].second));
        leibniz = std::max(leibniz, invariance_suite(*om, tp, ta, IsometryKind::Infinitesimal) / part);
      }
      for (const auto* om : {&sm, &sq}) {
        const double part = std::abs((*om)(sa(sp[0].first), sp[0].second));
        leibniz = std::max(leibniz, invariance_suite(*om, sp, sa, IsometryKind::Infinitesimal) / part);
      }

      // tube: four equalities between a- and b-channel families
      const int s = tt.shift;
      for (int k = -6; k <= 6; ++k) {
        for (int l = 1; l <= 3; ++l) {
          const TubeBoostEntry& e = tt.at(k, l);
          const double up = (2.0 * l + 3.0) / (2.0 * l + 1.0), dn = (2.0 * l - 1.0) / (2.0 * l + 1.0);
          tube_id = std::max({tube_id,
                              std::abs(tt.at(k - s, l + 1).zt[0][0][0] - up * e.z[1][1][1]),
                              std::abs(tt.at(k - s, l - 1).zt[0][0][1] - dn * e.z[1][1][0]),
                              std::abs(tt.at(k + s, l + 1).z[0][0][0] - up * e.zt[1][1][1]),
                              std::abs(tt.at(k + s, l - 1).z[0][0][1] - dn * e.zt[1][1][0])});
        }
      }
      // slice: two equalities weighted by omega N
      auto wn = [&](int n, int l) {
        return magic_frequency(Branch::Plus, n, l, p) * norm_constant(Branch::Plus, n, l, p);
      };
      for (int n = 0; n <= 3; ++n) {
        for (int l = 0; l <= 3; ++l) {
          slice_id = std::max(slice_id, std::abs(wn(n, l) * st.at(n, l + 1).z0m -
                                                 wn(n, l + 1) * st.at(n, l).zt0p));
          if (l >= 1) {
            slice_id = std::max(slice_id, std::abs(wn(n, l) * st.at(n + 1, l - 1).zmp -
                                                   wn(n + 1, l - 1) * st.at(n, l).ztpm));
          }
        }
      }
    }
  }
  r.checks.push_back(err_check("time translations and rotations (relative)", finite, 1e-8));
  r.checks.push_back(err_check("boost Leibniz vanishing (relative)", leibniz, 1e-6));
  r.checks.push_back(err_check("tube boost coefficient identities", tube_id, 1e-8));
  r.checks.push_back(err_check("slice boost coefficient identities", slice_id, 1e-8));
  return r;
}

// ---- criterion 8: boundary ---------------------------------------------------

// Limit x = cos(rho) -> 0 of the twisted series taken term by term: positive powers drop out,
// zero powers survive, any surviving negative power makes the limit infinite.
double tail_limit(RadialKind kind, double w, int l, const AdsParams& p) {
  const bool plus = kind == RadialKind::Ca;
  const int fn = floor_nu(p), a_max = 30;
  const auto d = taylor_coeffs(plus ? Branch::Plus : Branch::Minus, w, l, p, a_max);
  double lim = 0.0;
  for (int a = 0; a <= a_max; ++a) {
    const double dp = double_pochhammer((plus ? 2.0 * p.nu : 0.0) + 2.0 * a - 2.0 * fn, fn + 1);
    const double power = plus ? 2.0 * a : 2.0 * a - 2.0 * p.nu;
    if (dp == 0.0 || d[a] == 0.0) continue;
    if (std::abs(power) < 1e-12) lim += d[a] * dp;
    else if (power < 0.0) return kInf;
  }
  return lim;
}

SuiteResult criterion_boundary() {
  SuiteResult r{"boundary machinery", {}};
  double lim = 0.0;
  for (double msq : {0.0, -1.0, -2.0, 1.0}) {
    const AdsParams p = make_params(3, 1.0, msq);
    const int fn = static_cast<int>(std::floor(p.nu));
    double expect = 1.0;  // ((2 nu - 2 floor(nu)))_{floor(nu)+1} by explicit product
    for (int i = 0; i <= fn; ++i) expect *= 2.0 * p.nu - 2.0 * fn + 2.0 * i;
    for (double w : {0.7, 2.3}) {
      for (int l : {0, 2}) {
        lim = std::max({lim, std::abs(tail_limit(RadialKind::Ca, w, l, p) - expect),
                        std::abs(tail_limit(RadialKind::Cb, w, l, p)),
                        std::abs(twisted_boundary_limit(RadialKind::Ca, p) - expect)});
      }
    }
  }
  r.checks.push_back(err_check("twisted-derivative limits from Taylor tails", lim, 1e-8));

  const AdsParams p = make_params(3, 1.0, -1.0);
  const FrequencyWindow window;
  TubeRep t{OmegaGrid{0.5}, TubeBasis::S, {}};
  t.coeffs[{3, 1, 0}] = {cplx(1.0, 0.5), cplx(0.2, 0.0)};
  t.coeffs[{-5, 2, 2}] = {cplx(0.0, 0.3), cplx(0.1, 0.1)};
  t.coeffs[{1, 0, 0}] = {cplx(-0.4, 0.2), cplx(0.6, -0.3)};
  const TubeRep tc = s_to_c(t, p);
  r.checks.push_back(err_check("boundary reconstruction round trip",
                               tube_diff(boundary_reconstruct(boundary_data(t, window, p), window, p), tc), 1e-7));

  RodRep rod{OmegaGrid{0.5}, {}};
  rod.coeffs[{3, 1, 0}] = cplx(1.0, 2.0);
  rod.coeffs[{-4, 0, 0}] = 0.5;
  rod.coeffs[{5, 2, -1}] = cplx(0.0, -0.7);
  const double interior =
      rod_diff(invert_rod_interior(sample_rod(rod, 0.6, window, p), window, p), rod);
  const double bound =
      rod_diff(rod_boundary_reconstruct(rod_boundary_data(rod, window, p), window, p), rod);
  r.checks.push_back(err_check("rod interior round trip", interior, 1e-6));
  r.checks.push_back(err_check("rod boundary round trip", bound, 1e-6));
  return r;
}

// ---- criterion 9: inversions -------------------------------------------------

SuiteResult criterion_inversion() {
  SuiteResult r{"inversion round trips", {}};
  double slice = 0.0, tube = 0.0, indep = 0.0;
  const LabelCutoffs cut;
  const FrequencyWindow window;
  for (double msq : kMasses) {
    const AdsParams p = make_params(3, 1.0, msq);
    SliceRep s;
    s.coeffs[{0, 0, 0}] = {1.0, 1.0};
    s.coeffs[{1, 2, 1}] = {cplx(0.3, 0.2), cplx(0.1, -0.4)};
    s.coeffs[{2, 3, -2}] = {cplx(0.0, 0.5), 0.0};
    s.coeffs[{3, 1, 0}] = {cplx(-0.2, 0.1), cplx(0.4, 0.4)};
    const SliceRep s0 = invert_slice(sample_slice(s, 0.0, p), p, cut);
    const SliceRep s1 = invert_slice(sample_slice(s, 0.8, p), p, cut);
    slice = std::max(slice, slice_diff(s0, s));
    indep = std::max(indep, slice_diff(s0, s1));

    TubeRep t{OmegaGrid{0.5}, TubeBasis::S, {}};
    t.coeffs[{3, 1, 0}] = {cplx(1.0, 0.5), cplx(0.2, 0.0)};
    t.coeffs[{-5, 2, 2}] = {cplx(0.0, 0.3), cplx(0.1, 0.1)};
    t.coeffs[{6, 3, -1}] = {cplx(0.5, 0.0), cplx(-0.3, 0.2)};
    const TubeRep t0 = invert_tube(sample_tube(t, 0.6, window, p), window, p, TubeBasis::S);
    const TubeRep t1 = invert_tube(sample_tube(t, 1.1, window, p), window, p, TubeBasis::S);
    tube = std::max(tube, tube_diff(t0, t));
    indep = std::max(indep, tube_diff(t0, t1));
    if (p.c_modes_valid) {
      const TubeRep tc = invert_tube(sample_tube(t, 0.9, window, p), window, p, TubeBasis::C);
      tube = std::max(tube, tube_diff(tc, s_to_c(t, p)));
    }
  }
  r.checks.push_back(err_check("slice inversion", slice, 1e-6));
  r.checks.push_back(err_check("tube inversion (S and C)", tube, 1e-6));
  r.checks.push_back(err_check("hypersurface independence", indep, 1e-7));
  return r;
}

// ---- criterion 10: flat limit ------------------------------------------------

double killing_ratio_dev(MinkKilling kind, int j, double R) {
  const FieldFn f = [](double tau, double r, const Vec3& xi) {
    const double g = std::exp(-(tau * tau + r * r));
    return cplx(g * (1.0 + 0.3 * xi[0] + 0.2 * xi[1] * xi[2]), 0.1 * g * xi[2]);
  };
  std::vector<std::array<double, 4>> pts;
  for (int i = 0; i < 20; ++i) pts.push_back({-0.8 + 0.08 * i, 0.2 + 0.1 * i, 0.3 + 0.12 * i, 0.2 + 0.29 * i});
  return flat_killing_deviation(kind, j, make_params(3, R, 0.0), f, pts);
}

SuiteResult criterion_flat() {
  SuiteResult r{"flat limit", {}};
  for (double m : {0.0, 0.7}) {
    FlatLimitSetup setup;
    setup.m_field = m;
    const auto rows = flat_limit_compare({100.0, 1000.0}, setup);
    const std::string tag = m == 0.0 ? " m=0" : " m=0.7";
    r.checks.push_back(range_check("S^a vs jcheck ratio" + tag, rows[0].radial_sa / rows[1].radial_sa, 5, 200));
    r.checks.push_back(range_check("S^b vs ncheck ratio" + tag, rows[0].radial_sb / rows[1].radial_sb, 5, 200));
    r.checks.push_back(range_check("slice expansion ratio" + tag, rows[0].slice / rows[1].slice, 5, 200));
    r.checks.push_back(range_check("symplectic ratio" + tag, rows[0].symplectic / rows[1].symplectic, 5, 200));
  }
  // R^{-1} K_{d+1,0} equals d_tau identically in these coordinates; the O(1/R^2) ratio is
  // measured on the generators that carry corrections.
  r.checks.push_back(err_check("time translation correspondence exact",
                               killing_ratio_dev(MinkKilling::T0, 0, 100.0) +
                                   killing_ratio_dev(MinkKilling::T0, 0, 1000.0), 1e-12));
  double lo = kInf, hi = 0.0;
  for (MinkKilling kind : {MinkKilling::Tj, MinkKilling::K0j}) {
    for (int j = 1; j <= 3; ++j) {
      const double ratio = killing_ratio_dev(kind, j, 100.0) / killing_ratio_dev(kind, j, 1000.0);
      lo = std::min(lo, ratio);
      hi = std::max(hi, ratio);
    }
  }
  r.checks.push_back(range_check("Killing ratio (min over T_j, K_0j)", lo, 50, 200));
  r.checks.push_back(range_check("Killing ratio (max over T_j, K_0j)", hi, 50, 200));
  return r;
}

// ---- criterion 11: Lie brackets ----------------------------------------------

std::vector<GeneratorId> all_generators() {
  std::vector<GeneratorId> g{GeneratorId::time_translation(), GeneratorId::rotation(1, 2),
                             GeneratorId::rotation(1, 3), GeneratorId::rotation(2, 3)};
  for (int j = 1; j <= 3; ++j) g.push_back(GeneratorId::boost0(j));
  for (int j = 1; j <= 3; ++j) g.push_back(GeneratorId::boost_d1(j));
  return g;
}

SuiteResult criterion_brackets() {
  SuiteResult r{"Lie brackets", {}};
  const AdsParams p = make_params(3, 1.0, 0.0);
  const FieldFn f = [](double t, double rho, const Vec3& xi) {
    const double s = std::sin(rho);
    return cplx(std::cos(0.7 * t) * s * s * (1.0 + xi[0] * xi[2]) + 0.3 * s * xi[1],
                std::sin(1.3 * t) * s * (xi[0] - 0.5 * xi[2]));
  };
  Rng rng(1111);
  std::vector<SpacePoint> pts;
  for (int i = 0; i < 20; ++i) {
    pts.push_back({rng.uniform(-1.0, 1.0), rng.uniform(0.2, 1.3), rng.uniform(0.3, 2.8), rng.uniform(0.0, 6.2)});
  }
  const auto gens = all_generators();
  double worst = 0.0;
  for (size_t a = 0; a < gens.size(); ++a) {
    for (size_t b = a + 1; b < gens.size(); ++b) {
      worst = std::max(worst, verify_lie_bracket(gens[a], gens[b], f, pts, p));
    }
  }
  r.checks.push_back(err_check("all 45 generator pairs, 20 points", worst, 1e-5));
  return r;
}

// ---- extra module checks ------------------------------------------------------

SuiteResult extra_specfun() {
  SuiteResult r{"specfun extras", {}};
  double w = 0.0;
  for (int l = 0; l <= 5; ++l) {
    for (double x : {0.3, 2.0, 9.5}) {
      // x^2 (j_l n_l' - n_l j_l') = 1
      const double j = spherical_bessel(BesselKind::J, l, x), n = spherical_bessel(BesselKind::N, l, x);
      const double jp = spherical_bessel(BesselKind::J, l + 1, x), np = spherical_bessel(BesselKind::N, l + 1, x);
      w = std::max(w, std::abs(x * x * (j * np - n * jp) + 1.0));
    }
  }
  r.checks.push_back(err_check("spherical Bessel cross product", w, 1e-12));
  const QuadRule q = gauss_legendre(20);
  double gl = 0.0;
  for (int k = 0; k <= 39; ++k) {
    double s = 0.0;
    for (size_t i = 0; i < q.nodes.size(); ++i) s += q.weights[i] * std::pow(q.nodes[i], k);
    gl = std::max(gl, std::abs(s - (k % 2 ? 0.0 : 2.0 / (k + 1))));
  }
  r.checks.push_back(err_check("Gauss-Legendre exactness to degree 39", gl, 1e-13));
  return r;
}

SuiteResult extra_harmonics() {
  SuiteResult r{"harmonics", {}};
  const AngularGrid g = make_angular_grid(16, 32);
  double orth = 0.0, conj = 0.0;
  for (int l1 = 0; l1 <= 4; ++l1) {
    for (int m1 = -l1; m1 <= l1; ++m1) {
      for (int l2 = 0; l2 <= 4; ++l2) {
        for (int m2 = -l2; m2 <= l2; ++m2) {
          cplx s = 0.0;
          for (size_t i = 0; i < g.theta.size(); ++i) {
            for (double ph : g.phi) {
              s += g.weight_theta[i] * g.weight_phi * std::conj(sph_harm({l1, m1}, g.theta[i], ph)) *
                   sph_harm({l2, m2}, g.theta[i], ph);
            }
          }
          orth = std::max(orth, std::abs(s - (l1 == l2 && m1 == m2 ? 1.0 : 0.0)));
        }
      }
      conj = std::max(conj, std::abs(std::conj(sph_harm({l1, m1}, 0.7, 2.1)) - sph_harm({l1, -m1}, 0.7, 2.1)));
    }
  }
  r.checks.push_back(err_check("orthonormality l <= 4", orth, 1e-13));
  r.checks.push_back(err_check("conj(Y^m) = Y^-m", conj, 1e-14));

  double contig = 0.0;
  for (int l = 0; l <= 5; ++l) {
    for (int m = -l; m <= l; ++m) {
      const ContiguousCoeffs c = contiguous_coeffs(3, l, m);
      for (double th : {0.4, 1.3, 2.6}) {
        const cplx lhs = std::cos(th) * sph_harm({l, m}, th, 0.9);
        cplx rhs = c.kappa_plus * sph_harm({l + 1, m}, th, 0.9);
        if (std::abs(m) <= l - 1) rhs += c.kappa_minus * sph_harm({l - 1, m}, th, 0.9);
        contig = std::max(contig, std::abs(lhs - rhs));
      }
    }
  }
  r.checks.push_back(err_check("cos(theta) Y recursion", contig, 1e-13));

  const EulerAngles a{0.4, 1.2, -0.8};
  const auto rot = rotation_matrix(a);
  double unit = 0.0, pull = 0.0;
  for (int l = 0; l <= 4; ++l) {
    const WignerMatrix d = wigner_d(l, a);
    for (int i = -l; i <= l; ++i) {
      for (int j = -l; j <= l; ++j) {
        cplx s = 0.0;
        for (int k = -l; k <= l; ++k) s += std::conj(d(k, i)) * d(k, j);
        unit = std::max(unit, std::abs(s - (i == j ? 1.0 : 0.0)));
      }
    }
    const Vec3 w = unit_vector(0.9, 2.4);
    Vec3 u{0.0, 0.0, 0.0};  // R^{-1} w = R^T w
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) u[i] += rot[j * 3 + i] * w[j];
    }
    double th, ph;
    angles_of(u, th, ph);
    for (int m = -l; m <= l; ++m) {
      cplx s = 0.0;
      for (int mp = -l; mp <= l; ++mp) s += sph_harm({l, mp}, 0.9, 2.4) * d(mp, m);
      pull = std::max(pull, std::abs(sph_harm({l, m}, th, ph) - s));
    }
  }
  r.checks.push_back(err_check("Wigner D unitarity", unit, 1e-13));
  r.checks.push_back(err_check("Y(R^-1 w) = sum Y D", pull, 1e-12));
  return r;
}

SuiteResult extra_geometry() {
  SuiteResult r{"geometry extras", {}};
  double prod = 0.0;
  for (double msq : {-2.25, -2.0, 0.0, 1.0, 3.7}) {
    const AdsParams p = make_params(3, 1.0, msq);
    prod = std::max(prod, std::abs(p.delta_plus * p.delta_minus + p.mR2()));
  }
  r.checks.push_back(err_check("Delta+ Delta- = -m^2 R^2", prod, 1e-12));
  const AdsParams p = make_params(3, 1.0, 0.0);
  const FieldFn stat = [](double, double rho, const Vec3& xi) { return cplx(std::sin(rho) * xi[2], 0.0); };
  const double tt = std::abs(killing_apply(GeneratorId::time_translation(), stat, {0.3, 0.7, 1.0, 2.0}, p));
  r.checks.push_back(err_check("time translation kills static fields", tt, 1e-9));
  double edge = 0.0;
  for (int j = 1; j <= 3; ++j) {
    for (EmbeddingPair e : {EmbeddingPair{0, j}, EmbeddingPair{4, j}}) {
      edge = std::max(edge, std::abs(killing_coeffs(e, 0.4, kPi / 2, unit_vector(0.8, 1.9), 3).crho));
    }
  }
  r.checks.push_back(err_check("boosts tangent to the boundary", edge, 1e-15));
  return r;
}

SuiteResult extra_minkowski() {
  SuiteResult r{"minkowski extras", {}};
  double w = 0.0;
  for (double E : {2.0, 0.5}) {
    for (int l = 0; l <= 3; ++l) {
      const double m = 1.0, x = 1.7, p = std::sqrt(std::abs(E * E - m * m));
      const double v = x * x * (jcheck(E, l, x, m) * ncheck_deriv(E, l, x, m) -
                                ncheck(E, l, x, m) * jcheck_deriv(E, l, x, m));
      w = std::max(w, std::abs(v * p - 1.0));
    }
  }
  r.checks.push_back(err_check("r^2 W(jcheck, ncheck) = 1/p on both branches", w, 1e-12));

  const MinkSliceRep a{0.5, {{0, 0, {2.0, 0.2, 1.0}, {1.0, 0.3}, {0.2, -0.5}},
                             {1, 1, {1.5, 0.3, 1.0}, {0.4, 0.1}, {-0.3, 0.2}}}};
  const MinkSliceRep b{0.5, {{0, 0, {2.1, 0.25, 1.0}, {0.3, 0.2}, {0.7, 0.1}},
                             {1, 1, {1.6, 0.2, 1.0}, {-0.2, 0.5}, {0.1, 0.9}}}};
  const cplx sm = mink_omega_slice_momentum(a, b).value;
  double sl = 0.0;
  for (double t0 : {0.0, 0.4}) sl = std::max(sl, rel(mink_omega_slice_quadrature(a, b, t0, 60.0).value, sm));
  r.checks.push_back(err_check("Minkowski slice quadrature vs momentum", sl, 1e-7));

  const MinkTubeRep ta{0.5, {{0, 0, {2.0, 0.2, 1.0}, {1.0, 0.3}, {0.2, -0.5}},
                             {1, 1, {1.5, 0.1, 1.0}, {0.4, 0.1}, {-0.3, 0.2}}}};
  const MinkTubeRep tb{0.5, {{0, 0, {-2.05, 0.25, 1.0}, {0.3, 0.2}, {0.7, 0.1}},
                             {1, -1, {-1.55, 0.1, 1.0}, {-0.2, 0.5}, {0.1, 0.9}}}};
  const cplx tm = mink_omega_tube_momentum(ta, tb).value;
  double tu = 0.0;
  for (double rr : {1.0, 2.5}) tu = std::max(tu, rel(mink_omega_tube_quadrature(ta, tb, rr, 80.0).value, tm));
  r.checks.push_back(err_check("Minkowski tube quadrature vs momentum", tu, 1e-7));
  return r;
}

void append(SuiteResult& into, const SuiteResult& from) {
  for (CheckResult c : from.checks) {
    c.name = from.name + ": " + c.name;
    into.checks.push_back(std::move(c));
  }
}

}  // namespace

bool SuiteResult::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass(); });
}

double SuiteResult::max_err() const {
  double e = 0.0;
  for (const auto& c : checks) {
    if (!c.is_range) e = std::max(e, c.value);
  }
  return e;
}

int acceptance_count() { return 11; }

SuiteResult run_criterion(int index) {
  switch (index) {
    case 1: return criterion_specfun();
    case 2: return criterion_ode();
    case 3: return criterion_wronskian();
    case 4: return criterion_norm();
    case 5: return criterion_symplectic();
    case 6: return criterion_magic();
    case 7: return criterion_isometry();
    case 8: return criterion_boundary();
    case 9: return criterion_inversion();
    case 10: return criterion_flat();
    case 11: return criterion_brackets();
  }
  throw IndexError("acceptance criteria are numbered 1..11");
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"specfun", "harmonics", "geometry", "modes",
                                              "expansions", "symplectic", "isometry", "minkowski"};
  return names;
}

bool is_suite(const std::string& name) {
  const auto& n = suite_names();
  return name == "all" || std::find(n.begin(), n.end(), name) != n.end();
}

SuiteResult run_suite(const std::string& name) {
  SuiteResult r{name, {}};
  if (name == "specfun") {
    append(r, criterion_specfun());
    append(r, extra_specfun());
  } else if (name == "harmonics") {
    append(r, extra_harmonics());
  } else if (name == "geometry") {
    append(r, extra_geometry());
    append(r, criterion_brackets());
  } else if (name == "modes") {
    append(r, criterion_ode());
    append(r, criterion_wronskian());
    append(r, criterion_norm());
    append(r, criterion_magic());
  } else if (name == "expansions") {
    append(r, criterion_inversion());
    append(r, criterion_boundary());
  } else if (name == "symplectic") {
    append(r, criterion_symplectic());
  } else if (name == "isometry") {
    append(r, criterion_isometry());
  } else if (name == "minkowski") {
    append(r, extra_minkowski());
    append(r, criterion_flat());
  } else if (name == "all") {
    for (const auto& s : suite_names()) {
      const SuiteResult sub = run_suite(s);
      for (CheckResult c : sub.checks) {
        c.name = s + "/" + c.name;
        r.checks.push_back(std::move(c));
      }
    }
  } else {
    throw IndexError("unknown suite " + name);
  }
  return r;
}

}  // namespace adskg
