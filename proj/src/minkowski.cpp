#include "adskg/minkowski.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "adskg/errors.hpp"

namespace adskg {

namespace {

constexpr double kPi = std::numbers::pi;
const cplx kI{0.0, 1.0};
constexpr double kCut = 6.0;  // envelope half-width in units of width
constexpr int kEnvNodes = 96;

double momentum(double E, double m) { return std::sqrt(std::abs(E * E - m * m)); }

// i_nu'(x) = i_{nu-1}(x) - (nu+1)/x i_nu(x)
double modified_i_deriv(int nu, double x) {
  return modified_spherical_i(nu - 1, x) - (nu + 1.0) / x * modified_spherical_i(nu, x);
}

double bessel_deriv(BesselKind kind, int l, double x) {
  if (l == 0) return -spherical_bessel(kind, 1, x);
  return spherical_bessel(kind, l - 1, x) - (l + 1.0) / x * spherical_bessel(kind, l, x);
}

struct Node {
  double x, w;
};

// Quadrature nodes carrying the envelope weight g(x) dx.
std::vector<Node> envelope_nodes(const Envelope& e, double lo_clip) {
  if (e.width == 0.0) return {{e.center, e.weight}};
  const double lo = std::max(lo_clip, e.center - kCut * e.width);
  const double hi = e.center + kCut * e.width;
  const QuadRule q = gauss_legendre(kEnvNodes);
  std::vector<Node> out;
  for (size_t i = 0; i < q.nodes.size(); ++i) {
    const double x = 0.5 * (hi - lo) * q.nodes[i] + 0.5 * (hi + lo);
    const double g = std::exp(-0.5 * std::pow((x - e.center) / e.width, 2));
    out.push_back({x, 0.5 * (hi - lo) * q.weights[i] * g});
  }
  return out;
}

double envelope_value(const Envelope& e, double x) {
  if (std::abs(x - e.center) > kCut * e.width) return 0.0;
  return std::exp(-0.5 * std::pow((x - e.center) / e.width, 2));
}

void check_tube_envelope(const Envelope& e, double m) {
  if (e.width == 0.0 || m == 0.0) return;
  const double lo = e.center - kCut * e.width, hi = e.center + kCut * e.width;
  for (double thr : {-m, m}) {
    if (lo < thr && thr < hi) throw DomainError("energy envelope straddles the mass threshold");
  }
}

// int over the overlap of two envelopes of f(x) g1(x) g2(s x), s = +-1.
template <class F>
double overlap_integral(const Envelope& a, const Envelope& b, double s, F f) {
  if (a.width == 0.0 || b.width == 0.0) {
    if (a.width != 0.0 || b.width != 0.0) throw DomainError("cannot pair a cell with an envelope");
    if (std::abs(a.center - s * b.center) > 1e-12 * std::max(1.0, std::abs(a.center))) return 0.0;
    return a.weight * f(a.center);
  }
  const double lo = std::max(a.center - kCut * a.width, s * b.center - kCut * b.width);
  const double hi = std::min(a.center + kCut * a.width, s * b.center + kCut * b.width);
  if (hi <= lo) return 0.0;
  const QuadRule q = gauss_legendre(kEnvNodes);
  double sum = 0.0;
  for (size_t i = 0; i < q.nodes.size(); ++i) {
    const double x = 0.5 * (hi - lo) * q.nodes[i] + 0.5 * (hi + lo);
    sum += q.weights[i] * f(x) * envelope_value(a, x) * envelope_value(b, s * x);
  }
  return 0.5 * (hi - lo) * sum;
}

int max_l_of(const MinkSliceRep& a, const MinkSliceRep& b) {
  int l = 0;
  for (const auto& c : a.components) l = std::max(l, c.l);
  for (const auto& c : b.components) l = std::max(l, c.l);
  return l;
}

int max_l_of(const MinkTubeRep& a, const MinkTubeRep& b) {
  int l = 0;
  for (const auto& c : a.components) l = std::max(l, c.l);
  for (const auto& c : b.components) l = std::max(l, c.l);
  return l;
}

// Field samples on an angular grid for fixed (t, r).
template <class Rep, class SampleFn>
std::vector<FieldSample> on_sphere(const Rep& rep, const AngularGrid& g, SampleFn sample) {
  std::vector<FieldSample> out;
  out.reserve(g.theta.size() * g.phi.size());
  for (double th : g.theta) {
    for (double ph : g.phi) out.push_back(sample(rep, th, ph));
  }
  return out;
}

}  // namespace

double jcheck(double E, int l, double r, double m_field) {
  const double p = momentum(E, m_field);
  const double x = p * r;
  if (E * E - m_field * m_field >= 0.0) return spherical_bessel(BesselKind::J, l, x);
  if (x == 0.0) return l == 0 ? 1.0 : 0.0;
  return modified_spherical_i(l, x);
}

double ncheck(double E, int l, double r, double m_field) {
  const double p = momentum(E, m_field);
  const double x = p * r;
  if (x <= 0.0) throw DomainError("ncheck needs p r > 0");
  if (E * E - m_field * m_field >= 0.0) return spherical_bessel(BesselKind::N, l, x);
  return ((l + 1) % 2 == 0 ? 1.0 : -1.0) * modified_spherical_i(-l - 1, x);
}

double jcheck_deriv(double E, int l, double r, double m_field) {
  const double p = momentum(E, m_field);
  const double x = p * r;
  if (E * E - m_field * m_field >= 0.0) {
    if (x == 0.0) return l == 1 ? p / 3.0 : 0.0;
    return p * bessel_deriv(BesselKind::J, l, x);
  }
  if (x == 0.0) return l == 1 ? p / 3.0 : 0.0;
  return p * modified_i_deriv(l, x);
}

double ncheck_deriv(double E, int l, double r, double m_field) {
  const double p = momentum(E, m_field);
  const double x = p * r;
  if (x <= 0.0) throw DomainError("ncheck needs p r > 0");
  if (E * E - m_field * m_field >= 0.0) return p * bessel_deriv(BesselKind::N, l, x);
  return ((l + 1) % 2 == 0 ? 1.0 : -1.0) * p * modified_i_deriv(-l - 1, x);
}

FieldSample mink_synth_slice_sample(const MinkSliceRep& rep, const MinkPoint& x) {
  FieldSample s;
  const double norm = 1.0 / std::sqrt(2.0 * kPi);
  for (const auto& c : rep.components) {
    const cplx y = sph_harm({c.l, c.m}, x.theta, x.phi);
    for (const Node& nd : envelope_nodes(c.p, 0.0)) {
      const double p = nd.x;
      const double E = std::sqrt(p * p + rep.m_field * rep.m_field);
      const double pref = nd.w * 2.0 * p * norm;
      const double j = spherical_bessel(BesselKind::J, c.l, p * x.r);
      const double dj = x.r == 0.0 ? (c.l == 1 ? p / 3.0 : 0.0) : p * bessel_deriv(BesselKind::J, c.l, p * x.r);
      const cplx e = std::polar(1.0, -E * x.t);
      const cplx pos = c.plus * e * y, neg = c.minus_conj * std::conj(e * y);
      s.value += pref * j * (pos + neg);
      s.dt += pref * j * (-kI * E * pos + kI * E * neg);
      s.drho += pref * dj * (pos + neg);
    }
  }
  return s;
}

FieldSample mink_synth_tube_sample(const MinkTubeRep& rep, const MinkPoint& x) {
  FieldSample s;
  for (const auto& c : rep.components) {
    check_tube_envelope(c.E, rep.m_field);
    const cplx y = sph_harm({c.l, c.m}, x.theta, x.phi);
    for (const Node& nd : envelope_nodes(c.E, -1e300)) {
      const double E = nd.x;
      const double p = momentum(E, rep.m_field);
      const cplx ey = nd.w * p / (4.0 * kPi) * std::polar(1.0, -E * x.t) * y;
      cplx v = c.a * jcheck(E, c.l, x.r, rep.m_field);
      cplx dv = c.a * jcheck_deriv(E, c.l, x.r, rep.m_field);
      if (c.b != cplx(0.0)) {
        v += c.b * ncheck(E, c.l, x.r, rep.m_field);
        dv += c.b * ncheck_deriv(E, c.l, x.r, rep.m_field);
      }
      s.value += ey * v;
      s.dt += -kI * E * ey * v;
      s.drho += ey * dv;
    }
  }
  return s;
}

cplx mink_synth_slice(const MinkSliceRep& rep, const MinkPoint& x) {
  return mink_synth_slice_sample(rep, x).value;
}

cplx mink_synth_tube(const MinkTubeRep& rep, const MinkPoint& x) {
  return mink_synth_tube_sample(rep, x).value;
}

SymplecticValue mink_omega_slice_quadrature(const MinkSliceRep& eta, const MinkSliceRep& zeta,
                                            double t0, double r_max) {
  const int l = max_l_of(eta, zeta);
  const AngularGrid g = make_angular_grid(l + 2, 2 * l + 4);
  const QuadRule q = gauss_legendre(256);
  cplx total = 0.0;
  for (size_t i = 0; i < q.nodes.size(); ++i) {
    const double r = 0.5 * r_max * (q.nodes[i] + 1.0);
    auto sample = [&](const MinkSliceRep& rep, double th, double ph) {
      return mink_synth_slice_sample(rep, {t0, r, th, ph});
    };
    const auto a = on_sphere(eta, g, sample);
    const auto b = on_sphere(zeta, g, sample);
    cplx ang = 0.0;
    for (size_t it = 0; it < g.theta.size(); ++it) {
      for (size_t ip = 0; ip < g.phi.size(); ++ip) {
        const size_t k = it * g.phi.size() + ip;
        ang += g.weight_theta[it] * g.weight_phi * (a[k].value * b[k].dt - b[k].value * a[k].dt);
      }
    }
    total += 0.5 * r_max * q.weights[i] * r * r * ang;
  }
  return {-0.5 * total};
}

SymplecticValue mink_omega_slice_momentum(const MinkSliceRep& eta, const MinkSliceRep& zeta) {
  cplx sum = 0.0;
  const double m = eta.m_field;
  for (const auto& e : eta.components) {
    for (const auto& z : zeta.components) {
      if (e.l != z.l || e.m != z.m) continue;
      const cplx x = e.minus_conj * z.plus - e.plus * z.minus_conj;
      if (x == cplx(0.0)) continue;
      sum += x * overlap_integral(e.p, z.p, 1.0, [m](double p) { return std::sqrt(p * p + m * m); });
    }
  }
  return {kI * sum};
}

SymplecticValue mink_omega_tube_quadrature(const MinkTubeRep& eta, const MinkTubeRep& zeta,
                                           double r, double t_max) {
  const int l = max_l_of(eta, zeta);
  const AngularGrid g = make_angular_grid(l + 2, 2 * l + 4);
  double e_max = 0.0;
  for (const auto* rep : {&eta, &zeta}) {
    for (const auto& c : rep->components) {
      e_max = std::max(e_max, std::abs(c.E.center) + kCut * c.E.width);
    }
  }
  const int n_t = 64 + static_cast<int>(2.0 * e_max * t_max);
  const QuadRule q = gauss_legendre(n_t);
  cplx total = 0.0;
  for (int i = 0; i < n_t; ++i) {
    const double t = t_max * q.nodes[i];
    auto sample = [&](const MinkTubeRep& rep, double th, double ph) {
      return mink_synth_tube_sample(rep, {t, r, th, ph});
    };
    const auto a = on_sphere(eta, g, sample);
    const auto b = on_sphere(zeta, g, sample);
    cplx ang = 0.0;
    for (size_t it = 0; it < g.theta.size(); ++it) {
      for (size_t ip = 0; ip < g.phi.size(); ++ip) {
        const size_t k = it * g.phi.size() + ip;
        ang += g.weight_theta[it] * g.weight_phi * (a[k].value * b[k].drho - b[k].value * a[k].drho);
      }
    }
    total += t_max * q.weights[i] * ang;
  }
  return {0.5 * r * r * total};
}

SymplecticValue mink_omega_tube_momentum(const MinkTubeRep& eta, const MinkTubeRep& zeta) {
  cplx sum = 0.0;
  const double m = eta.m_field;
  for (const auto& e : eta.components) {
    for (const auto& z : zeta.components) {
      if (e.l != z.l || e.m != -z.m) continue;
      const cplx x = e.a * z.b - e.b * z.a;
      if (x == cplx(0.0)) continue;
      sum += x * overlap_integral(e.E, z.E, -1.0,
                                  [m](double E) { return momentum(E, m) / (16.0 * kPi); });
    }
  }
  return {sum};
}

double flat_slice_cell(const AdsParams& params, int n, int l) {
  const double w = magic_frequency(Branch::Plus, n, l, params);
  const FlatLabels f = flat_labels(params, w);
  return 2.0 * f.omega_tilde / (params.R * f.p_tilde);
}

double flat_slice_factor(const AdsParams& params, int n, int l) {
  const double w = magic_frequency(Branch::Plus, n, l, params);
  const FlatLabels f = flat_labels(params, w);
  return flat_slice_cell(params, n, l) * 2.0 * f.p_tilde * std::pow(f.p_R, l) /
         (std::sqrt(2.0 * kPi) * double_factorial(2 * l + 1));
}

double flat_tube_factor_a(const AdsParams& params, double omega, int l) {
  const FlatLabels f = flat_labels(params, omega);
  return f.p_tilde * std::pow(f.p_R, l) / (4.0 * kPi * params.R * double_factorial(2 * l + 1));
}

double flat_tube_factor_b(const AdsParams& params, double omega, int l) {
  const FlatLabels f = flat_labels(params, omega);
  return f.p_tilde * std::pow(f.p_R, -l - 1) * double_factorial(2 * l - 1) / (4.0 * kPi * params.R);
}

namespace {

// max that keeps NaN, so a broken evaluation cannot hide inside a maximum
double nan_max(double a, double b) { return (b != b || b > a) ? b : a; }

}  // namespace

std::vector<FlatLimitRow> flat_limit_compare(const std::vector<double>& radii,
                                             const FlatLimitSetup& setup) {
  std::vector<FlatLimitRow> rows;
  const double m = setup.m_field;
  const int n_r = 25;
  for (double R : radii) {
    const AdsParams params = make_params(3, R, m * m);
    FlatLimitRow row;
    row.R = R;

    // (i) radial functions at omega = omega~ R
    const double w = setup.omega_tilde * R;
    const FlatLabels fl = flat_labels(params, w);
    for (int l = 0; l <= 2; ++l) {
      double ea = 0.0, eb = 0.0, sa = 0.0, sb = 0.0;
      for (int i = 0; i < n_r; ++i) {
        const double r = setup.r_lo + (setup.r_hi - setup.r_lo) * i / (n_r - 1);
        const double rho = r / R;
        const double a = radial_eval(RadialKind::Sa, w, l, rho, params) * std::pow(fl.p_R, l) /
                         double_factorial(2 * l + 1);
        const double b = radial_eval(RadialKind::Sb, w, l, rho, params) *
                         double_factorial(2 * l - 1) / std::pow(fl.p_R, l + 1);
        const double ja = jcheck(setup.omega_tilde, l, r, m);
        const double nb = ncheck(setup.omega_tilde, l, r, m);
        ea = nan_max(ea, std::abs(a - ja));
        eb = nan_max(eb, std::abs(b - nb));
        sa = nan_max(sa, std::abs(ja));
        sb = nan_max(sb, std::abs(nb));
      }
      row.radial_sa = nan_max(row.radial_sa, ea / sa);
      row.radial_sb = nan_max(row.radial_sb, eb / sb);
    }

    // (ii) three Jacobi labels near omega~ against matching Minkowski cells
    const int n0 = std::max(1, static_cast<int>(std::lround((w - params.delta_plus) / 2.0)));
    const LabelKey labels[3] = {{n0, 0, 0}, {n0 + 1, 1, 1}, {n0 - 1, 2, -1}};
    const cplx plus[3] = {{1.0, 0.5}, {-0.3, 0.8}, {0.6, -0.2}};
    const cplx minus[3] = {{0.2, -0.4}, {0.7, 0.1}, {-0.5, 0.3}};
    SliceRep ads;
    MinkSliceRep mink{m, {}};
    for (int i = 0; i < 3; ++i) {
      const LabelKey& k = labels[i];
      const double f = flat_slice_factor(params, k.k, k.l);
      ads.coeffs[k] = {f * plus[i], f * minus[i]};
      const FlatLabels lab = flat_labels(params, magic_frequency(Branch::Plus, k.k, k.l, params));
      mink.components.push_back(
          {k.l, k.m, Envelope{lab.p_tilde, 0.0, flat_slice_cell(params, k.k, k.l)}, plus[i], minus[i]});
    }
    double es = 0.0, ss = 0.0;
    for (int i = 0; i < n_r; ++i) {
      const double r = setup.r_lo + (setup.r_hi - setup.r_lo) * i / (n_r - 1);
      for (int j = 0; j < 4; ++j) {
        const double th = 0.3 + 0.6 * j, ph = 0.5 + 1.3 * j;
        const cplx va = synth(ads, {setup.tau / R, r / R, th, ph}, params);
        const cplx vm = mink_synth_slice(mink, {setup.tau, r, th, ph});
        es = nan_max(es, std::abs(va - vm));
        ss = nan_max(ss, std::abs(vm));
      }
    }
    row.slice = es / ss;

    // (iii) per-label slice symplectic weights
    for (const LabelKey& k : labels) {
      const double wk = magic_frequency(Branch::Plus, k.k, k.l, params);
      const double f = flat_slice_factor(params, k.k, k.l);
      const double ads_w = wk * R * R * norm_constant(Branch::Plus, k.k, k.l, params) * f * f;
      const double mink_w = flat_slice_cell(params, k.k, k.l) * wk / R;
      row.symplectic = nan_max(row.symplectic, std::abs(ads_w - mink_w) / mink_w);
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace adskg
