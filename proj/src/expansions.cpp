#include "adskg/expansions.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>

#include "adskg/errors.hpp"

namespace adskg {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
const cplx kI{0.0, 1.0};

void require_d3(const AdsParams& params) {
  if (params.d != 3) throw UnsupportedDimension("angular synthesis is implemented for d = 3");
}

double tan_weight(double rho, int d) { return std::pow(std::tan(rho), d - 1); }

// Drop numerically empty entries of a recovered table.
template <class Map, class Mag>
void prune(Map& coeffs, Mag mag) {
  double scale = 0.0;
  for (const auto& [k, v] : coeffs) scale = std::max(scale, mag(v));
  const double cut = 1e-12 * std::max(scale, 1e-300);
  for (auto it = coeffs.begin(); it != coeffs.end();) {
    if (mag(it->second) <= cut) it = coeffs.erase(it);
    else ++it;
  }
}

// Accumulates sum_{lm} g_lm * Y_l^m on the angular grid.
void add_harmonic(std::vector<cplx>& out, size_t offset, const AngularProjector& proj, int l, int m,
                  cplx g) {
  if (g == cplx(0.0)) return;
  const auto& y = proj.harmonic(l, m);
  for (size_t i = 0; i < y.size(); ++i) out[offset + i] += g * y[i];
}

int max_l(const std::map<LabelKey, ABPair>& c) {
  int l = 0;
  for (const auto& [k, v] : c) l = std::max(l, k.l);
  return l;
}

std::vector<double> uniform_times(const OmegaGrid& grid, int n) {
  std::vector<double> t(n);
  const double T = grid.period();
  for (int j = 0; j < n; ++j) t[j] = T * j / n;
  return t;
}

// Time-frequency projection: mean_j e^{i w_k t_j} f(t_j, Omega) for every k in window.
std::map<int, std::vector<cplx>> time_project(const std::vector<cplx>& values,
                                              const std::vector<double>& t, size_t n_ang,
                                              const OmegaGrid& grid, const FrequencyWindow& w) {
  std::map<int, std::vector<cplx>> out;
  const size_t nt = t.size();
  for (int k = w.k_min; k <= w.k_max; ++k) {
    std::vector<cplx> acc(n_ang, 0.0);
    for (size_t j = 0; j < nt; ++j) {
      const cplx ph = std::polar(1.0 / nt, grid.omega(k) * t[j]);
      const cplx* row = &values[j * n_ang];
      for (size_t i = 0; i < n_ang; ++i) acc[i] += ph * row[i];
    }
    out[k] = std::move(acc);
  }
  return out;
}

}  // namespace

double OmegaGrid::period() const { return kTwoPi / d_omega; }

bool TubeRep::is_real(double tol) const {
  for (const auto& [key, v] : coeffs) {
    const auto it = coeffs.find({-key.k, key.l, -key.m});
    const ABPair partner = it == coeffs.end() ? ABPair{} : it->second;
    if (std::abs(std::conj(v.a) - partner.a) > tol || std::abs(std::conj(v.b) - partner.b) > tol) {
      return false;
    }
  }
  return true;
}

bool SliceRep::is_real(double tol) const {
  // phi^+ = phi^-, i.e. the stored conj(phi^-) equals conj(phi^+).
  for (const auto& [key, v] : coeffs) {
    if (std::abs(v.minus_conj - std::conj(v.plus)) > tol) return false;
  }
  return true;
}

FieldSample synth_sample(const SliceRep& rep, const SpacePoint& p, const AdsParams& params) {
  require_d3(params);
  FieldSample s;
  for (const auto& [key, c] : rep.coeffs) {
    const double w = magic_frequency(Branch::Plus, key.k, key.l, params);
    const RadialValue J = jacobi_radial_d(Branch::Plus, key.k, key.l, p.rho, params);
    const cplx y = sph_harm({key.l, key.m}, p.theta, p.phi);
    const cplx e = std::polar(1.0, -w * p.t);
    const cplx pos = c.plus * e * y;
    const cplx neg = c.minus_conj * std::conj(e * y);
    s.value += (pos + neg) * J.value;
    s.dt += (-kI * w * pos + kI * w * neg) * J.value;
    s.drho += (pos + neg) * J.derivative;
  }
  return s;
}

FieldSample synth_sample(const TubeRep& rep, const SpacePoint& p, const AdsParams& params) {
  require_d3(params);
  FieldSample s;
  const RadialKind ka = rep.basis == TubeBasis::S ? RadialKind::Sa : RadialKind::Ca;
  const RadialKind kb = rep.basis == TubeBasis::S ? RadialKind::Sb : RadialKind::Cb;
  for (const auto& [key, c] : rep.coeffs) {
    const double w = rep.grid.omega(key.k);
    const cplx ey = rep.grid.d_omega * std::polar(1.0, -w * p.t) * sph_harm({key.l, key.m}, p.theta, p.phi);
    RadialValue fa{0, 0}, fb{0, 0};
    if (c.a != cplx(0.0)) fa = radial_eval_d(ka, w, key.l, p.rho, params);
    if (c.b != cplx(0.0)) fb = radial_eval_d(kb, w, key.l, p.rho, params);
    const cplx v = c.a * fa.value + c.b * fb.value;
    s.value += ey * v;
    s.dt += -kI * w * ey * v;
    s.drho += ey * (c.a * fa.derivative + c.b * fb.derivative);
  }
  return s;
}

FieldSample synth_sample(const RodRep& rep, const SpacePoint& p, const AdsParams& params) {
  return synth_sample(rod_as_tube(rep), p, params);
}

cplx synth(const SliceRep& rep, const SpacePoint& p, const AdsParams& params) {
  return synth_sample(rep, p, params).value;
}
cplx synth(const TubeRep& rep, const SpacePoint& p, const AdsParams& params) {
  return synth_sample(rep, p, params).value;
}
cplx synth(const RodRep& rep, const SpacePoint& p, const AdsParams& params) {
  return synth_sample(rep, p, params).value;
}

TubeRep s_to_c(const TubeRep& rep, const AdsParams& params) {
  if (rep.basis != TubeBasis::S) throw BasisMismatch("s_to_c expects an S-basis rep");
  TubeRep out{rep.grid, TubeBasis::C, {}};
  for (const auto& [key, c] : rep.coeffs) {
    const TransferMatrix m = transfer_matrix(rep.grid.omega(key.k), key.l, params);
    out.coeffs[key] = {c.a * m.m11 + c.b * m.m21, c.a * m.m12 + c.b * m.m22};
  }
  return out;
}

TubeRep c_to_s(const TubeRep& rep, const AdsParams& params) {
  if (rep.basis != TubeBasis::C) throw BasisMismatch("c_to_s expects a C-basis rep");
  TubeRep out{rep.grid, TubeBasis::S, {}};
  for (const auto& [key, c] : rep.coeffs) {
    const TransferMatrix m = transfer_matrix(rep.grid.omega(key.k), key.l, params);
    const double det = m.det();
    // (a, b) = (ca, cb) M^{-1}
    out.coeffs[key] = {(c.a * m.m22 - c.b * m.m21) / det, (-c.a * m.m12 + c.b * m.m11) / det};
  }
  return out;
}

TubeRep slice_as_tube(const SliceRep& rep, const OmegaGrid& grid, const AdsParams& params) {
  TubeRep out{grid, TubeBasis::S, {}};
  for (const auto& [key, c] : rep.coeffs) {
    const double w = magic_frequency(Branch::Plus, key.k, key.l, params);
    const double kf = w / grid.d_omega;
    const int k = static_cast<int>(std::lround(kf));
    if (std::abs(kf - k) > 1e-9) {
      throw DomainError("magic frequency not on the omega grid");
    }
    // The grid integral carries a factor d_omega.
    out.coeffs[{k, key.l, key.m}].a += c.plus / grid.d_omega;
    out.coeffs[{-k, key.l, -key.m}].a += c.minus_conj / grid.d_omega;
  }
  return out;
}

TubeRep rod_as_tube(const RodRep& rep) {
  TubeRep out{rep.grid, TubeBasis::S, {}};
  for (const auto& [key, a] : rep.coeffs) out.coeffs[key] = {a, 0.0};
  return out;
}

AngularProjector::AngularProjector(const AngularGrid& grid, int l_max) : grid_(grid), l_max_(l_max) {
  const size_t nth = grid.theta.size(), nph = grid.phi.size();
  for (int l = 0; l <= l_max; ++l) {
    for (int m = -l; m <= l; ++m) {
      std::vector<cplx> y(nth * nph);
      std::vector<double> p(nth);
      for (size_t i = 0; i < nth; ++i) {
        p[i] = sph_harm({l, std::abs(m)}, grid.theta[i], 0.0).real();
        for (size_t j = 0; j < nph; ++j) y[i * nph + j] = p[i] * std::polar(1.0, m * grid.phi[j]);
      }
      ylm_[{l, m}] = std::move(y);
      plm_[{l, m}] = std::move(p);
    }
  }
}

const std::vector<cplx>& AngularProjector::harmonic(int l, int m) const {
  const auto it = ylm_.find({l, m});
  if (it == ylm_.end()) throw IndexError("harmonic outside projector range");
  return it->second;
}

std::map<std::pair<int, int>, cplx> AngularProjector::project(const std::vector<cplx>& values) const {
  const size_t nth = grid_.theta.size(), nph = grid_.phi.size();
  // azimuthal Fourier coefficients per theta node
  std::vector<cplx> fm((2 * l_max_ + 1) * nth, 0.0);
  for (int m = -l_max_; m <= l_max_; ++m) {
    std::vector<cplx> e(nph);
    for (size_t j = 0; j < nph; ++j) e[j] = std::polar(grid_.weight_phi, -m * grid_.phi[j]);
    for (size_t i = 0; i < nth; ++i) {
      cplx acc = 0.0;
      const cplx* row = &values[i * nph];
      for (size_t j = 0; j < nph; ++j) acc += e[j] * row[j];
      fm[(m + l_max_) * nth + i] = acc;
    }
  }
  std::map<std::pair<int, int>, cplx> out;
  for (int l = 0; l <= l_max_; ++l) {
    for (int m = -l; m <= l; ++m) {
      const auto& p = plm_.at({l, m});
      cplx acc = 0.0;
      for (size_t i = 0; i < nth; ++i) acc += grid_.weight_theta[i] * p[i] * fm[(m + l_max_) * nth + i];
      out[{l, m}] = acc;
    }
  }
  return out;
}

SliceData make_slice_nodes(double t0, int n_rho, int n_theta, int n_phi) {
  SliceData d;
  d.t0 = t0;
  const QuadRule q = gauss_legendre(n_rho);
  for (int i = 0; i < n_rho; ++i) {
    d.rho.push_back(0.25 * std::numbers::pi * (q.nodes[i] + 1.0));
    d.rho_weight.push_back(0.25 * std::numbers::pi * q.weights[i]);
  }
  d.angles = make_angular_grid(n_theta, n_phi);
  return d;
}

SliceData sample_slice(const SliceRep& rep, double t0, const AdsParams& params, int n_rho,
                       int n_theta, int n_phi) {
  require_d3(params);
  SliceData d = make_slice_nodes(t0, n_rho, n_theta, n_phi);
  int lmax = 0;
  for (const auto& [k, v] : rep.coeffs) lmax = std::max(lmax, k.l);
  const AngularProjector proj(d.angles, lmax);
  const size_t nang = d.angles.theta.size() * d.angles.phi.size();
  d.value.assign(d.rho.size() * nang, 0.0);
  d.dt.assign(d.rho.size() * nang, 0.0);
  for (const auto& [key, c] : rep.coeffs) {
    const double w = magic_frequency(Branch::Plus, key.k, key.l, params);
    const cplx e = std::polar(1.0, -w * t0);
    for (size_t ir = 0; ir < d.rho.size(); ++ir) {
      const double J = jacobi_radial(Branch::Plus, key.k, key.l, d.rho[ir], params);
      add_harmonic(d.value, ir * nang, proj, key.l, key.m, c.plus * e * J);
      add_harmonic(d.value, ir * nang, proj, key.l, -key.m, c.minus_conj * std::conj(e) * J);
      add_harmonic(d.dt, ir * nang, proj, key.l, key.m, -kI * w * c.plus * e * J);
      add_harmonic(d.dt, ir * nang, proj, key.l, -key.m, kI * w * c.minus_conj * std::conj(e) * J);
    }
  }
  return d;
}

SliceRep invert_slice(const SliceData& data, const AdsParams& params, const LabelCutoffs& cutoffs) {
  require_d3(params);
  const AngularProjector proj(data.angles, cutoffs.l_max);
  const size_t nang = data.angles.theta.size() * data.angles.phi.size();
  const size_t nr = data.rho.size();
  std::vector<std::map<std::pair<int, int>, cplx>> pv(nr), pd(nr);
  double data_norm = 0.0;
  for (size_t ir = 0; ir < nr; ++ir) {
    const std::vector<cplx> v(data.value.begin() + ir * nang, data.value.begin() + (ir + 1) * nang);
    const std::vector<cplx> dt(data.dt.begin() + ir * nang, data.dt.begin() + (ir + 1) * nang);
    for (const cplx& x : v) data_norm = std::max(data_norm, std::abs(x));
    pv[ir] = proj.project(v);
    pd[ir] = proj.project(dt);
  }
  SliceRep rep;
  for (int l = 0; l <= cutoffs.l_max; ++l) {
    for (int n = 0; n <= cutoffs.n_max; ++n) {
      const double w = magic_frequency(Branch::Plus, n, l, params);
      const double N = norm_constant(Branch::Plus, n, l, params);
      const cplx f = std::polar(1.0, w * data.t0) / (2.0 * N);
      const cplx dd = kI * std::polar(1.0, w * data.t0) / (2.0 * w * N);
      std::vector<double> radial(nr);
      for (size_t ir = 0; ir < nr; ++ir) {
        radial[ir] = data.rho_weight[ir] * tan_weight(data.rho[ir], params.d) *
                     jacobi_radial(Branch::Plus, n, l, data.rho[ir], params);
      }
      for (int m = -l; m <= l; ++m) {
        cplx plus = 0.0, minus_conj = 0.0;
        for (size_t ir = 0; ir < nr; ++ir) {
          plus += radial[ir] * (f * pv[ir].at({l, m}) + dd * pd[ir].at({l, m}));
          minus_conj += radial[ir] * (std::conj(f) * pv[ir].at({l, -m}) + std::conj(dd) * pd[ir].at({l, -m}));
        }
        rep.coeffs[{n, l, m}] = {plus, minus_conj};
      }
    }
  }
  prune(rep.coeffs, [](const SlicePair& p) { return std::abs(p.plus) + std::abs(p.minus_conj); });

  // Band-limit check on a sub-grid.
  if (data_norm > 0.0) {
    const size_t nth = data.angles.theta.size(), nph = data.angles.phi.size();
    const size_t sth = std::max<size_t>(1, nth / 8), sph = std::max<size_t>(1, nph / 8);
    double resid = 0.0;
    for (size_t ir = 0; ir < nr; ir += 4) {
      for (size_t i = 0; i < nth; i += sth) {
        for (size_t j = 0; j < nph; j += sph) {
          const SpacePoint p{data.t0, data.rho[ir], data.angles.theta[i], data.angles.phi[j]};
          resid = std::max(resid, std::abs(synth(rep, p, params) - data.value[ir * nang + i * nph + j]));
        }
      }
    }
    if (resid > 1e-6 * data_norm) {
      throw BandLimitExceeded("slice data not captured by cutoffs (residual " + std::to_string(resid / data_norm) + ")");
    }
  }
  return rep;
}

int time_samples_for(const FrequencyWindow& w) {
  return 2 * std::max(std::abs(w.k_min), std::abs(w.k_max)) + 2;
}

TubeData sample_tube(const TubeRep& rep, double rho0, const FrequencyWindow& window,
                     const AdsParams& params, int n_theta, int n_phi) {
  require_d3(params);
  TubeData d;
  d.grid = rep.grid;
  d.rho0 = rho0;
  d.t = uniform_times(rep.grid, time_samples_for(window));
  d.angles = make_angular_grid(n_theta, n_phi);
  const AngularProjector proj(d.angles, max_l(rep.coeffs));
  const size_t nang = d.angles.theta.size() * d.angles.phi.size();
  d.value.assign(d.t.size() * nang, 0.0);
  d.drho.assign(d.t.size() * nang, 0.0);
  const RadialKind ka = rep.basis == TubeBasis::S ? RadialKind::Sa : RadialKind::Ca;
  const RadialKind kb = rep.basis == TubeBasis::S ? RadialKind::Sb : RadialKind::Cb;
  for (const auto& [key, c] : rep.coeffs) {
    const double w = rep.grid.omega(key.k);
    RadialValue fa{0, 0}, fb{0, 0};
    if (c.a != cplx(0.0)) fa = radial_eval_d(ka, w, key.l, rho0, params);
    if (c.b != cplx(0.0)) fb = radial_eval_d(kb, w, key.l, rho0, params);
    const cplx v = c.a * fa.value + c.b * fb.value;
    const cplx dv = c.a * fa.derivative + c.b * fb.derivative;
    for (size_t j = 0; j < d.t.size(); ++j) {
      const cplx e = rep.grid.d_omega * std::polar(1.0, -w * d.t[j]);
      add_harmonic(d.value, j * nang, proj, key.l, key.m, e * v);
      add_harmonic(d.drho, j * nang, proj, key.l, key.m, e * dv);
    }
  }
  return d;
}

TubeData sample_rod(const RodRep& rep, double rho0, const FrequencyWindow& window,
                    const AdsParams& params, int n_theta, int n_phi) {
  return sample_tube(rod_as_tube(rep), rho0, window, params, n_theta, n_phi);
}

TubeRep invert_tube(const TubeData& data, const FrequencyWindow& window, const AdsParams& params,
                    TubeBasis basis) {
  require_d3(params);
  if (basis == TubeBasis::C) require_c_modes(params);
  const size_t nang = data.angles.theta.size() * data.angles.phi.size();
  const auto fv = time_project(data.value, data.t, nang, data.grid, window);
  const auto fd = time_project(data.drho, data.t, nang, data.grid, window);
  const AngularProjector proj(data.angles, window.l_max);
  const RadialKind ka = basis == TubeBasis::S ? RadialKind::Sa : RadialKind::Ca;
  const RadialKind kb = basis == TubeBasis::S ? RadialKind::Sb : RadialKind::Cb;
  const double tw = tan_weight(data.rho0, params.d);
  TubeRep rep{data.grid, basis, {}};
  for (int k = window.k_min; k <= window.k_max; ++k) {
    const double w = data.grid.omega(k);
    const auto pv = proj.project(fv.at(k));
    const auto pd = proj.project(fd.at(k));
    for (int l = 0; l <= window.l_max; ++l) {
      const RadialValue fa = radial_eval_d(ka, w, l, data.rho0, params);
      const RadialValue fb = radial_eval_d(kb, w, l, data.rho0, params);
      const double wr = basis == TubeBasis::S ? 2.0 * l + params.d - 2.0 : 2.0 * params.nu;
      const double scale = tw / (data.grid.d_omega * wr);
      for (int m = -l; m <= l; ++m) {
        const cplx v = pv.at({l, m}), dv = pd.at({l, m});
        const cplx a = scale * (fb.derivative * v - fb.value * dv);
        const cplx b = scale * (-fa.derivative * v + fa.value * dv);
        rep.coeffs[{k, l, m}] = {a, b};
      }
    }
  }
  prune(rep.coeffs, [](const ABPair& p) { return std::abs(p.a) + std::abs(p.b); });
  return rep;
}

RodRep invert_rod_interior(const TubeData& data, const FrequencyWindow& window,
                           const AdsParams& params) {
  require_d3(params);
  const size_t nang = data.angles.theta.size() * data.angles.phi.size();
  const auto fv = time_project(data.value, data.t, nang, data.grid, window);
  const AngularProjector proj(data.angles, window.l_max);
  RodRep rep{data.grid, {}};
  double scale = 0.0;
  std::map<LabelKey, cplx> raw;
  for (int k = window.k_min; k <= window.k_max; ++k) {
    const auto pv = proj.project(fv.at(k));
    for (const auto& [lm, v] : pv) {
      raw[{k, lm.first, lm.second}] = v;
      scale = std::max(scale, std::abs(v));
    }
  }
  for (const auto& [key, v] : raw) {
    if (std::abs(v) <= 1e-12 * scale || scale == 0.0) continue;
    const double s = radial_eval(RadialKind::Sa, data.grid.omega(key.k), key.l, data.rho0, params);
    if (std::abs(s) < 1e-10) {
      throw RadialNodeError("S^a vanishes at rho0 for omega=" + std::to_string(data.grid.omega(key.k)) +
                            " l=" + std::to_string(key.l));
    }
    rep.coeffs[key] = v / (data.grid.d_omega * s);
  }
  return rep;
}

int floor_nu(const AdsParams& params) { return static_cast<int>(std::floor(params.nu)); }

std::vector<double> taylor_coeffs(Branch branch, double omega, int l, const AdsParams& params,
                                  int a_max) {
  if (a_max > 30) throw DomainError("taylor_coeffs supports a_max <= 30");
  const HyperParams h =
      hyper_params(branch == Branch::Plus ? RadialKind::Ca : RadialKind::Cb, omega, l, params);
  // sin^l = (1 - cos^2)^{l/2}: binomial-type coefficients
  std::vector<double> s(a_max + 1), f(a_max + 1);
  double fact = 1.0;
  for (int b = 0; b <= a_max; ++b) {
    if (b > 0) fact *= b;
    s[b] = ((b % 2 == 0) ? 1.0 : -1.0) / fact * pochhammer(0.5 * l + 1.0 - b, b);
    f[b] = pochhammer(h.alpha, b) * pochhammer(h.beta, b) / (pochhammer(h.gamma, b) * fact);
  }
  std::vector<double> d(a_max + 1, 0.0);
  for (int a = 0; a <= a_max; ++a) {
    for (int b = 0; b <= a; ++b) d[a] += s[b] * f[a - b];
  }
  return d;
}

double twisted_derivative(RadialKind kind, double omega, int l, double rho,
                          const AdsParams& params, int a_max) {
  require_c_modes(params);
  if (kind != RadialKind::Ca && kind != RadialKind::Cb) {
    throw DomainError("twisted derivative is evaluated on C modes");
  }
  const int fn = floor_nu(params);
  const double x = std::cos(rho);
  const bool plus = kind == RadialKind::Ca;
  const auto d = taylor_coeffs(plus ? Branch::Plus : Branch::Minus, omega, l, params, a_max);
  double sum = 0.0;
  for (int a = 0; a <= a_max; ++a) {
    const double dp = double_pochhammer((plus ? 2.0 * params.nu : 0.0) + 2.0 * a - 2.0 * fn, fn + 1);
    if (dp == 0.0) continue;
    const double power = plus ? 2.0 * a : 2.0 * a - 2.0 * params.nu;
    sum += d[a] * dp * std::pow(x, power);
  }
  return sum;
}

double twisted_boundary_limit(RadialKind kind, const AdsParams& params) {
  if (!params.c_modes_valid) throw IntegerNu("twisted derivative limit needs noninteger nu");
  if (kind == RadialKind::Cb) return 0.0;
  if (kind != RadialKind::Ca) throw DomainError("boundary limit is defined for C modes");
  const int fn = floor_nu(params);
  return double_pochhammer(2.0 * params.nu - 2.0 * fn, fn + 1);
}

double rescaled_boundary_limit(RadialKind kind, const AdsParams& params) {
  require_c_modes(params);
  // cos^{-Delta_-} C^a ~ cos^{2 nu} -> 0; cos^{-Delta_-} C^b -> d^-_0 = 1.
  if (kind == RadialKind::Ca) return 0.0;
  if (kind == RadialKind::Cb) return 1.0;
  throw DomainError("rescaled boundary limit is defined for C modes");
}

namespace {

BoundaryData make_boundary_grid(const OmegaGrid& grid, const FrequencyWindow& window, int n_theta,
                                int n_phi) {
  BoundaryData d;
  d.grid = grid;
  d.t = uniform_times(grid, time_samples_for(window));
  d.angles = make_angular_grid(n_theta, n_phi);
  const size_t n = d.t.size() * d.angles.theta.size() * d.angles.phi.size();
  d.minus.assign(n, 0.0);
  d.plus.assign(n, 0.0);
  return d;
}

}  // namespace

BoundaryData boundary_data(const TubeRep& rep_in, const FrequencyWindow& window,
                           const AdsParams& params, int n_theta, int n_phi) {
  require_d3(params);
  if (!params.c_modes_valid) throw IntegerNu("boundary data needs noninteger nu");
  const TubeRep rep = rep_in.basis == TubeBasis::C ? rep_in : s_to_c(rep_in, params);
  BoundaryData d = make_boundary_grid(rep.grid, window, n_theta, n_phi);
  const AngularProjector proj(d.angles, max_l(rep.coeffs));
  const size_t nang = d.angles.theta.size() * d.angles.phi.size();
  const double lim_a = twisted_boundary_limit(RadialKind::Ca, params);
  const double lim_b = twisted_boundary_limit(RadialKind::Cb, params);
  const double res_a = rescaled_boundary_limit(RadialKind::Ca, params);
  const double res_b = rescaled_boundary_limit(RadialKind::Cb, params);
  for (const auto& [key, c] : rep.coeffs) {
    const double w = rep.grid.omega(key.k);
    for (size_t j = 0; j < d.t.size(); ++j) {
      const cplx e = rep.grid.d_omega * std::polar(1.0, -w * d.t[j]);
      add_harmonic(d.minus, j * nang, proj, key.l, key.m, e * (c.a * res_a + c.b * res_b));
      add_harmonic(d.plus, j * nang, proj, key.l, key.m, e * (c.a * lim_a + c.b * lim_b));
    }
  }
  return d;
}

TubeRep boundary_reconstruct(const BoundaryData& data, const FrequencyWindow& window,
                             const AdsParams& params) {
  require_d3(params);
  if (!params.c_modes_valid) throw IntegerNu("boundary reconstruction needs noninteger nu");
  const size_t nang = data.angles.theta.size() * data.angles.phi.size();
  const auto fm = time_project(data.minus, data.t, nang, data.grid, window);
  const auto fp = time_project(data.plus, data.t, nang, data.grid, window);
  const AngularProjector proj(data.angles, window.l_max);
  const double lim_a = twisted_boundary_limit(RadialKind::Ca, params);
  TubeRep rep{data.grid, TubeBasis::C, {}};
  for (int k = window.k_min; k <= window.k_max; ++k) {
    const auto pm = proj.project(fm.at(k));
    const auto pp = proj.project(fp.at(k));
    for (const auto& [lm, v] : pm) {
      rep.coeffs[{k, lm.first, lm.second}] = {pp.at(lm) / (data.grid.d_omega * lim_a),
                                              v / data.grid.d_omega};
    }
  }
  prune(rep.coeffs, [](const ABPair& p) { return std::abs(p.a) + std::abs(p.b); });
  return rep;
}

BoundaryData rod_boundary_data(const RodRep& rep, const FrequencyWindow& window,
                               const AdsParams& params, int n_theta, int n_phi) {
  require_d3(params);
  require_c_modes(params);
  BoundaryData d = make_boundary_grid(rep.grid, window, n_theta, n_phi);
  int lmax = 0;
  for (const auto& [k, v] : rep.coeffs) lmax = std::max(lmax, k.l);
  const AngularProjector proj(d.angles, lmax);
  const size_t nang = d.angles.theta.size() * d.angles.phi.size();
  for (const auto& [key, a] : rep.coeffs) {
    const double w = rep.grid.omega(key.k);
    const double m12 = transfer_matrix(w, key.l, params).m12;
    for (size_t j = 0; j < d.t.size(); ++j) {
      const cplx e = rep.grid.d_omega * std::polar(1.0, -w * d.t[j]);
      add_harmonic(d.minus, j * nang, proj, key.l, key.m, e * a * m12);
    }
  }
  return d;
}

RodRep rod_boundary_reconstruct(const BoundaryData& data, const FrequencyWindow& window,
                                const AdsParams& params) {
  require_d3(params);
  require_c_modes(params);
  const size_t nang = data.angles.theta.size() * data.angles.phi.size();
  const auto fm = time_project(data.minus, data.t, nang, data.grid, window);
  const AngularProjector proj(data.angles, window.l_max);
  std::map<LabelKey, cplx> raw;
  double scale = 0.0;
  for (int k = window.k_min; k <= window.k_max; ++k) {
    for (const auto& [lm, v] : proj.project(fm.at(k))) {
      raw[{k, lm.first, lm.second}] = v;
      scale = std::max(scale, std::abs(v));
    }
  }
  RodRep rep{data.grid, {}};
  for (const auto& [key, v] : raw) {
    if (scale == 0.0 || std::abs(v) <= 1e-12 * scale) continue;
    const double w = data.grid.omega(key.k);
    const double m12 = transfer_matrix(w, key.l, params).m12;
    if (std::abs(m12) < 1e-10) {
      throw MagicFrequencyBlind("boundary value blind at omega=" + std::to_string(w) +
                                " l=" + std::to_string(key.l));
    }
    rep.coeffs[key] = v / (data.grid.d_omega * m12);
  }
  return rep;
}

void write_rep(std::ostream& os, const RepFile& f) {
  os << "adskg-rep v1 d=" << f.params.d << " R=" << std::setprecision(17) << f.params.R
     << " msq=" << f.params.m_sq << " domega=" << f.grid.d_omega << "\n";
  for (const auto& [k, v] : f.coeffs) {
    os << f.basis << ' ' << k.k << ' ' << k.l << ' ' << k.m << ' ' << v.a.real() << ' '
       << v.a.imag() << ' ' << v.b.real() << ' ' << v.b.imag() << "\n";
  }
}

RepFile read_rep(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw ParseError("empty rep file");
  std::istringstream hs(line);
  std::string magic, version;
  hs >> magic >> version;
  if (magic != "adskg-rep") throw ParseError("missing adskg-rep header");
  if (version != "v1") throw ParseError("unsupported rep version '" + version + "'");
  int d = -1;
  double R = NAN, msq = NAN, domega = NAN;
  std::string tok;
  while (hs >> tok) {
    const auto eq = tok.find('=');
    if (eq == std::string::npos) throw ParseError("bad header token '" + tok + "'");
    const std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
    try {
      if (key == "d") d = std::stoi(val);
      else if (key == "R") R = std::stod(val);
      else if (key == "msq") msq = std::stod(val);
      else if (key == "domega") domega = std::stod(val);
      else throw ParseError("unknown header key '" + key + "'");
    } catch (const std::logic_error&) {
      throw ParseError("bad header value '" + tok + "'");
    }
  }
  if (d < 0 || std::isnan(R) || std::isnan(msq) || std::isnan(domega)) {
    throw ParseError("incomplete header");
  }
  RepFile f;
  try {
    f.params = make_params(d, R, msq);
  } catch (const Error& e) {
    throw ParseError(std::string("invalid parameters: ") + e.what());
  }
  f.grid.d_omega = domega;
  int lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string basis;
    LabelKey key;
    double ar, ai, br, bi;
    if (!(ls >> basis >> key.k >> key.l >> key.m >> ar >> ai >> br >> bi)) {
      throw ParseError("malformed line " + std::to_string(lineno));
    }
    if (basis != "S" && basis != "C" && basis != "J" && basis != "rod") {
      throw ParseError("unknown basis '" + basis + "'");
    }
    if (!f.basis.empty() && basis != f.basis) throw ParseError("mixed bases in one file");
    if (key.l < 0 || std::abs(key.m) > key.l) throw ParseError("bad label on line " + std::to_string(lineno));
    f.basis = basis;
    f.coeffs[key] = {{ar, ai}, {br, bi}};
  }
  if (f.basis.empty()) f.basis = "S";
  if (f.basis != "J" && !(domega > 0.0)) throw ParseError("domega must be positive");
  return f;
}

RepFile to_file(const TubeRep& rep, const AdsParams& params) {
  RepFile f{params, rep.basis == TubeBasis::S ? "S" : "C", rep.grid, rep.coeffs};
  return f;
}

RepFile to_file(const SliceRep& rep, const AdsParams& params) {
  RepFile f{params, "J", OmegaGrid{0.0}, {}};
  for (const auto& [k, v] : rep.coeffs) f.coeffs[k] = {v.plus, v.minus_conj};
  return f;
}

RepFile to_file(const RodRep& rep, const AdsParams& params) {
  RepFile f{params, "rod", rep.grid, {}};
  for (const auto& [k, v] : rep.coeffs) f.coeffs[k] = {v, 0.0};
  return f;
}

TubeRep tube_from_file(const RepFile& f) {
  if (f.basis != "S" && f.basis != "C") throw BasisMismatch("file does not hold a tube rep");
  return {f.grid, f.basis == "S" ? TubeBasis::S : TubeBasis::C, f.coeffs};
}

SliceRep slice_from_file(const RepFile& f) {
  if (f.basis != "J") throw BasisMismatch("file does not hold a slice rep");
  SliceRep r;
  for (const auto& [k, v] : f.coeffs) r.coeffs[k] = {v.a, v.b};
  return r;
}

RodRep rod_from_file(const RepFile& f) {
  if (f.basis != "rod") throw BasisMismatch("file does not hold a rod rep");
  RodRep r{f.grid, {}};
  for (const auto& [k, v] : f.coeffs) r.coeffs[k] = v.a;
  return r;
}

}  // namespace adskg
