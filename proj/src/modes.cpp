#include "adskg/modes.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "adskg/errors.hpp"
#include "adskg/harmonics.hpp"

namespace adskg {

namespace {

constexpr double kHalfPi = 0.5 * std::numbers::pi;
constexpr double kSwitchRho = 0.25 * std::numbers::pi;

bool near_nonpositive_integer(double a) {
  return a <= 0.5 && std::abs(a - std::round(a)) < 1e-12 * std::max(1.0, std::abs(a));
}

bool is_c_kind(RadialKind k) { return k == RadialKind::Ca || k == RadialKind::Cb; }

// sign * sin^a cos^b F(x(rho)) and its rho-derivative; x = sin^2 or cos^2.
RadialValue product_form(double sign, double a, double b, const HyperParams& h, bool x_is_sin,
                         double rho, const SeriesPolicy& policy) {
  const double s = std::sin(rho), c = std::cos(rho);
  const double x = x_is_sin ? s * s : c * c;
  const double dx = (x_is_sin ? 2.0 : -2.0) * s * c;
  const SeriesValue F = hyp2f1_with_derivative(h.alpha, h.beta, h.gamma, x, policy);
  const double sa = std::pow(s, a), cb = std::pow(c, b);
  double dpref = 0.0;
  if (a != 0.0) dpref += a * std::pow(s, a - 1.0) * c * cb;
  if (b != 0.0) dpref -= b * sa * std::pow(c, b - 1.0) * s;
  return {sign * sa * cb * F.value, sign * (dpref * F.value + sa * cb * F.derivative * dx)};
}

RadialValue direct_eval(RadialKind kind, double omega, int l, double rho,
                        const AdsParams& params, const SeriesPolicy& policy) {
  const HyperParams h = hyper_params(kind, omega, l, params);
  switch (kind) {
    case RadialKind::Sa:
      return product_form(1.0, l, params.delta_plus, h, true, rho, policy);
    case RadialKind::Sb:
      return product_form(-1.0, 2.0 - l - params.d, params.delta_plus, h, true, rho, policy);
    case RadialKind::Ca:
      return product_form(1.0, l, params.delta_plus, h, false, rho, policy);
    case RadialKind::Cb:
      return product_form(1.0, l, params.delta_minus, h, false, rho, policy);
  }
  return {0.0, 0.0};
}

}  // namespace

HyperParams hyper_params(RadialKind kind, double omega, int l, const AdsParams& params) {
  const double alpha = 0.5 * (l + params.delta_plus - omega);
  const double beta = 0.5 * (l + params.delta_plus + omega);
  const double gamma = l + 0.5 * params.d;
  switch (kind) {
    case RadialKind::Sa: return {alpha, beta, gamma};
    case RadialKind::Sb: return {alpha - gamma + 1.0, beta - gamma + 1.0, 2.0 - gamma};
    case RadialKind::Ca: require_c_modes(params); return {alpha, beta, 1.0 + params.nu};
    case RadialKind::Cb:
      require_c_modes(params);
      return {alpha - params.nu, beta - params.nu, 1.0 - params.nu};
  }
  return {0, 0, 0};
}

double weighted_wronskian(const RadialValue& fa, const RadialValue& fb, double rho, int d) {
  return std::pow(std::tan(rho), d - 1) * (fa.value * fb.derivative - fb.value * fa.derivative);
}

TransferMatrix transfer_matrix(double omega, int l, const AdsParams& params) {
  require_c_modes(params);
  const SeriesPolicy policy;
  const double r = kSwitchRho;
  const RadialValue sa = direct_eval(RadialKind::Sa, omega, l, r, params, policy);
  const RadialValue sb = direct_eval(RadialKind::Sb, omega, l, r, params, policy);
  const RadialValue ca = direct_eval(RadialKind::Ca, omega, l, r, params, policy);
  const RadialValue cb = direct_eval(RadialKind::Cb, omega, l, r, params, policy);
  const int d = params.d;
  const double wc = weighted_wronskian(ca, cb, r, d);
  if (std::abs(wc) < 1e-12) throw DegenerateBasis("W(Ca,Cb) vanishes");
  TransferMatrix m;
  m.m11 = weighted_wronskian(sa, cb, r, d) / wc;
  m.m12 = -weighted_wronskian(sa, ca, r, d) / wc;
  m.m21 = weighted_wronskian(sb, cb, r, d) / wc;
  m.m22 = -weighted_wronskian(sb, ca, r, d) / wc;
  return m;
}

RadialValue radial_eval_d(RadialKind kind, double omega, int l, double rho,
                          const AdsParams& params, const SeriesPolicy& policy) {
  if (rho < 0.0 || rho >= kHalfPi) throw DomainError("rho outside [0, pi/2)");
  if (kind == RadialKind::Sb && rho == 0.0) throw SingularPoint("S^b at rho = 0");
  if (is_c_kind(kind)) require_c_modes(params);
  const double s2 = std::sin(rho) * std::sin(rho);
  const double c2 = std::cos(rho) * std::cos(rho);
  if (!is_c_kind(kind)) {
    const HyperParams h = hyper_params(kind, omega, l, params);
    const bool terminates = near_nonpositive_integer(h.alpha) || near_nonpositive_integer(h.beta);
    if (s2 <= policy.arg_cutoff || terminates) return direct_eval(kind, omega, l, rho, params, policy);
    const TransferMatrix m = transfer_matrix(omega, l, params);
    const RadialValue ca = direct_eval(RadialKind::Ca, omega, l, rho, params, policy);
    const RadialValue cb = direct_eval(RadialKind::Cb, omega, l, rho, params, policy);
    const double u = kind == RadialKind::Sa ? m.m11 : m.m21;
    const double v = kind == RadialKind::Sa ? m.m12 : m.m22;
    return {u * ca.value + v * cb.value, u * ca.derivative + v * cb.derivative};
  }
  if (c2 <= policy.arg_cutoff) return direct_eval(kind, omega, l, rho, params, policy);
  if (rho == 0.0) throw SingularPoint("C modes through the axis");
  const TransferMatrix m = transfer_matrix(omega, l, params);
  const double det = m.det();
  if (std::abs(det) < 1e-300) throw DegenerateBasis("transfer matrix singular");
  const RadialValue sa = direct_eval(RadialKind::Sa, omega, l, rho, params, policy);
  const RadialValue sb = direct_eval(RadialKind::Sb, omega, l, rho, params, policy);
  // [Ca; Cb] = M^{-1} [Sa; Sb]
  double u, v;
  if (kind == RadialKind::Ca) {
    u = m.m22 / det;
    v = -m.m12 / det;
  } else {
    u = -m.m21 / det;
    v = m.m11 / det;
  }
  return {u * sa.value + v * sb.value, u * sa.derivative + v * sb.derivative};
}

double radial_eval(RadialKind kind, double omega, int l, double rho, const AdsParams& params,
                   const SeriesPolicy& policy) {
  return radial_eval_d(kind, omega, l, rho, params, policy).value;
}

double radial_second_derivative(double f, double df, double omega, int l, double rho,
                                const AdsParams& params) {
  const double c = std::cos(rho), tn = std::tan(rho);
  const double ang = l * (l + params.d - 2.0);
  return -((params.d - 1.0) / tn * df +
           (omega * omega * c * c - ang / (tn * tn) - params.mR2()) * f) /
         (c * c);
}

double magic_frequency(Branch branch, int n, int l, const AdsParams& params) {
  return 2.0 * n + l + (branch == Branch::Plus ? params.delta_plus : params.delta_minus);
}

RadialValue jacobi_radial_d(Branch branch, int n, int l, double rho, const AdsParams& params) {
  if (branch == Branch::Minus && !params.exceptional) {
    throw ExceptionalBranch("minus-branch Jacobi modes need nu in (0,1)");
  }
  const double gamma = l + 0.5 * params.d;
  const double bj = branch == Branch::Plus ? params.nu : -params.nu;
  const double delta = branch == Branch::Plus ? params.delta_plus : params.delta_minus;
  const double pref = std::exp(log_gamma_fn(n + 1.0) + log_gamma_fn(gamma) - log_gamma_fn(gamma + n));
  const double s = std::sin(rho), c = std::cos(rho);
  const double x = std::cos(2.0 * rho);
  const double P = jacobi_p(gamma - 1.0, bj, n, x);
  const double dP = n > 0 ? 0.5 * (n + gamma + bj) * jacobi_p(gamma, bj + 1.0, n - 1, x) : 0.0;
  const double sl = std::pow(s, l), cd = std::pow(c, delta);
  double dpref = 0.0;
  if (l != 0) dpref += l * std::pow(s, l - 1.0) * c * cd;
  if (delta != 0.0) dpref -= delta * sl * std::pow(c, delta - 1.0) * s;
  return {pref * sl * cd * P,
          pref * (dpref * P + sl * cd * dP * (-2.0 * std::sin(2.0 * rho)))};
}

double jacobi_radial(Branch branch, int n, int l, double rho, const AdsParams& params) {
  return jacobi_radial_d(branch, n, l, rho, params).value;
}

double norm_constant(Branch branch, int n, int l, const AdsParams& params) {
  if (branch == Branch::Minus && !params.exceptional) {
    throw ExceptionalBranch("minus-branch Jacobi modes need nu in (0,1)");
  }
  const double gamma = l + 0.5 * params.d;
  const double bj = branch == Branch::Plus ? params.nu : -params.nu;
  const double lg = log_gamma_fn(n + 1.0) + 2.0 * log_gamma_fn(gamma) + log_gamma_fn(n + bj + 1.0) -
                    log_gamma_fn(n + gamma) - log_gamma_fn(n + bj + gamma);
  return std::exp(lg) / (2.0 * magic_frequency(branch, n, l, params));
}

double wronskian(RadialKind a, RadialKind b, double omega, int l, double rho,
                 const AdsParams& params) {
  const RadialValue fa = radial_eval_d(a, omega, l, rho, params);
  const RadialValue fb = radial_eval_d(b, omega, l, rho, params);
  return weighted_wronskian(fa, fb, rho, params.d);
}

cplx mode_eval(const TubeLabel& label, RadialKind kind, const SpacePoint& point,
               const AdsParams& params) {
  if (params.d != 3) throw UnsupportedDimension("angular synthesis is implemented for d = 3");
  return std::polar(1.0, -label.omega * point.t) * sph_harm({label.l, label.m}, point.theta, point.phi) *
         radial_eval(kind, label.omega, label.l, point.rho, params);
}

cplx mode_eval(const SliceLabel& label, const SpacePoint& point, const AdsParams& params) {
  if (params.d != 3) throw UnsupportedDimension("angular synthesis is implemented for d = 3");
  const double w = magic_frequency(label.branch, label.n, label.l, params);
  return std::polar(1.0, -w * point.t) * sph_harm({label.l, label.m}, point.theta, point.phi) *
         jacobi_radial(label.branch, label.n, label.l, point.rho, params);
}

}  // namespace adskg
