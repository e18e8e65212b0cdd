#include "adskg/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "adskg/errors.hpp"

namespace adskg {

namespace {

constexpr double kHalfPi = 0.5 * std::numbers::pi;

// 4th-order central first derivative of g at 0.
template <class G>
auto central_diff(const G& g, double h) {
  return (g(-2.0 * h) - 8.0 * g(-h) + 8.0 * g(h) - g(2.0 * h)) / (12.0 * h);
}

Vec3 add_scaled(const Vec3& x, const Vec3& v, double s) {
  return {x[0] + s * v[0], x[1] + s * v[1], x[2] + s * v[2]};
}

Vec3 normalized(const Vec3& x) {
  const double n = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
  return {x[0] / n, x[1] / n, x[2] / n};
}

bool is_zero(const Vec3& v) { return v[0] == 0.0 && v[1] == 0.0 && v[2] == 0.0; }

// Tangential projector applied to e_j: e_j - xi_j xi.
Vec3 projected_axis(int j, const Vec3& xi) {
  Vec3 v{-xi[j - 1] * xi[0], -xi[j - 1] * xi[1], -xi[j - 1] * xi[2]};
  v[j - 1] += 1.0;
  return v;
}

cplx apply_coeffs(const KillingCoeffs& c, const FieldFn& field, double t, double rho,
                  const Vec3& xi, const FdSteps& steps, bool check_rho) {
  cplx out = 0.0;
  if (c.ct != 0.0) {
    out += c.ct * central_diff([&](double s) { return field(t + s, rho, xi); }, steps.h_t);
  }
  if (c.crho != 0.0) {
    if (check_rho && (rho - 2.0 * steps.h_rho <= 0.0 || rho + 2.0 * steps.h_rho >= kHalfPi)) {
      throw BoundaryProximity("radial stencil leaves (0, pi/2) at rho=" + std::to_string(rho));
    }
    out += c.crho * central_diff([&](double s) { return field(t, rho + s, xi); }, steps.h_rho);
  }
  if (!is_zero(c.cang)) {
    out += central_diff(
        [&](double s) { return field(t, rho, normalized(add_scaled(xi, c.cang, s))); },
        steps.h_angle);
  }
  return out;
}

void require_d3(int d) {
  if (d != 3) throw UnsupportedDimension("Killing operators are implemented for d = 3");
}

}  // namespace

AdsParams make_params(int d, double R, double m_sq) {
  if (d % 2 == 0) throw EvenDimension("d=" + std::to_string(d));
  if (d < 3) throw DomainError("d must be >= 3");
  if (!(R > 0.0)) throw DomainError("R must be positive");
  AdsParams p;
  p.d = d;
  p.R = R;
  p.m_sq = m_sq;
  const double disc = 0.25 * d * d + m_sq * R * R;
  if (disc < 0.0) throw BfViolation("m^2 R^2 below -d^2/4");
  p.nu = std::sqrt(disc);
  p.delta_plus = 0.5 * d + p.nu;
  p.delta_minus = 0.5 * d - p.nu;
  p.c_modes_valid = std::abs(p.nu - std::round(p.nu)) > 1e-9;
  p.exceptional = p.nu > 0.0 && p.nu < 1.0;
  return p;
}

void require_c_modes(const AdsParams& params) {
  if (!params.c_modes_valid) {
    throw CapabilityError("nu=" + std::to_string(params.nu) + " is an integer");
  }
}

Vec3 unit_vector(double theta, double phi) {
  return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

void angles_of(const Vec3& xi, double& theta, double& phi) {
  const double n = std::sqrt(xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2]);
  theta = std::acos(std::clamp(xi[2] / n, -1.0, 1.0));
  phi = std::atan2(xi[1], xi[0]);
}

double kg_residual(const std::function<double(double)>& f, double omega, int l,
                   const AdsParams& params, double rho_lo, double rho_hi) {
  const double h = 1e-4;
  if (rho_lo - 2 * h <= 0.0 || rho_hi + 2 * h >= kHalfPi || rho_lo >= rho_hi) {
    throw WindowError("residual window must lie strictly inside (0, pi/2)");
  }
  const int npts = 101;
  const double dm1 = params.d - 1.0;
  const double ang = l * (l + params.d - 2.0);
  double max_res = 0.0, max_f = 0.0;
  for (int i = 0; i < npts; ++i) {
    const double r = rho_lo + (rho_hi - rho_lo) * i / (npts - 1);
    const double fm2 = f(r - 2 * h), fm1 = f(r - h), f0 = f(r), fp1 = f(r + h), fp2 = f(r + 2 * h);
    const double d1 = (fm2 - 8 * fm1 + 8 * fp1 - fp2) / (12 * h);
    const double d2 = (-fm2 + 16 * fm1 - 30 * f0 + 16 * fp1 - fp2) / (12 * h * h);
    const double c = std::cos(r), tn = std::tan(r);
    const double res = c * c * d2 + dm1 / tn * d1 +
                       (omega * omega * c * c - ang / (tn * tn) - params.mR2()) * f0;
    max_res = std::max(max_res, std::abs(res));
    max_f = std::max(max_f, std::abs(f0));
  }
  return max_f > 0.0 ? max_res / max_f : max_res;
}

EmbeddingPair embedding_pair(const GeneratorId& g, int d) {
  switch (g.kind) {
    case GeneratorId::Kind::TimeTranslation: return {d + 1, 0};
    case GeneratorId::Kind::Rotation: return {g.j, g.k};
    case GeneratorId::Kind::Boost0: return {0, g.j};
    case GeneratorId::Kind::BoostD1: return {d + 1, g.j};
  }
  return {0, 0};
}

double eta(int a, int b, int d) {
  if (a != b) return 0.0;
  return (a == 0 || a == d + 1) ? -1.0 : 1.0;
}

KillingCoeffs killing_coeffs(const EmbeddingPair& p, double t, double rho, const Vec3& xi, int d) {
  require_d3(d);
  KillingCoeffs c;
  if (p.a == p.b) return c;
  auto spatial = [d](int i) { return i >= 1 && i <= d; };
  auto negate = [](KillingCoeffs k) {
    k.ct = -k.ct;
    k.crho = -k.crho;
    for (double& v : k.cang) v = -v;
    return k;
  };
  if (p.a == d + 1 && p.b == 0) {
    c.ct = 1.0;
  } else if (spatial(p.a) && spatial(p.b)) {
    c.cang[p.b - 1] += xi[p.a - 1];
    c.cang[p.a - 1] -= xi[p.b - 1];
  } else if (p.a == 0 && spatial(p.b)) {
    const double x = xi[p.b - 1];
    c.ct = -x * std::cos(t) * std::sin(rho);
    c.crho = -x * std::sin(t) * std::cos(rho);
    const Vec3 v = projected_axis(p.b, xi);
    const double s = -std::sin(t) / std::sin(rho);
    c.cang = {s * v[0], s * v[1], s * v[2]};
  } else if (p.a == d + 1 && spatial(p.b)) {
    const double x = xi[p.b - 1];
    c.ct = -x * std::sin(t) * std::sin(rho);
    c.crho = x * std::cos(t) * std::cos(rho);
    const Vec3 v = projected_axis(p.b, xi);
    const double s = std::cos(t) / std::sin(rho);
    c.cang = {s * v[0], s * v[1], s * v[2]};
  } else {
    return negate(killing_coeffs({p.b, p.a}, t, rho, xi, d));
  }
  return c;
}

cplx killing_apply(const EmbeddingPair& p, const FieldFn& field, double t, double rho,
                   const Vec3& xi, int d, const FdSteps& steps) {
  return apply_coeffs(killing_coeffs(p, t, rho, xi, d), field, t, rho, xi, steps, true);
}

cplx killing_apply(const GeneratorId& g, const FieldFn& field, const SpacePoint& point,
                   const AdsParams& params, const FdSteps& steps) {
  return killing_apply(embedding_pair(g, params.d), field, point.t, point.rho,
                       unit_vector(point.theta, point.phi), params.d, steps);
}

std::vector<std::pair<double, EmbeddingPair>> bracket_rhs(const EmbeddingPair& A,
                                                          const EmbeddingPair& B, int d) {
  std::vector<std::pair<double, EmbeddingPair>> out;
  auto push = [&](double c, int a, int b) {
    if (c != 0.0 && a != b) out.push_back({c, {a, b}});
  };
  push(-eta(A.a, B.a, d), A.b, B.b);
  push(eta(A.b, B.a, d), A.a, B.b);
  push(-eta(A.b, B.b, d), A.a, B.a);
  push(eta(A.a, B.b, d), A.b, B.a);
  return out;
}

double verify_lie_bracket(const GeneratorId& ga, const GeneratorId& gb, const FieldFn& field,
                          const std::vector<SpacePoint>& points, const AdsParams& params) {
  const int d = params.d;
  const EmbeddingPair A = embedding_pair(ga, d), B = embedding_pair(gb, d);
  const FieldFn ka = [&](double t, double r, const Vec3& x) {
    return killing_apply(A, field, t, r, x, d);
  };
  const FieldFn kb = [&](double t, double r, const Vec3& x) {
    return killing_apply(B, field, t, r, x, d);
  };
  const auto rhs = bracket_rhs(A, B, d);
  double dev = 0.0;
  for (const auto& pt : points) {
    const Vec3 xi = unit_vector(pt.theta, pt.phi);
    const cplx lhs = killing_apply(A, kb, pt.t, pt.rho, xi, d) -
                     killing_apply(B, ka, pt.t, pt.rho, xi, d);
    cplx r = 0.0;
    for (const auto& [c, pair] : rhs) r += c * killing_apply(pair, field, pt.t, pt.rho, xi, d);
    dev = std::max(dev, std::abs(lhs - r));
  }
  return dev;
}

FlatCoords flat_rescale(const AdsParams& params, double t, double rho) {
  return {params.R * t, params.R * rho};
}

void flat_unrescale(const AdsParams& params, double tau, double r, double& t, double& rho) {
  t = tau / params.R;
  rho = r / params.R;
}

FlatLabels flat_labels(const AdsParams& params, double omega) {
  FlatLabels f;
  f.omega_tilde = omega / params.R;
  f.p_R = std::sqrt(std::abs(omega * omega - params.mR2()));
  f.p_tilde = f.p_R / params.R;
  return f;
}

KillingCoeffs mink_killing_coeffs(MinkKilling kind, int j, double tau, double r, const Vec3& xi) {
  KillingCoeffs c;
  switch (kind) {
    case MinkKilling::T0: c.ct = 1.0; break;
    case MinkKilling::Tj: {
      c.crho = xi[j - 1];
      const Vec3 v = projected_axis(j, xi);
      c.cang = {v[0] / r, v[1] / r, v[2] / r};
      break;
    }
    case MinkKilling::K0j: {
      c.ct = -r * xi[j - 1];
      c.crho = -tau * xi[j - 1];
      const Vec3 v = projected_axis(j, xi);
      c.cang = {-tau / r * v[0], -tau / r * v[1], -tau / r * v[2]};
      break;
    }
  }
  return c;
}

double flat_killing_deviation(MinkKilling kind, int j, const AdsParams& params,
                              const FieldFn& flat_field,
                              const std::vector<std::array<double, 4>>& points) {
  const double R = params.R;
  double dev = 0.0;
  for (const auto& p : points) {
    const double tau = p[0], r = p[1];
    const Vec3 xi = unit_vector(p[2], p[3]);
    double t, rho;
    flat_unrescale(params, tau, r, t, rho);
    KillingCoeffs ads;
    switch (kind) {
      case MinkKilling::T0: {
        // R^{-1} K_{d+1,0}
        const KillingCoeffs k = killing_coeffs({params.d + 1, 0}, t, rho, xi, params.d);
        ads.ct = k.ct;
        break;
      }
      case MinkKilling::Tj: {
        // R^{-1} K_{d+1,j}; d_t = R d_tau, d_rho = R d_r
        const KillingCoeffs k = killing_coeffs({params.d + 1, j}, t, rho, xi, params.d);
        ads.ct = k.ct;
        ads.crho = k.crho;
        ads.cang = {k.cang[0] / R, k.cang[1] / R, k.cang[2] / R};
        break;
      }
      case MinkKilling::K0j: {
        const KillingCoeffs k = killing_coeffs({0, j}, t, rho, xi, params.d);
        ads.ct = k.ct * R;
        ads.crho = k.crho * R;
        ads.cang = k.cang;
        break;
      }
    }
    const KillingCoeffs mink = mink_killing_coeffs(kind, j, tau, r, xi);
    KillingCoeffs diff;
    diff.ct = ads.ct - mink.ct;
    diff.crho = ads.crho - mink.crho;
    for (int i = 0; i < 3; ++i) diff.cang[i] = ads.cang[i] - mink.cang[i];
    dev = std::max(dev, std::abs(apply_coeffs(diff, flat_field, tau, r, xi, {}, false)));
  }
  return dev;
}

}  // namespace adskg
