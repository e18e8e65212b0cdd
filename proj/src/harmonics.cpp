#include "adskg/harmonics.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "adskg/errors.hpp"
#include "adskg/specfun.hpp"

namespace adskg {

namespace {

double factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

double harmonic_norm(int l, int m) {
  return std::sqrt((2.0 * l + 1.0) * factorial(l - m) /
                   (4.0 * std::numbers::pi * factorial(l + m)));
}

void check_label(const AngularLabel& label) {
  if (label.l < 0 || std::abs(label.m) > label.l) {
    throw IndexError("harmonic label l=" + std::to_string(label.l) +
                     " m=" + std::to_string(label.m));
  }
}

// Phase relating these harmonics to Condon-Shortley ones.
double cs_sign(int m) { return (m > 0 && (m % 2 != 0)) ? -1.0 : 1.0; }

}  // namespace

cplx sph_harm(const AngularLabel& label, double theta, double phi) {
  check_label(label);
  const int am = std::abs(label.m);
  const double p = harmonic_norm(label.l, am) * assoc_legendre(am, label.l, std::cos(theta));
  return p * std::polar(1.0, label.m * phi);
}

cplx sph_harm_dcos(const AngularLabel& label, double theta, double phi) {
  check_label(label);
  const int am = std::abs(label.m);
  const double dp =
      harmonic_norm(label.l, am) * assoc_legendre_deriv(am, label.l, std::cos(theta));
  return dp * std::polar(1.0, label.m * phi);
}

ContiguousCoeffs contiguous_coeffs(int d, int l, int sub) {
  if (d % 2 == 0) throw DomainError("contiguous_coeffs needs odd d");
  if (d < 3 || l < 0) throw DomainError("contiguous_coeffs needs d >= 3, l >= 0");
  if (d == 3 ? std::abs(sub) > l : (sub < 0 || sub > l)) {
    throw DomainError("contiguous_coeffs sub out of range");
  }
  ContiguousCoeffs c;
  const double dd = d;
  const double num_minus = (l - sub) * (l + sub + dd - 3.0);
  if (l > 0 && num_minus > 0.0) {
    c.kappa_minus = std::sqrt(num_minus / ((2.0 * l + dd - 4.0) * (2.0 * l + dd - 2.0)));
  }
  c.kappa_plus = std::sqrt((l - sub + 1.0) * (l + sub + dd - 2.0) /
                           ((2.0 * l + dd - 2.0) * (2.0 * l + dd)));
  c.delta_minus = (l + dd - 2.0) * c.kappa_minus;
  c.delta_plus = -l * c.kappa_plus;
  return c;
}

double wigner_small_d(int l, int mp, int m, double beta) {
  const double c = std::cos(0.5 * beta);
  const double s = std::sin(0.5 * beta);
  const double pref = std::sqrt(factorial(l + mp) * factorial(l - mp) *
                                factorial(l + m) * factorial(l - m));
  double sum = 0.0;
  const int kmin = std::max(0, m - mp);
  const int kmax = std::min(l + m, l - mp);
  for (int k = kmin; k <= kmax; ++k) {
    const double sign = ((k - m + mp) % 2 == 0) ? 1.0 : -1.0;
    const double den = factorial(l + m - k) * factorial(k) * factorial(l - k - mp) *
                       factorial(k - m + mp);
    sum += sign * std::pow(c, 2 * l - 2 * k + m - mp) * std::pow(s, 2 * k - m + mp) / den;
  }
  return pref * sum;
}

WignerMatrix wigner_d(int l, const EulerAngles& angles) {
  WignerMatrix w;
  w.l = l;
  w.data.resize((2 * l + 1) * (2 * l + 1));
  for (int mp = -l; mp <= l; ++mp) {
    for (int m = -l; m <= l; ++m) {
      w(mp, m) = cs_sign(mp) * cs_sign(m) * wigner_small_d(l, mp, m, angles.beta) *
                 std::polar(1.0, -mp * angles.alpha - m * angles.gamma);
    }
  }
  return w;
}

std::vector<double> rotation_matrix(const EulerAngles& a) {
  auto rz = [](double t) {
    return std::vector<double>{std::cos(t), -std::sin(t), 0, std::sin(t), std::cos(t), 0, 0, 0, 1};
  };
  auto ry = [](double t) {
    return std::vector<double>{std::cos(t), 0, std::sin(t), 0, 1, 0, -std::sin(t), 0, std::cos(t)};
  };
  auto mul = [](const std::vector<double>& x, const std::vector<double>& y) {
    std::vector<double> z(9, 0.0);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) z[3 * i + j] += x[3 * i + k] * y[3 * k + j];
    return z;
  };
  return mul(mul(rz(a.alpha), ry(a.beta)), rz(a.gamma));
}

AngularGrid make_angular_grid(int n_theta, int n_phi) {
  AngularGrid g;
  const QuadRule q = gauss_legendre(n_theta);
  for (int i = 0; i < n_theta; ++i) g.theta.push_back(std::acos(q.nodes[i]));
  g.weight_theta = q.weights;
  for (int j = 0; j < n_phi; ++j) g.phi.push_back(2.0 * std::numbers::pi * j / n_phi);
  g.weight_phi = 2.0 * std::numbers::pi / n_phi;
  return g;
}

}  // namespace adskg
