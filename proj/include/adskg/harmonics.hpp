#pragma once

#include <complex>
#include <vector>

namespace adskg {

using cplx = std::complex<double>;

struct AngularLabel {
  int l = 0;
  int m = 0;
};

struct EulerAngles {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
};

// Y_l^m = N_l^m e^{im phi} P_l^m(cos theta), no Condon-Shortley phase,
// so that conj(Y_l^m) = Y_l^{-m}.
cplx sph_harm(const AngularLabel& label, double theta, double phi);
// d/d(cos theta) of Y_l^m.
cplx sph_harm_dcos(const AngularLabel& label, double theta, double phi);

struct ContiguousCoeffs {
  double kappa_minus = 0.0;
  double kappa_plus = 0.0;
  double delta_minus = 0.0;
  double delta_plus = 0.0;
};

// sub is m for d = 3 and l_{d-2} for d > 3.
ContiguousCoeffs contiguous_coeffs(int d, int l, int sub);

// Row-major (2l+1)x(2l+1), rows m', columns m, ordered -l..l. Convention
// matches sph_harm: Y^m(R^{-1} w) = sum_{m'} Y^{m'}(w) D_{m'm}, with
// R = Rz(alpha) Ry(beta) Rz(gamma) acting actively.
struct WignerMatrix {
  int l = 0;
  std::vector<cplx> data;
  cplx operator()(int mp, int m) const { return data[(mp + l) * (2 * l + 1) + (m + l)]; }
  cplx& operator()(int mp, int m) { return data[(mp + l) * (2 * l + 1) + (m + l)]; }
};

double wigner_small_d(int l, int mp, int m, double beta);
WignerMatrix wigner_d(int l, const EulerAngles& angles);

// Active rotation matrix Rz(alpha) Ry(beta) Rz(gamma), row-major 3x3.
std::vector<double> rotation_matrix(const EulerAngles& angles);

// Gauss-Legendre in cos theta times trapezoid in phi.
struct AngularGrid {
  std::vector<double> theta;
  std::vector<double> phi;
  std::vector<double> weight_theta;  // Gauss weights in cos theta
  double weight_phi = 0.0;
};
AngularGrid make_angular_grid(int n_theta = 64, int n_phi = 128);

}  // namespace adskg
