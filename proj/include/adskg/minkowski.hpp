#pragma once

#include <vector>

#include "adskg/expansions.hpp"
#include "adskg/symplectic.hpp"

namespace adskg {

// Radial functions of the flat tube expansion, real on both branches.
// D = E^2 - m^2 >= 0: j_l(p r), n_l(p r); D < 0: i_l(p r), (-1)^{l+1} i_{-l-1}(p r).
double jcheck(double E, int l, double r, double m_field);
double ncheck(double E, int l, double r, double m_field);
// r-derivatives
double jcheck_deriv(double E, int l, double r, double m_field);
double ncheck_deriv(double E, int l, double r, double m_field);

// Momentum content concentrated on a truncated Gaussian envelope
// g(x) = exp(-(x - center)^2 / (2 width^2)) on |x - center| <= 6 width,
// or on a single cell of measure `weight` when width == 0.
struct Envelope {
  double center = 1.0;
  double width = 0.0;
  double weight = 1.0;  // cell measure, used only when width == 0
};

struct MinkSliceComponent {
  int l = 0;
  int m = 0;
  Envelope p;  // in momentum p > 0
  cplx plus{0.0, 0.0};
  cplx minus_conj{0.0, 0.0};  // conj(phi^-)
};

struct MinkSliceRep {
  double m_field = 0.0;
  std::vector<MinkSliceComponent> components;
};

struct MinkTubeComponent {
  int l = 0;
  int m = 0;
  Envelope E;  // in energy
  cplx a{0.0, 0.0};
  cplx b{0.0, 0.0};
};

struct MinkTubeRep {
  double m_field = 0.0;
  std::vector<MinkTubeComponent> components;
};

// Point in (t, r, theta, phi).
struct MinkPoint {
  double t = 0.0;
  double r = 0.0;
  double theta = 0.0;
  double phi = 0.0;
};

FieldSample mink_synth_slice_sample(const MinkSliceRep& rep, const MinkPoint& x);
FieldSample mink_synth_tube_sample(const MinkTubeRep& rep, const MinkPoint& x);
cplx mink_synth_slice(const MinkSliceRep& rep, const MinkPoint& x);
cplx mink_synth_tube(const MinkTubeRep& rep, const MinkPoint& x);

// -1/2 int dr dOmega r^2 (eta d_t zeta - zeta d_t eta) at t0, r in [0, r_max].
SymplecticValue mink_omega_slice_quadrature(const MinkSliceRep& eta, const MinkSliceRep& zeta,
                                            double t0, double r_max);
// +i int dp sum E (conj(eta^-) zeta^+ - eta^+ conj(zeta^-))
SymplecticValue mink_omega_slice_momentum(const MinkSliceRep& eta, const MinkSliceRep& zeta);
// r^2/2 int dt dOmega (eta d_r zeta - zeta d_r eta), t in [-t_max, t_max].
SymplecticValue mink_omega_tube_quadrature(const MinkTubeRep& eta, const MinkTubeRep& zeta,
                                           double r, double t_max);
// int dE sum p/(16 pi) (eta^a_{E,l,m} zeta^b_{-E,l,-m} - eta^b zeta^a)
SymplecticValue mink_omega_tube_momentum(const MinkTubeRep& eta, const MinkTubeRep& zeta);

// Modified momentum maps between AdS labels at radius R and flat cells.
// Slice: phi^pm_{nl} = phit^pm * dp * 2 p (p^R)^l / (sqrt(2 pi) (2l+1)!!), dp = 2 omega~ / (R p~).
double flat_slice_factor(const AdsParams& params, int n, int l);
double flat_slice_cell(const AdsParams& params, int n, int l);  // dp
// Tube: phi^a = phit^a p~ (p^R)^l / (4 pi R (2l+1)!!), phi^b = phit^b p~ (p^R)^{-l-1} (2l-1)!! / (4 pi R).
double flat_tube_factor_a(const AdsParams& params, double omega, int l);
double flat_tube_factor_b(const AdsParams& params, double omega, int l);

struct FlatLimitRow {
  double R = 0.0;
  double radial_sa = 0.0;    // rescaled S^a vs jcheck
  double radial_sb = 0.0;    // rescaled S^b vs ncheck
  double slice = 0.0;        // 3-label Jacobi synthesis vs Minkowski slice synthesis
  double symplectic = 0.0;   // per-label slice momentum forms
};

struct FlatLimitSetup {
  double m_field = 0.0;
  double omega_tilde = 1.5;  // Minkowski energy of the compared radial functions
  double r_lo = 0.1;
  double r_hi = 5.0;
  double tau = 0.3;
};

// Max relative errors per R.
std::vector<FlatLimitRow> flat_limit_compare(const std::vector<double>& radii,
                                             const FlatLimitSetup& setup);

}  // namespace adskg
