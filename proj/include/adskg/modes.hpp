#pragma once

#include <complex>

#include "adskg/geometry.hpp"
#include "adskg/specfun.hpp"

namespace adskg {

enum class RadialKind { Sa, Sb, Ca, Cb };
enum class Branch { Plus, Minus };

struct TubeLabel {
  double omega = 0.0;
  int l = 0;
  int m = 0;
};

struct SliceLabel {
  int n = 0;
  int l = 0;
  int m = 0;
  Branch branch = Branch::Plus;
};

struct HyperParams {
  double alpha, beta, gamma;
};

struct TransferMatrix {
  double m11, m12, m21, m22;
  double det() const { return m11 * m22 - m12 * m21; }
};

struct RadialValue {
  double value;
  double derivative;  // d/drho
};

HyperParams hyper_params(RadialKind kind, double omega, int l, const AdsParams& params);

RadialValue radial_eval_d(RadialKind kind, double omega, int l, double rho,
                          const AdsParams& params, const SeriesPolicy& policy = {});
double radial_eval(RadialKind kind, double omega, int l, double rho, const AdsParams& params,
                   const SeriesPolicy& policy = {});
// Second derivative from the radial equation.
double radial_second_derivative(double f, double df, double omega, int l, double rho,
                                const AdsParams& params);

double magic_frequency(Branch branch, int n, int l, const AdsParams& params);

RadialValue jacobi_radial_d(Branch branch, int n, int l, double rho, const AdsParams& params);
double jacobi_radial(Branch branch, int n, int l, double rho, const AdsParams& params);

double norm_constant(Branch branch, int n, int l, const AdsParams& params);

// tan^{d-1}(rho) (f_A f_B' - f_B f_A').
double wronskian(RadialKind a, RadialKind b, double omega, int l, double rho,
                 const AdsParams& params);
double weighted_wronskian(const RadialValue& fa, const RadialValue& fb, double rho, int d);

TransferMatrix transfer_matrix(double omega, int l, const AdsParams& params);

cplx mode_eval(const TubeLabel& label, RadialKind kind, const SpacePoint& point,
               const AdsParams& params);
cplx mode_eval(const SliceLabel& label, const SpacePoint& point, const AdsParams& params);

}  // namespace adskg
