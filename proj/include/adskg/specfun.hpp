#pragma once

#include <vector>

namespace adskg {

struct SeriesPolicy {
  int max_terms = 10000;
  double rel_tol = 1e-14;
  double arg_cutoff = 0.75;
};

double gamma_fn(double x);
// log|Γ(x)|, for arguments where Γ overflows (large radial quantum numbers).
double log_gamma_fn(double x);

double pochhammer(double a, int k);
double double_pochhammer(double a, int k);

struct SeriesValue {
  double value;
  double derivative;  // d/dx
};

double hyp2f1(double a, double b, double c, double x,
              const SeriesPolicy& policy = {});
SeriesValue hyp2f1_with_derivative(double a, double b, double c, double x,
                                   const SeriesPolicy& policy = {});

double jacobi_p(double alpha, double beta, int n, double x);
double gegenbauer_c(double lambda, int n, double x);

// No Condon-Shortley phase; P_l^{-m} = (l-m)!/(l+m)! P_l^m.
double assoc_legendre(int m, int l, double x);
// d/dx P_l^m(x), |x| < 1.
double assoc_legendre_deriv(int m, int l, double x);

enum class BesselKind { J, N };
double spherical_bessel(BesselKind kind, int l, double x);

// Real modified spherical functions i_nu(x) = sqrt(pi/2x) I_{nu+1/2}(x) for
// integer nu (negative nu allowed), by ascending series.
double modified_spherical_i(int nu, double x);

// Gauss-Legendre nodes/weights on [-1, 1].
struct QuadRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
QuadRule gauss_legendre(int n);

double double_factorial(int n);

}  // namespace adskg
