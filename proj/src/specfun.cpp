#include "adskg/specfun.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "adskg/errors.hpp"

namespace adskg {

namespace {

constexpr double kPi = std::numbers::pi;

// Lanczos g=7, n=9.
constexpr double kLanczosG = 7.0;
constexpr double kLanczos[9] = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

bool is_nonpositive_integer(double x) {
  return x <= 0.0 && x == std::floor(x);
}

double lanczos_sum(double z) {
  double s = kLanczos[0];
  for (int i = 1; i < 9; ++i) s += kLanczos[i] / (z + i);
  return s;
}

// Snap near-integers produced by floating point (e.g. magic frequencies).
bool terminating_index(double a, int& n) {
  const double r = std::round(a);
  if (r <= 0.0 && std::abs(a - r) <= 1e-12 * std::max(1.0, std::abs(a))) {
    n = static_cast<int>(-r);
    return true;
  }
  return false;
}

}  // namespace

double gamma_fn(double x) {
  if (is_nonpositive_integer(x)) throw PoleError("gamma at " + std::to_string(x));
  if (x < 0.5) return kPi / (std::sin(kPi * x) * gamma_fn(1.0 - x));
  if (x == std::floor(x) && x <= 21.0) {
    double f = 1.0;
    for (int k = 2; k < static_cast<int>(x); ++k) f *= k;
    return f;
  }
  const double z = x - 1.0;
  const double t = z + kLanczosG + 0.5;
  return std::sqrt(2.0 * kPi) * std::pow(t, z + 0.5) * std::exp(-t) * lanczos_sum(z);
}

double log_gamma_fn(double x) {
  if (is_nonpositive_integer(x)) throw PoleError("log_gamma at " + std::to_string(x));
  if (x < 0.5) {
    return std::log(kPi / std::abs(std::sin(kPi * x))) - log_gamma_fn(1.0 - x);
  }
  const double z = x - 1.0;
  const double t = z + kLanczosG + 0.5;
  return 0.5 * std::log(2.0 * kPi) + (z + 0.5) * std::log(t) - t +
         std::log(lanczos_sum(z));
}

double pochhammer(double a, int k) {
  double p = 1.0;
  for (int i = 0; i < k; ++i) p *= a + i;
  return p;
}

double double_pochhammer(double a, int k) {
  double p = 1.0;
  for (int i = 0; i < k; ++i) p *= a + 2 * i;
  return p;
}

SeriesValue hyp2f1_with_derivative(double a, double b, double c, double x,
                                   const SeriesPolicy& policy) {
  int na = 0, nb = 0;
  const bool ta = terminating_index(a, na);
  const bool tb = terminating_index(b, nb);
  const bool terminating = ta || tb;
  int nterm = 0;
  if (ta && tb) nterm = std::min(na, nb);
  else if (ta) nterm = na;
  else if (tb) nterm = nb;

  if (!terminating && std::abs(x) > policy.arg_cutoff) {
    throw DomainError("hyp2f1 series at x=" + std::to_string(x));
  }
  int nc = 0;
  if (terminating_index(c, nc) && !(terminating && nterm <= nc)) {
    throw DomainError("hyp2f1 with c a nonpositive integer");
  }
  if (ta) a = -na;
  if (tb) b = -nb;

  if (x == 0.0) return {1.0, a * b / c};
  // inc carries x^k so long terminating series do not overflow in the bare coefficient
  double inc = 1.0;  // (a)_k (b)_k / ((c)_k k!) x^k
  double sum = 1.0;
  double dsum = 0.0;
  const int kmax = terminating ? nterm : policy.max_terms;
  for (int k = 0; k < kmax; ++k) {
    inc *= (a + k) * (b + k) / ((c + k) * (k + 1.0)) * x;
    sum += inc;
    dsum += (k + 1.0) * inc / x;
    if (!terminating) {
      const double ratio =
          std::abs((a + k + 1) * (b + k + 1) / ((c + k + 1) * (k + 2.0)) * x);
      if (ratio < 1.0 && std::abs(inc) <= policy.rel_tol * std::abs(sum) &&
          std::abs(inc) * ratio / (1.0 - ratio) <= policy.rel_tol * std::abs(sum)) {
        return {sum, dsum};
      }
      if (inc == 0.0) return {sum, dsum};
    }
  }
  if (!terminating) throw ConvergenceError("hyp2f1 exceeded max_terms");
  return {sum, dsum};
}

double hyp2f1(double a, double b, double c, double x, const SeriesPolicy& policy) {
  return hyp2f1_with_derivative(a, b, c, x, policy).value;
}

double jacobi_p(double alpha, double beta, int n, double x) {
  if (n == 0) return 1.0;
  double p0 = 1.0;
  double p1 = (alpha + 1.0) + (alpha + beta + 2.0) * (x - 1.0) / 2.0;
  const double ab = alpha + beta;
  for (int k = 2; k <= n; ++k) {
    const double s = 2.0 * k + ab;
    const double a1 = 2.0 * k * (k + ab) * (s - 2.0);
    const double a2 = (s - 1.0) * (s * (s - 2.0) * x + alpha * alpha - beta * beta);
    const double a3 = 2.0 * (k + alpha - 1.0) * (k + beta - 1.0) * s;
    const double p2 = (a2 * p1 - a3 * p0) / a1;
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

double gegenbauer_c(double lambda, int n, double x) {
  if (n == 0) return 1.0;
  double c0 = 1.0;
  double c1 = 2.0 * lambda * x;
  for (int k = 2; k <= n; ++k) {
    const double c2 = (2.0 * x * (k + lambda - 1.0) * c1 - (k + 2.0 * lambda - 2.0) * c0) / k;
    c0 = c1;
    c1 = c2;
  }
  return c1;
}

double assoc_legendre(int m, int l, double x) {
  if (l < 0 || std::abs(m) > l) {
    throw IndexError("assoc_legendre |m| > l (m=" + std::to_string(m) +
                     ", l=" + std::to_string(l) + ")");
  }
  if (m < 0) {
    double ratio = 1.0;  // (l-|m|)!/(l+|m|)!
    for (int k = l - (-m) + 1; k <= l + (-m); ++k) ratio /= k;
    return ratio * assoc_legendre(-m, l, x);
  }
  double pmm = 1.0;
  const double s = std::sqrt(std::max(0.0, 1.0 - x * x));
  for (int k = 1; k <= m; ++k) pmm *= (2.0 * k - 1.0) * s;
  if (l == m) return pmm;
  double p0 = pmm;
  double p1 = x * (2.0 * m + 1.0) * pmm;
  for (int k = m + 2; k <= l; ++k) {
    const double p2 = (x * (2.0 * k - 1.0) * p1 - (k + m - 1.0) * p0) / (k - m);
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

double assoc_legendre_deriv(int m, int l, double x) {
  const double lower = (std::abs(m) <= l - 1) ? assoc_legendre(m, l - 1, x) : 0.0;
  return (l * x * assoc_legendre(m, l, x) - (l + m) * lower) / (x * x - 1.0);
}

double spherical_bessel(BesselKind kind, int l, double x) {
  if (kind == BesselKind::N) {
    if (x <= 0.0) throw DomainError("spherical Neumann needs x > 0");
    double n0 = -std::cos(x) / x;
    if (l == 0) return n0;
    double n1 = -std::cos(x) / (x * x) - std::sin(x) / x;
    for (int k = 1; k < l; ++k) {
      const double n2 = (2.0 * k + 1.0) / x * n1 - n0;
      n0 = n1;
      n1 = n2;
    }
    return n1;
  }
  if (x < 0.0) throw DomainError("spherical Bessel needs x >= 0");
  if (x == 0.0) return l == 0 ? 1.0 : 0.0;
  if (x < 1.0) {
    // ascending series
    double pref = 1.0;
    for (int k = 1; k <= l; ++k) pref *= x / (2.0 * k + 1.0);
    double term = 1.0, sum = 1.0;
    for (int k = 1; k < 200; ++k) {
      term *= -0.5 * x * x / (k * (2.0 * l + 2.0 * k + 1.0));
      sum += term;
      if (std::abs(term) < 1e-17 * std::abs(sum)) break;
    }
    return pref * sum;
  }
  const double j0 = std::sin(x) / x;
  if (l == 0) return j0;
  const double j1 = std::sin(x) / (x * x) - std::cos(x) / x;
  if (x > l) {
    double a = j0, b = j1;
    for (int k = 1; k < l; ++k) {
      const double c = (2.0 * k + 1.0) / x * b - a;
      a = b;
      b = c;
    }
    return b;
  }
  // Miller downward recurrence
  const int start = l + 20 + static_cast<int>(std::sqrt(40.0 * l)) + static_cast<int>(x);
  std::vector<double> f(start + 2, 0.0);
  f[start] = 1e-300;
  for (int k = start; k >= 1; --k) {
    f[k - 1] = (2.0 * k + 1.0) / x * f[k] - f[k + 1];
    if (std::abs(f[k - 1]) > 1e250) {
      for (int i = k - 1; i <= start; ++i) f[i] *= 1e-250;
    }
  }
  return std::abs(j0) > std::abs(j1) ? f[l] * j0 / f[0] : f[l] * j1 / f[1];
}

double modified_spherical_i(int nu, double x) {
  if (x <= 0.0) throw DomainError("modified spherical function needs x > 0");
  const double half = 0.5 * x;
  double sum = 0.0;
  for (int k = 0; k < 500; ++k) {
    const double g = k + nu + 1.5;
    const double lt = (2.0 * k + nu) * std::log(half) - log_gamma_fn(k + 1.0) - log_gamma_fn(g);
    double sign = 1.0;
    if (g < 0.0) {
      // sign of Gamma at negative half-integers
      const int npoles = static_cast<int>(std::ceil(-g));
      sign = (npoles % 2 == 0) ? 1.0 : -1.0;
    }
    const double term = sign * std::exp(lt);
    sum += term;
    if (k > -nu && std::abs(term) < 1e-17 * std::abs(sum)) break;
  }
  return 0.5 * std::sqrt(kPi) * sum;
}

QuadRule gauss_legendre(int n) {
  QuadRule q;
  q.nodes.resize(n);
  q.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 1; j <= n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
      }
      pp = n * (z * p1 - p2) / (z * z - 1.0);
      const double dz = p1 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    q.nodes[i] = -z;
    q.nodes[n - 1 - i] = z;
    const double w = 2.0 / ((1.0 - z * z) * pp * pp);
    q.weights[i] = w;
    q.weights[n - 1 - i] = w;
  }
  return q;
}

double double_factorial(int n) {
  double f = 1.0;
  for (int k = n; k > 1; k -= 2) f *= k;
  return f;
}

}  // namespace adskg
