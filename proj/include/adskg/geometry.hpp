#pragma once

#include <array>
#include <complex>
#include <functional>
#include <variant>
#include <vector>

namespace adskg {

using cplx = std::complex<double>;
using Vec3 = std::array<double, 3>;

struct AdsParams {
  int d = 3;
  double R = 1.0;
  double m_sq = 0.0;
  double nu = 1.5;
  double delta_plus = 3.0;
  double delta_minus = 0.0;
  bool c_modes_valid = true;
  bool exceptional = false;  // nu in (0, 1): minus-branch Jacobi modes exist

  double mR2() const { return m_sq * R * R; }
};

AdsParams make_params(int d, double R, double m_sq);

// Throws CapabilityError when nu is (near) integer.
void require_c_modes(const AdsParams& params);

struct SliceRegion {
  double t1, t2;
};
struct RodRegion {
  double rho0;
};
struct TubeRegion {
  double rho1, rho2;
};
using Region = std::variant<SliceRegion, RodRegion, TubeRegion>;

struct SpacePoint {
  double t = 0.0;
  double rho = 0.0;
  double theta = 0.0;
  double phi = 0.0;
};

Vec3 unit_vector(double theta, double phi);
void angles_of(const Vec3& xi, double& theta, double& phi);

// Max of |cos^2 f'' + (d-1)/tan f' + (w^2 cos^2 - l(l+d-2)/tan^2 - m^2R^2) f|
// over the window, divided by max |f|.
double kg_residual(const std::function<double(double)>& radial_fn, double omega, int l,
                   const AdsParams& params, double rho_lo, double rho_hi);

// Killing vectors labelled by embedding index pairs K_{AB}, A,B in 0..d+1.
struct GeneratorId {
  enum class Kind { TimeTranslation, Rotation, Boost0, BoostD1 };
  Kind kind = Kind::TimeTranslation;
  int j = 0;
  int k = 0;

  static GeneratorId time_translation() { return {Kind::TimeTranslation, 0, 0}; }
  static GeneratorId rotation(int j, int k) { return {Kind::Rotation, j, k}; }
  static GeneratorId boost0(int j) { return {Kind::Boost0, j, 0}; }
  static GeneratorId boost_d1(int j) { return {Kind::BoostD1, j, 0}; }
};

struct EmbeddingPair {
  int a = 0;
  int b = 0;
};
EmbeddingPair embedding_pair(const GeneratorId& g, int d);
double eta(int a, int b, int d);

// Vector field components: c_t d_t + c_rho d_rho + c_ang . grad_xi (tangential).
struct KillingCoeffs {
  double ct = 0.0;
  double crho = 0.0;
  Vec3 cang{0.0, 0.0, 0.0};
};
KillingCoeffs killing_coeffs(const EmbeddingPair& p, double t, double rho, const Vec3& xi, int d);

using FieldFn = std::function<cplx(double t, double rho, const Vec3& xi)>;

struct FdSteps {
  double h_t = 1e-3;
  double h_rho = 1e-3;
  double h_angle = 1e-3;
};

cplx killing_apply(const EmbeddingPair& p, const FieldFn& field, double t, double rho,
                   const Vec3& xi, int d, const FdSteps& steps = {});
cplx killing_apply(const GeneratorId& g, const FieldFn& field, const SpacePoint& point,
                   const AdsParams& params, const FdSteps& steps = {});

// Bracket [K_A, K_B] expanded in generators: list of (coefficient, pair).
std::vector<std::pair<double, EmbeddingPair>> bracket_rhs(const EmbeddingPair& A,
                                                          const EmbeddingPair& B, int d);

double verify_lie_bracket(const GeneratorId& a, const GeneratorId& b, const FieldFn& field,
                          const std::vector<SpacePoint>& points, const AdsParams& params);

struct FlatCoords {
  double tau, r;
};
FlatCoords flat_rescale(const AdsParams& params, double t, double rho);
void flat_unrescale(const AdsParams& params, double tau, double r, double& t, double& rho);

struct FlatLabels {
  double omega_tilde;
  double p_R;
  double p_tilde;
};
FlatLabels flat_labels(const AdsParams& params, double omega);

// Minkowski Killing vectors in (tau, r, xi).
enum class MinkKilling { T0, Tj, K0j };
KillingCoeffs mink_killing_coeffs(MinkKilling kind, int j, double tau, double r, const Vec3& xi);

// Max over points of |(R^{-1} or 1) K^AdS f - K^Mink f| for a field f(tau, r, xi);
// the AdS operator is written in rescaled coordinates so both sides share stencils.
double flat_killing_deviation(MinkKilling kind, int j, const AdsParams& params,
                              const FieldFn& flat_field,
                              const std::vector<std::array<double, 4>>& points);

}  // namespace adskg
