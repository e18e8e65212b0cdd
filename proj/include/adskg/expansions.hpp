#pragma once

#include <complex>
#include <iosfwd>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "adskg/geometry.hpp"
#include "adskg/harmonics.hpp"
#include "adskg/modes.hpp"

namespace adskg {

struct OmegaGrid {
  double d_omega = 0.5;
  double omega(int k) const { return k * d_omega; }
  double period() const;
};

struct LabelKey {
  int k = 0;  // frequency index (tube, rod) or radial number n (slice)
  int l = 0;
  int m = 0;
  auto operator<=>(const LabelKey&) const = default;
};

enum class TubeBasis { S, C };

struct ABPair {
  cplx a{0.0, 0.0};
  cplx b{0.0, 0.0};
};

struct TubeRep {
  OmegaGrid grid;
  TubeBasis basis = TubeBasis::S;
  std::map<LabelKey, ABPair> coeffs;
  bool is_real(double tol = 1e-12) const;
};

struct SlicePair {
  cplx plus{0.0, 0.0};
  cplx minus_conj{0.0, 0.0};  // conj(phi^-)
};

struct SliceRep {
  std::map<LabelKey, SlicePair> coeffs;
  bool is_real(double tol = 1e-12) const;
};

struct RodRep {
  OmegaGrid grid;
  std::map<LabelKey, cplx> coeffs;
};

// Field value with time and radial derivatives.
struct FieldSample {
  cplx value{0.0, 0.0};
  cplx dt{0.0, 0.0};
  cplx drho{0.0, 0.0};
};

FieldSample synth_sample(const SliceRep& rep, const SpacePoint& p, const AdsParams& params);
FieldSample synth_sample(const TubeRep& rep, const SpacePoint& p, const AdsParams& params);
FieldSample synth_sample(const RodRep& rep, const SpacePoint& p, const AdsParams& params);
cplx synth(const SliceRep& rep, const SpacePoint& p, const AdsParams& params);
cplx synth(const TubeRep& rep, const SpacePoint& p, const AdsParams& params);
cplx synth(const RodRep& rep, const SpacePoint& p, const AdsParams& params);

TubeRep s_to_c(const TubeRep& rep, const AdsParams& params);
TubeRep c_to_s(const TubeRep& rep, const AdsParams& params);
TubeRep slice_as_tube(const SliceRep& rep, const OmegaGrid& grid, const AdsParams& params);
TubeRep rod_as_tube(const RodRep& rep);

// Angular quadrature helper: projections onto Y_l^m of samples on an AngularGrid.
class AngularProjector {
 public:
  AngularProjector(const AngularGrid& grid, int l_max);
  // values indexed [itheta * n_phi + iphi]; returns c[(l, m)] = int conj(Y_l^m) f dOmega.
  std::map<std::pair<int, int>, cplx> project(const std::vector<cplx>& values) const;
  const AngularGrid& grid() const { return grid_; }
  int l_max() const { return l_max_; }
  // Y_l^m on the grid, same indexing as values.
  const std::vector<cplx>& harmonic(int l, int m) const;

 private:
  AngularGrid grid_;
  int l_max_;
  std::map<std::pair<int, int>, std::vector<cplx>> ylm_;
  std::map<std::pair<int, int>, std::vector<double>> plm_;  // N P_l^|m| per theta node
};

struct LabelCutoffs {
  int n_max = 4;
  int l_max = 4;
};

// Samples of phi and d_t phi on Sigma_{t0}; radial nodes from Gauss-Legendre in rho on [0, pi/2].
struct SliceData {
  double t0 = 0.0;
  std::vector<double> rho;
  std::vector<double> rho_weight;
  AngularGrid angles;
  std::vector<cplx> value;  // [irho][itheta][iphi]
  std::vector<cplx> dt;
};

SliceData make_slice_nodes(double t0, int n_rho = 128, int n_theta = 64, int n_phi = 128);
SliceData sample_slice(const SliceRep& rep, double t0, const AdsParams& params, int n_rho = 128,
                       int n_theta = 64, int n_phi = 128);
SliceRep invert_slice(const SliceData& data, const AdsParams& params, const LabelCutoffs& cutoffs);

struct FrequencyWindow {
  int k_min = -8;
  int k_max = 8;
  int l_max = 4;
};

// Samples on Sigma_{rho0} over one period T = 2 pi / d_omega.
struct TubeData {
  OmegaGrid grid;
  double rho0 = 0.0;
  std::vector<double> t;
  AngularGrid angles;
  std::vector<cplx> value;  // [it][itheta][iphi]
  std::vector<cplx> drho;
};

int time_samples_for(const FrequencyWindow& window);
TubeData sample_tube(const TubeRep& rep, double rho0, const FrequencyWindow& window,
                     const AdsParams& params, int n_theta = 64, int n_phi = 128);
TubeData sample_rod(const RodRep& rep, double rho0, const FrequencyWindow& window,
                    const AdsParams& params, int n_theta = 64, int n_phi = 128);
TubeRep invert_tube(const TubeData& data, const FrequencyWindow& window, const AdsParams& params,
                    TubeBasis basis);
RodRep invert_rod_interior(const TubeData& data, const FrequencyWindow& window,
                           const AdsParams& params);

// Boundary machinery.
int floor_nu(const AdsParams& params);
std::vector<double> taylor_coeffs(Branch branch, double omega, int l, const AdsParams& params,
                                  int a_max);
// Twisted derivative of C^a or C^b at rho, from the Taylor series in cos(rho).
double twisted_derivative(RadialKind kind, double omega, int l, double rho,
                          const AdsParams& params, int a_max = 30);
double twisted_boundary_limit(RadialKind kind, const AdsParams& params);
// lim cos^{-Delta_-} f for C^a / C^b.
double rescaled_boundary_limit(RadialKind kind, const AdsParams& params);

struct BoundaryData {
  OmegaGrid grid;
  std::vector<double> t;
  AngularGrid angles;
  std::vector<cplx> minus;  // phi^{d-}
  std::vector<cplx> plus;   // phi^{d+}_nu
};

BoundaryData boundary_data(const TubeRep& rep, const FrequencyWindow& window,
                           const AdsParams& params, int n_theta = 64, int n_phi = 128);
TubeRep boundary_reconstruct(const BoundaryData& data, const FrequencyWindow& window,
                             const AdsParams& params);

// Rod boundary value lim cos^{-Delta_-} phi; uses BoundaryData::minus only.
BoundaryData rod_boundary_data(const RodRep& rep, const FrequencyWindow& window,
                               const AdsParams& params, int n_theta = 64, int n_phi = 128);
RodRep rod_boundary_reconstruct(const BoundaryData& data, const FrequencyWindow& window,
                                const AdsParams& params);

// Text serialization: header "adskg-rep v1 d=.. R=.. msq=.. domega=..",
// then "basis k l m re_a im_a re_b im_b" per label.
struct RepFile {
  AdsParams params;
  std::string basis;  // S, C, J or rod
  OmegaGrid grid;
  std::map<LabelKey, ABPair> coeffs;
};
void write_rep(std::ostream& os, const RepFile& file);
RepFile read_rep(std::istream& is);
RepFile to_file(const TubeRep& rep, const AdsParams& params);
RepFile to_file(const SliceRep& rep, const AdsParams& params);
RepFile to_file(const RodRep& rep, const AdsParams& params);
TubeRep tube_from_file(const RepFile& file);
SliceRep slice_from_file(const RepFile& file);
RodRep rod_from_file(const RepFile& file);

}  // namespace adskg
