#pragma once

#include <functional>
#include <iosfwd>
#include <map>
#include <utility>
#include <vector>

#include "adskg/expansions.hpp"

namespace adskg {

// Pullbacks: the acted rep synthesizes phi(g^{-1} x).
TubeRep act_time_translation(const TubeRep& rep, double delta_t);
SliceRep act_time_translation(const SliceRep& rep, double delta_t, const AdsParams& params);
RodRep act_time_translation(const RodRep& rep, double delta_t);

// d = 3 only. synth(act_rotation(rep, a), x) == synth(rep, R(a)^{-1} x).
TubeRep act_rotation(const TubeRep& rep, const EulerAngles& angles, const AdsParams& params);
SliceRep act_rotation(const SliceRep& rep, const EulerAngles& angles, const AdsParams& params);

// Boost shift coefficients with the kappa_pm(l, m) factor removed, so entries depend on
// (k, l) or (n, l) only. With mu = e^{-i w t} Y_l^m f:
//   Z mu    = -i sum_pm kappa_pm(l, m) z_pm      mu_{w-1, l pm 1}
//   Zbar mu = -i sum_pm kappa_pm(l, m) ztilde_pm mu_{w+1, l pm 1}
// where Z = K_{0d} + i K_{d+1,d}, Zbar = K_{0d} - i K_{d+1,d}.
struct TubeBoostEntry {
  // [source channel a=0 b=1][target channel][0: l-1, 1: l+1]
  double z[2][2][2] = {};
  double zt[2][2][2] = {};
};

struct TubeBoostTable {
  OmegaGrid grid;
  FrequencyWindow window;
  int shift = 0;  // grid steps per unit frequency
  std::map<std::pair<int, int>, TubeBoostEntry> entries;
  double max_leakage = 0.0;
  const TubeBoostEntry& at(int k, int l) const;
};

struct SliceBoostEntry {
  double z0m = 0.0;   // (n, l) -> (n, l-1), lowering
  double zmp = 0.0;   // (n, l) -> (n-1, l+1), lowering
  double ztpm = 0.0;  // (n, l) -> (n+1, l-1), raising
  double zt0p = 0.0;  // (n, l) -> (n, l+1), raising
};

struct SliceBoostTable {
  LabelCutoffs cutoffs;
  std::map<std::pair<int, int>, SliceBoostEntry> entries;
  double max_leakage = 0.0;
  const SliceBoostEntry& at(int n, int l) const;  // zero entry outside range
};

// Generator must be Boost0(d) or BoostD1(d) with d = 3. Throws ProjectionResidual if the
// image of a mode leaks outside the contiguous targets by more than 1e-6.
TubeBoostTable extract_tube_boost_coeffs(const GeneratorId& generator, const OmegaGrid& grid,
                                         const FrequencyWindow& window, const AdsParams& params);
SliceBoostTable extract_slice_boost_coeffs(const GeneratorId& generator,
                                           const LabelCutoffs& cutoffs, const AdsParams& params);

// K |> rep: coefficients of -K phi. Source labels must sit inside the table window with a
// one-step margin (WindowOverflow otherwise). C-basis reps go through the S basis.
TubeRep boost_generator_action(const TubeRep& rep, const GeneratorId& generator,
                               const TubeBoostTable& table, const AdsParams& params);
SliceRep boost_generator_action(const SliceRep& rep, const GeneratorId& generator,
                                const SliceBoostTable& table, const AdsParams& params);

// rep + epsilon * (K |> rep)
TubeRep act_boost(const TubeRep& rep, const GeneratorId& generator, double epsilon,
                  const TubeBoostTable& table, const AdsParams& params);
SliceRep act_boost(const SliceRep& rep, const GeneratorId& generator, double epsilon,
                   const SliceBoostTable& table, const AdsParams& params);

// CSV with header "kind,channel,k_or_n,l,value".
void write_boost_csv(std::ostream& os, const TubeBoostTable& table);
void write_boost_csv(std::ostream& os, const SliceBoostTable& table);

// Point moved along the flow of -K for parameter s (RK4), i.e. exp(-s K) x.
SpacePoint flow_point(const GeneratorId& generator, const SpacePoint& p, double s,
                      const AdsParams& params, int steps = 16);

template <class Rep>
using OmegaFn = std::function<cplx(const Rep&, const Rep&)>;
template <class Rep>
using RepMap = std::function<Rep(const Rep&)>;

enum class IsometryKind { Finite, Infinitesimal };

// Finite: max |omega(g eta, g zeta) - omega(eta, zeta)|.
// Infinitesimal (act = K |>): max |omega(act eta, zeta) + omega(eta, act zeta)|.
template <class Rep>
double invariance_suite(const OmegaFn<Rep>& omega, const std::vector<std::pair<Rep, Rep>>& pairs,
                        const RepMap<Rep>& act, IsometryKind kind) {
  double worst = 0.0;
  for (const auto& [eta, zeta] : pairs) {
    const Rep ae = act(eta), az = act(zeta);
    const cplx v = kind == IsometryKind::Finite ? omega(ae, az) - omega(eta, zeta)
                                                : omega(ae, zeta) + omega(eta, az);
    worst = std::max(worst, std::abs(v));
  }
  return worst;
}

}  // namespace adskg
