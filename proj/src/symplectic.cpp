#include "adskg/symplectic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <variant>

#include "adskg/errors.hpp"

namespace adskg {

namespace {

template <class Rep>
int max_label_l(const Rep& a, const Rep& b) {
  int l = 0;
  for (const auto& [k, v] : a.coeffs) l = std::max(l, k.l);
  for (const auto& [k, v] : b.coeffs) l = std::max(l, k.l);
  return l;
}

template <class Rep>
int max_label_k(const Rep& a, const Rep& b) {
  int k = 0;
  for (const auto& [key, v] : a.coeffs) k = std::max(k, std::abs(key.k));
  for (const auto& [key, v] : b.coeffs) k = std::max(k, std::abs(key.k));
  return k;
}

// Gauss in cos(theta) with l_max + 2 nodes and 2 l_max + 4 azimuthal points integrate
// products of two harmonics up to l_max exactly.
int n_theta_for(int l_max) { return l_max + 2; }
int n_phi_for(int l_max) { return 2 * l_max + 4; }

// int_{Sigma_t} R^{d-1} tan^{d-1} f d_t g for slice reps
cplx slice_kernel(const SliceData& f, const SliceData& g, const AdsParams& params) {
  const size_t nang = f.angles.theta.size() * f.angles.phi.size();
  const size_t nph = f.angles.phi.size();
  cplx total = 0.0;
  for (size_t ir = 0; ir < f.rho.size(); ++ir) {
    cplx ang = 0.0;
    for (size_t i = 0; i < f.angles.theta.size(); ++i) {
      cplx row = 0.0;
      for (size_t j = 0; j < nph; ++j) {
        const size_t idx = ir * nang + i * nph + j;
        row += f.value[idx] * g.dt[idx];
      }
      ang += f.angles.weight_theta[i] * f.angles.weight_phi * row;
    }
    total += f.rho_weight[ir] * std::pow(std::tan(f.rho[ir]), params.d - 1) * ang;
  }
  return std::pow(params.R, params.d - 1) * total;
}

// int_{Sigma_rho0} R^{d-1} tan^{d-1} f d_rho g over one period
cplx tube_kernel(const TubeData& f, const TubeData& g, const AdsParams& params) {
  const size_t nang = f.angles.theta.size() * f.angles.phi.size();
  const size_t nph = f.angles.phi.size();
  cplx total = 0.0;
  for (size_t it = 0; it < f.t.size(); ++it) {
    for (size_t i = 0; i < f.angles.theta.size(); ++i) {
      cplx row = 0.0;
      for (size_t j = 0; j < nph; ++j) {
        const size_t idx = it * nang + i * nph + j;
        row += f.value[idx] * g.drho[idx];
      }
      total += f.angles.weight_theta[i] * f.angles.weight_phi * row;
    }
  }
  const double dt = f.grid.period() / static_cast<double>(f.t.size());
  return std::pow(params.R, params.d - 1) * std::pow(std::tan(f.rho0), params.d - 1) * dt * total;
}

struct SlicePairData {
  SliceData a, b;
};

SlicePairData sample_slice_pair(const SliceRep& a, const SliceRep& b, double t0,
                                const AdsParams& params) {
  const int l = max_label_l(a, b);
  const int nr = slice_rho_nodes(params);
  return {sample_slice(a, t0, params, nr, n_theta_for(l), n_phi_for(l)),
          sample_slice(b, t0, params, nr, n_theta_for(l), n_phi_for(l))};
}

struct TubePairData {
  TubeData a, b;
};

TubePairData sample_tube_pair(const TubeRep& a, const TubeRep& b, double rho0,
                              const AdsParams& params) {
  if (std::abs(a.grid.d_omega - b.grid.d_omega) > 1e-14 * a.grid.d_omega) {
    throw DomainError("tube reps live on different omega grids");
  }
  const int l = max_label_l(a, b);
  const int k = max_label_k(a, b);
  const FrequencyWindow w{-k, k, l};
  return {sample_tube(a, rho0, w, params, n_theta_for(l), n_phi_for(l)),
          sample_tube(b, rho0, w, params, n_theta_for(l), n_phi_for(l))};
}

}  // namespace

int slice_rho_nodes(const AdsParams&) { return 128; }

SymplecticValue omega_slice_quadrature(const SliceRep& eta, const SliceRep& zeta, double t0,
                                       const AdsParams& params) {
  const auto s = sample_slice_pair(eta, zeta, t0, params);
  return {-0.5 * (slice_kernel(s.a, s.b, params) - slice_kernel(s.b, s.a, params))};
}

SymplecticValue omega_slice_momentum(const SliceRep& eta, const SliceRep& zeta,
                                     const AdsParams& params) {
  cplx sum = 0.0;
  const double rd = std::pow(params.R, params.d - 1);
  for (const auto& [key, e] : eta.coeffs) {
    const auto it = zeta.coeffs.find(key);
    if (it == zeta.coeffs.end()) continue;
    const SlicePair& z = it->second;
    const double w = magic_frequency(Branch::Plus, key.k, key.l, params);
    const double N = norm_constant(Branch::Plus, key.k, key.l, params);
    sum += w * rd * N * (e.minus_conj * z.plus - e.plus * z.minus_conj);
  }
  return {cplx(0.0, 1.0) * sum};
}

SymplecticValue omega_tube_quadrature(const TubeRep& eta, const TubeRep& zeta, double rho0,
                                      const AdsParams& params) {
  const auto s = sample_tube_pair(eta, zeta, rho0, params);
  return {0.5 * (tube_kernel(s.a, s.b, params) - tube_kernel(s.b, s.a, params))};
}

SymplecticValue omega_tube_momentum(const TubeRep& eta, const TubeRep& zeta,
                                    const AdsParams& params) {
  if (eta.basis != zeta.basis) throw BasisMismatch("tube reps in different bases");
  if (eta.basis == TubeBasis::C) require_c_modes(params);
  cplx sum = 0.0;
  for (const auto& [key, e] : eta.coeffs) {
    const auto it = zeta.coeffs.find({-key.k, key.l, -key.m});
    if (it == zeta.coeffs.end()) continue;
    const ABPair& z = it->second;
    const double w = eta.basis == TubeBasis::S ? 2.0 * key.l + params.d - 2.0 : 2.0 * params.nu;
    sum += (e.a * z.b - e.b * z.a) * w;
  }
  return {std::numbers::pi * std::pow(params.R, params.d - 1) * eta.grid.d_omega * sum};
}

cplx potential_slice(const SliceRep& phi, const SliceRep& eta, double t0, const AdsParams& params) {
  const auto s = sample_slice_pair(eta, phi, t0, params);
  return -slice_kernel(s.a, s.b, params);
}

cplx potential_tube(const TubeRep& phi, const TubeRep& eta, double rho0, const AdsParams& params) {
  const auto s = sample_tube_pair(eta, phi, rho0, params);
  return tube_kernel(s.a, s.b, params);
}

cplx symplectic_potential(const Region& region, const SliceRep& phi, const SliceRep& eta,
                          const AdsParams& params) {
  const auto* slice = std::get_if<SliceRegion>(&region);
  if (!slice) throw DomainError("slice reps need a slice region");
  return potential_slice(phi, eta, slice->t2, params) - potential_slice(phi, eta, slice->t1, params);
}

cplx symplectic_potential(const Region& region, const TubeRep& phi, const TubeRep& eta,
                          const AdsParams& params) {
  if (const auto* rod = std::get_if<RodRegion>(&region)) {
    return potential_tube(phi, eta, rod->rho0, params);
  }
  if (const auto* tube = std::get_if<TubeRegion>(&region)) {
    return potential_tube(phi, eta, tube->rho2, params) - potential_tube(phi, eta, tube->rho1, params);
  }
  throw DomainError("tube reps need a rod or tube region");
}

}  // namespace adskg
