#pragma once

#include "adskg/expansions.hpp"

namespace adskg {

struct SymplecticValue {
  cplx value{0.0, 0.0};
};

// Radial Gauss-Legendre node count for slice quadrature.
int slice_rho_nodes(const AdsParams& params);

SymplecticValue omega_slice_quadrature(const SliceRep& eta, const SliceRep& zeta, double t0,
                                       const AdsParams& params);
SymplecticValue omega_slice_momentum(const SliceRep& eta, const SliceRep& zeta,
                                     const AdsParams& params);

SymplecticValue omega_tube_quadrature(const TubeRep& eta, const TubeRep& zeta, double rho0,
                                      const AdsParams& params);
// Throws BasisMismatch when the bases differ.
SymplecticValue omega_tube_momentum(const TubeRep& eta, const TubeRep& zeta,
                                    const AdsParams& params);

// theta_phi(eta) over the oriented boundary of the region: Sigma_{t2} - Sigma_{t1} for a
// slice, Sigma_{rho2} - Sigma_{rho1} for a tube, Sigma_{rho0} for a rod. On a single
// hypersurface omega(eta, zeta) = (theta_zeta(eta) - theta_eta(zeta)) / 2.
cplx symplectic_potential(const Region& region, const SliceRep& phi, const SliceRep& eta,
                          const AdsParams& params);
cplx symplectic_potential(const Region& region, const TubeRep& phi, const TubeRep& eta,
                          const AdsParams& params);

// Potentials on single hypersurfaces.
cplx potential_slice(const SliceRep& phi, const SliceRep& eta, double t0, const AdsParams& params);
cplx potential_tube(const TubeRep& phi, const TubeRep& eta, double rho0, const AdsParams& params);

}  // namespace adskg
