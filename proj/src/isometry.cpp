#include "adskg/isometry.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <string>

#include "adskg/errors.hpp"

namespace adskg {

namespace {

const cplx kI{0.0, 1.0};
constexpr double kLeakTol = 1e-6;

void require_d3(const AdsParams& params) {
  if (params.d != 3) throw UnsupportedDimension("isometry actions are implemented for d = 3");
}

// -K = w.low * (lowering terms) + w.high * (raising terms), with the table conventions.
struct BoostWeights {
  cplx low, high;
};

BoostWeights boost_weights(const GeneratorId& g, const AdsParams& params) {
  require_d3(params);
  if (g.kind == GeneratorId::Kind::Boost0 && g.j == params.d) return {0.5 * kI, 0.5 * kI};
  if (g.kind == GeneratorId::Kind::BoostD1 && g.j == params.d) return {0.5, -0.5};
  throw DomainError("only the d-direction boosts K_{0d}, K_{d+1,d} are implemented");
}

// delta_pm / kappa_pm; m-independent.
double delta_ratio(int sign, int l, int d) { return sign < 0 ? l + d - 2.0 : -static_cast<double>(l); }

double kappa(int sign, int l, int m, int d) {
  const ContiguousCoeffs c = contiguous_coeffs(d, l, m);
  return sign < 0 ? c.kappa_minus : c.kappa_plus;
}

struct RadialImage {
  double value, derivative;
};

// Radial factor of Z mu (lower) or Zbar mu after removing i kappa:
// h = w sin f +/- (cos f' + r f / sin).
RadialImage image(bool lower, double w, double r, double rho, double f, double df, double ddf) {
  const double s = std::sin(rho), c = std::cos(rho);
  const double pm = lower ? 1.0 : -1.0;
  const double v = w * s * f + pm * (c * df + r * f / s);
  const double dv =
      w * (c * f + s * df) + pm * (-s * df + c * ddf + r * (df / s - c * f / (s * s)));
  return {v, dv};
}

// Components of h along (S^a, S^b) of the target from Wronskians at rho.
std::array<double, 2> wronskian_split(const RadialImage& h, double w, int l, double rho,
                                      const AdsParams& params) {
  const RadialValue fa = radial_eval_d(RadialKind::Sa, w, l, rho, params);
  const RadialValue fb = radial_eval_d(RadialKind::Sb, w, l, rho, params);
  const RadialValue hv{h.value, h.derivative};
  const double wab = weighted_wronskian(fa, fb, rho, params.d);
  return {weighted_wronskian(hv, fb, rho, params.d) / wab,
          weighted_wronskian(fa, hv, rho, params.d) / wab};
}

cplx phase(double w, double dt) { return std::polar(1.0, w * dt); }

template <class Pair, class Fn>
std::map<LabelKey, Pair> rotate_blocks(const std::map<LabelKey, Pair>& in, const EulerAngles& angles,
                                       Fn mix) {
  std::map<std::pair<int, int>, WignerMatrix> cache;
  std::map<LabelKey, Pair> out;
  for (const auto& [key, v] : in) {
    auto it = cache.find({key.k, key.l});
    if (it == cache.end()) it = cache.emplace(std::make_pair(key.k, key.l), wigner_d(key.l, angles)).first;
    const WignerMatrix& D = it->second;
    for (int mp = -key.l; mp <= key.l; ++mp) {
      Pair& o = out[{key.k, key.l, mp}];
      mix(o, v, D(mp, key.m));
    }
  }
  return out;
}

}  // namespace

TubeRep act_time_translation(const TubeRep& rep, double delta_t) {
  TubeRep out = rep;
  for (auto& [key, v] : out.coeffs) {
    const cplx p = phase(rep.grid.omega(key.k), delta_t);
    v.a *= p;
    v.b *= p;
  }
  return out;
}

SliceRep act_time_translation(const SliceRep& rep, double delta_t, const AdsParams& params) {
  SliceRep out = rep;
  for (auto& [key, v] : out.coeffs) {
    const cplx p = phase(magic_frequency(Branch::Plus, key.k, key.l, params), delta_t);
    v.plus *= p;
    v.minus_conj *= std::conj(p);
  }
  return out;
}

RodRep act_time_translation(const RodRep& rep, double delta_t) {
  RodRep out = rep;
  for (auto& [key, v] : out.coeffs) v *= phase(rep.grid.omega(key.k), delta_t);
  return out;
}


TubeRep act_rotation(const TubeRep& rep, const EulerAngles& angles, const AdsParams& params) {
  require_d3(params);
  TubeRep out{rep.grid, rep.basis, {}};
  out.coeffs = rotate_blocks(rep.coeffs, angles, [](ABPair& o, const ABPair& v, cplx D) {
    o.a += D * v.a;
    o.b += D * v.b;
  });
  return out;
}

SliceRep act_rotation(const SliceRep& rep, const EulerAngles& angles, const AdsParams& params) {
  require_d3(params);
  SliceRep out;
  out.coeffs = rotate_blocks(rep.coeffs, angles, [](SlicePair& o, const SlicePair& v, cplx D) {
    o.plus += D * v.plus;
    o.minus_conj += std::conj(D) * v.minus_conj;
  });
  return out;
}

const TubeBoostEntry& TubeBoostTable::at(int k, int l) const {
  const auto it = entries.find({k, l});
  if (it == entries.end()) throw IndexError("no boost coefficients at k=" + std::to_string(k) + " l=" + std::to_string(l));
  return it->second;
}

const SliceBoostEntry& SliceBoostTable::at(int n, int l) const {
  static const SliceBoostEntry zero{};
  const auto it = entries.find({n, l});
  return it == entries.end() ? zero : it->second;
}

TubeBoostTable extract_tube_boost_coeffs(const GeneratorId& generator, const OmegaGrid& grid,
                                         const FrequencyWindow& window, const AdsParams& params) {
  boost_weights(generator, params);
  const double sf = 1.0 / grid.d_omega;
  const int shift = static_cast<int>(std::lround(sf));
  if (shift < 1 || std::abs(sf - shift) > 1e-12 * sf) {
    throw DomainError("boosts shift omega by 1: 1/d_omega must be an integer");
  }
  TubeBoostTable table{grid, window, shift, {}, 0.0};
  constexpr double rho1 = 0.5, rho2 = 0.9;
  const RadialKind kinds[2] = {RadialKind::Sa, RadialKind::Sb};
  for (int k = window.k_min; k <= window.k_max; ++k) {
    const double w = grid.omega(k);
    for (int l = 0; l <= window.l_max; ++l) {
      TubeBoostEntry e;
      for (int c = 0; c < 2; ++c) {
        RadialValue f[2];
        double ddf[2];
        const double rhos[2] = {rho1, rho2};
        for (int i = 0; i < 2; ++i) {
          f[i] = radial_eval_d(kinds[c], w, l, rhos[i], params);
          ddf[i] = radial_second_derivative(f[i].value, f[i].derivative, w, l, rhos[i], params);
        }
        for (int lower = 0; lower < 2; ++lower) {
          for (int si = 0; si < 2; ++si) {
            const int sign = si == 0 ? -1 : 1;
            const int lt = l + sign;
            if (lt < 0) continue;
            const double wt = lower ? w - 1.0 : w + 1.0;
            const double r = delta_ratio(sign, l, params.d);
            std::array<double, 2> split[2];
            for (int i = 0; i < 2; ++i) {
              const RadialImage h = image(lower, w, r, rhos[i], f[i].value, f[i].derivative, ddf[i]);
              split[i] = wronskian_split(h, wt, lt, rhos[i], params);
            }
            const double scale = std::max({1.0, std::abs(split[0][0]), std::abs(split[0][1])});
            const double leak = std::max(std::abs(split[0][0] - split[1][0]),
                                         std::abs(split[0][1] - split[1][1])) / scale;
            table.max_leakage = std::max(table.max_leakage, leak);
            if (leak > kLeakTol) {
              throw ProjectionResidual("boost image not a contiguous mode at k=" + std::to_string(k) +
                                       " l=" + std::to_string(l) + " (leak " + std::to_string(leak) + ")");
            }
            auto& dst = lower ? e.z : e.zt;
            dst[c][0][si] = -split[0][0];
            dst[c][1][si] = -split[0][1];
          }
        }
      }
      table.entries[{k, l}] = e;
    }
  }
  return table;
}

SliceBoostTable extract_slice_boost_coeffs(const GeneratorId& generator,
                                           const LabelCutoffs& cutoffs, const AdsParams& params) {
  boost_weights(generator, params);
  SliceBoostTable table{cutoffs, {}, 0.0};
  const QuadRule q = gauss_legendre(128);
  const size_t nq = q.nodes.size();
  std::vector<double> rho(nq), wq(nq);
  for (size_t i = 0; i < nq; ++i) {
    rho[i] = 0.25 * std::numbers::pi * (q.nodes[i] + 1.0);
    wq[i] = 0.25 * std::numbers::pi * q.weights[i] * std::pow(std::tan(rho[i]), params.d - 1);
  }
  auto dot = [&](const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (size_t i = 0; i < nq; ++i) s += wq[i] * a[i] * b[i];
    return s;
  };
  auto jacobi_nodes = [&](int n, int l) {
    std::vector<double> v(nq);
    for (size_t i = 0; i < nq; ++i) v[i] = jacobi_radial(Branch::Plus, n, l, rho[i], params);
    return v;
  };
  for (int n = 0; n <= cutoffs.n_max; ++n) {
    for (int l = 0; l <= cutoffs.l_max; ++l) {
      const double w = magic_frequency(Branch::Plus, n, l, params);
      std::vector<double> J(nq), dJ(nq);
      for (size_t i = 0; i < nq; ++i) {
        const RadialValue v = jacobi_radial_d(Branch::Plus, n, l, rho[i], params);
        J[i] = v.value;
        dJ[i] = v.derivative;
      }
      const double scale = w * std::sqrt(dot(J, J));
      SliceBoostEntry e;
      for (int lower = 0; lower < 2; ++lower) {
        for (int si = 0; si < 2; ++si) {
          const int sign = si == 0 ? -1 : 1;
          const int lt = l + sign;
          if (lt < 0) continue;
          // lowering: (n, l-1) or (n-1, l+1); raising: (n+1, l-1) or (n, l+1)
          const int nt = lower ? (sign < 0 ? n : n - 1) : (sign < 0 ? n + 1 : n);
          const double r = delta_ratio(sign, l, params.d);
          std::vector<double> h(nq);
          for (size_t i = 0; i < nq; ++i) h[i] = image(lower, w, r, rho[i], J[i], dJ[i], 0.0).value;
          double coeff = 0.0;
          std::vector<double> resid = h;
          if (nt >= 0) {
            const auto Jt = jacobi_nodes(nt, lt);
            coeff = dot(h, Jt) / dot(Jt, Jt);
            for (size_t i = 0; i < nq; ++i) resid[i] -= coeff * Jt[i];
          }
          const double leak = std::sqrt(std::max(0.0, dot(resid, resid))) / scale;
          table.max_leakage = std::max(table.max_leakage, leak);
          if (leak > kLeakTol) {
            throw ProjectionResidual("slice boost image leaks at n=" + std::to_string(n) +
                                     " l=" + std::to_string(l) + " (leak " + std::to_string(leak) + ")");
          }
          double& dst = lower ? (sign < 0 ? e.z0m : e.zmp) : (sign < 0 ? e.ztpm : e.zt0p);
          dst = -coeff;
        }
      }
      table.entries[{n, l}] = e;
    }
  }
  return table;
}

TubeRep boost_generator_action(const TubeRep& rep, const GeneratorId& generator,
                               const TubeBoostTable& table, const AdsParams& params) {
  if (rep.basis == TubeBasis::C) {
    return s_to_c(boost_generator_action(c_to_s(rep, params), generator, table, params), params);
  }
  const BoostWeights wts = boost_weights(generator, params);
  if (std::abs(rep.grid.d_omega - table.grid.d_omega) > 1e-14) {
    throw DomainError("rep and boost table use different omega grids");
  }
  const int s = table.shift;
  const FrequencyWindow& win = table.window;
  TubeRep out{rep.grid, TubeBasis::S, {}};
  for (const auto& [key, c] : rep.coeffs) {
    if (key.k - s < win.k_min || key.k + s > win.k_max || key.l + 1 > win.l_max) {
      throw WindowOverflow("label (" + std::to_string(key.k) + "," + std::to_string(key.l) + "," +
                           std::to_string(key.m) + ") touches the boost table boundary");
    }
    const TubeBoostEntry& e = table.at(key.k, key.l);
    for (int si = 0; si < 2; ++si) {
      const int sign = si == 0 ? -1 : 1;
      const double kap = kappa(sign, key.l, key.m, params.d);
      if (kap == 0.0) continue;
      const int lt = key.l + sign;
      ABPair& lo = out.coeffs[{key.k - s, lt, key.m}];
      lo.a += wts.low * kap * (c.a * e.z[0][0][si] + c.b * e.z[1][0][si]);
      lo.b += wts.low * kap * (c.a * e.z[0][1][si] + c.b * e.z[1][1][si]);
      ABPair& hi = out.coeffs[{key.k + s, lt, key.m}];
      hi.a += wts.high * kap * (c.a * e.zt[0][0][si] + c.b * e.zt[1][0][si]);
      hi.b += wts.high * kap * (c.a * e.zt[0][1][si] + c.b * e.zt[1][1][si]);
    }
  }
  return out;
}

SliceRep boost_generator_action(const SliceRep& rep, const GeneratorId& generator,
                                const SliceBoostTable& table, const AdsParams& params) {
  const BoostWeights wts = boost_weights(generator, params);
  SliceRep out;
  // The conj(phi^-) channel is the complex conjugate of a positive-frequency expansion and
  // K is a real vector field, so it transforms with conjugated weights.
  auto push = [&](const LabelKey& to, cplx w, double coeff, const SlicePair& v) {
    if (to.k < 0 || coeff == 0.0) return;
    SlicePair& o = out.coeffs[to];
    o.plus += w * coeff * v.plus;
    o.minus_conj += std::conj(w) * coeff * v.minus_conj;
  };
  for (const auto& [key, v] : rep.coeffs) {
    if (key.k + 1 > table.cutoffs.n_max || key.l + 1 > table.cutoffs.l_max) {
      throw WindowOverflow("label (" + std::to_string(key.k) + "," + std::to_string(key.l) + "," +
                           std::to_string(key.m) + ") touches the boost table boundary");
    }
    const SliceBoostEntry& e = table.at(key.k, key.l);
    const double km = kappa(-1, key.l, key.m, params.d);
    const double kp = kappa(1, key.l, key.m, params.d);
    if (km != 0.0) {
      push({key.k, key.l - 1, key.m}, wts.low, km * e.z0m, v);
      push({key.k + 1, key.l - 1, key.m}, wts.high, km * e.ztpm, v);
    }
    push({key.k - 1, key.l + 1, key.m}, wts.low, kp * e.zmp, v);
    push({key.k, key.l + 1, key.m}, wts.high, kp * e.zt0p, v);
  }
  return out;
}

TubeRep act_boost(const TubeRep& rep, const GeneratorId& generator, double epsilon,
                  const TubeBoostTable& table, const AdsParams& params) {
  TubeRep out = rep;
  for (const auto& [key, v] : boost_generator_action(rep, generator, table, params).coeffs) {
    ABPair& o = out.coeffs[key];
    o.a += epsilon * v.a;
    o.b += epsilon * v.b;
  }
  return out;
}

SliceRep act_boost(const SliceRep& rep, const GeneratorId& generator, double epsilon,
                   const SliceBoostTable& table, const AdsParams& params) {
  SliceRep out = rep;
  for (const auto& [key, v] : boost_generator_action(rep, generator, table, params).coeffs) {
    SlicePair& o = out.coeffs[key];
    o.plus += epsilon * v.plus;
    o.minus_conj += epsilon * v.minus_conj;
  }
  return out;
}

void write_boost_csv(std::ostream& os, const TubeBoostTable& table) {
  os << "kind,channel,k_or_n,l,value\n" << std::setprecision(17);
  const char* ch[2] = {"a", "b"};
  const char* sg[2] = {"-", "+"};
  for (const auto& [kl, e] : table.entries) {
    for (int c = 0; c < 2; ++c) {
      for (int si = 0; si < 2; ++si) {
        os << "tube,z(" << ch[c] << ")-" << sg[si] << ',' << kl.first << ',' << kl.second << ','
           << e.z[c][c][si] << "\n";
      }
      for (int si = 0; si < 2; ++si) {
        os << "tube,zt(" << ch[c] << ")+" << sg[si] << ',' << kl.first << ',' << kl.second << ','
           << e.zt[c][c][si] << "\n";
      }
    }
  }
}

void write_boost_csv(std::ostream& os, const SliceBoostTable& table) {
  os << "kind,channel,k_or_n,l,value\n" << std::setprecision(17);
  for (const auto& [nl, e] : table.entries) {
    const auto row = [&](const char* name, double v) {
      os << "slice," << name << ',' << nl.first << ',' << nl.second << ',' << v << "\n";
    };
    row("z(+)0-", e.z0m);
    row("z(+)-+", e.zmp);
    row("zt(+)+-", e.ztpm);
    row("zt(+)0+", e.zt0p);
  }
}

SpacePoint flow_point(const GeneratorId& generator, const SpacePoint& p, double s,
                      const AdsParams& params, int steps) {
  const EmbeddingPair pair = embedding_pair(generator, params.d);
  using State = std::array<double, 5>;
  auto rhs = [&](const State& y) {
    Vec3 xi{y[2], y[3], y[4]};
    const double n = std::sqrt(xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2]);
    for (double& x : xi) x /= n;
    const KillingCoeffs c = killing_coeffs(pair, y[0], y[1], xi, params.d);
    return State{-c.ct, -c.crho, -c.cang[0], -c.cang[1], -c.cang[2]};
  };
  auto axpy = [](const State& y, const State& k, double h) {
    State r;
    for (int i = 0; i < 5; ++i) r[i] = y[i] + h * k[i];
    return r;
  };
  const Vec3 xi = unit_vector(p.theta, p.phi);
  State y{p.t, p.rho, xi[0], xi[1], xi[2]};
  const double h = s / steps;
  for (int i = 0; i < steps; ++i) {
    const State k1 = rhs(y);
    const State k2 = rhs(axpy(y, k1, 0.5 * h));
    const State k3 = rhs(axpy(y, k2, 0.5 * h));
    const State k4 = rhs(axpy(y, k3, h));
    for (int j = 0; j < 5; ++j) y[j] += h / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
  }
  SpacePoint out{y[0], y[1], 0.0, 0.0};
  angles_of({y[2], y[3], y[4]}, out.theta, out.phi);
  return out;
}

}  // namespace adskg
