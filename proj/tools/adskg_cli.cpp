// adskg command-line front end: eval, verify, reconstruct, boost-table.
#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "adskg/errors.hpp"
#include "adskg/expansions.hpp"
#include "adskg/isometry.hpp"
#include "adskg/verify.hpp"

namespace {

using namespace adskg;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// "x" or "a:b:n" (n points, endpoints included).
std::vector<double> parse_linspace(const std::string& spec) {
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  try {
    if (parts.size() == 1) return {std::stod(parts[0])};
    if (parts.size() == 3) {
      const double a = std::stod(parts[0]), b = std::stod(parts[1]);
      const int n = std::stoi(parts[2]);
      if (n < 1) throw UsageError("linspace needs n >= 1: " + spec);
      if (n == 1) return {a};
      std::vector<double> v(n);
      for (int i = 0; i < n; ++i) v[i] = a + (b - a) * i / (n - 1);
      return v;
    }
  } catch (const std::logic_error&) {
  }
  throw UsageError("bad numeric spec '" + spec + "', expected x or a:b:n");
}

struct RunConfig {
  int d = 3;
  double R = 1.0;
  double m_sq = 0.0;
  std::string out;
  AdsParams params;

  void validate() {
    if (d != 3) throw UsageError("only d = 3 is supported by the command-line tool");
    if (!(R > 0.0)) throw UsageError("R must be positive");
    try {
      params = make_params(d, R, m_sq);
    } catch (const Error& e) {
      throw UsageError(e.what());
    }
  }
};

void add_common(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--d", cfg.d, "spatial dimension")->capture_default_str();
  sub->add_option("--R", cfg.R, "AdS radius")->capture_default_str();
  sub->add_option("--msq", cfg.m_sq, "mass squared m^2")->capture_default_str();
}

std::string header(const std::string& sub, const RunConfig& cfg) {
  std::ostringstream os;
  os << "# adskg v1 " << sub << " d=" << cfg.d << " R=" << cfg.R << " msq=" << cfg.m_sq;
  return os.str();
}

// Writes to --out when given, otherwise stdout.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw UsageError("cannot open " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

// ---- eval ---------------------------------------------------------------------

struct EvalOptions {
  std::string kind;
  std::string omega = "1.0";
  int n = 0;
  int l = 0;
  int m = 0;
  std::string t = "0", rho = "0.5", theta = "1.0", phi = "0";
};

int eval_rows(const RunConfig& cfg, const EvalOptions& o);

int cmd_eval(RunConfig& cfg, const EvalOptions& o) {
  static const std::vector<std::string> kinds{"sa", "sb", "ca", "cb", "j"};
  if (std::find(kinds.begin(), kinds.end(), o.kind) == kinds.end()) {
    throw UsageError("unknown kind '" + o.kind + "' (sa, sb, ca, cb, j)");
  }
  if (o.l < 0 || std::abs(o.m) > o.l) throw UsageError("need l >= 0 and |m| <= l");
  cfg.validate();
  try {
    return eval_rows(cfg, o);
  } catch (const Error& e) {
    throw UsageError(e.what());  // bad point or label for the chosen kind
  }
}

int eval_rows(const RunConfig& cfg, const EvalOptions& o) {
  const auto ts = parse_linspace(o.t), rhos = parse_linspace(o.rho);
  const auto ths = parse_linspace(o.theta), phs = parse_linspace(o.phi);
  const double omega = parse_linspace(o.omega).at(0);
  Output out(cfg.out);
  std::ostream& os = out.stream();
  os << header("eval", cfg) << "\n" << "t,rho,theta,phi,re,im\n";
  char buf[256];
  for (double t : ts) {
    for (double rho : rhos) {
      for (double th : ths) {
        for (double ph : phs) {
          const SpacePoint p{t, rho, th, ph};
          cplx v;
          if (o.kind == "j") {
            v = mode_eval(SliceLabel{o.n, o.l, o.m, Branch::Plus}, p, cfg.params);
          } else {
            const RadialKind k = o.kind == "sa"   ? RadialKind::Sa
                                 : o.kind == "sb" ? RadialKind::Sb
                                 : o.kind == "ca" ? RadialKind::Ca
                                                  : RadialKind::Cb;
            v = mode_eval(TubeLabel{omega, o.l, o.m}, k, p, cfg.params);
          }
          std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", t, rho, th, ph,
                        v.real(), v.imag());
          os << buf;
        }
      }
    }
  }
  return kExitPass;
}

// ---- verify -------------------------------------------------------------------

int cmd_verify(const std::string& suite) {
  if (!is_suite(suite)) throw UsageError("unknown suite '" + suite + "'");
  const SuiteResult r = run_suite(suite);
  char buf[512];
  for (const auto& c : r.checks) {
    if (c.is_range) {
      std::snprintf(buf, sizeof buf, "%s  %s  value=%.3e range=[%g, %g]\n", c.pass() ? "PASS" : "FAIL",
                    c.name.c_str(), c.value, c.lo, c.hi);
    } else {
      std::snprintf(buf, sizeof buf, "%s  %s  err=%.3e tol=%.0e\n", c.pass() ? "PASS" : "FAIL",
                    c.name.c_str(), c.value, c.hi);
    }
    std::cout << buf;
  }
  std::snprintf(buf, sizeof buf, "SUITE %s %s max_err=%.3e\n", suite.c_str(), r.pass() ? "PASS" : "FAIL",
                r.max_err());
  std::cout << buf;
  return r.pass() ? kExitPass : kExitFail;
}

// ---- reconstruct --------------------------------------------------------------

struct LabelError {
  LabelKey key;
  double err;
};

template <class V, class Dist>
std::vector<LabelError> label_errors(const std::map<LabelKey, V>& want, const std::map<LabelKey, V>& got,
                                     Dist dist) {
  std::vector<LabelError> out;
  for (const auto& [k, v] : want) {
    const auto it = got.find(k);
    out.push_back({k, dist(v, it == got.end() ? V{} : it->second)});
  }
  for (const auto& [k, v] : got) {
    if (!want.count(k)) out.push_back({k, dist(V{}, v)});
  }
  return out;
}

double ab_dist(const ABPair& x, const ABPair& y) { return std::abs(x.a - y.a) + std::abs(x.b - y.b); }

FrequencyWindow window_for(const std::map<LabelKey, ABPair>& coeffs) {
  FrequencyWindow w{-2, 2, 1};
  for (const auto& [k, v] : coeffs) {
    w.k_min = std::min(w.k_min, k.k - 2);
    w.k_max = std::max(w.k_max, k.k + 2);
    w.l_max = std::max(w.l_max, k.l + 1);
  }
  return w;
}

int cmd_reconstruct(const std::string& path, const std::string& target, double tol,
                    double where) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  const RepFile file = read_rep(in);
  const AdsParams& p = file.params;
  const FrequencyWindow window = window_for(file.coeffs);
  std::vector<LabelError> errs;

  static const std::vector<std::string> targets{"slice", "tube", "rod", "boundary"};
  if (std::find(targets.begin(), targets.end(), target) == targets.end()) {
    throw UsageError("unknown target '" + target + "' (slice, tube, rod, boundary)");
  }
  if (file.coeffs.empty()) {
    // nothing to recover
  } else if (target == "slice") {
    if (file.basis != "J") throw UsageError("slice target needs a J-basis rep");
    const SliceRep rep = slice_from_file(file);
    LabelCutoffs cut{1, 1};
    for (const auto& [k, v] : rep.coeffs) {
      cut.n_max = std::max(cut.n_max, k.k + 1);
      cut.l_max = std::max(cut.l_max, k.l + 1);
    }
    const SliceRep got = invert_slice(sample_slice(rep, where, p), p, cut);
    errs = label_errors(rep.coeffs, got.coeffs, [](const SlicePair& x, const SlicePair& y) {
      return std::abs(x.plus - y.plus) + std::abs(x.minus_conj - y.minus_conj);
    });
  } else if (target == "tube") {
    if (file.basis != "S" && file.basis != "C") throw UsageError("tube target needs an S or C rep");
    const TubeRep rep = tube_from_file(file);
    const TubeRep got = invert_tube(sample_tube(rep, where, window, p), window, p, rep.basis);
    errs = label_errors(rep.coeffs, got.coeffs, ab_dist);
  } else if (target == "rod") {
    if (file.basis != "rod") throw UsageError("rod target needs a rod rep");
    const RodRep rep = rod_from_file(file);
    const RodRep got = invert_rod_interior(sample_rod(rep, where, window, p), window, p);
    errs = label_errors(rep.coeffs, got.coeffs, [](cplx x, cplx y) { return std::abs(x - y); });
  } else if (target == "boundary") {
    if (file.basis == "rod") {
      const RodRep rep = rod_from_file(file);
      // a magic-frequency label leaves no trace in the boundary value, so the data alone
      // cannot flag it
      for (const auto& [k, a] : rep.coeffs) {
        if (std::abs(transfer_matrix(rep.grid.omega(k.k), k.l, p).m12) < 1e-10) {
          throw MagicFrequencyBlind("rod label (" + std::to_string(k.k) + ", " + std::to_string(k.l) + ", " +
                                    std::to_string(k.m) + ") sits on a magic frequency");
        }
      }
      const RodRep got = rod_boundary_reconstruct(rod_boundary_data(rep, window, p), window, p);
      errs = label_errors(rep.coeffs, got.coeffs, [](cplx x, cplx y) { return std::abs(x - y); });
    } else if (file.basis == "S" || file.basis == "C") {
      const TubeRep rep = tube_from_file(file);
      const TubeRep want = rep.basis == TubeBasis::C ? rep : s_to_c(rep, p);
      const TubeRep got = boundary_reconstruct(boundary_data(rep, window, p), window, p);
      errs = label_errors(want.coeffs, got.coeffs, ab_dist);
    } else {
      throw UsageError("boundary target needs an S, C or rod rep");
    }
  }

  double worst = 0.0;
  char buf[256];
  std::cout << "k_or_n,l,m,err\n";
  for (const auto& e : errs) {
    std::snprintf(buf, sizeof buf, "%d,%d,%d,%.3e\n", e.key.k, e.key.l, e.key.m, e.err);
    std::cout << buf;
    worst = std::max(worst, e.err);
  }
  const bool ok = worst < tol;
  std::snprintf(buf, sizeof buf, "RECONSTRUCT %s %s max_err=%.3e labels=%zu\n", target.c_str(),
                ok ? "PASS" : "FAIL", worst, errs.size());
  std::cout << buf;
  return ok ? kExitPass : kExitFail;
}

// ---- boost-table --------------------------------------------------------------

int cmd_boost_table(RunConfig& cfg, const std::string& kind, const std::string& gen, double domega,
                    int k_max, int n_max, int l_max) {
  cfg.validate();
  GeneratorId g;
  if (gen == "boost0") g = GeneratorId::boost0(cfg.d);
  else if (gen == "boostd1") g = GeneratorId::boost_d1(cfg.d);
  else throw UsageError("generator must be boost0 or boostd1");
  Output out(cfg.out);
  std::ostream& os = out.stream();
  if (kind == "tube") {
    const TubeBoostTable t = extract_tube_boost_coeffs(g, OmegaGrid{domega}, {-k_max, k_max, l_max}, cfg.params);
    os << header("boost-table", cfg) << "\n";
    write_boost_csv(os, t);
  } else if (kind == "slice") {
    const SliceBoostTable t = extract_slice_boost_coeffs(g, {n_max, l_max}, cfg.params);
    os << header("boost-table", cfg) << "\n";
    write_boost_csv(os, t);
  } else {
    throw UsageError("kind must be tube or slice");
  }
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Klein-Gordon modes on AdS: evaluation, verification, reconstruction"};
  app.require_subcommand(1);
  RunConfig cfg;

  EvalOptions eo;
  auto* eval = app.add_subcommand("eval", "evaluate a single mode on a grid, CSV to stdout");
  add_common(eval, cfg);
  eval->add_option("--kind", eo.kind, "sa, sb, ca, cb or j")->required();
  eval->add_option("--omega", eo.omega, "frequency (tube kinds)");
  eval->add_option("--n", eo.n, "radial number (kind j)");
  eval->add_option("--l", eo.l, "angular momentum");
  eval->add_option("--m", eo.m, "azimuthal number");
  eval->add_option("--t", eo.t, "time, x or a:b:n");
  eval->add_option("--rho", eo.rho, "radius, x or a:b:n");
  eval->add_option("--theta", eo.theta, "polar angle, x or a:b:n");
  eval->add_option("--phi", eo.phi, "azimuth, x or a:b:n");
  eval->add_option("--out", cfg.out, "output file");

  std::string suite;
  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("suite", suite, "specfun, harmonics, geometry, modes, expansions, symplectic, "
                                     "isometry, minkowski or all")->required();

  std::string rep_path, target;
  double tol = 1e-6, where = 0.7;
  auto* recon = app.add_subcommand("reconstruct", "synthesize, sample and invert a rep file");
  recon->add_option("file", rep_path, "rep file")->required();
  recon->add_option("--target", target, "slice, tube, rod or boundary")->required();
  recon->add_option("--tol", tol, "pass threshold on the max label error")->capture_default_str();
  recon->add_option("--at", where, "t0 (slice) or rho0 (tube, rod)")->capture_default_str();

  std::string bkind = "tube", bgen = "boost0";
  double domega = 0.5;
  int k_max = 8, n_max = 4, l_max = 4;
  auto* boost = app.add_subcommand("boost-table", "extract boost shift coefficients as CSV");
  add_common(boost, cfg);
  boost->add_option("--kind", bkind, "tube or slice")->capture_default_str();
  boost->add_option("--generator", bgen, "boost0 or boostd1")->capture_default_str();
  boost->add_option("--domega", domega, "tube frequency step")->capture_default_str();
  boost->add_option("--kmax", k_max, "tube window |k| <= kmax")->capture_default_str();
  boost->add_option("--nmax", n_max, "slice n <= nmax")->capture_default_str();
  boost->add_option("--lmax", l_max, "l <= lmax")->capture_default_str();
  boost->add_option("--out", cfg.out, "output file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*eval) return cmd_eval(cfg, eo);
    if (*verify) return cmd_verify(suite);
    if (*recon) return cmd_reconstruct(rep_path, target, tol, where);
    if (*boost) return cmd_boost_table(cfg, bkind, bgen, domega, k_max, n_max, l_max);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const MagicFrequencyBlind& e) {
    std::cout << e.what() << "\n";
    return kExitFail;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFail;
  }
  return kExitUsage;
}
