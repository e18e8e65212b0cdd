#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "adskg/expansions.hpp"

#ifndef ADSKG_CLI
#error "ADSKG_CLI must point at the adskg executable"
#endif

using namespace adskg;

namespace {
struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(ADSKG_CLI) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

int count_lines(const std::string& s, bool skip_comments) {
  int n = 0;
  size_t pos = 0;
  while (pos < s.size()) {
    const size_t end = s.find('\n', pos);
    const std::string line = s.substr(pos, end == std::string::npos ? std::string::npos : end - pos);
    if (!line.empty() && !(skip_comments && line[0] == '#')) ++n;
    if (end == std::string::npos) break;
    pos = end + 1;
  }
  return n;
}

std::string temp_file(const std::string& name, const RepFile& f) {
  const auto path = std::filesystem::temp_directory_path() / ("adskg_test_" + name + ".rep");
  std::ofstream os(path);
  write_rep(os, f);
  return path.string();
}
}  // namespace

TEST_CASE("eval") {
  const std::string args = "eval --kind sa --omega 2.3 --l 1 --m 0 --rho 0.1:1.4:14";
  const Run a = run(args);
  CHECK(a.code == 0);
  CHECK(a.out.rfind("# adskg v1 eval d=3", 0) == 0);
  CHECK(a.out.find("t,rho,theta,phi,re,im\n") != std::string::npos);
  // header comment, column line, 14 rows
  CHECK(count_lines(a.out, true) == 15);
  CHECK(run(args).out == a.out);
  CHECK(run("eval --kind xx --omega 2.3 --l 1").code == 2);
  CHECK(run("eval --kind sa --omega 2.3 --l 1 --msq -3").code == 2);
  CHECK(run("").code == 2);
}

TEST_CASE("verify") {
  const Run r = run("verify modes");
  CHECK(r.code == 0);
  CHECK(r.out.find("SUITE modes PASS max_err=") != std::string::npos);
  CHECK(run("verify nosuch").code == 2);
}

TEST_CASE("reconstruct") {
  const AdsParams p = make_params(3, 1.0, -1.0);
  TubeRep t{OmegaGrid{0.5}, TubeBasis::S, {}};
  t.coeffs[{3, 1, 0}] = {cplx(1.0, 0.5), cplx(0.2, 0.0)};
  t.coeffs[{-2, 2, 1}] = {cplx(0.0, 0.3), cplx(0.1, 0.1)};
  const std::string tube = temp_file("tube", to_file(t, p));
  const Run rt = run("reconstruct " + tube + " --target tube --at 0.8");
  CHECK(rt.code == 0);
  CHECK(rt.out.find("RECONSTRUCT tube PASS") != std::string::npos);
  CHECK(run("reconstruct " + tube + " --target boundary").code == 0);

  SliceRep s;
  s.coeffs[{1, 1, 0}] = {1.0, cplx(0.0, 0.5)};
  CHECK(run("reconstruct " + temp_file("slice", to_file(s, p)) + " --target slice").code == 0);

  const std::string empty = temp_file("empty", to_file(TubeRep{OmegaGrid{0.5}, TubeBasis::S, {}}, p));
  CHECK(run("reconstruct " + empty + " --target tube").code == 0);

  // rod label at omega+_{0,0} = 3 for m = 0
  RodRep rod{OmegaGrid{0.5}, {}};
  rod.coeffs[{6, 0, 0}] = 1.0;
  const Run magic = run("reconstruct " + temp_file("rod", to_file(rod, make_params(3, 1.0, 0.0))) + " --target boundary");
  CHECK(magic.code == 1);
  CHECK(magic.out.find("MagicFrequencyBlind") != std::string::npos);

  const auto bad = std::filesystem::temp_directory_path() / "adskg_test_bad.rep";
  std::ofstream(bad) << "adskg-rep v2 d=3 R=1 msq=0 domega=0.5\n";
  CHECK(run("reconstruct " + bad.string() + " --target tube").code == 2);
}

TEST_CASE("boost-table") {
  const Run r = run("boost-table --kind slice --generator boost0 --nmax 2 --lmax 2");
  CHECK(r.code == 0);
  CHECK(r.out.find("kind,channel,k_or_n,l,value") != std::string::npos);
}
