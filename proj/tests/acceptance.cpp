// One line per acceptance criterion; exit status is nonzero if any fails.
#include <cstdio>

#include "adskg/verify.hpp"

int main() {
  int failed = 0;
  for (int i = 1; i <= adskg::acceptance_count(); ++i) {
    const adskg::SuiteResult r = adskg::run_criterion(i);
    const bool ok = r.pass();
    if (!ok) ++failed;
    std::printf("CRITERION %2d %-4s max_err=%.3e  %s\n", i, ok ? "PASS" : "FAIL", r.max_err(), r.name.c_str());
    for (const auto& c : r.checks) {
      if (!c.pass()) std::printf("    failed: %s value=%.3e\n", c.name.c_str(), c.value);
    }
  }
  std::printf("ACCEPTANCE %s %d/%d\n", failed ? "FAIL" : "PASS", adskg::acceptance_count() - failed,
              adskg::acceptance_count());
  return failed ? 1 : 0;
}
