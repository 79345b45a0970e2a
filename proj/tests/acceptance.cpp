// One PASS/FAIL line per acceptance criterion. Exit status is the number of failures.
#include <cstdio>

#include "blockade/validation.hpp"

int main() {
  blockade::Validator v;
  int failed = 0;
  for (const auto& r : v.run_all()) {
    std::printf("%s  %-34s %7.1f s  %s\n", r.pass ? "PASS" : "FAIL", r.name.c_str(), r.seconds, r.detail.c_str());
    std::fflush(stdout);
    failed += r.pass ? 0 : 1;
  }
  return failed;
}
