// Acceptance run: one line per criterion, nonzero exit if any fails.

#include <cstdio>
#include <cstring>
#include <string>

#include "flatorbit/random.hpp"
#include "flatorbit/suite.hpp"

int main(int argc, char** argv) {
  flatorbit::SuiteOptions opt;
  opt.data_dir = FLATORBIT_DATA_DIR;
  opt.seed = flatorbit::seed_from_env();
  bool verbose = false;
  for (int i = 1; i < argc; ++i) {
    if (!std::strcmp(argv[i], "--data") && i + 1 < argc) {
      opt.data_dir = argv[++i];
    } else if (!std::strcmp(argv[i], "--verbose") || !std::strcmp(argv[i], "-v")) {
      verbose = true;
    } else {
      std::fprintf(stderr, "usage: %s [--data DIR] [--verbose]\n", argv[0]);
      return 2;
    }
  }

  int failed = 0;
  flatorbit::run_acceptance(opt, [&](const flatorbit::Criterion& c) {
    bool pass = c.status == flatorbit::Status::Pass;
    if (!pass) ++failed;
    std::printf("%s  %2d  %s  (%.2f s)\n", pass ? "PASS" : "FAIL", c.id, c.title.c_str(), c.seconds);
    if (verbose || !pass)
      for (const auto& d : c.details) std::printf("        %s\n", d.c_str());
    std::fflush(stdout);
  });
  std::printf("%d of 11 criteria failed\n", failed);
  return failed == 0 ? 0 : 1;
}
