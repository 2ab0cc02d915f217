// One line per acceptance criterion; exit status 1 if any fails.
// Optional arguments select criteria by number.
#include "chemotax/acceptance.hpp"

#include <cstdio>
#include <cstdlib>

int main(int argc, char** argv) {
  std::setvbuf(stdout, nullptr, _IOLBF, 0);
  chemotax::AcceptanceContext ctx;
  std::vector<int> which;
  for (int i = 1; i < argc; ++i) which.push_back(std::atoi(argv[i]));
  int failed = 0;
  for (const auto& r : chemotax::run_acceptance(ctx, which)) {
    std::printf("%s\n", chemotax::summary_line(r).c_str());
    failed += !r.pass;
  }
  std::printf("%d criteria failed\n", failed);
  return failed ? 1 : 0;
}
