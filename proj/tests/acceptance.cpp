// One line per acceptance criterion. Usage: acceptance [N] [--quick] [--details]
#include <chrono>
#include <cstdio>
#include <cstring>
#include <iostream>

#include "clusterx/verify.hpp"

int main(int argc, char** argv) {
  int only = 0;
  bool details = false;
  cx::VerifyOptions opt;
  for (int i = 1; i < argc; ++i) {
    if (!std::strcmp(argv[i], "--quick"))
      opt.loop_monodromies = false;
    else if (!std::strcmp(argv[i], "--details"))
      details = true;
    else
      only = std::atoi(argv[i]);
  }
  bool all_pass = true;
  for (const auto& c : cx::acceptance_criteria()) {
    if (only && c.number != only) continue;
    const auto t0 = std::chrono::steady_clock::now();
    bool pass = false;
    cx::IdentityReport r;
    try {
      r = c.run(opt);
      pass = r.required_ok();
    } catch (const std::exception& e) {
      std::cout << "  exception: " << e.what() << "\n";
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    char line[256];
    std::snprintf(line, sizeof line, "criterion %d: %s %s (%.2fs)", c.number, pass ? "PASS" : "FAIL", c.title.c_str(), s);
    std::cout << line << "\n";
    if (details || !pass) std::cout << cx::format_report(r, true);
    std::cout.flush();
    all_pass = all_pass && pass;
  }
  return all_pass ? 0 : 1;
}
