// Runs the full acceptance suite and prints one pass/fail line per criterion.
// Exit status is nonzero when any criterion fails.

#include "theta2/acceptance.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>

int main(int argc, char** argv) {
  std::uint64_t seed = 0;
  if (argc > 1) seed = std::strtoull(argv[1], nullptr, 10);

  const auto t0 = std::chrono::steady_clock::now();
  theta2::AcceptanceReport report = theta2::run_acceptance(seed);
  const auto t1 = std::chrono::steady_clock::now();

  for (const theta2::CriterionResult& c : report.criteria) {
    std::printf("%s  criterion %2d: %s\n", c.pass ? "PASS" : "FAIL", c.id, c.name.c_str());
    if (!c.pass) std::printf("      details: %s\n", c.details.dump().c_str());
  }
  const double secs = std::chrono::duration<double>(t1 - t0).count();
  std::printf("%s  (%zu criteria, seed %llu, %.1fs)\n", report.all_pass ? "ALL PASS" : "FAILURES",
              report.criteria.size(), static_cast<unsigned long long>(seed), secs);
  return report.all_pass ? 0 : 1;
}
