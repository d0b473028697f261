// One line per acceptance criterion; exit status 0 only when every criterion passes.
#include <cstdio>
#include <iostream>
#include <thread>

#include "hhbv/suites.hpp"

int main() {
  hhbv::SuiteOptions options;
  options.jobs = std::max(1u, std::thread::hardware_concurrency());
  bool all = true;
  for (const auto& info : hhbv::suite_catalog()) {
    const auto r = hhbv::run_suite(info.name, options);
    all = all && r.passed;
    char timing[32];
    std::snprintf(timing, sizeof timing, "%.2f s", r.seconds);
    std::cout << "criterion " << r.criterion << " [" << (r.passed ? "PASS" : "FAIL") << "] " << r.name << ": " << r.title
              << " (" << r.cases - r.failures << "/" << r.cases << " cases, " << timing << ")\n";
    for (const auto& note : r.notes) std::cout << "    note: " << note << "\n";
    for (const auto& f : r.failure_samples) std::cout << "    failure: " << f << "\n";
    std::cout.flush();
  }
  std::cout << (all ? "all criteria pass" : "some criteria fail") << "\n";
  return all ? 0 : 1;
}
