#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hhbv/coeff.hpp"
#include "hhbv/group_ring.hpp"

namespace hhbv {

struct SuiteOptions {
  int degree_bound = 6;
  unsigned jobs = 1;
  std::uint64_t seed = 20240601;
  // restrict grids to this group / ring where the suite is parametrised by them
  std::optional<GroupDescriptor> group;
  std::optional<CoeffRingTag> ring;
};

struct SuiteReport {
  int criterion = 0;
  std::string name, title;
  bool passed = true;
  bool skipped = false;
  std::size_t cases = 0, failures = 0;
  std::vector<std::string> failure_samples;  // first few failures
  std::vector<std::string> notes;
  double seconds = 0;
};

struct SuiteInfo {
  int criterion;
  std::string name, title;
};

const std::vector<SuiteInfo>& suite_catalog();
// throws DomainError for unknown names
SuiteReport run_suite(std::string_view name, const SuiteOptions& options);

// Runs body(0..count-1) on up to `jobs` threads; the first exception is rethrown after all workers stop.
void parallel_for(std::size_t count, unsigned jobs, const std::function<void(std::size_t)>& body);

}  // namespace hhbv
