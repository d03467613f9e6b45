#pragma once

// The invariant suite: named randomized properties over all kernel modules,
// each reporting pass counts and its first counterexample.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "holodist/random.hpp"

namespace holodist {

struct PropertyResult {
  std::string name;
  size_t passed = 0;
  size_t total = 0;
  std::string first_failure;
  /// Free-form counters a property may report (e.g. how many degenerate cases it saw).
  std::vector<std::pair<std::string, size_t>> counters;

  bool ok() const { return passed == total && first_failure.empty(); }
};

struct Property {
  std::string name;
  std::string module;
  size_t trials;  // full-size sample count
  std::function<PropertyResult(Rng&, size_t)> run;
};

const std::vector<Property>& properties();
const Property& property(const std::string& name);

/// Runs one property with its own stream derived from (seed, name).
PropertyResult run_property(const Property& p, uint64_t seed, size_t trials);

struct SelftestOptions {
  uint64_t seed = 20240601;
  bool quick = false;     // one fifth of the samples (at least 3)
  unsigned threads = 0;   // 0: hardware concurrency
  std::string filter;     // run only properties whose name contains this
};

std::vector<PropertyResult> run_selftest(const SelftestOptions& opt);

}  // namespace holodist
