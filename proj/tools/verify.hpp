#pragma once

// Verification suites behind `mrl verify`: numerical checks of the limit
// theorems, the expansion cross-methods, and the m' = rm - 1 identity,
// printed one pass/fail line per assertion.

#include <string>
#include <vector>

#include "mrl/model.hpp"

namespace mrl::verify {

struct Options {
  std::vector<HazardModel> models;
  std::string suite = "all";  // limits | expansion | de1 | all
  bool full = false;          // fast: T=50, tolerances x2; full: T=200
};

/// Runs the requested suites; returns the number of failed assertions.
int run(const Options& options);

}  // namespace mrl::verify
