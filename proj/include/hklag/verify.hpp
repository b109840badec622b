#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace hklag {

struct NamedResidual {
  std::string name;
  double value;
  double tolerance;
};

struct VerifyItem {
  std::string name;
  bool pass = false;
  std::vector<NamedResidual> residuals;  // empty for purely exact checks
  std::int64_t duration_ms = 0;
};

struct VerifyReport {
  std::uint64_t seed = 0;
  std::vector<VerifyItem> items;

  bool pass() const;
};

// Runs every module's property suite deterministically for the seed.
// Failures are reflected in the per-item pass flags, never thrown.
VerifyReport verify_all(std::uint64_t seed);

}  // namespace hklag
