#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vortexloop/io.hpp"

namespace vortexloop {

struct PropertyResult {
  std::string suite;
  std::string name;
  bool pass = false;
  double value = 0.0;
  double threshold = 0.0;
  /// "<=" : pass when value <= threshold, ">=" : pass when value >= threshold.
  std::string comparison = "<=";
  std::string detail;
};

struct VerifyOptions {
  std::string suite = "all";  // forms | symplectic | flow | all
  std::uint64_t seed = 7;
  /// Replace beta = sin 2t by the volume form dt in the nondegeneracy check.
  bool inject_volume_form = false;
};

struct VerifyReport {
  std::string suite;
  std::uint64_t seed = 0;
  std::vector<PropertyResult> results;

  bool passed() const;
};

VerifyReport run_verify(const VerifyOptions& options);
io::Json to_json(const VerifyReport& report);

}  // namespace vortexloop
