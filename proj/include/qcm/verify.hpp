#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qcm/config.hpp"

namespace qcm {

struct Check {
  std::string module;
  std::string name;
  bool passed = false;
  double value = 0.0;
  double threshold = 0.0;
  std::string detail;
};

struct VerifyReport {
  std::vector<Check> checks;
  double seconds = 0.0;

  bool passed() const;
  const Check* find(const std::string& name) const;
  nlohmann::json to_json() const;
};

/// Invariant suite of every module against the oracles, on the configured cluster.
VerifyReport verify(const RunConfig& cfg);

}  // namespace qcm
