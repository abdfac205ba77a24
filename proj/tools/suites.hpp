#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace heisenwave::cli {

struct SuiteConfig {
  std::uint32_t grid = 32;
  double extent = 6.0;
  std::size_t scales = 32;
  double eps = 0.1;
  double A = 4.0;
};

struct Check {
  std::string id;
  std::string anchor;
  double residual;
  double tolerance;
  bool pass;
};

struct SuiteResult {
  std::string suite;
  std::vector<Check> checks;
  nlohmann::json environment;
  double wall_time = 0.0;

  bool passed() const;
};

/// Runs one named suite: group, heat, wavelet or calderon.
SuiteResult run_suite(const std::string& name, const SuiteConfig& config);

/// Report document in the "hwreport/1" schema.
nlohmann::json report_json(const std::vector<SuiteResult>& results);

}  // namespace heisenwave::cli
