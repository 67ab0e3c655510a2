#pragma once

#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "octic/elim.hpp"
#include "octic/subgroups.hpp"

namespace octic {

struct ManifestError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunOptions {
  bool ci = false;        // derived series of the symplectic group to level 3 only
  bool parallel = false;  // run_all: independent checks concurrently
  ElimBudgets budgets;
  DerivedSeriesLimits series;
};

struct CheckOutcome {
  std::string status;  // pass, fail, skipped, unresolved
  std::string observed;
  std::vector<std::string> diagnostics;
};

struct CheckSpec {
  std::string id;
  std::string anchor;  // the result this check reproduces
  std::vector<std::string> tags;
  std::string command;  // equivalent CLI invocation
  std::string expected;
  std::function<CheckOutcome(const RunOptions&)> run;
};

struct CheckEntry {
  std::string id;
  std::string anchor;
  std::vector<std::string> tags;
  std::string command;
  std::string expected;
  std::string status;
  std::string observed;
  std::vector<std::string> diagnostics;
  double runtime_seconds = 0;
  nlohmann::json to_json(bool with_runtime = true) const;
};

struct VerificationManifest {
  std::vector<CheckEntry> entries;
  bool any_failed() const;
  nlohmann::json to_json(bool with_runtime = true) const;
  std::string summary_table() const;
};

const std::vector<CheckSpec>& manifest();
// Throws ManifestError for unknown ids; errors inside the check become a fail entry.
CheckEntry run_check(const std::string& id, const RunOptions& opts = {});
// Empty `tags` runs everything; otherwise checks carrying any of the tags.
VerificationManifest run_all(const std::vector<std::string>& tags, const RunOptions& opts = {});

}  // namespace octic
