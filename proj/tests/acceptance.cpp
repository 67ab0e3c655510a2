// One pass/fail line per acceptance criterion. Exit status is nonzero if any criterion fails.
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include "octic/manifest.hpp"

using namespace octic;

namespace {

struct Criterion {
  int number;
  std::string check_id;
  double limit_seconds;
  bool ci = false;
  std::set<std::string> accepted{"pass"};
};

// Runtime limits are pinned here in seconds.
const std::vector<Criterion> kCriteria = {
    {1, "deltoid-presentation", 1},
    {2, "g0-braid-relations", 10},
    {3, "cremona24-group", 5},
    {4, "gsymp-derived-series", 60, true},
    {4, "gsymp-derived-series", 3600},
    {5, "g2-derived-series", 600},
    {6, "orbifold-kernel-consistency", 600},
    {7, "c82-certification", 120},
    {8, "deltoid-cusps", 5},
    {9, "kummer-e6", 1},
    // A recorded "unresolved" singularity pattern is acceptable; structural failures are not.
    {10, "order3-octic-assembly", 300, false, {"pass", "unresolved"}},
    {11, "quartic-models", 120},
    {12, "sturm-real-roots", 1},
};

struct PropertySuite {
  const char* binary;
  const char* filter;
};

// Property suites, each with at least 100 randomized cases.
const std::vector<PropertySuite> kProperties = {
    {OCTIC_TEST_FIELD, "FieldProperties.*:SturmProperties.*"},
    {OCTIC_TEST_POLY, "PolyProperties.*"},
    {OCTIC_TEST_FACTOR, "FactorProperties.*"},
    {OCTIC_TEST_GROUPS, "GroupProperties.*"},
    {OCTIC_TEST_SINGULAR, "Property.*"},
    {OCTIC_TEST_ELIM, "Property.*"},
    {OCTIC_TEST_CURVES, "Property.*"},
};

std::string line(int number, bool ok, const std::string& text) {
  char head[32];
  std::snprintf(head, sizeof head, "criterion %2d: %s  ", number, ok ? "PASS" : "FAIL");
  return head + text;
}

}  // namespace

int main() {
  bool all_ok = true;
  for (const auto& c : kCriteria) {
    RunOptions opts;
    opts.ci = c.ci;
    const CheckEntry e = run_check(c.check_id, opts);
    const bool in_time = e.runtime_seconds <= c.limit_seconds;
    const bool ok = c.accepted.count(e.status) && in_time;
    all_ok &= ok;
    char timing[64];
    std::snprintf(timing, sizeof timing, "%.2f s (limit %.0f s)", e.runtime_seconds, c.limit_seconds);
    std::cout << line(c.number, ok,
                      c.check_id + (c.ci ? " [levels 1-3]" : "") + ": " + e.status + ", " + timing + ": " + e.observed)
              << std::endl;
    for (const auto& d : e.diagnostics)
      if (!ok) std::cout << "    " << d << "\n";
  }

  const auto start = std::chrono::steady_clock::now();
  int failed_suites = 0;
  std::string detail;
  for (const auto& s : kProperties) {
    const std::string cmd = std::string("\"") + s.binary + "\" --gtest_brief=1 --gtest_filter='" + s.filter + "' > /dev/null 2>&1";
    const int rc = std::system(cmd.c_str());
    if (rc != 0) {
      ++failed_suites;
      detail += std::string(" ") + s.binary + "(" + s.filter + ")";
    }
  }
  const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool props_ok = failed_suites == 0;
  all_ok &= props_ok;
  char summary[128];
  std::snprintf(summary, sizeof summary, "property suites: %zu run, %d failed, %.2f s", kProperties.size(),
                failed_suites, elapsed);
  std::cout << line(13, props_ok, summary + (detail.empty() ? "" : ";" + detail)) << std::endl;
  return all_ok ? 0 : 1;
}
