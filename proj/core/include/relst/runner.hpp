#pragma once

#include "relst/config.hpp"
#include "relst/quotients.hpp"

namespace relst {

struct RunResult {
  bool pass = false;
  std::string report_json;  // byte-stable for a fixed config and seed
};

// Executes the selected suites and renders the report. Instances are seeded
// individually, so the result does not depend on the parallelism degree.
RunResult run_job(const JobConfig& cfg);

// 0 = all pass, 1 = verification failure; config errors throw ConfigError and
// the driver maps them to exit status 2.
int run_job_to_file(const JobConfig& cfg);

}  // namespace relst
