#pragma once

#include <filesystem>
#include <functional>
#include <optional>

#include "entropylab/harness/config.hpp"
#include "entropylab/harness/report.hpp"

namespace entropylab::harness {

struct RunOptions {
  bool use_cache = true;  // also requires config.cache
  std::optional<std::filesystem::path> cache_dir;  // default: ReportCache::default_dir()
};

/// Runs every case of the configured experiment and assembles the report. Cases may run
/// on config.jobs threads; the report is reduced in case order, so it does not depend
/// on the job count. Errors inside a case are rethrown with the case id.
RunReport run_experiment(const ExperimentConfig& config, const RunOptions& options = {});

/// Calls body(i) for i in [0, count) on up to `jobs` threads and rethrows the first
/// failure in index order.
void parallel_for(std::size_t count, int jobs, const std::function<void(std::size_t)>& body);

}  // namespace entropylab::harness
