#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "entropylab/harness/report.hpp"

namespace entropylab::harness {

/// 64-bit FNV-1a of the canonical config text and the engine version, as 16 hex digits.
std::string config_hash(const std::string& canonical_config, const std::string& engine_version = kEngineVersion);

/// File cache of run reports keyed by config hash. Entries are written to a temporary
/// file and renamed into place; unreadable or mismatching entries count as misses and
/// are removed.
class ReportCache {
 public:
  explicit ReportCache(std::filesystem::path dir);
  /// ENTROPYLAB_CACHE_DIR, else $XDG_CACHE_HOME/entropylab, else ~/.cache/entropylab.
  static std::filesystem::path default_dir();

  const std::filesystem::path& dir() const { return dir_; }
  std::optional<RunReport> lookup(const std::string& hash) const;
  void store(const RunReport& report) const;

 private:
  std::filesystem::path entry(const std::string& hash) const { return dir_ / (hash + ".json"); }
  std::filesystem::path dir_;
};

}  // namespace entropylab::harness
