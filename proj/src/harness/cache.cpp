#include "entropylab/harness/cache.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

namespace entropylab::harness {

std::string config_hash(const std::string& canonical_config, const std::string& engine_version) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto feed = [&h](const std::string& s) {
    for (unsigned char ch : s) {
      h ^= ch;
      h *= 0x100000001b3ULL;
    }
  };
  feed(canonical_config);
  feed(std::string(1, '\0'));
  feed(engine_version);
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

ReportCache::ReportCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

std::filesystem::path ReportCache::default_dir() {
  if (const char* env = std::getenv("ENTROPYLAB_CACHE_DIR"); env && *env) return env;
  if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg && *xdg) return std::filesystem::path(xdg) / "entropylab";
  if (const char* home = std::getenv("HOME"); home && *home)
    return std::filesystem::path(home) / ".cache" / "entropylab";
  return ".entropylab-cache";
}

std::optional<RunReport> ReportCache::lookup(const std::string& hash) const {
  const auto path = entry(hash);
  std::error_code ec;
  if (!std::filesystem::exists(path, ec)) return std::nullopt;
  try {
    std::ifstream f(path, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    RunReport r = report_from_json(nlohmann::json::parse(ss.str()));
    if (r.config_hash != hash || r.engine_version != kEngineVersion) throw Error("stale cache entry");
    r.from_cache = true;
    return r;
  } catch (const std::exception&) {
    std::filesystem::remove(path, ec);
    return std::nullopt;
  }
}

void ReportCache::store(const RunReport& report) const {
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  if (ec) throw IoError("cannot create cache directory '" + dir_.string() + "': " + ec.message());
  std::ostringstream tag;
  tag << std::this_thread::get_id();
  const auto tmp = dir_ / (report.config_hash + ".tmp." + tag.str());
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot write cache entry '" + tmp.string() + "'");
    f << to_json(report).dump();
    f.close();
    if (!f) throw IoError("failed writing cache entry '" + tmp.string() + "'");
  }
  std::filesystem::rename(tmp, entry(report.config_hash), ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw IoError("cannot move cache entry into place");
  }
}

}  // namespace entropylab::harness
