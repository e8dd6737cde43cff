#pragma once

#include <array>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "entropylab/linalg.hpp"

namespace entropylab::harness {

inline constexpr const char* kEngineVersion = "entropylab-0.3.0";

struct IoError : Error {
  using Error::Error;
};

/// One sweep table; cells are already formatted so the CSV and JSON agree byte for byte.
struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

struct Curve {
  std::string name;
  std::string x_label;
  std::string y_label;
  std::vector<std::array<double, 2>> points;
};

struct Verdict {
  std::string id;
  bool passed = false;
  double value = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

struct RunReport {
  std::string engine_version = kEngineVersion;
  std::string kind;
  std::uint64_t seed = 0;
  std::string config_hash;
  std::string config_text;  // canonical echo, defaults included
  std::vector<Table> tables;
  std::vector<Curve> curves;
  std::vector<Verdict> verdicts;
  // Not part of the summary or the cache: wall-clock seconds per case.
  std::vector<std::pair<std::string, double>> timings;
  bool from_cache = false;

  bool vacuous() const { return verdicts.empty(); }
  bool passed() const;
  std::vector<std::string> failing_ids() const;
};

nlohmann::json to_json(const RunReport& report);
RunReport report_from_json(const nlohmann::json& j);

/// RFC 4180: comma separated, CRLF line ends, fields with , " or newlines quoted.
std::string to_csv(const Table& table);
/// "x y" lines after a comment header naming the columns.
std::string to_plot_data(const Curve& curve);

/// Writes <table>.csv, <curve>.dat, summary.json and timings.txt into dir. Throws IoError.
void emit_report(const RunReport& report, const std::filesystem::path& dir);

std::string cell(double x);
std::string cell(long long x);
inline std::string cell(int x) { return cell(static_cast<long long>(x)); }
inline std::string cell(std::uint64_t x) { return std::to_string(x); }
inline std::string cell(const std::string& s) { return s; }
inline std::string cell(const char* s) { return s; }

}  // namespace entropylab::harness
