#include "entropylab/harness/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "entropylab/harness/config.hpp"

namespace entropylab::harness {

bool RunReport::passed() const {
  for (const auto& v : verdicts)
    if (!v.passed) return false;
  return true;
}

std::vector<std::string> RunReport::failing_ids() const {
  std::vector<std::string> out;
  for (const auto& v : verdicts)
    if (!v.passed) out.push_back(v.id);
  return out;
}

std::string cell(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return format_double(x);
}

std::string cell(long long x) { return std::to_string(x); }

namespace {

// JSON has no inf/nan; store them as strings.
nlohmann::json number(double x) {
  if (std::isfinite(x)) return x;
  return cell(x);
}

double number_from(const nlohmann::json& j) {
  if (j.is_number()) return j.get<double>();
  const auto s = j.get<std::string>();
  if (s == "inf") return kInfinity;
  if (s == "-inf") return -kInfinity;
  return std::nan("");
}

}  // namespace

nlohmann::json to_json(const RunReport& r) {
  nlohmann::json j;
  j["engine_version"] = r.engine_version;
  j["kind"] = r.kind;
  j["seed"] = r.seed;
  j["config_hash"] = r.config_hash;
  j["config"] = r.config_text;
  j["passed"] = r.passed();
  j["vacuous"] = r.vacuous();
  auto& verdicts = j["verdicts"] = nlohmann::json::array();
  auto& maxima = j["residual_maxima"] = nlohmann::json::object();
  for (const auto& v : r.verdicts) {
    verdicts.push_back({{"id", v.id}, {"passed", v.passed}, {"value", number(v.value)},
                        {"tolerance", number(v.tolerance)}, {"detail", v.detail}});
    maxima[v.id] = number(v.value);
  }
  auto& tables = j["tables"] = nlohmann::json::array();
  for (const auto& t : r.tables) tables.push_back({{"name", t.name}, {"columns", t.columns}, {"rows", t.rows}});
  auto& curves = j["curves"] = nlohmann::json::array();
  for (const auto& c : r.curves) {
    nlohmann::json pts = nlohmann::json::array();
    for (const auto& p : c.points) pts.push_back({number(p[0]), number(p[1])});
    curves.push_back({{"name", c.name}, {"x", c.x_label}, {"y", c.y_label}, {"points", pts}});
  }
  return j;
}

RunReport report_from_json(const nlohmann::json& j) {
  RunReport r;
  r.engine_version = j.at("engine_version").get<std::string>();
  r.kind = j.at("kind").get<std::string>();
  r.seed = j.at("seed").get<std::uint64_t>();
  r.config_hash = j.at("config_hash").get<std::string>();
  r.config_text = j.at("config").get<std::string>();
  for (const auto& v : j.at("verdicts"))
    r.verdicts.push_back({v.at("id").get<std::string>(), v.at("passed").get<bool>(), number_from(v.at("value")),
                          number_from(v.at("tolerance")), v.at("detail").get<std::string>()});
  for (const auto& t : j.at("tables"))
    r.tables.push_back({t.at("name").get<std::string>(), t.at("columns").get<std::vector<std::string>>(),
                        t.at("rows").get<std::vector<std::vector<std::string>>>()});
  for (const auto& c : j.at("curves")) {
    Curve curve{c.at("name").get<std::string>(), c.at("x").get<std::string>(), c.at("y").get<std::string>(), {}};
    for (const auto& p : c.at("points")) curve.points.push_back({number_from(p.at(0)), number_from(p.at(1))});
    r.curves.push_back(std::move(curve));
  }
  return r;
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open '" + path.string() + "' for writing");
  f << content;
  f.close();
  if (!f) throw IoError("failed writing '" + path.string() + "'");
}

}  // namespace

std::string to_csv(const Table& t) {
  std::string out;
  auto row = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ',';
      out += csv_field(cells[i]);
    }
    out += "\r\n";
  };
  row(t.columns);
  for (const auto& r : t.rows) row(r);
  return out;
}

std::string to_plot_data(const Curve& c) {
  std::string out = "# " + c.x_label + " " + c.y_label + "\n";
  for (const auto& p : c.points) out += cell(p[0]) + " " + cell(p[1]) + "\n";
  return out;
}

void emit_report(const RunReport& r, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory '" + dir.string() + "': " + ec.message());
  for (const auto& t : r.tables) write_file(dir / (t.name + ".csv"), to_csv(t));
  for (const auto& c : r.curves) write_file(dir / (c.name + ".dat"), to_plot_data(c));
  write_file(dir / "summary.json", to_json(r).dump(2) + "\n");
  std::string timings;
  for (const auto& [id, secs] : r.timings) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "%s %.6f\n", id.c_str(), secs);
    timings += buf;
  }
  if (r.from_cache) timings += "# served from cache\n";
  write_file(dir / "timings.txt", timings);
}

}  // namespace entropylab::harness
