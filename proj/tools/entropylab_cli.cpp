// entropylab: runs the finite-dimensional suite and the lattice experiments.
//
//   entropylab findim-suite [--config F] [--out DIR] [--seed S] [--jobs J] [--no-cache]
//   entropylab fermion <duality|cross-ratio-sweep|c-fit|shrink|collapse|two-d> [...]
//   entropylab report --out DIR
//   entropylab print-config <kind>
//
// Exit codes: 0 all verdicts pass, 1 a verdict failed, 2 configuration error, 3 I/O error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "entropylab/harness/runner.hpp"

namespace h = entropylab::harness;

namespace {

struct RunFlags {
  std::string config_path;
  std::string out;
  std::string cache_dir;
  bool no_cache = false;
  std::optional<std::uint64_t> seed;
  std::optional<int> jobs;
};

void add_run_flags(CLI::App* app, RunFlags& f) {
  app->add_option("--config", f.config_path, "Configuration file (default: built-in config)");
  app->add_option("--out", f.out, "Output directory (overrides [output] dir)");
  app->add_option("--seed", f.seed, "Override the seed");
  app->add_option("--jobs", f.jobs, "Worker threads")->check(CLI::PositiveNumber);
  app->add_option("--cache-dir", f.cache_dir, "Cache directory");
  app->add_flag("--no-cache", f.no_cache, "Neither read nor write the result cache");
}

void print_verdicts(const h::RunReport& rep) {
  for (const auto& v : rep.verdicts)
    std::printf("%s %s value=%s tol=%s  %s\n", v.passed ? "PASS" : "FAIL", v.id.c_str(), h::cell(v.value).c_str(),
                h::cell(v.tolerance).c_str(), v.detail.c_str());
}

int finish(const h::RunReport& rep) {
  print_verdicts(rep);
  if (rep.vacuous()) {
    std::cerr << "error: no verdicts were produced\n";
    return 1;
  }
  if (!rep.passed()) {
    std::cerr << "failing:";
    for (const auto& id : rep.failing_ids()) std::cerr << ' ' << id;
    std::cerr << '\n';
    return 1;
  }
  return 0;
}

int run(h::ExperimentKind kind, const RunFlags& f) {
  h::ExperimentConfig cfg;
  if (f.config_path.empty()) {
    cfg = h::default_config(kind);
  } else {
    if (!std::ifstream(f.config_path)) throw h::IoError("cannot read config file '" + f.config_path + "'");
    cfg = h::parse_config_file(f.config_path);
    if (cfg.kind != kind)
      throw h::ConfigError("config is for '" + h::to_string(cfg.kind) + "', not '" + h::to_string(kind) + "'");
  }
  if (f.seed) cfg.seed = *f.seed;
  if (f.jobs) cfg.jobs = *f.jobs;
  if (!f.out.empty()) cfg.output_dir = f.out;
  h::validate(cfg);

  h::RunOptions opts;
  opts.use_cache = !f.no_cache;
  if (!f.cache_dir.empty()) opts.cache_dir = f.cache_dir;
  const auto rep = h::run_experiment(cfg, opts);
  h::emit_report(rep, cfg.output_dir);
  std::printf("%s: %s (hash %s%s) -> %s\n", rep.kind.c_str(), rep.passed() ? "pass" : "fail", rep.config_hash.c_str(),
              rep.from_cache ? ", cached" : "", cfg.output_dir.c_str());
  return finish(rep);
}

int show_report(const std::string& dir) {
  const std::string path = dir + "/summary.json";
  std::ifstream in(path);
  if (!in) throw h::IoError("cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  h::RunReport rep;
  try {
    rep = h::report_from_json(nlohmann::json::parse(ss.str()));
  } catch (const nlohmann::json::exception& e) {
    throw h::IoError("malformed '" + path + "': " + e.what());
  }
  std::printf("%s seed=%llu hash=%s engine=%s\n", rep.kind.c_str(), static_cast<unsigned long long>(rep.seed),
              rep.config_hash.c_str(), rep.engine_version.c_str());
  for (const auto& t : rep.tables) std::printf("table %s: %zu rows\n", t.name.c_str(), t.rows.size());
  return finish(rep);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"entropylab: relative entropy identities and free-fermion lattice checks"};
  app.require_subcommand(1);

  RunFlags findim_flags, fermion_flags;
  auto* findim = app.add_subcommand("findim-suite", "Finite-dimensional identity suite");
  add_run_flags(findim, findim_flags);

  std::string fermion_kind;
  auto* fermion = app.add_subcommand("fermion", "Free-fermion lattice experiment");
  fermion->add_option("kind", fermion_kind, "duality, cross-ratio-sweep, c-fit, shrink, collapse or two-d")->required();
  add_run_flags(fermion, fermion_flags);

  std::string report_dir;
  auto* report = app.add_subcommand("report", "Print the verdicts of a written report");
  report->add_option("--out", report_dir, "Directory holding summary.json")->required();

  std::string print_kind;
  auto* print = app.add_subcommand("print-config", "Print the built-in config for a kind");
  print->add_option("kind", print_kind)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*findim) return run(h::ExperimentKind::findim_suite, findim_flags);
    if (*fermion) {
      const auto kind = h::parse_kind(fermion_kind);
      if (kind == h::ExperimentKind::findim_suite) throw h::ConfigError("use the findim-suite subcommand");
      return run(kind, fermion_flags);
    }
    if (*report) return show_report(report_dir);
    if (*print) {
      std::cout << h::default_config_text(h::parse_kind(print_kind));
      return 0;
    }
  } catch (const h::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const h::IoError& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
