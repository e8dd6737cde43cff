#include <atomic>
#include <filesystem>
#include <fstream>
#include <numbers>

#include "doctest.h"

#include "entropylab/harness/cache.hpp"
#include "entropylab/harness/runner.hpp"

using namespace entropylab;
using namespace entropylab::harness;
namespace fs = std::filesystem;

namespace {

const ExperimentKind kAll[] = {ExperimentKind::findim_suite, ExperimentKind::duality, ExperimentKind::cross_ratio_sweep,
                               ExperimentKind::c_fit,        ExperimentKind::shrink,  ExperimentKind::collapse,
                               ExperimentKind::two_d};

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("entropylab_test_" + name);
  fs::remove_all(p);
  return p;
}

std::string small_duality(int jobs) {
  return "[experiment]\nkind = duality\nseed = 3\njobs = " + std::to_string(jobs) +
         "\n[lattice]\nsizes = 32, 64, 128\n[region]\narcs = 0:5/16pi, 1/2pi:17/16pi\n[output]\ncache = false\n";
}

RunReport sample_report() {
  RunReport r;
  r.kind = "duality";
  r.seed = 7;
  r.config_hash = "00000000000000aa";
  r.config_text = "[experiment]\nkind = duality\n";
  r.tables.push_back({"t", {"a", "b"}, {{"1", "x,\"y\""}, {"inf", "nan"}}});
  r.curves.push_back({"c", "N", "D", {{{256.0, -1e-6}}, {{512.0, -2.5e-7}}}});
  r.verdicts.push_back({"ok", true, 1e-13, 1e-12, "fine"});
  r.verdicts.push_back({"bad", false, std::numeric_limits<double>::infinity(), 1.0, "infinite"});
  return r;
}

}  // namespace

TEST_CASE("angles") {
  CHECK(parse_angle("pi") == doctest::Approx(std::numbers::pi));
  CHECK(parse_angle("5/16pi") == doctest::Approx(5 * std::numbers::pi / 16));
  CHECK(parse_angle("-1/4pi") == doctest::Approx(-std::numbers::pi / 4));
  CHECK(parse_angle("0.5") == doctest::Approx(0.5));
  CHECK_THROWS_AS(parse_angle("pie"), ConfigError);
  CHECK_THROWS_AS(parse_angle("1/0pi"), ConfigError);
}

TEST_CASE("config errors") {
  CHECK_THROWS_AS(parse_config("[experiment]\nkind = duality\n[lattice]\nsizes = 255, 512, 1024\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[experiment]\nkind = duality\n[lattice]\nsizes = 512, 256, 1024\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[experiment]\nkind = duality\n[lattice]\nsizes = 256, 512\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[experiment]\nkind = duality\nbogus = 1\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[experiment]\nkind = duality\n[nowhere]\nx = 1\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[experiment]\nkind = teleport\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[experiment]\nkind = c-fit\n[duality]\nx = 1\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[experiment]\nkind = findim-suite\nseed = -4\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[experiment]\nkind = duality\n[tolerance]\nunknown = 1e-3\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("kind = duality\n"), ConfigError);
}

TEST_CASE("canonical text round-trips for every kind") {
  for (auto kind : kAll) {
    const auto c = default_config(kind);
    CHECK_NOTHROW(validate(c));
    const auto text = canonical_text(c);
    CHECK(canonical_text(parse_config(text)) == text);
    CHECK(canonical_text(parse_config(default_config_text(kind))) == text);
    CHECK(parse_kind(to_string(kind)) == kind);
  }
  auto c = parse_config("[experiment]\nkind = duality\n[lattice]\nsizes = 64, 128, 256\n[region]\narcs = 0:1/4pi, 1pi:3/2pi\n[tolerance]\ndeficit_extrapolated = 1e-4\n");
  CHECK(c.tolerance("deficit_extrapolated") == 1e-4);
  CHECK(c.tolerance("path_identity") == 1e-12);
}

TEST_CASE("config hash covers the text and the engine version") {
  const auto text = canonical_text(default_config(ExperimentKind::duality));
  const auto h = config_hash(text);
  CHECK(h.size() == 16);
  CHECK(h == config_hash(text));
  CHECK(h != config_hash(text + " "));
  CHECK(h != config_hash(text, "entropylab-0.0.0"));
  // FNV-1a of the single separator byte: (offset basis * prime) mod 2^64.
  CHECK(config_hash("", "") == "af63bd4c8601b7df");
}

TEST_CASE("report JSON round-trip and CSV") {
  const auto r = sample_report();
  const auto j = to_json(r);
  CHECK(j["passed"] == false);
  const auto back = report_from_json(j);
  CHECK(to_json(back).dump() == j.dump());
  CHECK(std::isinf(back.verdicts[1].value));
  CHECK(back.failing_ids() == std::vector<std::string>{"bad"});
  CHECK(to_csv(r.tables[0]) == "a,b\r\n1,\"x,\"\"y\"\"\"\r\ninf,nan\r\n");
  const auto dat = to_plot_data(r.curves[0]);
  CHECK(dat.find("# N D") != std::string::npos);
}

TEST_CASE("emitted files") {
  const auto dir = scratch("emit");
  emit_report(sample_report(), dir);
  for (const char* f : {"t.csv", "c.dat", "summary.json", "timings.txt"}) CHECK(fs::exists(dir / f));
  fs::remove_all(dir);
}

TEST_CASE("cache hit, miss, version mismatch and corrupt entries") {
  const auto dir = scratch("cache");
  const ReportCache cache(dir);
  auto r = sample_report();
  CHECK_FALSE(cache.lookup(r.config_hash).has_value());
  cache.store(r);
  const auto hit = cache.lookup(r.config_hash);
  REQUIRE(hit.has_value());
  CHECK(hit->from_cache);
  CHECK(to_json(*hit).dump() == to_json(r).dump());

  r.config_hash = "00000000000000bb";
  r.engine_version = "entropylab-0.0.1";
  cache.store(r);
  CHECK_FALSE(cache.lookup(r.config_hash).has_value());
  CHECK_FALSE(fs::exists(dir / "00000000000000bb.json"));

  std::ofstream(dir / "00000000000000cc.json") << "{ not json";
  CHECK_FALSE(cache.lookup("00000000000000cc").has_value());
  CHECK_FALSE(fs::exists(dir / "00000000000000cc.json"));
  fs::remove_all(dir);
}

TEST_CASE("parallel_for runs every index and reports failures") {
  std::vector<int> hits(50, 0);
  parallel_for(hits.size(), 4, [&](std::size_t i) { hits[i] += 1; });
  for (int h : hits) CHECK(h == 1);
  CHECK_THROWS_WITH(parallel_for(10, 3,
                                 [](std::size_t i) {
                                   if (i == 7) throw Error("seven");
                                 }),
                    "seven");
}

TEST_CASE("runs are deterministic and independent of the job count") {
  const auto one = run_experiment(parse_config(small_duality(1)));
  const auto three = run_experiment(parse_config(small_duality(3)));
  CHECK(to_json(one).dump() == to_json(three).dump());
  CHECK_FALSE(one.vacuous());
  CHECK(one.config_hash == three.config_hash);
}

TEST_CASE("cached runs return the stored report") {
  const auto dir = scratch("runcache");
  auto cfg = parse_config(small_duality(2));
  cfg.cache = true;
  RunOptions opts;
  opts.cache_dir = dir;
  const auto first = run_experiment(cfg, opts);
  CHECK_FALSE(first.from_cache);
  const auto second = run_experiment(cfg, opts);
  CHECK(second.from_cache);
  CHECK(to_json(first).dump() == to_json(second).dump());
  cfg.seed = 4;
  CHECK_FALSE(run_experiment(cfg, opts).from_cache);
  fs::remove_all(dir);
}

TEST_CASE("collapse geometries with different cross ratios are a config error") {
  auto cfg = default_config(ExperimentKind::collapse);
  cfg.sizes = {64, 128};
  cfg.cache = false;
  cfg.geometries = {{{0.0, 1.0}, {2.0, 3.0}}, {{0.0, 1.5}, {2.0, 3.0}}};
  CHECK_THROWS_AS(run_experiment(cfg), ConfigError);
}
