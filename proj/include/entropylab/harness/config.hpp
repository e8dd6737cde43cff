#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "entropylab/lattice/deficit.hpp"

namespace entropylab::harness {

struct ConfigError : Error {
  using Error::Error;
};

enum class ExperimentKind { findim_suite, duality, cross_ratio_sweep, c_fit, shrink, collapse, two_d };

std::string to_string(ExperimentKind kind);
ExperimentKind parse_kind(const std::string& name);

struct FindimSettings {
  int instances = 100;   // Prop. and Cor. instances
  int factor_instances = 200;
  int trials = 200;      // per Th. 5.15 item
  int pp_samples = 500;
  int max_dim = 16;
};

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::findim_suite;
  std::uint64_t seed = 1;
  int jobs = 1;
  std::vector<int> sizes;
  std::vector<lattice::Arc> arcs;
  std::vector<lattice::Arc> arcs_right;
  double c = 1.0;
  bool chiral = true;  // entropy scale 1/2 with chiral c; "full" uses scale 1
  lattice::LengthConvention convention = lattice::LengthConvention::chord;
  std::map<std::string, double> tolerances;
  std::string output_dir = "out";
  bool cache = true;
  int shrink_arc = 0;
  std::vector<double> shrink_schedule;  // continuum lengths, radians
  std::vector<std::vector<lattice::Arc>> geometries;
  std::vector<std::vector<lattice::Arc>> control;
  std::vector<double> sweep_lengths;
  std::vector<int> cfit_lengths;  // empty: chosen per N
  FindimSettings findim;

  double tolerance(const std::string& key) const;
  double entropy_scale() const { return chiral ? 0.5 : 1.0; }
  lattice::DeficitOptions deficit_options() const { return {c, convention, entropy_scale()}; }
};

/// Parses the sectioned key = value format. Unknown sections or keys, malformed
/// numbers, odd or non-increasing lattice sizes and missing required fields throw ConfigError.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig parse_config_file(const std::string& path);
/// Built-in configuration for a kind (the same values as the files in configs/).
ExperimentConfig default_config(ExperimentKind kind);
const std::string& default_config_text(ExperimentKind kind);

/// Validates kind-specific requirements; called by parse_config and after CLI overrides.
void validate(const ExperimentConfig& config);

/// Normalized text with every field, defaults included, in a fixed order. Parsing it
/// gives back an identical config, and it is what the cache hash covers.
std::string canonical_text(const ExperimentConfig& config);

/// "5/16pi", "0.5pi", "pi", "-1/4pi" or plain radians.
double parse_angle(const std::string& token);
std::string format_double(double x);

}  // namespace entropylab::harness
