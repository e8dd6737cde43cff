#include "entropylab/harness/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

namespace entropylab::harness {

namespace {

const std::map<ExperimentKind, std::string> kKindNames{
    {ExperimentKind::findim_suite, "findim-suite"}, {ExperimentKind::duality, "duality"},
    {ExperimentKind::cross_ratio_sweep, "cross-ratio-sweep"}, {ExperimentKind::c_fit, "c-fit"},
    {ExperimentKind::shrink, "shrink"}, {ExperimentKind::collapse, "collapse"}, {ExperimentKind::two_d, "two-d"}};

const std::map<ExperimentKind, std::map<std::string, double>>& tolerance_defaults() {
  static const std::map<ExperimentKind, std::map<std::string, double>> t{
      {ExperimentKind::findim_suite,
       {{"araki_umegaki", 1e-8}, {"prop1", 1e-6}, {"cor", 1e-6}, {"chain_rule", 1e-8}, {"filtration", 1e-12},
        {"mixture_bound", 1e-9}, {"restriction", 1e-9}, {"tensor", 1e-8}, {"index", 1e-9},
        {"multiplicativity", 1e-8}, {"pimsner_popa", 1e-9}}},
      {ExperimentKind::duality, {{"path_identity", 1e-12}, {"deficit_extrapolated", 5e-3}, {"nonnegativity", 1e-9}}},
      {ExperimentKind::cross_ratio_sweep, {{"nonnegativity", 1e-9}}},
      {ExperimentKind::c_fit, {{"c_relative", 0.02}}},
      {ExperimentKind::shrink, {{"final_gap", 1e-2}}},
      {ExperimentKind::collapse, {{"spread", 1e-2}, {"control_min_spread", 1e-2}, {"eta_match", 1e-12}}},
      {ExperimentKind::two_d, {{"additivity", 1e-12}, {"deficit_extrapolated", 1e-2}}}};
  return t;
}

// Sections each kind may use, with their keys.
const std::map<std::string, std::set<std::string>> kCommonSections{
    {"experiment", {"kind", "seed", "jobs"}}, {"tolerance", {}}, {"output", {"dir", "cache"}}};

std::map<std::string, std::set<std::string>> sections_for(ExperimentKind kind) {
  auto s = kCommonSections;
  const std::set<std::string> model{"c", "mode", "r_convention"};
  switch (kind) {
    case ExperimentKind::findim_suite:
      s["findim"] = {"instances", "factor_instances", "trials", "pp_samples", "max_dim"};
      break;
    case ExperimentKind::duality:
      s["lattice"] = {"sizes"};
      s["region"] = {"arcs"};
      s["model"] = model;
      break;
    case ExperimentKind::cross_ratio_sweep:
      s["lattice"] = {"sizes"};
      s["sweep"] = {"lengths"};
      s["model"] = model;
      break;
    case ExperimentKind::c_fit:
      s["lattice"] = {"sizes"};
      s["cfit"] = {"lengths"};
      break;
    case ExperimentKind::shrink:
      s["lattice"] = {"sizes"};
      s["region"] = {"arcs"};
      s["shrink"] = {"arc", "schedule"};
      break;
    case ExperimentKind::collapse:
      s["lattice"] = {"sizes"};
      s["collapse"] = {"geometries", "control"};
      s["model"] = {"r_convention"};
      break;
    case ExperimentKind::two_d:
      s["lattice"] = {"sizes"};
      s["region"] = {"arcs"};
      s["region_right"] = {"arcs"};
      s["model"] = model;
      break;
  }
  return s;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(trim(cur));
  if (!s.empty() && s.back() == sep) out.push_back("");
  return out;
}

double parse_double(const std::string& token, const std::string& what) {
  const std::string t = trim(token);
  double v = 0.0;
  const auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc() || p != t.data() + t.size() || !std::isfinite(v))
    throw ConfigError("malformed number '" + token + "' for " + what);
  return v;
}

long long parse_integer(const std::string& token, const std::string& what) {
  const std::string t = trim(token);
  long long v = 0;
  const auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc() || p != t.data() + t.size())
    throw ConfigError("malformed integer '" + token + "' for " + what);
  return v;
}

bool parse_bool(const std::string& token, const std::string& what) {
  if (token == "true" || token == "yes" || token == "on" || token == "1") return true;
  if (token == "false" || token == "no" || token == "off" || token == "0") return false;
  throw ConfigError("malformed boolean '" + token + "' for " + what);
}

std::vector<lattice::Arc> parse_arcs(const std::string& value, const std::string& what) {
  std::vector<lattice::Arc> arcs;
  for (const auto& item : split(value, ',')) {
    const auto ends = split(item, ':');
    if (ends.size() != 2) throw ConfigError("arc '" + item + "' in " + what + " must be a:b");
    arcs.push_back({parse_angle(ends[0]), parse_angle(ends[1])});
  }
  return arcs;
}

std::vector<std::vector<lattice::Arc>> parse_geometries(const std::string& value, const std::string& what) {
  std::vector<std::vector<lattice::Arc>> out;
  for (const auto& g : split(value, ';')) out.push_back(parse_arcs(g, what));
  return out;
}

std::vector<int> parse_int_list(const std::string& value, const std::string& what) {
  std::vector<int> out;
  for (const auto& item : split(value, ',')) out.push_back(static_cast<int>(parse_integer(item, what)));
  return out;
}

std::string format_arcs(const std::vector<lattice::Arc>& arcs) {
  std::string s;
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    if (i) s += ", ";
    s += format_double(arcs[i].a) + ":" + format_double(arcs[i].b);
  }
  return s;
}

template <class T, class F>
std::string join(const std::vector<T>& v, F f, const std::string& sep = ", ") {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += sep;
    s += f(v[i]);
  }
  return s;
}

void require_region(const std::vector<lattice::Arc>& arcs, const std::string& what, std::size_t min_arcs) {
  if (arcs.size() < min_arcs) throw ConfigError(what + " needs at least " + std::to_string(min_arcs) + " arcs");
  try {
    lattice::RegionSpec spec(arcs);
  } catch (const InvalidArgument& e) {
    throw ConfigError(what + ": " + e.what());
  }
}

}  // namespace

std::string to_string(ExperimentKind kind) { return kKindNames.at(kind); }

ExperimentKind parse_kind(const std::string& name) {
  for (const auto& [k, n] : kKindNames)
    if (n == name) return k;
  throw ConfigError("unknown experiment kind '" + name + "'");
}

double ExperimentConfig::tolerance(const std::string& key) const {
  const auto it = tolerances.find(key);
  if (it == tolerances.end()) throw ConfigError("no tolerance named '" + key + "'");
  return it->second;
}

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

double parse_angle(const std::string& token) {
  const std::string t = trim(token);
  if (t.size() >= 2 && t.compare(t.size() - 2, 2, "pi") == 0) {
    std::string coef = trim(t.substr(0, t.size() - 2));
    double factor = 1.0;
    if (coef == "-") {
      factor = -1.0;
    } else if (!coef.empty()) {
      const auto slash = coef.find('/');
      if (slash == std::string::npos) {
        factor = parse_double(coef, "angle");
      } else {
        const double den = parse_double(coef.substr(slash + 1), "angle");
        if (den == 0.0) throw ConfigError("zero denominator in angle '" + token + "'");
        factor = parse_double(coef.substr(0, slash), "angle") / den;
      }
    }
    return factor * std::numbers::pi;
  }
  return parse_double(t, "angle");
}

void validate(const ExperimentConfig& c) {
  if (c.jobs < 1) throw ConfigError("jobs must be at least 1");
  if (!(c.c > 0.0)) throw ConfigError("central charge c must be positive");
  for (std::size_t i = 0; i < c.sizes.size(); ++i) {
    const int n = c.sizes[i];
    if (n % 2 != 0) throw ConfigError("lattice size " + std::to_string(n) + " is odd");
    if (n < 8) throw ConfigError("lattice size " + std::to_string(n) + " is below 8");
    if (i > 0 && n <= c.sizes[i - 1]) throw ConfigError("lattice sizes must be strictly increasing");
  }
  auto need_sizes = [&](std::size_t k) {
    if (c.sizes.size() < k) throw ConfigError("[lattice] sizes needs at least " + std::to_string(k) + " values");
  };
  switch (c.kind) {
    case ExperimentKind::findim_suite:
      if (c.findim.instances < 1 || c.findim.factor_instances < 1 || c.findim.trials < 1 || c.findim.pp_samples < 1)
        throw ConfigError("[findim] counts must be positive");
      if (c.findim.max_dim < 8) throw ConfigError("[findim] max_dim must be at least 8");
      break;
    case ExperimentKind::duality:
      need_sizes(3);
      require_region(c.arcs, "[region] arcs", 2);
      break;
    case ExperimentKind::two_d:
      need_sizes(3);
      require_region(c.arcs, "[region] arcs", 2);
      require_region(c.arcs_right, "[region_right] arcs", 2);
      if (c.arcs.size() != c.arcs_right.size()) throw ConfigError("left and right regions need the same arc count");
      break;
    case ExperimentKind::cross_ratio_sweep:
      need_sizes(1);
      if (c.sweep_lengths.size() < 2) throw ConfigError("[sweep] lengths needs at least 2 values");
      for (double l : c.sweep_lengths)
        if (!(l > 0.0 && l < std::numbers::pi)) throw ConfigError("[sweep] lengths must lie in (0, pi)");
      break;
    case ExperimentKind::c_fit:
      need_sizes(1);
      if (!c.cfit_lengths.empty() && c.cfit_lengths.size() < 6) throw ConfigError("[cfit] lengths needs at least 6 values");
      for (int l : c.cfit_lengths)
        if (l < 1 || l >= c.sizes.front()) throw ConfigError("[cfit] lengths must lie in [1, N)");
      break;
    case ExperimentKind::shrink:
      need_sizes(1);
      require_region(c.arcs, "[region] arcs", 2);
      if (c.shrink_arc < 0 || c.shrink_arc >= static_cast<int>(c.arcs.size()))
        throw ConfigError("[shrink] arc index out of range");
      if (c.shrink_schedule.empty()) throw ConfigError("[shrink] schedule is required");
      for (double l : c.shrink_schedule)
        if (!(l > 0.0)) throw ConfigError("[shrink] schedule lengths must be positive");
      break;
    case ExperimentKind::collapse:
      need_sizes(2);
      if (c.geometries.size() < 2) throw ConfigError("[collapse] geometries needs at least 2 regions");
      for (const auto& g : c.geometries) require_region(g, "[collapse] geometries", 2);
      for (const auto& g : c.control) require_region(g, "[collapse] control", 2);
      if (c.control.size() == 1) throw ConfigError("[collapse] control needs at least 2 regions");
      break;
  }
}

ExperimentConfig parse_config(const std::string& text) {
  std::map<std::string, std::map<std::string, std::string>> raw;
  std::string section;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError("line " + std::to_string(lineno) + ": malformed section header");
      section = trim(line.substr(1, line.size() - 2));
      raw[section];
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    if (section.empty()) throw ConfigError("line " + std::to_string(lineno) + ": key outside of a section");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError("line " + std::to_string(lineno) + ": empty key");
    if (raw[section].count(key)) throw ConfigError("duplicate key '" + section + "." + key + "'");
    raw[section][key] = value;
  }

  if (!raw.count("experiment") || !raw["experiment"].count("kind"))
    throw ConfigError("missing required field 'experiment.kind'");
  ExperimentConfig c;
  c.kind = parse_kind(raw["experiment"]["kind"]);
  c.tolerances = tolerance_defaults().at(c.kind);

  const auto allowed = sections_for(c.kind);
  for (const auto& [sec, keys] : raw) {
    const auto it = allowed.find(sec);
    if (it == allowed.end())
      throw ConfigError("unknown section '[" + sec + "]' for kind " + to_string(c.kind));
    for (const auto& [key, value] : keys) {
      const std::string name = sec + "." + key;
      if (sec == "tolerance") {
        if (!c.tolerances.count(key)) throw ConfigError("unknown key '" + name + "'");
        c.tolerances[key] = parse_double(value, name);
        continue;
      }
      if (!it->second.count(key)) throw ConfigError("unknown key '" + name + "'");
      if (name == "experiment.seed") {
        const std::string t = trim(value);
        std::uint64_t s = 0;
        const auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), s);
        if (t.empty() || ec != std::errc() || p != t.data() + t.size()) throw ConfigError("malformed seed '" + value + "'");
        c.seed = s;
      } else if (name == "experiment.jobs") {
        c.jobs = static_cast<int>(parse_integer(value, name));
      } else if (name == "lattice.sizes") {
        c.sizes = parse_int_list(value, name);
      } else if (name == "region.arcs") {
        c.arcs = parse_arcs(value, name);
      } else if (name == "region_right.arcs") {
        c.arcs_right = parse_arcs(value, name);
      } else if (name == "model.c") {
        c.c = parse_double(value, name);
      } else if (name == "model.mode") {
        if (value != "chiral" && value != "full") throw ConfigError("model.mode must be chiral or full");
        c.chiral = value == "chiral";
      } else if (name == "model.r_convention") {
        if (value != "chord" && value != "arc") throw ConfigError("model.r_convention must be chord or arc");
        c.convention = value == "chord" ? lattice::LengthConvention::chord : lattice::LengthConvention::arc;
      } else if (name == "output.dir") {
        if (value.empty()) throw ConfigError("output.dir is empty");
        c.output_dir = value;
      } else if (name == "output.cache") {
        c.cache = parse_bool(value, name);
      } else if (name == "shrink.arc") {
        c.shrink_arc = static_cast<int>(parse_integer(value, name));
      } else if (name == "shrink.schedule") {
        for (const auto& item : split(value, ',')) c.shrink_schedule.push_back(parse_angle(item));
      } else if (name == "collapse.geometries") {
        c.geometries = parse_geometries(value, name);
      } else if (name == "collapse.control") {
        if (!value.empty()) c.control = parse_geometries(value, name);
      } else if (name == "sweep.lengths") {
        for (const auto& item : split(value, ',')) c.sweep_lengths.push_back(parse_angle(item));
      } else if (name == "cfit.lengths") {
        if (value != "auto") c.cfit_lengths = parse_int_list(value, name);
      } else if (name == "findim.instances") {
        c.findim.instances = static_cast<int>(parse_integer(value, name));
      } else if (name == "findim.factor_instances") {
        c.findim.factor_instances = static_cast<int>(parse_integer(value, name));
      } else if (name == "findim.trials") {
        c.findim.trials = static_cast<int>(parse_integer(value, name));
      } else if (name == "findim.pp_samples") {
        c.findim.pp_samples = static_cast<int>(parse_integer(value, name));
      } else if (name == "findim.max_dim") {
        c.findim.max_dim = static_cast<int>(parse_integer(value, name));
      }
    }
  }
  validate(c);
  return c;
}

ExperimentConfig parse_config_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot read config file '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_config(ss.str());
}

std::string canonical_text(const ExperimentConfig& c) {
  std::ostringstream o;
  o << "[experiment]\nkind = " << to_string(c.kind) << "\nseed = " << c.seed << "\njobs = " << c.jobs << "\n";
  const auto secs = sections_for(c.kind);
  auto doubles = [](const std::vector<double>& v) { return join(v, [](double x) { return format_double(x); }); };
  auto ints = [](const std::vector<int>& v) { return join(v, [](int x) { return std::to_string(x); }); };
  auto geoms = [](const std::vector<std::vector<lattice::Arc>>& g) { return join(g, format_arcs, "; "); };
  if (secs.count("lattice")) o << "\n[lattice]\nsizes = " << ints(c.sizes) << "\n";
  if (secs.count("region")) o << "\n[region]\narcs = " << format_arcs(c.arcs) << "\n";
  if (secs.count("region_right")) o << "\n[region_right]\narcs = " << format_arcs(c.arcs_right) << "\n";
  if (secs.count("model")) {
    o << "\n[model]\n";
    const auto& keys = secs.at("model");
    if (keys.count("c")) o << "c = " << format_double(c.c) << "\n";
    if (keys.count("mode")) o << "mode = " << (c.chiral ? "chiral" : "full") << "\n";
    o << "r_convention = " << (c.convention == lattice::LengthConvention::chord ? "chord" : "arc") << "\n";
  }
  if (secs.count("shrink"))
    o << "\n[shrink]\narc = " << c.shrink_arc << "\nschedule = " << doubles(c.shrink_schedule) << "\n";
  if (secs.count("collapse"))
    o << "\n[collapse]\ngeometries = " << geoms(c.geometries) << "\ncontrol = " << geoms(c.control) << "\n";
  if (secs.count("sweep")) o << "\n[sweep]\nlengths = " << doubles(c.sweep_lengths) << "\n";
  if (secs.count("cfit")) o << "\n[cfit]\nlengths = " << (c.cfit_lengths.empty() ? "auto" : ints(c.cfit_lengths)) << "\n";
  if (secs.count("findim"))
    o << "\n[findim]\ninstances = " << c.findim.instances << "\nfactor_instances = " << c.findim.factor_instances
      << "\ntrials = " << c.findim.trials << "\npp_samples = " << c.findim.pp_samples
      << "\nmax_dim = " << c.findim.max_dim << "\n";
  o << "\n[tolerance]\n";
  for (const auto& [k, v] : c.tolerances) o << k << " = " << format_double(v) << "\n";
  o << "\n[output]\ndir = " << c.output_dir << "\ncache = " << (c.cache ? "true" : "false") << "\n";
  return o.str();
}

const std::string& default_config_text(ExperimentKind kind) {
  static const std::map<ExperimentKind, std::string> texts{
      {ExperimentKind::findim_suite,
       "[experiment]\nkind = findim-suite\nseed = 20240611\n\n[findim]\ninstances = 100\nfactor_instances = 200\n"
       "trials = 200\npp_samples = 500\nmax_dim = 16\n\n[output]\ndir = out/findim-suite\n"},
      {ExperimentKind::duality,
       "[experiment]\nkind = duality\nseed = 1\n\n[lattice]\nsizes = 256, 512, 1024, 2048\n\n"
       "[region]\narcs = 0:5/16pi, 1/2pi:17/16pi\n\n[model]\nc = 1\nmode = chiral\nr_convention = chord\n\n"
       "[output]\ndir = out/duality\n"},
      {ExperimentKind::cross_ratio_sweep,
       "[experiment]\nkind = cross-ratio-sweep\nseed = 1\n\n[lattice]\nsizes = 1024\n\n"
       "[sweep]\nlengths = 1/16pi, 1/8pi, 3/16pi, 1/4pi, 5/16pi, 3/8pi, 7/16pi, 1/2pi, 9/16pi, 5/8pi, 11/16pi, 3/4pi\n\n"
       "[model]\nc = 1\nmode = full\nr_convention = chord\n\n[output]\ndir = out/cross-ratio-sweep\n"},
      {ExperimentKind::c_fit,
       "[experiment]\nkind = c-fit\nseed = 1\n\n[lattice]\nsizes = 256, 512, 1024, 2048\n\n[cfit]\nlengths = auto\n\n"
       "[output]\ndir = out/c-fit\n"},
      {ExperimentKind::shrink,
       "[experiment]\nkind = shrink\nseed = 1\n\n[lattice]\nsizes = 1024\n\n"
       "[region]\narcs = 0:1/8pi, 3/8pi:3/4pi, 1pi:3/2pi\n\n"
       "[shrink]\narc = 0\nschedule = 1/8pi, 1/16pi, 1/32pi, 1/64pi, 1/128pi, 1/256pi, 1/512pi\n\n"
       "[output]\ndir = out/shrink\n"},
      {ExperimentKind::collapse,
       "[experiment]\nkind = collapse\nseed = 1\n\n[lattice]\nsizes = 256, 512, 1024\n\n"
       "[collapse]\ngeometries = 0:5/16pi, 5/8pi:15/16pi; 0:5/16pi, 11/16pi:17/16pi\n"
       "control = 0:1/2pi, 1pi:3/2pi; 0:5/16pi, 5/8pi:5/4pi\n\n[model]\nr_convention = chord\n\n"
       "[output]\ndir = out/collapse\n"},
      {ExperimentKind::two_d,
       "[experiment]\nkind = two-d\nseed = 1\n\n[lattice]\nsizes = 256, 512, 1024, 2048\n\n"
       "[region]\narcs = 0:5/16pi, 1/2pi:17/16pi\n\n[region_right]\narcs = 0:3/8pi, 3/4pi:5/4pi\n\n"
       "[model]\nc = 1\nmode = chiral\nr_convention = chord\n\n[output]\ndir = out/two-d\n"}};
  return texts.at(kind);
}

ExperimentConfig default_config(ExperimentKind kind) { return parse_config(default_config_text(kind)); }

}  // namespace entropylab::harness
