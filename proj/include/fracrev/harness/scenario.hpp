// Scenario configuration and the runners behind the CLI subcommands.
//
// Config schema (see README for the full grammar):
//   [chain]   sites, hopping
//   [initial] kind = gaussian | superposition, centers, weights,
//             half_width | alpha, center_rule = n_plus_one | literal
//   [time]    start, stop, points  |  values
//   [metrics] trace, profiles, fraction, max_denominator
//   [output]  dir, prefix
//   [sweep]   variable = half_width | sites | center, values,
//             metric = abs_F_sq | abs_Ff_sq | abs_A_sq, at
//
// Centers accept plain numbers or multiples of N such as "N/3", "2N/3", "N".
// With center_rule = n_plus_one (default) "aN/b" means a(N+1)/b; with
// literal it means aN/b. Times are fractions of t_rev, written as decimals
// or as "p/q".
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <regex>
#include <string>
#include <thread>
#include <vector>

#include "../chain_model.hpp"
#include "../fidelity_metrics.hpp"
#include "../propagator.hpp"
#include "../revival_theory.hpp"
#include "../wavepacket.hpp"
#include "config.hpp"
#include "csv.hpp"

namespace fracrev::harness {

inline const ConfigFile::Schema& scenario_schema() {
  static const ConfigFile::Schema schema{
      {"chain", {"sites", "hopping"}},
      {"initial", {"kind", "centers", "weights", "half_width", "alpha", "center_rule"}},
      {"time", {"start", "stop", "points", "values"}},
      {"metrics", {"trace", "profiles", "fraction", "max_denominator"}},
      {"output", {"dir", "prefix"}},
      {"sweep", {"variable", "values", "metric", "at"}},
  };
  return schema;
}

enum class CenterRule { n_plus_one, literal };
enum class InitialKind { gaussian, superposition };
enum class SweepVariable { half_width, sites, center };
enum class MetricKind { abs_F_sq, abs_Ff_sq, abs_A_sq };

inline std::string to_string(SweepVariable v) {
  switch (v) {
    case SweepVariable::half_width: return "half_width";
    case SweepVariable::sites: return "sites";
    case SweepVariable::center: return "center";
  }
  return "?";
}

inline std::string to_string(MetricKind m) {
  switch (m) {
    case MetricKind::abs_F_sq: return "abs_F_sq";
    case MetricKind::abs_Ff_sq: return "abs_Ff_sq";
    case MetricKind::abs_A_sq: return "abs_A_sq";
  }
  return "?";
}

/// Strict decimal parse; the whole string must be consumed.
inline std::optional<double> parse_number(const std::string& s) {
  if (s.empty()) return std::nullopt;
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size() || !std::isfinite(v)) return std::nullopt;
    return v;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

/// "p/q" or a decimal.
inline std::optional<double> parse_time(const std::string& s) {
  if (const auto slash = s.find('/'); slash != std::string::npos) {
    const auto p = parse_number(trim(s.substr(0, slash)));
    const auto q = parse_number(trim(s.substr(slash + 1)));
    if (!p || !q || *q == 0.0) return std::nullopt;
    return *p / *q;
  }
  return parse_number(s);
}

inline std::optional<std::pair<std::int64_t, std::int64_t>> parse_fraction(const std::string& s) {
  static const std::regex re(R"(^\s*([0-9]+)\s*/\s*([0-9]+)\s*$)");
  std::smatch m;
  if (!std::regex_match(s, m, re)) return std::nullopt;
  return std::pair{std::stoll(m[1]), std::stoll(m[2])};
}

/// Resolves a center expression against a chain length.
inline std::optional<double> resolve_center(const std::string& expr, std::size_t sites, CenterRule rule) {
  if (auto v = parse_number(expr)) return v;
  static const std::regex re(R"(^\s*([0-9]*\.?[0-9]*)\s*\*?\s*N\s*(?:/\s*([0-9]*\.?[0-9]+))?\s*$)");
  std::smatch m;
  if (!std::regex_match(expr, m, re)) return std::nullopt;
  const double a = m[1].length() ? std::stod(m[1]) : 1.0;
  const double b = m[2].matched ? std::stod(m[2]) : 1.0;
  if (b == 0.0) return std::nullopt;
  const double base = rule == CenterRule::n_plus_one ? static_cast<double>(sites + 1) : static_cast<double>(sites);
  return a * base / b;
}

struct SweepSpec {
  SweepVariable variable;
  std::vector<std::string> values;
  MetricKind metric;
  double at;  // fraction of t_rev
};

struct Scenario {
  ConfigFile config;
  std::size_t sites = 0;
  double hopping = 1.0;
  InitialKind kind = InitialKind::gaussian;
  std::vector<std::string> centers;
  std::vector<double> weights;
  double alpha = 0.0;
  CenterRule rule = CenterRule::n_plus_one;
  std::vector<double> grid;
  bool want_trace = true;
  std::vector<std::string> profile_times;  // as written, also used in file names
  std::optional<std::pair<std::int64_t, std::int64_t>> fraction;
  std::int64_t max_denominator = 64;
  std::filesystem::path out_dir = ".";
  std::string prefix = "run";
  std::optional<SweepSpec> sweep;
};

namespace detail {

inline double require_number(const ConfigFile& cfg, const std::string& sec, const std::string& key) {
  const auto e = cfg.get(sec, key);
  if (!e) cfg.fail(sec, key, "missing required key '" + key + "' in [" + sec + "]");
  const auto v = parse_number(e->value);
  if (!v) cfg.fail(sec, key, "'" + key + "' is not a number: '" + e->value + "'");
  return *v;
}

inline std::optional<double> optional_number(const ConfigFile& cfg, const std::string& sec, const std::string& key) {
  if (!cfg.get(sec, key)) return std::nullopt;
  return require_number(cfg, sec, key);
}

inline std::size_t require_count(const ConfigFile& cfg, const std::string& sec, const std::string& key) {
  const double v = require_number(cfg, sec, key);
  if (v < 0 || v != std::floor(v)) cfg.fail(sec, key, "'" + key + "' must be a non-negative integer");
  return static_cast<std::size_t>(v);
}

inline bool parse_bool(const ConfigFile& cfg, const std::string& sec, const std::string& key, bool fallback) {
  const auto e = cfg.get(sec, key);
  if (!e) return fallback;
  if (e->value == "true" || e->value == "yes" || e->value == "1") return true;
  if (e->value == "false" || e->value == "no" || e->value == "0") return false;
  cfg.fail(sec, key, "'" + key + "' must be true or false");
}

inline std::vector<double> parse_grid(const ConfigFile& cfg) {
  std::vector<double> grid;
  if (auto e = cfg.get("time", "values")) {
    if (cfg.get("time", "points") || cfg.get("time", "start") || cfg.get("time", "stop"))
      cfg.fail("time", "values", "give either values or start/stop/points, not both");
    for (const auto& item : split_list(e->value)) {
      const auto t = parse_time(item);
      if (!t) cfg.fail("time", "values", "bad time value '" + item + "'");
      grid.push_back(*t);
    }
    if (grid.empty()) cfg.fail("time", "values", "time grid is empty");
  } else {
    const std::size_t points = require_count(cfg, "time", "points");
    if (points == 0) cfg.fail("time", "points", "time grid is empty");
    const double start = optional_number(cfg, "time", "start").value_or(0.0);
    const double stop = require_number(cfg, "time", "stop");
    if (points == 1) {
      grid.push_back(start);
    } else {
      if (!(stop > start)) cfg.fail("time", "stop", "stop must exceed start");
      // i/(points-1) keeps grid nodes like p/q exact when stop-start divides evenly.
      const double den = static_cast<double>(points - 1);
      for (std::size_t i = 0; i < points; ++i) grid.push_back(start + (stop - start) * static_cast<double>(i) / den);
    }
  }
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (!(grid[i] > grid[i - 1])) cfg.fail("time", "values", "time grid must be strictly increasing");
  return grid;
}

}  // namespace detail

inline Scenario load_scenario(const ConfigFile& cfg) {
  Scenario sc;
  sc.config = cfg;
  const double sites = detail::require_number(cfg, "chain", "sites");
  if (sites < 2 || sites != std::floor(sites)) cfg.fail("chain", "sites", "sites must be an integer >= 2");
  sc.sites = static_cast<std::size_t>(sites);
  sc.hopping = detail::optional_number(cfg, "chain", "hopping").value_or(1.0);
  if (!(sc.hopping > 0.0)) cfg.fail("chain", "hopping", "hopping must be positive");

  const std::string kind = cfg.get("initial", "kind") ? cfg.get("initial", "kind")->value : "gaussian";
  if (kind == "gaussian") sc.kind = InitialKind::gaussian;
  else if (kind == "superposition") sc.kind = InitialKind::superposition;
  else cfg.fail("initial", "kind", "kind must be gaussian or superposition");

  const auto centers = cfg.get("initial", "centers");
  if (!centers) cfg.fail("initial", "centers", "missing required key 'centers' in [initial]");
  sc.centers = split_list(centers->value);
  if (sc.centers.empty()) cfg.fail("initial", "centers", "no centers given");
  if (sc.kind == InitialKind::gaussian && sc.centers.size() != 1)
    cfg.fail("initial", "centers", "a gaussian initial state takes exactly one center");

  if (auto w = cfg.get("initial", "weights")) {
    for (const auto& item : split_list(w->value)) {
      const auto v = parse_number(item);
      if (!v) cfg.fail("initial", "weights", "bad weight '" + item + "'");
      sc.weights.push_back(*v);
    }
    if (sc.weights.size() != sc.centers.size()) cfg.fail("initial", "weights", "weights and centers differ in count");
  } else {
    sc.weights.assign(sc.centers.size(), 1.0);
  }

  const auto hw = detail::optional_number(cfg, "initial", "half_width");
  const auto al = detail::optional_number(cfg, "initial", "alpha");
  if (hw && al) cfg.fail("initial", "alpha", "give half_width or alpha, not both");
  if (!hw && !al) cfg.fail("initial", "half_width", "missing half_width (or alpha) in [initial]");
  if (hw && !(*hw > 0.0)) cfg.fail("initial", "half_width", "half_width must be positive");
  if (al && !(*al > 0.0)) cfg.fail("initial", "alpha", "alpha must be positive");
  sc.alpha = hw ? GaussianSpec::alpha_for_half_width(*hw) : *al;

  if (auto r = cfg.get("initial", "center_rule")) {
    if (r->value == "n_plus_one") sc.rule = CenterRule::n_plus_one;
    else if (r->value == "literal") sc.rule = CenterRule::literal;
    else cfg.fail("initial", "center_rule", "center_rule must be n_plus_one or literal");
  }
  for (const auto& c : sc.centers)
    if (!resolve_center(c, sc.sites, sc.rule)) cfg.fail("initial", "centers", "bad center expression '" + c + "'");

  sc.want_trace = detail::parse_bool(cfg, "metrics", "trace", true);
  if (cfg.has_section("time")) sc.grid = detail::parse_grid(cfg);
  else if (sc.want_trace && !cfg.has_section("sweep")) cfg.fail("time", "", "missing [time] section");

  if (auto p = cfg.get("metrics", "profiles")) {
    sc.profile_times = split_list(p->value);
    for (const auto& t : sc.profile_times)
      if (!parse_time(t)) cfg.fail("metrics", "profiles", "bad profile time '" + t + "'");
  }
  if (auto f = cfg.get("metrics", "fraction")) {
    sc.fraction = parse_fraction(f->value);
    if (!sc.fraction || sc.fraction->first < 1 || sc.fraction->second < 1)
      cfg.fail("metrics", "fraction", "fraction must look like p/q with p, q >= 1");
  }
  if (cfg.get("metrics", "max_denominator")) {
    sc.max_denominator = static_cast<std::int64_t>(detail::require_count(cfg, "metrics", "max_denominator"));
    if (sc.max_denominator < 1) cfg.fail("metrics", "max_denominator", "max_denominator must be >= 1");
  }

  if (auto d = cfg.get("output", "dir")) sc.out_dir = d->value;
  if (auto p = cfg.get("output", "prefix")) {
    sc.prefix = p->value;
    if (sc.prefix.empty() || sc.prefix.find('/') != std::string::npos)
      cfg.fail("output", "prefix", "prefix must be a plain file-name stem");
  }

  if (cfg.has_section("sweep")) {
    SweepSpec sw{};
    const auto var = cfg.get("sweep", "variable");
    if (!var) cfg.fail("sweep", "variable", "missing 'variable' in [sweep]");
    if (var->value == "half_width") sw.variable = SweepVariable::half_width;
    else if (var->value == "sites") sw.variable = SweepVariable::sites;
    else if (var->value == "center") sw.variable = SweepVariable::center;
    else cfg.fail("sweep", "variable", "variable must be half_width, sites or center");
    const auto vals = cfg.get("sweep", "values");
    if (!vals) cfg.fail("sweep", "values", "missing 'values' in [sweep]");
    sw.values = split_list(vals->value);
    if (sw.values.empty()) cfg.fail("sweep", "values", "sweep value list is empty");
    for (const auto& v : sw.values) {
      const bool ok = sw.variable == SweepVariable::center ? resolve_center(v, sc.sites, sc.rule).has_value()
                                                           : parse_number(v).has_value();
      if (!ok) cfg.fail("sweep", "values", "bad sweep value '" + v + "'");
      if (sw.variable == SweepVariable::sites && (*parse_number(v) < 2 || *parse_number(v) != std::floor(*parse_number(v))))
        cfg.fail("sweep", "values", "sites must be integers >= 2");
    }
    const auto met = cfg.get("sweep", "metric");
    if (!met) cfg.fail("sweep", "metric", "missing 'metric' in [sweep]");
    if (met->value == "abs_F_sq") sw.metric = MetricKind::abs_F_sq;
    else if (met->value == "abs_Ff_sq") sw.metric = MetricKind::abs_Ff_sq;
    else if (met->value == "abs_A_sq") sw.metric = MetricKind::abs_A_sq;
    else cfg.fail("sweep", "metric", "metric must be abs_F_sq, abs_Ff_sq or abs_A_sq");
    const auto at = cfg.get("sweep", "at");
    if (!at) cfg.fail("sweep", "at", "missing 'at' in [sweep]");
    const auto t = parse_time(at->value);
    if (!t || !(*t > 0.0)) cfg.fail("sweep", "at", "'at' must be a positive time in units of t_rev");
    sw.at = *t;
    if (sw.metric == MetricKind::abs_Ff_sq && sc.kind != InitialKind::gaussian)
      cfg.fail("sweep", "metric", "abs_Ff_sq needs a gaussian initial state");
    sc.sweep = sw;
  }
  return sc;
}

inline Scenario load_scenario_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config " + path.string());
  return load_scenario(ConfigFile::parse(in, scenario_schema(), path.string()));
}

inline Scenario load_scenario_string(const std::string& text, const std::string& source = "config") {
  return load_scenario(ConfigFile::parse_string(text, scenario_schema(), source));
}

struct ResolvedInitial {
  ChainSpec chain;
  PositionState state;
  std::optional<GaussianSpec> packet;  // set for a single gaussian
};

inline ResolvedInitial resolve_initial(const Scenario& sc) {
  const ChainSpec chain(sc.sites, sc.hopping);
  std::vector<double> centers;
  for (const auto& c : sc.centers) centers.push_back(*resolve_center(c, sc.sites, sc.rule));
  if (sc.kind == InitialKind::gaussian) {
    const auto spec = GaussianSpec::from_alpha(centers.front(), sc.alpha);
    return {chain, build_gwp(chain, spec), spec};
  }
  SuperpositionSpec sup{{}, sc.alpha};
  for (std::size_t i = 0; i < centers.size(); ++i) sup.components.emplace_back(centers[i], sc.weights[i]);
  return {chain, build_superposition(chain, sup), std::nullopt};
}

/// Packets that stick out of the chain are legal; report them.
inline void warn_containment(const Scenario& sc, std::ostream& warn) {
  for (const auto& c : sc.centers) {
    const auto spec = GaussianSpec::from_alpha(*resolve_center(c, sc.sites, sc.rule), sc.alpha);
    if (!spec.contained_in(ChainSpec(sc.sites, sc.hopping)))
      warn << "warning: packet at " << format_float(spec.center()) << " (half width "
           << format_float(spec.half_width()) << ") is not contained in a chain of " << sc.sites << " sites\n";
  }
}

struct RunOptions {
  std::optional<std::filesystem::path> out_dir;
  unsigned threads = 1;
};

namespace detail {

inline std::filesystem::path output_dir(const Scenario& sc, const RunOptions& opt) {
  auto dir = opt.out_dir.value_or(sc.out_dir);
  std::filesystem::create_directories(dir);
  return dir;
}

inline std::string time_tag(const std::string& written) {
  std::string tag;
  for (char c : written) tag += (c == '/' ? '_' : c);
  return tag;
}

inline std::filesystem::path write_profile(const std::filesystem::path& path, const PositionState& state) {
  CsvWriter csv(path, {"site", "abs_amp"});
  const auto prof = profile(state);
  for (std::size_t j = 0; j < prof.size(); ++j) csv.row({std::to_string(j + 1), format_float(prof[j])});
  return path;
}

}  // namespace detail

/// `trace`: the fidelity trace over the grid plus any requested profiles.
inline std::vector<std::filesystem::path> run_trace(const Scenario& sc, const RunOptions& opt = {}) {
  const auto init = resolve_initial(sc);
  const auto dir = detail::output_dir(sc, opt);
  std::vector<std::filesystem::path> written;
  if (sc.want_trace) {
    if (sc.grid.empty()) sc.config.fail("time", "", "time grid is empty");
    TraceOptions to;
    to.packet = init.packet;
    to.max_denominator = sc.max_denominator;
    to.threads = std::max(1u, opt.threads);
    const auto tr = trace(init.chain, init.state, sc.grid, to);
    CsvWriter csv(dir / (sc.prefix + "_trace.csv"), {"t_over_trev", "abs_F_sq", "abs_Ff_sq", "abs_A_sq"});
    for (const auto& p : tr.points)
      csv.row({format_float(p.t_over_trev), format_float(p.abs_F_sq), format_float(p.abs_Ff_sq),
               format_float(p.abs_A_sq)});
    written.push_back(csv.path());
  }
  if (!sc.profile_times.empty()) {
    const SpectralPropagator prop(init.chain, init.state);
    const double t_rev = revival_clock(init.chain).t_rev;
    for (const auto& t : sc.profile_times) {
      const auto path = dir / (sc.prefix + "_profile_t" + detail::time_tag(t) + ".csv");
      written.push_back(detail::write_profile(path, prop.position_at(*parse_time(t) * t_rev)));
    }
  }
  return written;
}

/// `evolve`: one profile file per grid time.
inline std::vector<std::filesystem::path> run_evolve(const Scenario& sc, const RunOptions& opt = {}) {
  if (sc.grid.empty()) sc.config.fail("time", "", "time grid is empty");
  const auto init = resolve_initial(sc);
  const auto dir = detail::output_dir(sc, opt);
  const SpectralPropagator prop(init.chain, init.state);
  const double t_rev = revival_clock(init.chain).t_rev;
  std::vector<std::filesystem::path> written;
  for (double t : sc.grid) {
    const auto path = dir / (sc.prefix + "_profile_t" + format_float(t) + ".csv");
    written.push_back(detail::write_profile(path, prop.position_at(t * t_rev)));
  }
  return written;
}

struct PredictSummary {
  double overlap_with_exact;  // |<exact(tau)|prediction>|^2
  std::vector<std::filesystem::path> written;
};

/// `predict`: analytic clone state at metrics.fraction against exact evolution.
inline PredictSummary run_predict(const Scenario& sc, const RunOptions& opt = {}) {
  if (!sc.fraction) sc.config.fail("metrics", "fraction", "predict needs metrics.fraction = p/q");
  if (sc.kind != InitialKind::gaussian) sc.config.fail("initial", "kind", "predict needs a gaussian initial state");
  const auto init = resolve_initial(sc);
  const auto frac = RevivalFraction::reduced(sc.fraction->first, sc.fraction->second);
  const auto pred = predict_state(init.chain, *init.packet, frac);
  const auto exact = evolve_exact(init.chain, init.state, revival_clock(init.chain).t_rev * frac.value());
  const auto dir = detail::output_dir(sc, opt);

  PredictSummary out{std::norm(inner_product(exact, pred.state)), {}};
  out.written.push_back(detail::write_profile(dir / (sc.prefix + "_predict_profile.csv"), pred.state));
  CsvWriter clones(dir / (sc.prefix + "_predict_clones.csv"), {"r", "center", "weight_re", "weight_im", "reflected"});
  for (const auto& pk : pred.packets)
    clones.row({std::to_string(pk.r), format_float(pk.center), format_float(pk.weight.real()),
                format_float(pk.weight.imag()), pk.reflected ? "1" : "0"});
  out.written.push_back(clones.path());
  return out;
}

struct SweepRow {
  double value;
  double metric;
};

struct SweepResult {
  SweepVariable variable;
  MetricKind metric;
  std::vector<SweepRow> rows;
  bool non_decreasing;
  bool non_increasing;
  std::filesystem::path written;
};

/// One metric evaluation for a fully resolved scenario.
inline double evaluate_metric(const Scenario& sc, MetricKind metric, double at) {
  const auto init = resolve_initial(sc);
  if (metric == MetricKind::abs_Ff_sq) {
    const auto frac = rational_time(at, sc.max_denominator);
    if (!frac) sc.config.fail("sweep", "at", "abs_Ff_sq needs 'at' to be p/q with q <= max_denominator");
    const auto ff = fractional_fidelity(init.chain, *init.packet, *frac);
    return ff.value * ff.value;
  }
  const double t = at * revival_clock(init.chain).t_rev;
  if (metric == MetricKind::abs_A_sq) return std::norm(autocorrelation(init.chain, init.state, t));
  return std::norm(mirror_fidelity(init.chain, init.state, t));
}

/// `sweep`: one row per value, evaluated independently; row order follows the
/// value list for any thread count.
inline SweepResult run_sweep(const Scenario& sc, const RunOptions& opt = {}) {
  if (!sc.sweep) sc.config.fail("sweep", "", "sweep needs a [sweep] section");
  const auto& sw = *sc.sweep;
  SweepResult res{sw.variable, sw.metric, std::vector<SweepRow>(sw.values.size()), true, true, {}};

  auto eval = [&](std::size_t i) {
    Scenario s = sc;
    double shown = 0.0;
    switch (sw.variable) {
      case SweepVariable::half_width:
        shown = *parse_number(sw.values[i]);
        s.alpha = GaussianSpec::alpha_for_half_width(shown);
        break;
      case SweepVariable::sites:
        shown = *parse_number(sw.values[i]);
        s.sites = static_cast<std::size_t>(shown);
        break;
      case SweepVariable::center:
        shown = *resolve_center(sw.values[i], s.sites, s.rule);
        s.centers = {sw.values[i]};
        s.weights = {1.0};
        s.kind = InitialKind::gaussian;
        break;
    }
    res.rows[i] = {shown, evaluate_metric(s, sw.metric, sw.at)};
  };

  const std::size_t n = sw.values.size();
  const std::size_t nthreads = std::clamp<std::size_t>(opt.threads, 1, n);
  std::vector<std::exception_ptr> errors(n);
  {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < nthreads; ++t)
      pool.emplace_back([&, t] {
        for (std::size_t i = t; i < n; i += nthreads) {
          try {
            eval(i);
          } catch (...) {
            errors[i] = std::current_exception();
          }
        }
      });
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  for (std::size_t i = 1; i < n; ++i) {
    if (res.rows[i].metric < res.rows[i - 1].metric) res.non_decreasing = false;
    if (res.rows[i].metric > res.rows[i - 1].metric) res.non_increasing = false;
  }

  const auto dir = detail::output_dir(sc, opt);
  CsvWriter csv(dir / (sc.prefix + "_sweep.csv"), {"variable", "value", "metric"});
  for (const auto& r : res.rows) csv.row({to_string(sw.variable), format_float(r.value), format_float(r.metric)});
  res.written = csv.path();
  return res;
}

}  // namespace fracrev::harness
