// Copyright 2026 The mergesafe Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "mergesafe/cli/commands.hpp"

#include "mergesafe/core/error.hpp"
#include "mergesafe/core/ingest.hpp"
#include "mergesafe/geometry/pair_sampler.hpp"
#include "mergesafe/geometry/ttc_oracle.hpp"
#include "mergesafe/synth/scenario.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <functional>
#include <sstream>

namespace mergesafe::cli
{

namespace
{

// Runs `body`, mapping exceptions to exit codes and messages on `err`.
int guarded(std::ostream & err, const std::function<int()> & body)
{
  try {
    return body();
  } catch (const Error & e) {
    err << "error: " << e.what() << "\n";
    return e.kind() == ErrorKind::Io ? kExitIo : kExitValidation;
  } catch (const std::exception & e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  }
}

Dataset load(const std::filesystem::path & tracks, const std::filesystem::path & site, std::ostream & err)
{
  Dataset d = ingest_dataset(tracks, site);
  for (const auto & w : d.warnings) err << "warning: " << w << "\n";
  return d;
}

// Replaces `path` with `content` through a temporary file in the same directory.
void write_file_atomically(const std::filesystem::path & path, const std::string & content)
{
  const auto dir = path.has_parent_path() ? path.parent_path() : std::filesystem::path(".");
  write_bundle({{path.filename().string(), content}}, dir);
}

}  // namespace

int cmd_generate(const GenerateOptions & options, std::ostream & out, std::ostream & err)
{
  return guarded(err, [&] {
    ScenarioSpec spec = paper_like_scenario(options.seed);
    if (options.spec) {
      spec = parse_scenario_json(read_text_file(*options.spec));
      if (options.seed_given) spec.seed = options.seed;
    }
    const GeneratedScenario g = generate(spec);
    write_bundle(
      {{"tracks.csv", tracks_to_csv(g.dataset)},
       {"site.json", site_to_json(g.dataset.site)},
       {"scenario.json", scenario_to_json(spec)},
       {"ground_truth.json", truth_to_json(g.truth)}},
      options.out);
    out << "generated " << g.dataset.tracks.size() << " vehicles, " << g.truth.size()
        << " injected conflicts into " << options.out.string() << "\n";
    return kExitOk;
  });
}

int cmd_denoise(const DenoiseOptions & options, std::ostream & out, std::ostream & err)
{
  return guarded(err, [&] {
    if (options.levels < 1) throw validation_error("levels must be >= 1");
    const Dataset raw = load(options.tracks, options.site, err);
    std::size_t skipped = 0;
    const Dataset smooth = denoise_dataset(raw, options.levels, &skipped);
    write_file_atomically(options.out, tracks_to_csv(smooth));
    out << "denoised " << raw.tracks.size() - skipped << " tracks";
    if (skipped > 0) out << " (" << skipped << " too short, copied unchanged)";
    out << "\n";
    return kExitOk;
  });
}

int cmd_analyze(const RunConfig & config, std::ostream & out, std::ostream & err)
{
  return guarded(err, [&] {
    config.conflict.validate();
    config.report.validate();
    if (config.denoise && config.levels < 1) throw validation_error("levels must be >= 1");
    Dataset dataset = load(config.tracks, config.site, err);
    if (config.denoise) dataset = denoise_dataset(dataset, config.levels);
    DetectOptions detect;
    detect.threads = config.threads;
    const auto events = detect_conflicts(dataset, config.conflict, detect);
    ReportBundle bundle = render_report(dataset, events, config.report);
    bundle["conflicts.csv"] = conflicts_to_csv(events);
    write_bundle(bundle, config.out);
    out << "analyzed " << dataset.tracks.size() << " vehicles: " << events.size() << " conflict events\n";
    return kExitOk;
  });
}

int cmd_report(const ReportOptions & options, std::ostream & out, std::ostream & err)
{
  return guarded(err, [&] {
    options.report.validate();
    const Dataset dataset = load(options.tracks, options.site, err);
    std::istringstream in(read_text_file(options.conflicts));
    const auto events = parse_conflicts_csv(in);
    write_bundle(render_report(dataset, events, options.report), options.out);
    out << "report for " << events.size() << " conflict events written to " << options.out.string() << "\n";
    return kExitOk;
  });
}

namespace
{

struct Comparison
{
  bool agree{true};
  double discrepancy{0.0};
  bool collision{false};
};

Comparison compare(const PairState & pair, double dt, double horizon)
{
  std::optional<double> analytic = ttc(pair).ttc;
  const std::optional<double> reference = ttc_oracle(pair, dt, horizon);
  const double tol = 2.0 * dt;
  if (analytic && *analytic > horizon) analytic.reset();
  Comparison c;
  c.collision = analytic.has_value() || reference.has_value();
  if (analytic && reference) {
    c.discrepancy = std::abs(*analytic - *reference);
    c.agree = c.discrepancy <= tol;
  } else if (analytic || reference) {
    // Only a contact right at the horizon may be seen by one side alone.
    const double t = analytic ? *analytic : *reference;
    c.discrepancy = horizon - t;
    c.agree = t >= horizon - tol;
  }
  return c;
}

}  // namespace

int cmd_oracle_check(const OracleCheckOptions & options, std::ostream & out, std::ostream & err)
{
  return guarded(err, [&] {
    if (options.n <= 0) throw validation_error("oracle-check: --n must be positive");
    if (!(options.dt > 0.0) || !(options.horizon > 0.0)) {
      throw validation_error("oracle-check: --dt and --horizon must be positive");
    }
    std::vector<std::string> failures;
    double worst = 0.0;
    std::string worst_case = "none";
    std::size_t collisions = 0;
    auto record = [&](const std::string & label, const Comparison & c) {
      if (c.collision) ++collisions;
      if (c.discrepancy > worst) {
        worst = c.discrepancy;
        worst_case = label;
      }
      if (!c.agree) failures.push_back(label);
    };
    for (std::int64_t i = 0; i < options.n; ++i) {
      const std::uint64_t s = sweep_seed(options.seed, static_cast<std::uint64_t>(i));
      record("seed " + std::to_string(s), compare(sample_pair(s), options.dt, options.horizon));
    }
    std::size_t checked = static_cast<std::size_t>(options.n);
    if (options.grazing) {
      for (const auto & named : grazing_corpus()) {
        record("grazing case " + named.name, compare(named.pair, options.dt, options.horizon));
        ++checked;
      }
    }
    out << "checked " << checked << " pairs (" << collisions << " with a collision within "
        << format_double(options.horizon) << " s); worst discrepancy " << format_double(worst) << " s ("
        << worst_case << ")\n";
    if (!failures.empty()) {
      err << "oracle disagreement beyond " << format_double(2.0 * options.dt) << " s for:\n";
      for (const auto & f : failures) err << "  " << f << "\n";
      return kExitOracleDisagreement;
    }
    return kExitOk;
  });
}

void apply_config_json(const std::string & text, RunConfig & config)
{
  using nlohmann::json;
  try {
    const json j = json::parse(text);
    if (!j.is_object()) throw validation_error("config: top level must be an object");
    for (const auto & [key, value] : j.items()) {
      if (key == "tracks") config.tracks = value.get<std::string>();
      else if (key == "site") config.site = value.get<std::string>();
      else if (key == "out") config.out = value.get<std::string>();
      else if (key == "denoise") config.denoise = value.get<bool>();
      else if (key == "levels") config.levels = value.get<int>();
      else if (key == "threads") config.threads = value.get<unsigned>();
      else if (key == "ttc_threshold") config.conflict.ttc_threshold = value.get<double>();
      else if (key == "pruning_radius") config.conflict.pruning_radius = value.get<double>();
      else if (key == "merge_gap") config.conflict.merge_gap = value.get<double>();
      else if (key == "min_duration") config.conflict.min_duration = value.get<int>();
      else if (key == "bin_width") config.report.bin_width = value.get<double>();
      else if (key == "cell_size") config.report.cell_size = value.get<double>();
      else if (key == "svg") config.report.svg = value.get<bool>();
      else if (key == "filter_type_pair") {
        if (value.is_null()) {
          config.report.filter.reset();
        } else {
          const auto tp = parse_type_pair(value.get<std::string>());
          if (!tp) throw validation_error("config: unknown filter_type_pair");
          config.report.filter = tp;
        }
      } else {
        throw validation_error("config: unknown key '" + key + "'");
      }
    }
  } catch (const json::exception & e) {
    throw validation_error(std::string("config: ") + e.what());
  }
}

namespace
{

std::optional<TypePair> type_pair_flag(const std::string & s)
{
  const auto tp = parse_type_pair(s);
  if (!tp) throw validation_error("unknown type pair '" + s + "' (CarCar, CarTruck, TruckCar, TruckTruck)");
  return tp;
}

// Report flags shared by `analyze` and `report`; returns setters applied after parsing.
std::vector<std::pair<CLI::Option *, std::function<void(ReportConfig &)>>> add_report_flags(
  CLI::App & cmd, ReportConfig & flags, std::string & filter)
{
  std::vector<std::pair<CLI::Option *, std::function<void(ReportConfig &)>>> setters;
  setters.emplace_back(
    cmd.add_option("--cell-size", flags.cell_size, "grid cell size in metres (default 2)"),
    [&flags](ReportConfig & r) { r.cell_size = flags.cell_size; });
  setters.emplace_back(
    cmd.add_option("--bin-width", flags.bin_width, "speed histogram bin width in m/s (default 1)"),
    [&flags](ReportConfig & r) { r.bin_width = flags.bin_width; });
  setters.emplace_back(
    cmd.add_option("--filter-type-pair", filter, "restrict the conflict map to one type pair"),
    [&filter](ReportConfig & r) { r.filter = type_pair_flag(filter); });
  setters.emplace_back(
    cmd.add_flag("--svg", flags.svg, "also write SVG heatmaps"),
    [&flags](ReportConfig & r) { r.svg = flags.svg; });
  return setters;
}

}  // namespace

int run(int argc, const char * const * argv, std::ostream & out, std::ostream & err)
{
  CLI::App app{"Conflict analysis of vehicle trajectories at freeway merging sections", "mergesafe"};
  app.require_subcommand(1);

  GenerateOptions gen;
  auto * generate_cmd = app.add_subcommand("generate", "write a synthetic merging-section dataset");
  auto * gen_seed = generate_cmd->add_option("--seed", gen.seed, "random seed (default 0)");
  generate_cmd->add_option("--out", gen.out, "output directory")->required();
  std::string gen_spec;
  generate_cmd->add_option("--spec", gen_spec, "JSON scenario specification");

  DenoiseOptions den;
  auto * denoise_cmd = app.add_subcommand("denoise", "wavelet-denoise a tracks CSV");
  denoise_cmd->add_option("--tracks", den.tracks, "tracks CSV")->required();
  denoise_cmd->add_option("--site", den.site, "site JSON")->required();
  denoise_cmd->add_option("--out", den.out, "output tracks CSV")->required();
  denoise_cmd->add_option("--levels", den.levels, "decomposition levels (default 3)");

  RunConfig flags;
  std::string config_path;
  std::string analyze_filter;
  std::vector<std::pair<CLI::Option *, std::function<void(RunConfig &)>>> run_setters;
  auto * analyze_cmd = app.add_subcommand("analyze", "detect conflicts and write the report bundle");
  analyze_cmd->add_option("--config", config_path, "JSON run configuration (flags take precedence)");
  run_setters.emplace_back(
    analyze_cmd->add_option("--tracks", flags.tracks, "tracks CSV"),
    [&](RunConfig & c) { c.tracks = flags.tracks; });
  run_setters.emplace_back(
    analyze_cmd->add_option("--site", flags.site, "site JSON"), [&](RunConfig & c) { c.site = flags.site; });
  run_setters.emplace_back(
    analyze_cmd->add_option("--out", flags.out, "output directory"),
    [&](RunConfig & c) { c.out = flags.out; });
  run_setters.emplace_back(
    analyze_cmd->add_flag("--denoise", flags.denoise, "denoise trajectories first"),
    [&](RunConfig & c) { c.denoise = flags.denoise; });
  run_setters.emplace_back(
    analyze_cmd->add_option("--levels", flags.levels, "wavelet levels when denoising (default 3)"),
    [&](RunConfig & c) { c.levels = flags.levels; });
  run_setters.emplace_back(
    analyze_cmd->add_option("--threads", flags.threads, "worker threads (default 1)"),
    [&](RunConfig & c) { c.threads = flags.threads; });
  run_setters.emplace_back(
    analyze_cmd->add_option("--ttc-threshold", flags.conflict.ttc_threshold, "seconds (default 3)"),
    [&](RunConfig & c) { c.conflict.ttc_threshold = flags.conflict.ttc_threshold; });
  run_setters.emplace_back(
    analyze_cmd->add_option("--pruning-radius", flags.conflict.pruning_radius, "metres (default 75)"),
    [&](RunConfig & c) { c.conflict.pruning_radius = flags.conflict.pruning_radius; });
  run_setters.emplace_back(
    analyze_cmd->add_option("--merge-gap", flags.conflict.merge_gap, "seconds (default 0.5)"),
    [&](RunConfig & c) { c.conflict.merge_gap = flags.conflict.merge_gap; });
  run_setters.emplace_back(
    analyze_cmd->add_option("--min-duration", flags.conflict.min_duration, "frames (default 1)"),
    [&](RunConfig & c) { c.conflict.min_duration = flags.conflict.min_duration; });
  for (auto & [opt, set] : add_report_flags(*analyze_cmd, flags.report, analyze_filter)) {
    run_setters.emplace_back(opt, [set](RunConfig & c) { set(c.report); });
  }

  ReportOptions rep;
  std::string report_filter;
  auto * report_cmd = app.add_subcommand("report", "write the report bundle for existing conflicts");
  report_cmd->add_option("--tracks", rep.tracks, "tracks CSV")->required();
  report_cmd->add_option("--site", rep.site, "site JSON")->required();
  report_cmd->add_option("--conflicts", rep.conflicts, "conflicts CSV")->required();
  report_cmd->add_option("--out", rep.out, "output directory")->required();
  ReportConfig report_flags;
  const auto report_setters = add_report_flags(*report_cmd, report_flags, report_filter);

  OracleCheckOptions oc;
  auto * oracle_cmd = app.add_subcommand("oracle-check", "compare analytic TTC with the stepping reference");
  oracle_cmd->add_option("--n", oc.n, "number of random pairs (default 1000)");
  oracle_cmd->add_option("--seed", oc.seed, "base seed (default 0)");
  oracle_cmd->add_option("--dt", oc.dt, "reference time step in seconds (default 0.001)");
  oracle_cmd->add_option("--horizon", oc.horizon, "look-ahead in seconds (default 10)");
  oracle_cmd->add_flag("--grazing", oc.grazing, "also run the grazing-contact corpus");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp &) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError & e) {
    err << "usage error: " << e.what() << "\n";
    return kExitValidation;
  }

  if (*generate_cmd) {
    if (!gen_spec.empty()) gen.spec = gen_spec;
    gen.seed_given = gen_seed->count() > 0;
    return cmd_generate(gen, out, err);
  }
  if (*denoise_cmd) return cmd_denoise(den, out, err);
  if (*analyze_cmd) {
    return guarded(err, [&] {
      RunConfig config;
      if (!config_path.empty()) apply_config_json(read_text_file(config_path), config);
      for (auto & [opt, set] : run_setters) {
        if (opt->count() > 0) set(config);
      }
      if (config.tracks.empty() || config.site.empty() || config.out.empty()) {
        throw validation_error("analyze: --tracks, --site and --out are required (flag or config)");
      }
      return cmd_analyze(config, out, err);
    });
  }
  if (*report_cmd) {
    return guarded(err, [&] {
      for (const auto & [opt, set] : report_setters) {
        if (opt->count() > 0) set(rep.report);
      }
      return cmd_report(rep, out, err);
    });
  }
  if (*oracle_cmd) {
    if (oc.n <= 0) {
      err << "usage error: --n must be a positive integer\n";
      return kExitValidation;
    }
    return cmd_oracle_check(oc, out, err);
  }
  return kExitValidation;
}

}  // namespace mergesafe::cli
