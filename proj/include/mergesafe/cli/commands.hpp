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

#ifndef MERGESAFE__CLI__COMMANDS_HPP_
#define MERGESAFE__CLI__COMMANDS_HPP_

#include "mergesafe/conflict/conflict.hpp"
#include "mergesafe/denoise/wavelet.hpp"
#include "mergesafe/report/report.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace mergesafe::cli
{

enum ExitCode : int {
  kExitOk = 0,
  kExitValidation = 1,
  kExitIo = 2,
  kExitOracleDisagreement = 3,
};

struct GenerateOptions
{
  std::uint64_t seed{0};
  std::filesystem::path out;
  /// JSON scenario; the built-in reference scenario for `seed` when unset.
  std::optional<std::filesystem::path> spec;
  /// Overrides the seed inside `spec` when set together with it.
  bool seed_given{false};
};

struct DenoiseOptions
{
  std::filesystem::path tracks;
  std::filesystem::path site;
  std::filesystem::path out;
  int levels{kDefaultWaveletLevels};
};

/// Inputs, outputs and overrides of an analysis run.
struct RunConfig
{
  std::filesystem::path tracks;
  std::filesystem::path site;
  std::filesystem::path out;
  bool denoise{false};
  int levels{kDefaultWaveletLevels};
  unsigned threads{1};
  ConflictConfig conflict;
  ReportConfig report;
};

struct ReportOptions
{
  std::filesystem::path tracks;
  std::filesystem::path site;
  std::filesystem::path conflicts;
  std::filesystem::path out;
  ReportConfig report;
};

struct OracleCheckOptions
{
  std::int64_t n{1000};
  std::uint64_t seed{0};
  double dt{1e-3};
  double horizon{10.0};
  /// Also run the built-in grazing-contact corpus.
  bool grazing{false};
};

/// Writes tracks.csv, site.json, scenario.json and ground_truth.json.
int cmd_generate(const GenerateOptions & options, std::ostream & out, std::ostream & err);

/// Writes the denoised tracks CSV to `options.out`.
int cmd_denoise(const DenoiseOptions & options, std::ostream & out, std::ostream & err);

/// Ingest, optional denoise, conflict detection and report. Writes
/// conflicts.csv and the report bundle into `config.out`, or nothing on error.
int cmd_analyze(const RunConfig & config, std::ostream & out, std::ostream & err);

/// Report bundle from tracks and a previously written conflicts CSV.
int cmd_report(const ReportOptions & options, std::ostream & out, std::ostream & err);

/// Compares ttc() against the stepping reference on `n` seeded random pairs.
int cmd_oracle_check(const OracleCheckOptions & options, std::ostream & out, std::ostream & err);

/// Applies the keys of a JSON run configuration to `config`. Unknown keys are
/// a validation error.
void apply_config_json(const std::string & text, RunConfig & config);

/// Parses argv and dispatches to a subcommand.
int run(int argc, const char * const * argv, std::ostream & out, std::ostream & err);

}  // namespace mergesafe::cli

#endif  // MERGESAFE__CLI__COMMANDS_HPP_
