// Copyright 2026 The QHAM Authors
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

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "qham/capacity.hpp"
#include "qham/neuron.hpp"
#include "qham/noise.hpp"

namespace qham::cli {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr int kSchemaVersion = 1;

enum class Format { Json, Csv };

/// "json" / "csv". Throws ContractError.
Format parse_format(std::string_view text);

/// Flags shared by every subcommand. Unset values fall back to the config
/// file, then to the command default.
struct GlobalOptions {
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> shots;
  std::optional<std::string> noise;  // device name or "none"
  unsigned threads = 1;
  std::optional<std::filesystem::path> devices;  // registry override
};

/// Plot-ready rows; cells are JSON scalars.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<nlohmann::json>> rows;
};

struct CommandOutput {
  std::string subcommand;
  nlohmann::json config;  // effective configuration, echoed in the manifest
  std::uint64_t seed = 0;
  nlohmann::json data;
  Table table;
  int exit_code = 0;
  std::vector<std::string> diagnostics;  // written to stderr
};

/// {"subcommand", "config", "seed", "tool_version", "timestamp"}.
nlohmann::json manifest(const CommandOutput& output, std::string_view timestamp);

/// JSON: {"manifest": ..., "data": ...}. CSV: one "# manifest: {...}" line,
/// the header, then the rows.
std::string render(const CommandOutput& output, Format format, std::string_view timestamp);

/// The part of a rendered document that must not depend on threads or time:
/// the serialized "data" member for JSON, every non-comment line for CSV.
std::string data_payload(std::string_view rendered, Format format);

/// Current UTC time as YYYY-MM-DDTHH:MM:SSZ.
std::string utc_timestamp();

/// Resolves "none" (or empty) to no noise, otherwise a device from the
/// registry (the override file when given).
std::optional<noise::NoiseSpec> resolve_noise(std::string_view name,
                                              const std::optional<std::filesystem::path>& devices);

struct SweepOptions {
  neuron::ActivationKind kind = neuron::ActivationKind::Simplified;
  unsigned points = 33;
  unsigned max_attempts = neuron::kDefaultMaxAttempts;
};

/// Activation sweep over phi in [0, pi/2] with a single control held in |1>
/// and gamma = pi/4. Columns: phi, analytic, simulated_p1 (exact when
/// noiseless, else sampled), sampled_p1, sampled_sigma, successful_shots.
/// Default shots 100000.
CommandOutput neuron_sweep(const SweepOptions& options, const GlobalOptions& global);

/// Runs the recall described by a config document (see README).
CommandOutput recall(const nlohmann::json& config, const GlobalOptions& global);

/// One report per (n, m) of the config's grid; a "u_range" tunes u per cell.
CommandOutput capacity(const nlohmann::json& config, const GlobalOptions& global);

/// Accuracy curve over the config's u_range.
CommandOutput tune_u(const nlohmann::json& config, const GlobalOptions& global,
                     std::optional<capacity::TuneStrategy> strategy = std::nullopt);

/// Inclusive integer range.
struct Range {
  unsigned lo = 0;
  unsigned hi = 0;
};

/// "a" or "a:b" (inclusive). Throws ContractError on malformed or empty ranges.
Range parse_range(std::string_view text);

struct ComplexityOptions {
  Range n{2, 8};
  Range u{1, 4};
  Range f{0, 2};
};

/// Predicted against measured basis-gate counts for both neuron designs and
/// the qubit overheads. Exit code 1 when any count disagrees.
CommandOutput complexity(const ComplexityOptions& options, const GlobalOptions& global);

/// The device registry with the per-gate damping probabilities it implies.
CommandOutput devices(const GlobalOptions& global);

capacity::TuneStrategy parse_tune_strategy(std::string_view text);
std::string to_string(capacity::TuneStrategy strategy);

/// Reads a JSON file. Throws ConfigError naming the path.
nlohmann::json load_json(const std::filesystem::path& path);

}  // namespace qham::cli
