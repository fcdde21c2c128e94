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

// qham: command-line front end. Every subcommand writes one JSON or CSV
// document (manifest + data) to --out or stdout.

#include <fstream>
#include <functional>
#include <iostream>

#include "CLI11.hpp"
#include "qham/cli.hpp"
#include "qham/errors.hpp"

namespace {

constexpr int kUsageError = 2;

int emit(const qham::cli::CommandOutput& output, qham::cli::Format format,
         const std::string& out_path) {
  const std::string text = qham::cli::render(output, format, qham::cli::utc_timestamp());
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
  } else {
    std::ofstream file(out_path, std::ios::binary);
    if (!file || !(file << text)) {
      std::cerr << "error: cannot write " << out_path << "\n";
      return 1;
    }
  }
  for (const auto& line : output.diagnostics) std::cerr << line << "\n";
  return output.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum Hopfield associative memory toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", std::string(qham::cli::kToolVersion));

  std::uint64_t seed = 0;
  std::uint64_t shots = 0;
  std::string noise;
  std::string format_text = "json";
  std::string out_path;
  unsigned threads = 1;
  std::string devices_path;

  auto* seed_opt = app.add_option("--seed", seed, "Master seed")->envname("QHAM_SEED");
  auto* shots_opt =
      app.add_option("--shots", shots, "Shots per circuit")->envname("QHAM_SHOTS")->check(
          CLI::PositiveNumber);
  auto* noise_opt =
      app.add_option("--noise", noise, "Device name from the registry, or none")->envname(
          "QHAM_NOISE");
  app.add_option("--format", format_text, "json or csv")
      ->envname("QHAM_FORMAT")
      ->check(CLI::IsMember({"json", "csv"}, CLI::ignore_case));
  app.add_option("--out", out_path, "Output file (default stdout)")->envname("QHAM_OUT");
  app.add_option("--threads", threads, "Worker threads for Monte Carlo trials")
      ->envname("QHAM_THREADS")
      ->check(CLI::PositiveNumber);
  auto* devices_opt = app.add_option("--devices", devices_path, "Device registry JSON override")
                          ->envname("QHAM_DEVICES")
                          ->check(CLI::ExistingFile);

  std::function<qham::cli::CommandOutput(const qham::cli::GlobalOptions&)> run;

  auto* sweep = app.add_subcommand("neuron-sweep", "Activation function sweep over phi");
  std::string kind_text = "simplified";
  qham::cli::SweepOptions sweep_options;
  sweep->add_option("--kind", kind_text, "simplified or rus")
      ->check(CLI::IsMember({"simplified", "rus"}, CLI::ignore_case));
  sweep->add_option("--points", sweep_options.points, "Grid points (>= 2)")
      ->check(CLI::Range(2U, 100000U));
  sweep->add_option("--max-attempts", sweep_options.max_attempts, "RUS attempt limit")
      ->check(CLI::PositiveNumber);
  sweep->callback([&] {
    sweep_options.kind = qham::neuron::parse_activation_kind(kind_text);
    run = [&](const auto& g) { return qham::cli::neuron_sweep(sweep_options, g); };
  });

  std::string config_path;
  auto* recall = app.add_subcommand("recall", "Recall one probe from a config file");
  recall->add_option("config", config_path, "Recall config JSON")->required()->check(
      CLI::ExistingFile);
  recall->callback([&] {
    run = [&](const auto& g) {
      return qham::cli::recall(qham::cli::load_json(config_path), g);
    };
  });

  auto* capacity = app.add_subcommand("capacity", "Monte Carlo capacity benchmark");
  capacity->add_option("config", config_path, "Capacity config JSON")->required()->check(
      CLI::ExistingFile);
  capacity->callback([&] {
    run = [&](const auto& g) {
      return qham::cli::capacity(qham::cli::load_json(config_path), g);
    };
  });

  auto* tune = app.add_subcommand("tune-u", "Accuracy curve over the number of updates");
  std::string strategy_text;
  tune->add_option("config", config_path, "Tuning config JSON")->required()->check(
      CLI::ExistingFile);
  tune->add_option("--strategy", strategy_text, "shared-prefix or independent")
      ->check(CLI::IsMember({"shared-prefix", "independent"}, CLI::ignore_case));
  tune->callback([&] {
    run = [&](const auto& g) {
      std::optional<qham::capacity::TuneStrategy> strategy;
      if (!strategy_text.empty()) strategy = qham::cli::parse_tune_strategy(strategy_text);
      return qham::cli::tune_u(qham::cli::load_json(config_path), g, strategy);
    };
  });

  auto* complexity = app.add_subcommand("complexity", "Predicted vs transpiled gate counts");
  std::string n_text = "2:8", u_text = "1:4", f_text = "0:2";
  complexity->add_option("--n", n_text, "Network sizes, a or a:b");
  complexity->add_option("--u", u_text, "Update counts, a or a:b");
  complexity->add_option("--f", f_text, "RUS failures per update, a or a:b");
  complexity->callback([&] {
    run = [&](const auto& g) {
      qham::cli::ComplexityOptions o;
      o.n = qham::cli::parse_range(n_text);
      o.u = qham::cli::parse_range(u_text);
      o.f = qham::cli::parse_range(f_text);
      return qham::cli::complexity(o, g);
    };
  });

  auto* devices = app.add_subcommand("devices", "List the device noise registry");
  devices->callback([&] { run = [](const auto& g) { return qham::cli::devices(g); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsageError;
  } catch (const qham::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageError;
  }

  qham::cli::GlobalOptions g;
  if (*seed_opt) g.seed = seed;
  if (*shots_opt) g.shots = shots;
  if (*noise_opt) g.noise = noise;
  if (*devices_opt) g.devices = devices_path;
  g.threads = threads;

  try {
    const auto format = qham::cli::parse_format(format_text);
    return emit(run(g), format, out_path);
  } catch (const qham::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const qham::ContractError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsageError;
  } catch (const qham::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
