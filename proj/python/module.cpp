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

// qham._core: Python bindings. Commands exchange JSON text; the package
// wrapper turns it into Python objects.

#include <optional>
#include <string>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qham/capacity.hpp"
#include "qham/cli.hpp"
#include "qham/errors.hpp"
#include "qham/memory.hpp"
#include "qham/neuron.hpp"
#include "qham/transpile.hpp"

namespace py = pybind11;

namespace {

using namespace qham;

py::dict counts_dict(const transpile::GateCounts& c) {
  py::dict d;
  d["total"] = c.total;
  d["single_qubit"] = c.single_qubit;
  d["cnot"] = c.cnot;
  return d;
}

cli::GlobalOptions global_options(std::optional<std::uint64_t> seed,
                                  std::optional<std::uint64_t> shots,
                                  std::optional<std::string> noise, unsigned threads) {
  cli::GlobalOptions g;
  g.seed = seed;
  g.shots = shots;
  g.noise = std::move(noise);
  g.threads = threads;
  return g;
}

// The full {"manifest", "data"} document, plus "exit_code" and "diagnostics".
std::string document(const cli::CommandOutput& out) {
  auto doc = nlohmann::json::parse(cli::render(out, cli::Format::Json, cli::utc_timestamp()));
  doc["exit_code"] = out.exit_code;
  doc["diagnostics"] = out.diagnostics;
  return doc.dump();
}

template <typename Fn>
std::string run(Fn&& fn) {
  cli::CommandOutput out;
  {
    py::gil_scoped_release release;
    out = fn();
  }
  return document(out);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Quantum Hopfield associative memory toolkit";
  m.attr("__version__") = cli::kToolVersion;

  // Translators run most recent first, so the base class goes first.
  const auto base = py::register_exception<Error>(m, "QhamError", PyExc_RuntimeError);
  py::register_exception<DomainError>(m, "DomainError", base);
  py::register_exception<SizeError>(m, "SizeError", base);
  py::register_exception<ContractError>(m, "ContractError", base);
  py::register_exception<ConfigError>(m, "ConfigError", base);

  m.def("gamma", &neuron::gamma, py::arg("w_max"), py::arg("n"));
  m.def("beta", [](const std::vector<double>& row, double g) { return neuron::beta(row, g); },
        py::arg("weights_row"), py::arg("gamma"));
  m.def("phi", &neuron::phi, py::arg("theta"), py::arg("gamma"));
  m.def("activation",
        [](const std::string& kind, double phi) {
          return neuron::activation(neuron::parse_activation_kind(kind), phi);
        },
        py::arg("kind"), py::arg("phi"));

  m.def("hebbian",
        [](const std::vector<memory::Pattern>& patterns) {
          const auto w = memory::hebbian(patterns);
          std::vector<std::vector<double>> rows;
          for (unsigned i = 0; i < w.size(); ++i) {
            rows.emplace_back(w.row(i).begin(), w.row(i).end());
          }
          return rows;
        },
        py::arg("patterns"));
  m.def("density_accuracy",
        [](const std::vector<double>& p1, const memory::Pattern& target) {
          return memory::density_accuracy(p1, target);
        },
        py::arg("per_qubit_p1"), py::arg("target"));
  m.def("qubit_overhead",
        [](unsigned n, unsigned u, const std::string& mode, const std::string& kind) {
          return memory::qubit_overhead(n, u, memory::parse_ancilla_mode(mode),
                                        neuron::parse_activation_kind(kind));
        },
        py::arg("n"), py::arg("u"), py::arg("mode") = "reset", py::arg("kind") = "simplified");

  m.def("classical_capacity", &capacity::classical_capacity, py::arg("n"), py::arg("rho"));
  m.def("max_flips", &capacity::max_flips, py::arg("n"), py::arg("rho"));
  m.def("rho_eff", &capacity::rho_eff, py::arg("flips"), py::arg("n"));

  m.def("predicted_counts_simplified",
        [](unsigned n, unsigned u) { return counts_dict(transpile::predicted_counts_simplified(n, u)); },
        py::arg("n"), py::arg("u"));
  m.def("predicted_counts_rus",
        [](unsigned n, unsigned u, unsigned f) {
          return counts_dict(transpile::predicted_counts_rus(n, u, f));
        },
        py::arg("n"), py::arg("u"), py::arg("f"));

  m.def("neuron_sweep_json",
        [](const std::string& kind, unsigned points, std::optional<std::uint64_t> seed,
           std::optional<std::uint64_t> shots, std::optional<std::string> noise,
           unsigned threads) {
          cli::SweepOptions o;
          o.kind = neuron::parse_activation_kind(kind);
          o.points = points;
          const auto g = global_options(seed, shots, std::move(noise), threads);
          return run([&] { return cli::neuron_sweep(o, g); });
        },
        py::arg("kind") = "simplified", py::arg("points") = 33U, py::kw_only(),
        py::arg("seed") = py::none(), py::arg("shots") = py::none(),
        py::arg("noise") = py::none(), py::arg("threads") = 1U);

  const auto config_command = [&m](const char* name, auto command) {
    m.def(name,
          [command](const std::string& config, std::optional<std::uint64_t> seed,
                    std::optional<std::uint64_t> shots, std::optional<std::string> noise,
                    unsigned threads) {
            const auto doc = nlohmann::json::parse(config);
            const auto g = global_options(seed, shots, std::move(noise), threads);
            return run([&] { return command(doc, g); });
          },
          py::arg("config"), py::kw_only(), py::arg("seed") = py::none(),
          py::arg("shots") = py::none(), py::arg("noise") = py::none(),
          py::arg("threads") = 1U);
  };
  config_command("recall_json", [](const nlohmann::json& c, const cli::GlobalOptions& g) {
    return cli::recall(c, g);
  });
  config_command("capacity_json", [](const nlohmann::json& c, const cli::GlobalOptions& g) {
    return cli::capacity(c, g);
  });
  config_command("tune_u_json", [](const nlohmann::json& c, const cli::GlobalOptions& g) {
    return cli::tune_u(c, g);
  });

  m.def("complexity_json",
        [](const std::string& n, const std::string& u, const std::string& f) {
          const cli::ComplexityOptions o{cli::parse_range(n), cli::parse_range(u),
                                         cli::parse_range(f)};
          return run([&] { return cli::complexity(o, cli::GlobalOptions{}); });
        },
        py::arg("n") = "2:8", py::arg("u") = "1:4", py::arg("f") = "0:2");
  m.def("devices_json", [] { return run([] { return cli::devices(cli::GlobalOptions{}); }); });
}
