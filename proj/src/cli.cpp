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

#include "qham/cli.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include "qham/errors.hpp"
#include "qham/memory.hpp"
#include "qham/simulator.hpp"
#include "qham/transpile.hpp"

namespace qham::cli {
namespace {

using nlohmann::json;
using std::numbers::pi;

std::string lower(std::string_view text) {
  std::string out(text);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
  return out;
}

// Typed access to one JSON object of a config document; every error names
// the offending field.
class Object {
 public:
  Object(const json& doc, std::string path) : doc_(doc), path_(std::move(path)) {
    if (!doc_.is_object()) throw ConfigError(path_, "expected an object");
  }

  void allow(std::initializer_list<std::string_view> keys) const {
    for (const auto& [key, value] : doc_.items()) {
      if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
        throw ConfigError(at(key), "unknown field");
      }
    }
  }

  bool has(std::string_view key) const {
    auto it = doc_.find(key);
    return it != doc_.end() && !it->is_null();
  }

  std::string at(std::string_view key) const { return path_ + "/" + std::string(key); }

  const json& get(std::string_view key) const {
    if (!has(key)) throw ConfigError(at(key), "missing required field");
    return *doc_.find(key);
  }

  double number(std::string_view key, std::optional<double> fallback = {}) const {
    if (!has(key) && fallback) return *fallback;
    const json& v = get(key);
    if (!v.is_number()) throw ConfigError(at(key), "expected a number");
    return v.get<double>();
  }

  std::uint64_t integer(std::string_view key, std::optional<std::uint64_t> fallback = {}) const {
    if (!has(key) && fallback) return *fallback;
    return as_integer(get(key), at(key));
  }

  std::string string(std::string_view key, std::optional<std::string> fallback = {}) const {
    if (!has(key) && fallback) return *fallback;
    const json& v = get(key);
    if (!v.is_string()) throw ConfigError(at(key), "expected a string");
    return v.get<std::string>();
  }

  static std::uint64_t as_integer(const json& v, const std::string& path) {
    if (!v.is_number_integer() || (!v.is_number_unsigned() && v.get<std::int64_t>() < 0)) {
      throw ConfigError(path, "expected a non-negative integer");
    }
    return v.get<std::uint64_t>();
  }

 private:
  const json& doc_;
  std::string path_;
};

std::vector<double> numbers(const json& v, const std::string& path) {
  if (!v.is_array()) throw ConfigError(path, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number()) throw ConfigError(path + "/" + std::to_string(i), "expected a number");
    out.push_back(v[i].get<double>());
  }
  return out;
}

// An integer or an array of integers.
std::vector<unsigned> uint_list(const Object& obj, std::string_view key) {
  const json& v = obj.get(key);
  const std::string path = obj.at(key);
  std::vector<unsigned> out;
  if (v.is_array()) {
    if (v.empty()) throw ConfigError(path, "expected at least one value");
    for (std::size_t i = 0; i < v.size(); ++i) {
      out.push_back(static_cast<unsigned>(Object::as_integer(v[i], path + "/" + std::to_string(i))));
    }
  } else {
    out.push_back(static_cast<unsigned>(Object::as_integer(v, path)));
  }
  return out;
}

void check_schema(const Object& root) {
  const std::uint64_t version = root.integer("schema_version");
  if (version != static_cast<std::uint64_t>(kSchemaVersion)) {
    throw ConfigError(root.at("schema_version"),
                      "unsupported version " + std::to_string(version) + " (expected " +
                          std::to_string(kSchemaVersion) + ")");
  }
}

// Runs `body`, turning contract violations into config errors at `path`.
template <typename F>
auto with_path(const std::string& path, F&& body) {
  try {
    return body();
  } catch (const ConfigError&) {
    throw;
  } catch (const ContractError& e) {
    throw ConfigError(path, e.what());
  } catch (const DomainError& e) {
    throw ConfigError(path, e.what());
  }
}

std::string format_double(double value) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
  if (ec != std::errc{}) return std::to_string(value);
  return std::string(buf, end);
}

std::string csv_cell(const json& v) {
  if (v.is_null()) return "";
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_unsigned()) return std::to_string(v.get<std::uint64_t>());
  if (v.is_number_integer()) return std::to_string(v.get<std::int64_t>());
  if (v.is_number_float()) return format_double(v.get<double>());
  std::string text = v.is_string() ? v.get<std::string>() : v.dump();
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string quoted = "\"";
  for (char ch : text) {
    if (ch == '"') quoted += '"';
    quoted += ch;
  }
  return quoted + "\"";
}

std::string noise_name(const std::optional<noise::NoiseSpec>& spec) {
  return spec ? spec->device.name : "none";
}

std::uint64_t resolve_seed(const GlobalOptions& g, const Object& root) {
  return g.seed ? *g.seed : root.integer("seed", 0);
}

std::uint64_t resolve_shots(const GlobalOptions& g, const Object& root, std::uint64_t fallback) {
  const std::uint64_t shots = g.shots ? *g.shots : root.integer("shots", fallback);
  if (shots < 1) throw ConfigError(root.at("shots"), "must be >= 1");
  return shots;
}

std::optional<noise::NoiseSpec> noise_field(const GlobalOptions& g, const Object& root) {
  if (g.noise) return resolve_noise(*g.noise, g.devices);
  const std::string name = root.string("noise", "none");
  try {
    return resolve_noise(name, g.devices);
  } catch (const NotFoundError& e) {
    throw ConfigError(root.at("noise"), e.what());
  }
}

neuron::ActivationKind kind_field(const Object& root) {
  return with_path(root.at("kind"),
                   [&] { return neuron::parse_activation_kind(root.string("kind", "simplified")); });
}

memory::AncillaMode mode_field(const Object& root) {
  return with_path(root.at("mode"),
                   [&] { return memory::parse_ancilla_mode(root.string("mode", "reset")); });
}

json report_json(const capacity::CapacityReport& r) {
  json out = {{"n", r.n},
              {"m", r.m},
              {"alpha", r.alpha},
              {"rho", r.rho},
              {"rho_eff", r.rho_eff},
              {"u", r.u},
              {"mv_accuracy", r.mv_accuracy},
              {"density_accuracy", r.density_accuracy},
              {"trials", r.trials},
              {"shots", r.shots},
              {"noise_device", r.noise_device},
              {"failed_shots", r.failed_shots},
              {"degenerate_trials", r.degenerate_trials}};
  out["tuned_u"] = r.tuned_u ? json(*r.tuned_u) : json(nullptr);
  return out;
}

const std::vector<std::string> kReportColumns = {
    "n",      "m",      "alpha",        "rho",     "rho_eff",      "u",
    "mv_accuracy", "density_accuracy", "trials", "shots", "noise_device", "tuned_u",
    "failed_shots", "degenerate_trials"};

std::vector<json> report_row(const json& report) {
  std::vector<json> row;
  for (const auto& column : kReportColumns) row.push_back(report.at(column));
  return row;
}

// Fields shared by the capacity and tune-u configs.
struct CapacityFields {
  capacity::CapacityConfig base;
  json echo;
};

CapacityFields capacity_fields(const Object& root, const GlobalOptions& g) {
  CapacityFields f;
  auto& c = f.base;
  c.rho = root.number("rho", 0.2);
  c.trials = static_cast<unsigned>(root.integer("trials", 1000));
  c.shots = resolve_shots(g, root, 1024);
  c.seed = resolve_seed(g, root);
  c.noise = noise_field(g, root);
  c.mode = mode_field(root);
  c.kind = kind_field(root);
  c.max_attempts = static_cast<unsigned>(root.integer("max_attempts", neuron::kDefaultMaxAttempts));
  c.threads = std::max(1U, g.threads);
  f.echo = {{"rho", c.rho},
            {"trials", c.trials},
            {"shots", c.shots},
            {"seed", c.seed},
            {"noise", noise_name(c.noise)},
            {"mode", memory::to_string(c.mode)},
            {"kind", neuron::to_string(c.kind)},
            {"max_attempts", c.max_attempts}};
  return f;
}

std::vector<unsigned> u_range_field(const Object& root) {
  const json& v = root.get("u_range");
  const std::string path = root.at("u_range");
  if (!v.is_array() || v.size() != 2) throw ConfigError(path, "expected [first, last]");
  const auto lo = static_cast<unsigned>(Object::as_integer(v[0], path + "/0"));
  const auto hi = static_cast<unsigned>(Object::as_integer(v[1], path + "/1"));
  if (hi < lo) throw ConfigError(path, "empty range");
  std::vector<unsigned> us;
  for (unsigned u = lo; u <= hi; ++u) us.push_back(u);
  return us;
}

capacity::TuneStrategy strategy_field(const Object& root,
                                      std::optional<capacity::TuneStrategy> flag) {
  if (flag) return *flag;
  return with_path(root.at("strategy"),
                   [&] { return parse_tune_strategy(root.string("strategy", "shared-prefix")); });
}

}  // namespace

Format parse_format(std::string_view text) {
  const std::string t = lower(text);
  if (t == "json") return Format::Json;
  if (t == "csv") return Format::Csv;
  throw ContractError("unknown format '" + std::string(text) + "' (expected json or csv)");
}

capacity::TuneStrategy parse_tune_strategy(std::string_view text) {
  const std::string t = lower(text);
  if (t == "shared-prefix" || t == "shared_prefix" || t == "sharedprefix") {
    return capacity::TuneStrategy::SharedPrefix;
  }
  if (t == "independent") return capacity::TuneStrategy::Independent;
  throw ContractError("unknown strategy '" + std::string(text) +
                      "' (expected shared-prefix or independent)");
}

std::string to_string(capacity::TuneStrategy strategy) {
  return strategy == capacity::TuneStrategy::SharedPrefix ? "shared-prefix" : "independent";
}

json manifest(const CommandOutput& output, std::string_view timestamp) {
  return {{"subcommand", output.subcommand},
          {"config", output.config},
          {"seed", output.seed},
          {"tool_version", kToolVersion},
          {"timestamp", std::string(timestamp)}};
}

std::string render(const CommandOutput& output, Format format, std::string_view timestamp) {
  if (format == Format::Json) {
    json doc = {{"manifest", manifest(output, timestamp)}, {"data", output.data}};
    return doc.dump(2) + "\n";
  }
  std::ostringstream out;
  out << "# manifest: " << manifest(output, timestamp).dump() << "\n";
  for (std::size_t i = 0; i < output.table.columns.size(); ++i) {
    out << (i ? "," : "") << output.table.columns[i];
  }
  out << "\n";
  for (const auto& row : output.table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_cell(row[i]);
    out << "\n";
  }
  return out.str();
}

std::string data_payload(std::string_view rendered, Format format) {
  if (format == Format::Json) {
    return json::parse(rendered).at("data").dump();
  }
  std::string out;
  std::istringstream in{std::string(rendered)};
  for (std::string line; std::getline(in, line);) {
    if (!line.starts_with("#")) out += line + "\n";
  }
  return out;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::optional<noise::NoiseSpec> resolve_noise(std::string_view name,
                                              const std::optional<std::filesystem::path>& devices) {
  if (name.empty() || lower(name) == "none") return std::nullopt;
  noise::NoiseSpec spec;
  if (devices) {
    spec.device = noise::find_device(name, noise::load_devices(*devices));
  } else {
    spec.device = noise::find_device(name);
  }
  spec.validate();
  return spec;
}

json load_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path.string(), "cannot open file");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(path.string(), e.what());
  }
}

CommandOutput neuron_sweep(const SweepOptions& options, const GlobalOptions& g) {
  if (options.points < 2) throw ContractError("neuron-sweep needs points >= 2");
  const std::uint64_t shots = g.shots.value_or(100000);
  if (shots < 1) throw ContractError("neuron-sweep needs shots >= 1");
  const std::uint64_t seed = g.seed.value_or(0);
  const auto noise = resolve_noise(g.noise.value_or("none"), g.devices);
  const bool rus = options.kind == neuron::ActivationKind::RUS;

  CommandOutput out;
  out.subcommand = "neuron-sweep";
  out.seed = seed;
  out.config = {{"kind", neuron::to_string(options.kind)},
                {"points", options.points},
                {"shots", shots},
                {"seed", seed},
                {"noise", noise_name(noise)},
                {"max_attempts", options.max_attempts},
                {"gamma", pi / 4}};
  out.table.columns = {"phi",        "analytic",     "simulated_p1",
                       "sampled_p1", "sampled_sigma", "successful_shots"};

  // Qubit 0 is the control held in |1>, 1 the target, 2 the output ancilla
  // and 3 the RUS input qubit.
  const double gamma = pi / 4;
  json rows = json::array();
  for (unsigned k = 0; k < options.points; ++k) {
    const double phi = k + 1 == options.points ? pi / 2 : (pi / 2) * k / (options.points - 1);
    const double w = (phi - pi / 4) / gamma;
    const std::vector<double> row = {w, 0.0};
    const auto plan = neuron::NeuronPlan::for_row(
        1, row, gamma, 2, rus ? std::optional<Qubit>(3) : std::nullopt);

    Circuit prep(rus ? 4 : 3);
    prep.add(gates::X{0});
    Circuit circuit = prep;
    std::optional<neuron::RusRecord> record;
    if (rus) {
      record = neuron::append_rus_neuron(circuit, plan, options.max_attempts);
    } else {
      neuron::append_simplified_neuron(circuit, plan);
    }
    double exact = 0.0;
    if (rus) {
      exact = neuron::rus_attempt_exact(prep, plan).output_p1;
    } else {
      exact = simulate_unitary(circuit).prob_one(1);
    }
    const Cbit out_bit = circuit.allocate_cbits(1);
    circuit.add(gates::Measure{1, out_bit});

    std::uint64_t good = 0;
    std::uint64_t ones = 0;
    Rng rng(derive_seed(seed, k));
    execute(circuit, StateVector(circuit.qubit_count()), shots, rng, noise ? &*noise : nullptr,
            [&](const Leaf& leaf) {
              if (record && neuron::rus_failed(leaf.bits, *record)) return;
              good += leaf.shots;
              ones += leaf.bits[out_bit] * leaf.shots;
            });
    const double analytic = neuron::activation(options.kind, phi);
    const double sampled = good > 0 ? static_cast<double>(ones) / good : 0.0;
    const double sigma = good > 0 ? std::sqrt(analytic * (1.0 - analytic) / good) : 0.0;
    const double simulated = noise ? sampled : exact;
    rows.push_back({{"phi", phi},
                    {"analytic", analytic},
                    {"simulated_p1", simulated},
                    {"sampled_p1", sampled},
                    {"sampled_sigma", sigma},
                    {"successful_shots", good}});
    out.table.rows.push_back({phi, analytic, simulated, sampled, sigma, good});
  }
  out.data = {{"exact", !noise.has_value()}, {"points", rows}};
  return out;
}

CommandOutput recall(const json& config, const GlobalOptions& g) {
  const Object root(config, "");
  root.allow({"schema_version", "label", "attractors", "weights", "probe", "schedule", "target",
              "shots", "seed", "noise", "kind", "max_attempts", "mode"});
  check_schema(root);

  std::vector<memory::Pattern> attractors;
  if (root.has("attractors")) {
    const json& list = root.get("attractors");
    if (!list.is_array() || list.empty()) {
      throw ConfigError(root.at("attractors"), "expected a non-empty array of patterns");
    }
    for (std::size_t i = 0; i < list.size(); ++i) {
      const std::string path = root.at("attractors") + "/" + std::to_string(i);
      memory::Pattern p;
      for (double x : numbers(list[i], path)) p.push_back(static_cast<int>(x));
      with_path(path, [&] {
        memory::validate_pattern(p);
        if (!attractors.empty() && p.size() != attractors.front().size()) {
          throw ContractError("pattern length differs from the first attractor");
        }
      });
      attractors.push_back(std::move(p));
    }
  }

  std::optional<memory::WeightMatrix> weights;
  if (root.has("weights")) {
    const json& rows = root.get("weights");
    if (!rows.is_array() || rows.empty()) throw ConfigError(root.at("weights"), "expected a matrix");
    const auto n = static_cast<unsigned>(rows.size());
    std::vector<double> values;
    for (unsigned i = 0; i < n; ++i) {
      const std::string path = root.at("weights") + "/" + std::to_string(i);
      const auto r = numbers(rows[i], path);
      if (r.size() != n) throw ConfigError(path, "expected " + std::to_string(n) + " entries");
      values.insert(values.end(), r.begin(), r.end());
    }
    weights = with_path(root.at("weights"), [&] { return memory::WeightMatrix(n, values); });
  } else if (!attractors.empty()) {
    weights = memory::hebbian(attractors);
  } else {
    throw ConfigError(root.at("attractors"), "either attractors or weights is required");
  }
  const unsigned n = weights->size();

  const memory::ProbeState probe = numbers(root.get("probe"), root.at("probe"));
  with_path(root.at("probe"), [&] {
    memory::validate_probe(probe);
    if (probe.size() != n) throw ContractError("probe length must be " + std::to_string(n));
  });

  const std::uint64_t seed = resolve_seed(g, root);
  const std::uint64_t shots = resolve_shots(g, root, 1024);
  const auto noise = noise_field(g, root);
  const auto kind = kind_field(root);
  const auto mode = mode_field(root);
  const auto max_attempts =
      static_cast<unsigned>(root.integer("max_attempts", neuron::kDefaultMaxAttempts));

  memory::UpdateSchedule schedule;
  schedule.mode = mode;
  {
    const Object s(root.get("schedule"), root.at("schedule"));
    s.allow({"targets", "random"});
    if (s.has("targets") == s.has("random")) {
      throw ConfigError(root.at("schedule"), "give exactly one of targets or random");
    }
    if (s.has("targets")) {
      for (const unsigned t : uint_list(s, "targets")) schedule.targets.push_back(t);
    } else {
      Rng rng(derive_seed(seed, 1));
      schedule = memory::UpdateSchedule::random(n, static_cast<unsigned>(s.integer("random")), rng,
                                                mode);
    }
    with_path(root.at("schedule"), [&] { schedule.validate(n); });
  }

  std::optional<std::size_t> target;
  if (root.has("target")) {
    target = root.integer("target");
    if (*target >= attractors.size()) {
      throw ConfigError(root.at("target"), "attractor index out of range");
    }
  }

  memory::RecallOptions ro;
  ro.shots = shots;
  ro.seed = seed;
  ro.noise = noise ? &*noise : nullptr;
  ro.kind = kind;
  ro.max_attempts = max_attempts;
  const auto result = memory::run_recall(probe, *weights, schedule, ro);

  CommandOutput out;
  out.subcommand = "recall";
  out.seed = seed;
  out.config = config;
  out.config["seed"] = seed;
  out.config["shots"] = shots;
  out.config["noise"] = noise_name(noise);
  out.config["kind"] = neuron::to_string(kind);
  out.config["mode"] = memory::to_string(mode);
  out.config["max_attempts"] = max_attempts;

  const auto side = static_cast<unsigned>(std::lround(std::sqrt(static_cast<double>(n))));
  const bool square = side * side == n;
  json grid = nullptr;
  if (square) {
    grid = json::array();
    for (unsigned r = 0; r < side; ++r) {
      json line = json::array();
      for (unsigned c = 0; c < side; ++c) line.push_back(result.per_qubit_p1[r * side + c]);
      grid.push_back(line);
    }
  }
  json counts = json::object();
  for (const auto& [bits, count] : result.counts) counts[bits] = count;

  out.data = {{"n", n},
              {"qubits", result.qubits},
              {"schedule", schedule.targets},
              {"per_qubit_p1", result.per_qubit_p1},
              {"exact_marginals", result.exact_marginals},
              {"grid", grid},
              {"majority_vote", to_bitstring(result.majority_vote)},
              {"counts", counts},
              {"shots", result.shots},
              {"failed_shots", result.failed_shots},
              {"mean_failures", result.mean_failures}};
  if (target) {
    const auto& pattern = attractors[*target];
    out.data["target"] = to_bitstring(memory::to_bits(pattern));
    out.data["density_accuracy"] = memory::density_accuracy(result.per_qubit_p1, pattern);
    out.data["recalled"] = result.majority_vote == memory::to_bits(pattern);
  }

  out.table.columns = {"qubit", "row", "col", "p1", "vote"};
  for (unsigned q = 0; q < n; ++q) {
    out.table.rows.push_back({q, square ? json(q / side) : json(nullptr),
                              square ? json(q % side) : json(nullptr), result.per_qubit_p1[q],
                              result.majority_vote[q]});
  }
  return out;
}

CommandOutput capacity(const json& config, const GlobalOptions& g) {
  const Object root(config, "");
  root.allow({"schema_version", "label", "n", "m", "rho", "u", "u_range", "trials", "shots",
              "seed", "noise", "mode", "kind", "max_attempts", "strategy"});
  check_schema(root);
  if (root.has("u") == root.has("u_range")) {
    throw ConfigError(root.at("u"), "give exactly one of u or u_range");
  }
  const auto ns = uint_list(root, "n");
  const auto ms = uint_list(root, "m");
  auto fields = capacity_fields(root, g);
  const bool tuning = root.has("u_range");
  std::vector<unsigned> us;
  std::optional<capacity::TuneStrategy> strategy;
  if (tuning) {
    us = u_range_field(root);
    strategy = strategy_field(root, std::nullopt);
  }

  CommandOutput out;
  out.subcommand = "capacity";
  out.seed = fields.base.seed;
  out.config = fields.echo;
  out.config["n"] = ns;
  out.config["m"] = ms;
  if (tuning) {
    out.config["u_range"] = {us.front(), us.back()};
    out.config["strategy"] = to_string(*strategy);
  } else {
    out.config["u"] = root.integer("u");
  }

  json reports = json::array();
  out.table.columns = kReportColumns;
  for (const unsigned n : ns) {
    for (const unsigned m : ms) {
      auto c = fields.base;
      c.n = n;
      c.m = m;
      capacity::CapacityReport report;
      if (tuning) {
        c.u = us.back();
        with_path("", [&] { c.validate(); });
        const auto tuned = capacity::tune_u(c, us, *strategy);
        report = *std::find_if(tuned.curve.begin(), tuned.curve.end(),
                               [&](const auto& r) { return r.u == tuned.best_u; });
      } else {
        c.u = static_cast<unsigned>(root.integer("u"));
        with_path("", [&] { c.validate(); });
        report = capacity::run_capacity(c);
      }
      const json r = report_json(report);
      reports.push_back(r);
      out.table.rows.push_back(report_row(r));
    }
  }
  out.data = {{"reports", reports}};
  return out;
}

CommandOutput tune_u(const json& config, const GlobalOptions& g,
                     std::optional<capacity::TuneStrategy> strategy_flag) {
  const Object root(config, "");
  root.allow({"schema_version", "label", "n", "m", "rho", "u_range", "trials", "shots", "seed",
              "noise", "mode", "kind", "max_attempts", "strategy"});
  check_schema(root);
  auto fields = capacity_fields(root, g);
  auto& c = fields.base;
  c.n = static_cast<unsigned>(root.integer("n"));
  c.m = static_cast<unsigned>(root.integer("m"));
  const auto us = u_range_field(root);
  const auto strategy = strategy_field(root, strategy_flag);
  c.u = us.back();
  with_path("", [&] { c.validate(); });

  const auto result = capacity::tune_u(c, us, strategy);

  CommandOutput out;
  out.subcommand = "tune-u";
  out.seed = c.seed;
  out.config = fields.echo;
  out.config["n"] = c.n;
  out.config["m"] = c.m;
  out.config["u_range"] = {us.front(), us.back()};
  out.config["strategy"] = to_string(strategy);
  out.table.columns = kReportColumns;
  json curve = json::array();
  for (const auto& report : result.curve) {
    const json r = report_json(report);
    curve.push_back(r);
    out.table.rows.push_back(report_row(r));
  }
  out.data = {{"best_u", result.best_u}, {"curve", curve}};
  return out;
}

Range parse_range(std::string_view text) {
  auto number = [&](std::string_view part) {
    unsigned value = 0;
    auto [end, ec] = std::from_chars(part.data(), part.data() + part.size(), value);
    if (part.empty() || ec != std::errc{} || end != part.data() + part.size()) {
      throw ContractError("malformed range '" + std::string(text) + "' (expected a or a:b)");
    }
    return value;
  };
  const auto colon = text.find(':');
  Range r;
  if (colon == std::string_view::npos) {
    r.lo = r.hi = number(text);
  } else {
    r.lo = number(text.substr(0, colon));
    r.hi = number(text.substr(colon + 1));
  }
  if (r.hi < r.lo) throw ContractError("empty range '" + std::string(text) + "'");
  return r;
}

CommandOutput complexity(const ComplexityOptions& o, const GlobalOptions& g) {
  if (o.n.hi < o.n.lo || o.u.hi < o.u.lo || o.f.hi < o.f.lo) {
    throw ContractError("complexity ranges must be non-empty");
  }
  if (o.n.lo < 2) throw ContractError("complexity needs n >= 2");
  if (o.u.lo < 1) throw ContractError("complexity needs u >= 1");

  CommandOutput out;
  out.subcommand = "complexity";
  out.seed = g.seed.value_or(0);
  out.config = {{"n", {o.n.lo, o.n.hi}}, {"u", {o.u.lo, o.u.hi}}, {"f", {o.f.lo, o.f.hi}}};
  out.table.columns = {"design",         "n",
                       "u",              "f",
                       "predicted_total", "predicted_single",
                       "predicted_cnot", "measured_total",
                       "measured_single", "measured_cnot",
                       "full_total",     "full_single",
                       "full_cnot",      "qubits_fresh",
                       "qubits_reset",   "match"};
  json rows = json::array();

  auto emit = [&](const char* design, unsigned n, unsigned u, std::optional<unsigned> f,
                  const transpile::GateCounts& predicted, const transpile::GateCounts& measured,
                  const transpile::GateCounts& full, neuron::ActivationKind kind) {
    const bool match = predicted == measured;
    const unsigned fresh = memory::qubit_overhead(n, u, memory::AncillaMode::FreshAncilla, kind);
    const unsigned reset = memory::qubit_overhead(n, u, memory::AncillaMode::ResetReuse, kind);
    const json fj = f ? json(*f) : json(nullptr);
    rows.push_back({{"design", design},
                    {"n", n},
                    {"u", u},
                    {"f", fj},
                    {"predicted", {predicted.total, predicted.single_qubit, predicted.cnot}},
                    {"measured", {measured.total, measured.single_qubit, measured.cnot}},
                    {"full", {full.total, full.single_qubit, full.cnot}},
                    {"qubits_fresh", fresh},
                    {"qubits_reset", reset},
                    {"match", match}});
    out.table.rows.push_back({design, n, u, fj, predicted.total, predicted.single_qubit,
                              predicted.cnot, measured.total, measured.single_qubit,
                              measured.cnot, full.total, full.single_qubit, full.cnot, fresh,
                              reset, match});
    if (!match) {
      out.exit_code = 1;
      std::ostringstream msg;
      msg << "count mismatch: " << design << " n=" << n << " u=" << u;
      if (f) msg << " f=" << *f;
      msg << " predicted (" << predicted.total << ", " << predicted.single_qubit << ", "
          << predicted.cnot << ") measured (" << measured.total << ", " << measured.single_qubit
          << ", " << measured.cnot << ")";
      out.diagnostics.push_back(msg.str());
    }
  };

  for (unsigned n = o.n.lo; n <= o.n.hi; ++n) {
    const memory::Pattern ones(n, 1);
    const std::vector<memory::Pattern> patterns = {ones};
    const auto w = memory::hebbian(patterns);
    const double gamma = neuron::gamma(w.w_max(), n);
    const memory::ProbeState probe(n, 1.0);
    for (unsigned u = o.u.lo; u <= o.u.hi; ++u) {
      memory::UpdateSchedule schedule;
      schedule.mode = memory::AncillaMode::ResetReuse;
      for (unsigned k = 0; k < u; ++k) schedule.targets.push_back(k % n);

      memory::RecallBuildOptions updates_only;
      updates_only.encode = false;
      updates_only.measure = false;
      const auto measured = transpile::transpile_circuit(
          memory::build_recall_circuit(probe, w, schedule, updates_only).circuit).counts;
      const auto full = transpile::transpile_circuit(
          memory::build_recall_circuit(probe, w, schedule).circuit).counts;
      emit("simplified", n, u, std::nullopt, transpile::predicted_counts_simplified(n, u),
           measured, full, neuron::ActivationKind::Simplified);

      for (unsigned f = o.f.lo; f <= o.f.hi; ++f) {
        Circuit rus(n + 2);
        for (unsigned k = 0; k < u; ++k) {
          if (k > 0) {
            rus.add(gates::Reset{n});
            rus.add(gates::Reset{n + 1});
          }
          const Qubit t = schedule.targets[k];
          neuron::append_rus_neuron_unrolled(
              rus, neuron::NeuronPlan::for_row(t, w.row(t), gamma, n, n + 1), f);
        }
        Circuit with_encoding = memory::encode(probe);
        Circuit wide(n + 2);
        wide.append(with_encoding);
        const auto encoding = transpile::transpile_circuit(wide).counts;
        const auto rus_counts = transpile::transpile_circuit(rus).counts;
        auto rus_full = rus_counts;
        rus_full += encoding;
        emit("rus", n, u, f, transpile::predicted_counts_rus(n, u, f), rus_counts, rus_full,
             neuron::ActivationKind::RUS);
      }
    }
  }
  out.data = {{"rows", rows}, {"all_match", out.exit_code == 0}};
  return out;
}

CommandOutput devices(const GlobalOptions& g) {
  const auto registry = g.devices ? noise::load_devices(*g.devices) : noise::device_registry();
  const noise::GateDurations durations;
  CommandOutput out;
  out.subcommand = "devices";
  out.seed = g.seed.value_or(0);
  out.config = {{"source", g.devices ? g.devices->string() : std::string("builtin")},
                {"single_qubit_ns", durations.single_qubit_ns},
                {"cnot_ns", durations.cnot_ns},
                {"readout_ns", durations.readout_ns}};
  out.table.columns = {"name",   "qubits",         "processor",  "t1_us",      "t2_us",
                       "readout_err", "sx_err",    "cnot_err",   "quantum_volume",
                       "p_amp_1q", "p_phase_1q",   "p_amp_cnot"};
  json list = json::array();
  for (const auto& d : registry) {
    const json cnot = d.cnot_err ? json(*d.cnot_err) : json(nullptr);
    const double amp = noise::amplitude_damping_prob(durations.single_qubit_ns, d.t1_us);
    const double phase = noise::phase_damping_prob(durations.single_qubit_ns, d.t1_us, d.t2_us);
    const double amp_cx = noise::amplitude_damping_prob(durations.cnot_ns, d.t1_us);
    list.push_back({{"name", d.name},
                    {"qubits", d.qubits},
                    {"processor", d.processor},
                    {"t1_us", d.t1_us},
                    {"t2_us", d.t2_us},
                    {"readout_err", d.readout_err},
                    {"sx_err", d.sx_err},
                    {"cnot_err", cnot},
                    {"quantum_volume", d.quantum_volume},
                    {"p_amp_1q", amp},
                    {"p_phase_1q", phase},
                    {"p_amp_cnot", amp_cx}});
    out.table.rows.push_back({d.name, d.qubits, d.processor, d.t1_us, d.t2_us, d.readout_err,
                              d.sx_err, cnot, d.quantum_volume, amp, phase, amp_cx});
  }
  out.data = {{"devices", list}};
  return out;
}

}  // namespace qham::cli
