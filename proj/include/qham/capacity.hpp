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
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qham/memory.hpp"
#include "qham/neuron.hpp"
#include "qham/noise.hpp"
#include "qham/rng.hpp"

namespace qham::capacity {

/// ((1 - 2 rho)^2 / 2) n / ln n. Throws DomainError for n < 2 or rho outside [0, 0.5).
double classical_capacity(unsigned n, double rho);

/// Largest integer strictly below rho * n, at least 0.
unsigned max_flips(unsigned n, double rho);

/// m patterns of n iid uniform +/-1 entries.
std::vector<memory::Pattern> gen_patterns(unsigned m, unsigned n, Rng& rng);

struct Probe {
  memory::ProbeState state;
  unsigned flips = 0;
};

/// Flips exactly max_flips(n, rho) distinct, uniformly chosen entries.
Probe gen_probe(const memory::Pattern& pattern, double rho, Rng& rng);

/// flips / n.
double rho_eff(unsigned flips, unsigned n);

struct CapacityConfig {
  unsigned n = 4;
  unsigned m = 1;
  double rho = 0.2;
  unsigned u = 1;
  unsigned trials = 1000;
  std::uint64_t shots = 1024;
  std::optional<noise::NoiseSpec> noise;
  std::uint64_t seed = 0;
  memory::AncillaMode mode = memory::AncillaMode::ResetReuse;
  neuron::ActivationKind kind = neuron::ActivationKind::Simplified;
  unsigned max_attempts = neuron::kDefaultMaxAttempts;
  unsigned threads = 1;
  unsigned max_qubits = kDefaultMaxQubits;

  /// Throws ContractError / DomainError on bad fields and SizeError when
  /// the register for `u` updates exceeds max_qubits.
  void validate() const;
};

struct CapacityReport {
  unsigned n = 0;
  unsigned m = 0;
  double alpha = 0.0;  // m / n
  double rho = 0.0;
  double rho_eff = 0.0;  // mean realized flip fraction
  unsigned u = 0;
  double mv_accuracy = 0.0;
  double density_accuracy = 0.0;
  unsigned trials = 0;
  std::uint64_t shots = 0;
  std::string noise_device = "none";
  std::uint64_t failed_shots = 0;   // RUS shots out of attempts, all trials
  unsigned degenerate_trials = 0;   // all-zero weight matrices, run bias-only
  std::optional<unsigned> tuned_u;  // set on the best entry of a tuning curve
};

/// Monte Carlo recall benchmark. Trial t draws from the substream
/// derive_seed(seed, t): m patterns, Hebbian weights, a probe around a
/// uniformly chosen pattern, u random targets and the shot seed. The report
/// does not depend on `threads`.
CapacityReport run_capacity(const CapacityConfig& config);

enum class TuneStrategy {
  /// One run_capacity per u.
  Independent,
  /// One run per trial with max(u_range) updates, read out after every
  /// prefix of the schedule. Each u sees the same distribution as an
  /// independent run; the curve shares random numbers across u.
  SharedPrefix,
};

struct TuneResult {
  unsigned best_u = 0;
  std::vector<CapacityReport> curve;
};

/// Majority-vote accuracy for every u in `u_range`; best_u is the argmax,
/// smallest u on ties. `base.u` is ignored.
TuneResult tune_u(const CapacityConfig& base, std::span<const unsigned> u_range,
                  TuneStrategy strategy = TuneStrategy::SharedPrefix);

}  // namespace qham::capacity
