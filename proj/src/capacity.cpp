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

#include "qham/capacity.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <map>
#include <numeric>
#include <thread>

#include "qham/errors.hpp"
#include "qham/simulator.hpp"

namespace qham::capacity {

using memory::Pattern;

namespace {

void check_rho(double rho) {
  if (!(rho >= 0.0 && rho < 0.5)) throw DomainError("rho must lie in [0, 0.5)");
}

}  // namespace

double classical_capacity(unsigned n, double rho) {
  if (n < 2) throw DomainError("classical capacity needs n >= 2");
  check_rho(rho);
  const double a = 1.0 - 2.0 * rho;
  return a * a / 2.0 * n / std::log(static_cast<double>(n));
}

unsigned max_flips(unsigned n, double rho) {
  check_rho(rho);
  // strictly below rho * n; the slack keeps exact products like 0.2 * 5 on
  // the right side of the boundary
  const double k = std::ceil(rho * n - 1e-9) - 1.0;
  return k > 0.0 ? static_cast<unsigned>(k) : 0U;
}

std::vector<Pattern> gen_patterns(unsigned m, unsigned n, Rng& rng) {
  if (m < 1 || n < 1) throw ContractError("gen_patterns needs m >= 1 and n >= 1");
  std::vector<Pattern> out(m, Pattern(n));
  for (auto& p : out) {
    for (auto& e : p) e = rng.below(2) == 1 ? 1 : -1;
  }
  return out;
}

Probe gen_probe(const Pattern& pattern, double rho, Rng& rng) {
  memory::validate_pattern(pattern);
  const auto n = static_cast<unsigned>(pattern.size());
  const unsigned k = max_flips(n, rho);
  std::vector<unsigned> order(n);
  std::iota(order.begin(), order.end(), 0U);
  for (unsigned i = 0; i < k; ++i) {  // partial Fisher-Yates
    std::swap(order[i], order[i + rng.below(n - i)]);
  }
  Probe probe{memory::to_probe(pattern), k};
  for (unsigned i = 0; i < k; ++i) probe.state[order[i]] = -probe.state[order[i]];
  return probe;
}

double rho_eff(unsigned flips, unsigned n) {
  if (n < 1 || flips > n) throw DomainError("rho_eff needs 0 <= flips <= n, n >= 1");
  return static_cast<double>(flips) / n;
}

void CapacityConfig::validate() const {
  if (n < 1 || m < 1) throw ContractError("capacity config needs n >= 1 and m >= 1");
  if (trials < 1 || shots < 1) throw ContractError("capacity config needs trials, shots >= 1");
  if (threads < 1) throw ContractError("capacity config needs threads >= 1");
  check_rho(rho);
  if (noise) noise->validate();
  const unsigned width = std::max(n, memory::qubit_overhead(n, u, mode, kind));
  if (width > max_qubits) {
    throw SizeError("capacity run needs " + std::to_string(width) + " qubits, cap is " +
                    std::to_string(max_qubits));
  }
}

namespace {

struct TrialDraw {
  std::vector<Pattern> patterns;
  memory::WeightMatrix w;
  unsigned stored = 0;
  Probe probe;
  memory::UpdateSchedule schedule;
  std::uint64_t shot_seed = 0;
  std::optional<double> gamma;  // only for all-zero weights
};

TrialDraw draw_trial(const CapacityConfig& c, unsigned u, unsigned trial) {
  Rng rng(derive_seed(c.seed, trial));
  auto patterns = gen_patterns(c.m, c.n, rng);
  auto w = memory::hebbian(patterns);
  const auto stored = static_cast<unsigned>(rng.below(c.m));
  auto probe = gen_probe(patterns[stored], c.rho, rng);
  auto schedule = memory::UpdateSchedule::random(c.n, u, rng, c.mode);
  const std::uint64_t shot_seed = rng();
  std::optional<double> g;
  // Nothing to normalize: every rotation is the bias pi/4, so any gamma works.
  if (u > 0 && w.w_max() == 0.0) g = neuron::gamma(1.0, c.n);
  return {std::move(patterns), std::move(w), stored, std::move(probe), std::move(schedule),
          shot_seed, g};
}

struct Score {
  bool correct = false;
  double density = 0.0;
  unsigned flips = 0;
  std::uint64_t failed_shots = 0;
  bool degenerate = false;
};

Score score(const TrialDraw& d, std::span<const std::uint8_t> vote, std::span<const double> p1,
            std::uint64_t failed) {
  const Pattern& target = d.patterns[d.stored];
  const auto want = memory::to_bits(target);
  Score s;
  s.correct = std::equal(vote.begin(), vote.end(), want.begin(), want.end());
  s.density = memory::density_accuracy(p1, target);
  s.flips = d.probe.flips;
  s.failed_shots = failed;
  s.degenerate = d.gamma.has_value();
  return s;
}

// Runs body(t) for t in [0, count) on `threads` workers. Results are written
// by index, so the caller's reduction order never depends on scheduling.
template <typename Body>
void parallel_trials(unsigned count, unsigned threads, Body&& body) {
  threads = std::max(1U, std::min(threads, count));
  if (threads == 1) {
    for (unsigned t = 0; t < count; ++t) body(t);
    return;
  }
  std::vector<std::exception_ptr> errors(threads);
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < threads; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (unsigned t = w; t < count; t += threads) body(t);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

CapacityReport summarize(const CapacityConfig& c, unsigned u, std::span<const Score> scores) {
  CapacityReport r;
  r.n = c.n;
  r.m = c.m;
  r.alpha = static_cast<double>(c.m) / c.n;
  r.rho = c.rho;
  r.u = u;
  r.trials = c.trials;
  r.shots = c.shots;
  if (c.noise) r.noise_device = c.noise->device.name;
  unsigned correct = 0;
  double density = 0.0, flips = 0.0;
  for (const auto& s : scores) {
    correct += s.correct ? 1 : 0;
    density += s.density;
    flips += s.flips;
    r.failed_shots += s.failed_shots;
    r.degenerate_trials += s.degenerate ? 1 : 0;
  }
  const double t = static_cast<double>(scores.size());
  r.mv_accuracy = correct / t;
  r.density_accuracy = density / t;
  r.rho_eff = flips / t / c.n;
  return r;
}

memory::RecallOptions recall_options(const CapacityConfig& c, const TrialDraw& d) {
  memory::RecallOptions o;
  o.shots = c.shots;
  o.seed = d.shot_seed;
  o.noise = c.noise ? &*c.noise : nullptr;
  o.kind = c.kind;
  o.max_attempts = c.max_attempts;
  o.max_qubits = c.max_qubits;
  o.gamma = d.gamma;
  return o;
}

}  // namespace

CapacityReport run_capacity(const CapacityConfig& config) {
  config.validate();
  std::vector<Score> scores(config.trials);
  parallel_trials(config.trials, config.threads, [&](unsigned t) {
    const TrialDraw d = draw_trial(config, config.u, t);
    const auto r = memory::run_recall(d.probe.state, d.w, d.schedule, recall_options(config, d));
    scores[t] = score(d, r.majority_vote, r.per_qubit_p1, r.failed_shots);
  });
  return summarize(config, config.u, scores);
}

namespace {

// All prefixes of one trial's schedule, read out at their checkpoints.
std::vector<Score> shared_prefix_trial(const CapacityConfig& c, std::span<const unsigned> u_range,
                                       unsigned u_max, unsigned trial) {
  const TrialDraw d = draw_trial(c, u_max, trial);
  memory::RecallBuildOptions build;
  build.kind = c.kind;
  build.max_attempts = c.max_attempts;
  build.measure = false;
  build.gamma = d.gamma;
  const auto rc = memory::build_recall_circuit(d.probe.state, d.w, d.schedule, build);
  const unsigned width = rc.circuit.qubit_count();
  const noise::NoiseSpec* noise = c.noise ? &*c.noise : nullptr;

  Circuit readout(width, c.n);
  for (Qubit q = 0; q < c.n; ++q) readout.add(gates::Measure{q, q});

  const std::size_t k = u_range.size();
  std::vector<std::vector<std::uint64_t>> ones(k, std::vector<std::uint64_t>(c.n, 0));
  std::vector<std::uint64_t> good(k, 0), failed(k, 0);
  std::map<std::size_t, std::vector<std::size_t>> slots;  // checkpoint -> u_range positions
  Checkpoints cp;
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t at = rc.after_update[u_range[i]];
    if (slots[at].empty()) cp.at.push_back(at);
    slots[at].push_back(i);
  }
  Rng rng(d.shot_seed);
  cp.visit = [&](std::size_t at, const Leaf& leaf) {
    for (std::size_t i : slots[at]) {
      bool lost = false;
      for (unsigned j = 0; j < u_range[i] && j < rc.rus.size(); ++j) {
        lost = lost || neuron::rus_failed(leaf.bits, rc.rus[j]);
      }
      if (lost) {
        failed[i] += leaf.shots;
        continue;
      }
      good[i] += leaf.shots;
      execute(readout, leaf.state, leaf.shots, rng, noise, [&](const Leaf& m) {
        for (Qubit q = 0; q < c.n; ++q) ones[i][q] += m.bits[q] * m.shots;
      });
    }
  };
  execute(rc.circuit, init_state(width, c.max_qubits), c.shots, rng, noise, [](const Leaf&) {},
          cp);

  std::vector<Score> out(k);
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<double> p1(c.n, 0.0);
    for (Qubit q = 0; q < c.n; ++q) {
      if (good[i] > 0) p1[q] = static_cast<double>(ones[i][q]) / good[i];
    }
    out[i] = score(d, memory::majority_vote(ones[i], good[i]), p1, failed[i]);
  }
  return out;
}

}  // namespace

TuneResult tune_u(const CapacityConfig& base, std::span<const unsigned> u_range,
                  TuneStrategy strategy) {
  if (u_range.empty()) throw ContractError("tune_u needs a non-empty u range");
  const unsigned u_max = *std::max_element(u_range.begin(), u_range.end());
  CapacityConfig widest = base;
  widest.u = u_max;
  widest.validate();

  TuneResult result;
  if (strategy == TuneStrategy::Independent) {
    for (unsigned u : u_range) {
      CapacityConfig c = base;
      c.u = u;
      result.curve.push_back(run_capacity(c));
    }
  } else {
    std::vector<std::vector<Score>> per_trial(base.trials);
    parallel_trials(base.trials, base.threads, [&](unsigned t) {
      per_trial[t] = shared_prefix_trial(base, u_range, u_max, t);
    });
    for (std::size_t i = 0; i < u_range.size(); ++i) {
      std::vector<Score> column;
      column.reserve(base.trials);
      for (const auto& row : per_trial) column.push_back(row[i]);
      result.curve.push_back(summarize(base, u_range[i], column));
    }
  }

  const CapacityReport* best = nullptr;
  for (const auto& r : result.curve) {
    if (best == nullptr || r.mv_accuracy > best->mv_accuracy ||
        (r.mv_accuracy == best->mv_accuracy && r.u < best->u)) {
      best = &r;
    }
  }
  result.best_u = best->u;
  for (auto& r : result.curve) r.tuned_u = result.best_u;
  return result;
}

}  // namespace qham::capacity
