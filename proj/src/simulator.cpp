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

#include "qham/simulator.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <utility>

#include "qham/errors.hpp"

namespace qham {

namespace {

enum class StepKind { Unitary, Event, Measure, Readout, Reset };

// One primitive action of the compiled circuit. Only the first step of an
// instruction carries its condition; `skip_to` jumps past the instruction.
struct Step {
  explicit Step(StepKind k) : kind(k) {}

  StepKind kind;
  Gate gate = gates::Id{0};
  noise::ErrorEvent event{};
  Qubit q = 0;
  Cbit cbit = 0;
  double p = 0.0;
  std::optional<Condition> condition;
  std::size_t skip_to = 0;
};

struct Program {
  std::vector<Step> steps;
  std::size_t tail = 0;                // first step of the closing measurement block
  std::vector<std::size_t> starts;     // first step of each instruction, plus the end
};

Program compile(const Circuit& circuit, const noise::NoiseSpec* noise) {
  if (noise != nullptr) noise->validate();
  Program prog;
  std::vector<std::size_t> starts;
  const auto& ops = circuit.instructions();
  for (const auto& op : ops) {
    const std::size_t first = prog.steps.size();
    starts.push_back(first);
    auto push_events = [&](const std::vector<noise::ErrorEvent>& events) {
      for (const auto& e : events) {
        if (e.probability <= 0.0) continue;
        Step s(StepKind::Event);
        s.event = e;
        prog.steps.push_back(s);
      }
    };
    if (const auto* m = std::get_if<gates::Measure>(&op.gate)) {
      if (noise != nullptr) push_events(noise::channels_for_measure(m->q, *noise));
      Step s(StepKind::Measure);
      s.q = m->q;
      s.cbit = m->cbit;
      prog.steps.push_back(s);
      if (noise != nullptr && noise->channels.readout && noise->device.readout_err > 0.0) {
        Step r(StepKind::Readout);
        r.cbit = m->cbit;
        r.p = noise->device.readout_err;
        prog.steps.push_back(r);
      }
    } else if (const auto* r = std::get_if<gates::Reset>(&op.gate)) {
      Step s(StepKind::Reset);
      s.q = r->q;
      prog.steps.push_back(s);
    } else {
      Step s(StepKind::Unitary);
      s.gate = op.gate;
      prog.steps.push_back(s);
      if (noise != nullptr) {
        push_events(is_basis_gate(op.gate) ? noise::channels_for_gate(op.gate, *noise)
                                           : noise::equivalent_channels(op.gate, *noise));
      }
    }
    prog.steps[first].condition = op.condition;
    for (std::size_t i = first; i < prog.steps.size(); ++i) prog.steps[i].skip_to = prog.steps.size();
  }

  // the trailing run of unconditioned measurements is resolved classically
  std::size_t first_tail_op = ops.size();
  while (first_tail_op > 0) {
    const auto& op = ops[first_tail_op - 1];
    if (op.condition || !std::holds_alternative<gates::Measure>(op.gate)) break;
    --first_tail_op;
  }
  prog.tail = first_tail_op == ops.size() ? prog.steps.size() : starts[first_tail_op];
  starts.push_back(prog.steps.size());
  prog.starts = std::move(starts);
  return prog;
}

struct Branch {
  StateVector state;
  std::vector<std::uint8_t> bits;
  std::size_t pc;
  std::uint64_t shots;
};

class Executor {
 public:
  Executor(const Program& prog, Rng& rng, const LeafVisitor& on_leaf,
           const Checkpoints* checkpoints)
      : prog_(prog), rng_(rng), on_leaf_(on_leaf), checkpoints_(checkpoints) {
    if (checkpoints_ == nullptr) return;
    marks_.assign(prog_.steps.size() + 1, {});
    for (std::size_t at : checkpoints_->at) {
      if (at >= prog_.starts.size()) throw ContractError("checkpoint past the end of the circuit");
      const std::size_t step = prog_.starts[at];
      if (step > prog_.tail) throw ContractError("checkpoint inside the closing measurements");
      marks_[step].push_back(at);
    }
  }

  void run(Branch root) {
    stack_.push_back(std::move(root));
    while (!stack_.empty()) {
      Branch b = std::move(stack_.back());
      stack_.pop_back();
      advance(b);
    }
  }

 private:
  // Splits b into groups of shots; group i gets counts[i] shots and action
  // act(branch, i). The last non-empty group reuses b, the others are queued
  // past the current step.
  template <typename Act>
  void fork(Branch& b, std::span<const std::uint64_t> counts, Act&& act) {
    std::size_t last = counts.size();
    while (last > 0 && counts[last - 1] == 0) --last;
    if (last == 0) return;
    --last;
    for (std::size_t i = 0; i < last; ++i) {
      if (counts[i] == 0) continue;
      Branch c{b.state, b.bits, b.pc + 1, counts[i]};
      act(c, i);
      stack_.push_back(std::move(c));
    }
    b.shots = counts[last];
    act(b, last);
  }

  void pauli_event(Branch& b, const noise::ErrorEvent& e) {
    const std::uint64_t errors = rng_.binomial(b.shots, e.probability);
    if (errors == 0) return;
    const unsigned kinds = e.arity == 2 ? 15 : 3;
    std::array<std::uint64_t, 16> counts{};
    counts[0] = b.shots - errors;
    std::uint64_t left = errors;
    for (unsigned j = 0; j < kinds; ++j) {
      const std::uint64_t c = j + 1 == kinds ? left : rng_.binomial(left, 1.0 / (kinds - j));
      counts[j + 1] = c;
      left -= c;
    }
    fork(b, std::span(counts.data(), kinds + 1), [&](Branch& br, std::size_t idx) {
      if (idx == 0) return;
      if (e.arity == 2) {
        br.state.apply_pauli(e.qubits[0], static_cast<unsigned>(idx & 3U));
        br.state.apply_pauli(e.qubits[1], static_cast<unsigned>(idx >> 2U));
      } else {
        br.state.apply_pauli(e.qubits[0], static_cast<unsigned>(idx));
      }
    });
  }

  void event(Branch& b, const noise::ErrorEvent& e) {
    const Qubit q = e.qubits[0];
    switch (e.kind) {
      case noise::EventKind::Depolarizing:
        pauli_event(b, e);
        return;
      case noise::EventKind::AmplitudeDamping: {
        const double p1 = b.state.prob_one(q);
        if (p1 <= 0.0) return;  // K0 acts trivially on a state with no |1> weight
        const std::uint64_t jumps = rng_.binomial(b.shots, std::min(1.0, e.probability * p1));
        const std::array<std::uint64_t, 2> counts{b.shots - jumps, jumps};
        fork(b, counts, [&](Branch& br, std::size_t idx) {
          br.state.amplitude_damp(q, e.probability, idx == 1, p1);
        });
        return;
      }
      case noise::EventKind::PhaseDamping: {
        // dephasing with parameter l is a Z flip with prob (1 - sqrt(1 - l)) / 2
        const double pz = 0.5 * (1.0 - std::sqrt(1.0 - e.probability));
        const std::uint64_t flips = rng_.binomial(b.shots, pz);
        const std::array<std::uint64_t, 2> counts{b.shots - flips, flips};
        fork(b, counts, [&](Branch& br, std::size_t idx) {
          if (idx == 1) br.state.apply_pauli(q, 3);
        });
        return;
      }
    }
  }

  void mark(const Branch& b) {
    if (checkpoints_ == nullptr) return;
    for (std::size_t at : marks_[b.pc]) checkpoints_->visit(at, Leaf{b.state, b.bits, b.shots});
  }

  void advance(Branch& b) {
    while (b.pc < prog_.tail) {
      mark(b);
      const Step& s = prog_.steps[b.pc];
      if (s.condition && (b.bits[s.condition->cbit] != 0) != s.condition->value) {
        b.pc = s.skip_to;
        continue;
      }
      switch (s.kind) {
        case StepKind::Unitary:
          b.state.apply(s.gate);
          break;
        case StepKind::Event:
          event(b, s.event);
          break;
        case StepKind::Measure:
        case StepKind::Reset: {
          const double p1 = std::clamp(b.state.prob_one(s.q), 0.0, 1.0);
          const std::uint64_t ones = rng_.binomial(b.shots, p1);
          const std::array<std::uint64_t, 2> counts{b.shots - ones, ones};
          const bool reset = s.kind == StepKind::Reset;
          fork(b, counts, [&](Branch& br, std::size_t idx) {
            br.state.project(s.q, idx == 1);
            if (reset) {
              if (idx == 1) br.state.apply_pauli(s.q, 1);
            } else {
              br.bits[s.cbit] = static_cast<std::uint8_t>(idx);
            }
          });
          break;
        }
        case StepKind::Readout: {
          const std::uint64_t flips = rng_.binomial(b.shots, s.p);
          const std::array<std::uint64_t, 2> counts{b.shots - flips, flips};
          fork(b, counts, [&](Branch& br, std::size_t idx) {
            if (idx == 1) br.bits[s.cbit] ^= 1U;
          });
          break;
        }
      }
      ++b.pc;
    }
    mark(b);
    if (prog_.tail == prog_.steps.size()) {
      on_leaf_(Leaf{b.state, b.bits, b.shots});
      return;
    }
    finish(b);
  }

  // Measurement-basis populations evolve classically under everything the
  // closing block can contain (Pauli errors, damping, projective readout), so
  // each shot draws a basis state once and then walks the steps on bits.
  void finish(const Branch& b) {
    const auto amps = b.state.amplitudes();
    cumulative_.resize(amps.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < amps.size(); ++i) {
      acc += std::norm(amps[i]);
      cumulative_[i] = acc;
    }
    std::map<std::vector<std::uint8_t>, std::uint64_t> groups;
    std::vector<std::uint8_t> bits;
    for (std::uint64_t shot = 0; shot < b.shots; ++shot) {
      const double r = rng_.uniform() * acc;
      auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), r);
      std::uint64_t idx = static_cast<std::uint64_t>(
          std::min<std::ptrdiff_t>(it - cumulative_.begin(),
                                   static_cast<std::ptrdiff_t>(amps.size()) - 1));
      bits = b.bits;
      for (std::size_t pc = prog_.tail; pc < prog_.steps.size(); ++pc) {
        const Step& s = prog_.steps[pc];
        switch (s.kind) {
          case StepKind::Event: {
            const auto& e = s.event;
            if (e.kind == noise::EventKind::AmplitudeDamping) {
              const std::uint64_t mask = std::uint64_t{1} << e.qubits[0];
              if ((idx & mask) != 0 && rng_.bernoulli(e.probability)) idx &= ~mask;
            } else if (e.kind == noise::EventKind::Depolarizing && rng_.bernoulli(e.probability)) {
              const unsigned kinds = e.arity == 2 ? 15 : 3;
              const auto pauli = static_cast<unsigned>(rng_.below(kinds)) + 1;
              auto flip = [&](Qubit q, unsigned pa) {
                if (pa == 1 || pa == 2) idx ^= std::uint64_t{1} << q;
              };
              if (e.arity == 2) {
                flip(e.qubits[0], pauli & 3U);
                flip(e.qubits[1], pauli >> 2U);
              } else {
                flip(e.qubits[0], pauli);
              }
            }
            break;  // dephasing leaves populations unchanged
          }
          case StepKind::Measure:
            bits[s.cbit] = static_cast<std::uint8_t>((idx >> s.q) & 1U);
            break;
          case StepKind::Readout:
            if (rng_.bernoulli(s.p)) bits[s.cbit] ^= 1U;
            break;
          default:
            throw ContractError("unexpected operation in closing measurement block");
        }
      }
      ++groups[bits];
    }
    for (const auto& [key, count] : groups) on_leaf_(Leaf{b.state, key, count});
  }

  const Program& prog_;
  Rng& rng_;
  const LeafVisitor& on_leaf_;
  const Checkpoints* checkpoints_;
  std::vector<std::vector<std::size_t>> marks_;
  std::vector<Branch> stack_;
  std::vector<double> cumulative_;
};

Circuit with_final_measurements(const Circuit& circuit) {
  Circuit out(circuit.qubit_count(), circuit.qubit_count());
  out.append(circuit);
  for (Qubit q = 0; q < circuit.qubit_count(); ++q) out.add(gates::Measure{q, q});
  return out;
}

}  // namespace

namespace {

void execute_impl(const Circuit& circuit, const StateVector& initial, std::uint64_t shots,
                  Rng& rng, const noise::NoiseSpec* noise, const LeafVisitor& on_leaf,
                  const Checkpoints* checkpoints) {
  if (initial.qubit_count() != circuit.qubit_count()) {
    throw ContractError("initial state width does not match the circuit");
  }
  if (shots == 0) return;
  const Program prog = compile(circuit, noise);
  Executor exec(prog, rng, on_leaf, checkpoints);
  exec.run(Branch{initial, std::vector<std::uint8_t>(circuit.cbit_count(), 0), 0, shots});
}

}  // namespace

void execute(const Circuit& circuit, const StateVector& initial, std::uint64_t shots, Rng& rng,
             const noise::NoiseSpec* noise, const LeafVisitor& on_leaf) {
  execute_impl(circuit, initial, shots, rng, noise, on_leaf, nullptr);
}

void execute(const Circuit& circuit, const StateVector& initial, std::uint64_t shots, Rng& rng,
             const noise::NoiseSpec* noise, const LeafVisitor& on_leaf,
             const Checkpoints& checkpoints) {
  execute_impl(circuit, initial, shots, rng, noise, on_leaf, &checkpoints);
}

ShotOutcome run_shot(const Circuit& circuit, Rng& rng, const noise::NoiseSpec* noise,
                     unsigned max_qubits) {
  ShotOutcome out;
  execute(circuit, init_state(circuit.qubit_count(), max_qubits), 1, rng, noise,
          [&](const Leaf& leaf) {
            out.bits.assign(leaf.bits.begin(), leaf.bits.end());
            out.final_marginals.resize(leaf.state.qubit_count());
            for (Qubit q = 0; q < leaf.state.qubit_count(); ++q) {
              out.final_marginals[q] = leaf.state.prob_one(q);
            }
          });
  return out;
}

Counts sample_counts(const Circuit& circuit, std::uint64_t shots, std::uint64_t seed,
                     const noise::NoiseSpec* noise, unsigned max_qubits) {
  const Circuit measured = circuit.cbit_count() == 0 ? with_final_measurements(circuit) : circuit;
  Counts counts;
  Rng rng(seed);
  execute(measured, init_state(measured.qubit_count(), max_qubits), shots, rng, noise,
          [&](const Leaf& leaf) { counts[to_bitstring(leaf.bits)] += leaf.shots; });
  return counts;
}

StateVector simulate_unitary(const Circuit& circuit, unsigned max_qubits) {
  StateVector state(circuit.qubit_count(), max_qubits);
  for (const auto& op : circuit.instructions()) {
    if (op.condition || !is_unitary(op.gate)) {
      throw UnsupportedOperationError("simulate_unitary needs a measurement-free circuit");
    }
    state.apply(op.gate);
  }
  return state;
}

std::string to_bitstring(std::span<const std::uint8_t> bits) {
  std::string s(bits.size(), '0');
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] != 0) s[i] = '1';
  }
  return s;
}

}  // namespace qham
