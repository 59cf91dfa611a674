#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "il/core.hpp"
#include "il/energy.hpp"

namespace il {

using Bytes = std::vector<std::uint8_t>;

// Emulated non-volatile memory: named slots holding byte-exact values.
// Writes land only at sub-step commit boundaries; the runtime snapshots and
// restores whole stores for rollback.
class NvStore {
 public:
  bool has(const std::string& name) const { return slots_.count(name) != 0; }
  const Bytes& get(const std::string& name) const;
  void put(const std::string& name, Bytes value) { slots_[name] = std::move(value); }
  void erase(const std::string& name) { slots_.erase(name); }
  void erase_prefix(const std::string& prefix);
  std::size_t size() const { return slots_.size(); }
  const std::map<std::string, Bytes>& slots() const { return slots_; }

  friend bool operator==(const NvStore&, const NvStore&) = default;

 private:
  std::map<std::string, Bytes> slots_;
};

// Volatile scratch: zero-initialized at each wake, never survives a sleep or
// a power failure.
using VolatileScratch = std::map<std::string, Bytes>;

struct SubStep {
  std::string name;
  std::function<void(NvStore&, VolatileScratch&)> fn;
};

struct ActionProgram {
  ActionKind kind = ActionKind::Sense;
  std::vector<SubStep> steps;
};

// Simulated power-failure injection: scripted fault times plus an optional
// exponential inter-arrival process.
class FaultInjector {
 public:
  FaultInjector() = default;
  FaultInjector(std::vector<double> scripted_times, double exp_rate_per_s, std::uint64_t seed);

  // First fault strictly inside [t0, t1), consumed once reported.
  std::optional<double> next_fault_in(double t0, double t1);

 private:
  std::vector<double> scripted_;  // ascending
  std::size_t next_scripted_ = 0;
  double exp_rate_ = 0.0;
  std::mt19937_64 rng_;
  std::optional<double> pending_exp_;
  double exp_clock_ = 0.0;
};

enum class ExecStatus : std::uint8_t {
  Completed,
  PowerFailedRestart,  // injected fault; all deltas of this attempt discarded
  TraceExhausted,      // harvest trace ended while sleeping
};

const char* to_string(ExecStatus s);

struct ExecutionOutcome {
  ExecStatus status = ExecStatus::Completed;
  double energy_used_mj = 0.0;
  double time_used_ms = 0.0;
};

struct LogRecord {
  double t_s = 0.0;
  ActionKind action = ActionKind::Sense;
  int substep = 0;
  ExampleId example_id = 0;
  double energy_before_mj = 0.0;
  double energy_after_mj = 0.0;
  std::string outcome;   // ok | fault | sleep
  std::string decision;  // transition descriptor text
};

struct EpisodeLog {
  std::vector<LogRecord> records;

  // CSV with one row per sub-step attempt.
  void write_csv(const std::string& path) const;
  std::string to_csv() const;
};

// Rolling energy audit for the conservation invariant:
// initial + harvested == drained + final + clamp_loss.
struct EnergyAudit {
  double initial_mj = 0.0;
  double harvested_mj = 0.0;
  double drained_mj = 0.0;
  double clamp_loss_mj = 0.0;
  double final_mj = 0.0;

  double imbalance() const {
    return initial_mj + harvested_mj - drained_mj - clamp_loss_mj - final_mj;
  }
};

// Mutable execution context threaded through an episode.
struct ExecContext {
  Capacitor cap;
  double t = 0.0;
  const HarvesterTrace* trace = nullptr;
  const CostTable* costs = nullptr;
  FaultInjector* faults = nullptr;
  EnergyAudit* audit = nullptr;  // optional accumulator

  // Applies a capacitor step and folds the result into the audit.
  void advance(double dt, double drain_mj);
};

// Executes an action's sub-steps in order against the store. Before each
// sub-step the energy check runs; on insufficient energy the runtime sleeps
// until the next wake-up and resumes from the next uncompleted sub-step.
// An injected fault mid-sub-step discards every NvStore delta of the attempt
// and returns PowerFailedRestart. Trace exhaustion during a sleep restores
// the pre-action store and returns TraceExhausted.
ExecutionOutcome execute_action(const ActionProgram& prog, NvStore& store, ExecContext& ctx,
                                EpisodeLog* log = nullptr, ExampleId example_id = 0,
                                const std::string& decision = "");

}  // namespace il
