#pragma once

#include <array>
#include <deque>
#include <optional>
#include <string>
#include <vector>

#include "il/runtime.hpp"
#include "il/scenario.hpp"

namespace il {

struct MetricsRow {
  double t_s = 0.0;
  double energy_consumed_mj = 0.0;  // cumulative drain
  int learned = 0;
  int inferred = 0;
  double accuracy = 0.0;  // sliding window over the last 30 inferences
  std::array<int, kActionCount> actions_by_kind{};
};

struct MetricsFrame {
  std::vector<MetricsRow> rows;

  void write_csv(const std::string& path) const;
  std::string to_csv() const;
  static MetricsFrame from_csv_text(const std::string& text);

  const MetricsRow& last() const;
};

struct EpisodeResult {
  EpisodeLog log;
  MetricsFrame metrics;
  EnergyAudit audit;
  NvStore final_store;

  int learn_actions = 0;  // completed learn actions
  int infer_actions = 0;
  double final_accuracy = 0.0;
  double total_energy_mj = 0.0;

  // Fraction of inferences that matched the hidden ground truth over the
  // whole episode.
  double overall_accuracy = 0.0;
  int correct_inferences = 0;
};

// Runs one scenario end to end. Deterministic given the scenario seed.
EpisodeResult run_episode(const ScenarioConfig& scenario);

// Duty-cycle baseline decision state: fixed [sense, extract, learn-or-infer]
// sequence with no planner or selection involvement.
struct DutyCycleState {
  double interleave_acc = 0.0;
  int cycle = 0;
};

// Next decision of the duty-cycled baseline for the given system state.
ActionDecision duty_cycle_schedule(const SystemState& state, const SchedulerSpec& config,
                                   DutyCycleState& duty, std::mt19937_64& rng);

struct ComparisonRow {
  std::string name;
  double mean_accuracy = 0.0;
  double final_accuracy = 0.0;
  int learn_actions = 0;
  int infer_actions = 0;
  double total_energy_mj = 0.0;
};

struct ComparisonResult {
  std::vector<ComparisonRow> summary;
  std::vector<EpisodeResult> episodes;

  std::string summary_table() const;
};

// Runs each scenario with a shared data-stream seed so comparisons are
// paired sample-for-sample.
ComparisonResult run_comparison(std::vector<ScenarioConfig> scenarios);

}  // namespace il
