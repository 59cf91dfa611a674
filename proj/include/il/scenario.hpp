#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "il/energy.hpp"
#include "il/learners.hpp"
#include "il/planner.hpp"
#include "il/selection.hpp"

namespace il {

// Raised with a line-numbered message when a scenario file is malformed.
class ScenarioError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct TraceSpec {
  std::string kind = "constant";  // constant | solar | rf | piezo | file
  std::map<std::string, double> params;
  std::string file;

  HarvesterTrace build(std::uint64_t seed, double duration_s) const;
};

struct LearnerSpec {
  std::string kind = "knn";  // knn | kmeans
  std::size_t knn_k = 5;
  std::size_t knn_capacity = 30;
  double percentile = 90.0;
  std::size_t clusters = 2;
  double eta = 0.1;
};

struct SelectionSpec {
  Heuristic heuristic = Heuristic::None;
  std::size_t k = 3;
  double p = 0.5;
};

struct SchedulerSpec {
  std::string kind = "planner";  // planner | duty_cycle
  double learn_pct = 90.0;
  double infer_pct = 10.0;
  bool mayfly = false;             // discard stale buffered examples
  double staleness_s = 60.0;
  bool deterministic_interleave = false;
};

struct StreamSpec {
  double base_mean = 0.0;
  double base_std = 1.0;
  double anomaly_rate = 0.1;      // fraction of anomalous windows
  double anomaly_magnitude = 5.0; // shift or amplitude in units of base_std
  // mean_shift: anomalous windows shift the mean; burst: anomalous windows
  // carry a low-frequency sinusoid (large amplitude, low crossing rate).
  std::string anomaly_kind = "mean_shift";
  double labeled_fraction = 0.0;  // fraction of windows with exposed labels
  std::size_t window_len = 60;
  double sample_period_s = 32.0;
};

struct FaultSpec {
  double exp_rate_per_s = 0.0;
  std::vector<double> scripted_times;
};

struct ScenarioConfig {
  std::uint64_t seed = 1;
  double duration_s = 3600.0;
  std::string name = "scenario";

  TraceSpec trace;
  Capacitor capacitor{0.2, 3.3, 5.0, 2.0};
  LearnerSpec learner;
  SelectionSpec selection;
  GoalSpec goal;
  PlanConfig plan;
  SchedulerSpec scheduler;
  StreamSpec stream;
  FaultSpec faults;

  // Sub-seeds derived from `seed` so the stream is invariant across
  // scheduler and selection changes.
  std::uint64_t stream_seed() const;
  std::uint64_t scheduler_seed() const;
  std::uint64_t selection_seed() const;
  std::uint64_t fault_seed() const;
  std::uint64_t trace_seed() const;

  FeatureSet features() const;
  CostTable cost_table() const;

  void validate() const;

  // Flat key-value scenario file with [section] headers and a versioned
  // first line. Throws ScenarioError with a line number on bad input.
  static ScenarioConfig from_file(const std::string& path);
  static ScenarioConfig from_string(const std::string& text, const std::string& origin = "<string>");
  std::string to_string_file() const;

  // Packaged reference scenarios.
  static ScenarioConfig air_quality();
  static ScenarioConfig human_presence();
  static ScenarioConfig vibration();
};

struct LabeledSample {
  double value = 0.0;
  bool anomalous = false;  // hidden ground truth
  bool labeled = false;    // exposed to cluster-then-label
};

// Synthetic labeled sample stream: stationary Gaussian base with anomalous
// windows injected at the configured rate and magnitude.
std::vector<LabeledSample> gen_stream(const StreamSpec& spec, std::uint64_t seed,
                                      std::size_t sample_count);

std::uint64_t splitmix64(std::uint64_t& state);
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream_id);

}  // namespace il
