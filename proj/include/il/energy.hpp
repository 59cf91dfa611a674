#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "il/core.hpp"

namespace il {

// A harvester power trace, materialized as piecewise-constant (time, power)
// segments. Synthetic kinds are sampled once at construction from a seed so
// power(t) is a plain function of t afterwards.
class HarvesterTrace {
 public:
  enum class Kind : std::uint8_t { SolarDiurnal, RfDistance, PiezoShaking, FileTrace, Constant };

  struct SolarParams {
    double peak_mw = 40.0;
    double day_start_h = 8.0;       // daytime window, hours of day
    double day_end_h = 17.0;
    int days = 1;
    double cloud_dropout_rate = 0.0;  // expected dropouts per day
    double cloud_dropout_s = 600.0;   // dropout length
    std::uint64_t seed = 0;
  };

  struct RfParams {
    // Constant power by distance tier with Gaussian jitter. Tier powers are
    // calibrated so tier 1 (3 m) >> tier 3 (7 m).
    int tier = 1;                   // 1 = 3 m, 2 = 5 m, 3 = 7 m
    double jitter_frac = 0.05;
    double duration_s = 3600.0;
    double segment_s = 1.0;
    std::uint64_t seed = 0;
  };

  struct PiezoParams {
    double gentle_mw = 1.8;
    double abrupt_mw = 36.5;
    double block_s = 3600.0;        // alternating gentle/abrupt blocks
    int blocks = 4;
    double jitter_frac = 0.1;
    double segment_s = 5.0;
    std::uint64_t seed = 0;
  };

  static HarvesterTrace constant(double power_mw, double duration_s);
  static HarvesterTrace solar(const SolarParams& p);
  static HarvesterTrace rf_distance(const RfParams& p);
  static HarvesterTrace piezo(const PiezoParams& p);
  // CSV with header `time_s,power_mw`, monotonically increasing time.
  static HarvesterTrace from_csv(const std::string& path);
  static HarvesterTrace from_samples(std::vector<std::pair<double, double>> samples,
                                     double end_time_s);

  Kind kind() const { return kind_; }
  double end_time() const { return end_time_; }
  // Piecewise-constant power at time t; 0 beyond the end of the trace.
  double power_at(double t) const;
  const std::vector<std::pair<double, double>>& samples() const { return samples_; }

  // Energy harvested over [t0, t1] in millijoules (mW * s = mJ).
  double harvested(double t0, double t1) const;

  void write_csv(const std::string& path) const;

 private:
  Kind kind_ = Kind::Constant;
  std::vector<std::pair<double, double>> samples_;  // (time_s, power_mw)
  double end_time_ = 0.0;
};

struct Capacitor {
  double capacitance_f = 0.2;
  double voltage_v = 0.0;
  double max_voltage_v = 5.0;
  double cutoff_voltage_v = 2.0;
};

// Stored energy 1/2 C V^2 in millijoules.
double stored_energy(const Capacitor& cap);

// Capacitor holding exactly `energy_mj`, clamped to [0, max].
Capacitor with_energy(Capacitor cap, double energy_mj);

struct StepResult {
  Capacitor cap;
  double harvested_mj = 0.0;   // energy collected over the interval
  double clamp_loss_mj = 0.0;  // energy discarded at the top or bottom clamp
};

// Integrates harvest power over [t, t+dt] and applies `drain_mj`, clamping
// the stored energy to [0, E_max]. Clamp losses are reported explicitly so
// episode-level conservation can be checked.
StepResult step(const Capacitor& cap, const HarvesterTrace& trace, double t, double dt,
                double drain_mj);

// True iff paying `cost_mj` leaves the capacitor at or above the cutoff
// voltage.
bool can_execute(const Capacitor& cap, double cost_mj);

// Earliest t' >= t at which can_execute(cap', min_cost_mj) holds assuming no
// drain while charging; nullopt if the trace ends first.
std::optional<double> next_wakeup(const Capacitor& cap, const HarvesterTrace& trace, double t,
                                  double min_cost_mj);

struct Cost {
  double energy_mj = 0.0;
  double duration_ms = 0.0;
};

// Per-(action, sub-step) costs plus framework overheads. This table is the
// energy model: the simulator charges exactly these values.
struct CostTable {
  std::map<std::pair<ActionKind, int>, Cost> actions;
  Cost planner_overhead{0.057, 4.3};  // 57 uJ / 4.3 ms

  Cost round_robin_overhead{0.020, 1.0};
  Cost k_last_overhead{0.270, 3.0};   // 270 uJ
  Cost random_overhead{0.0018, 0.1};  // 1.8 uJ

  const Cost& at(ActionKind kind, int substep) const;
  int substeps(ActionKind kind) const;
  // Total cost of an action across its sub-steps.
  Cost total(ActionKind kind) const;
  // Cheapest single sub-step energy in the table.
  double min_substep_energy() const;

  void validate() const;

  // Calibrated defaults for the kNN pipeline (air-quality numbers).
  static CostTable knn_defaults();
  // Calibrated defaults for the neural-network k-means pipeline (vibration
  // numbers).
  static CostTable kmeans_defaults();
};

}  // namespace il
