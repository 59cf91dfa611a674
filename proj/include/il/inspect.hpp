#pragma once

#include <functional>
#include <string>
#include <vector>

#include "il/energy.hpp"
#include "il/runtime.hpp"

namespace il {

// Optional data-dependent scaling of a sub-step's table cost, as a function
// of the corpus input size.
using CostMultiplier = std::function<double(ActionKind, int substep, std::size_t input_size)>;

struct InspectionEntry {
  ActionKind action = ActionKind::Sense;
  int substep = 0;
  double max_energy_mj = 0.0;
  double max_time_ms = 0.0;
  double budget_mj = 0.0;
  bool pass = true;  // fail iff max_energy_mj > budget_mj
};

struct InspectionReport {
  std::vector<InspectionEntry> entries;
  std::size_t corpus_size = 0;

  bool all_pass() const;
  // CSV: action,substep,max_energy_mj,max_time_ms,budget_mj,verdict
  std::string to_csv() const;
  void write_csv(const std::string& path) const;
};

// Pre-deployment energy check: charges every sub-step of every program with
// its table cost (scaled by the multiplier when given) across the corpus,
// and reports the worst case against the per-wake budget. Violations are
// report entries, never exceptions.
InspectionReport inspect(const std::vector<ActionProgram>& programs, const CostTable& costs,
                         double budget_mj, const std::vector<std::vector<double>>& corpus,
                         const CostMultiplier& multiplier = nullptr);

}  // namespace il
