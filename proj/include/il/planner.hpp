#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "il/core.hpp"
#include "il/energy.hpp"

namespace il {

struct PlanConfig {
  int horizon = 4;            // L, decision-horizon length
  std::size_t admit_cap = 2;  // maximum admitted examples
  double p_bypass = 0.1;      // probability of bypassing a boolean branch
  bool fuse_decide = true;    // fuse decide with its successor expansion
  double epsilon_energy = 1e-3;  // energy tie-break weight per mJ
};

struct PlanNode {
  SystemState state;
  int depth = 0;
  std::vector<TransitionDescriptor> path;
  double projected_energy_mj = 0.0;
};

struct GoalScore {
  double value = 0.0;  // lower is better
};

enum class GoalPhase : std::uint8_t { Learning, Inferring };

// Phase 1 until learned_count reaches the target, then phase 2.
GoalPhase phase_of(const SystemState& state, const GoalSpec& goal);

// Distance of a trajectory's terminal statistics from the goal targets:
// |action-rate gap| plus a small energy tie-break.
GoalScore goal_distance(const PlanNode& traj, const GoalSpec& goal, GoalPhase phase,
                        const PlanConfig& config);

struct ActionDecision {
  bool sleep = false;  // no affordable transition; wait for energy
  TransitionDescriptor transition;
};

enum class PruneDirective : std::uint8_t { Keep, Skip, Fuse };

// Search-space reduction for one candidate transition out of `node`:
// horizon and admit caps reject outright; discard branches of boolean
// actions are bypassed with probability p_bypass; decide advances are fused
// with their successor.
PruneDirective prune(const PlanNode& node, const TransitionDescriptor& t,
                     const PlanConfig& config, std::mt19937_64& rng);

struct PlanStats {
  std::uint64_t nodes_explored = 0;
};

// Finite-horizon search: enumerates trajectories of length <= horizon from
// `state`, scores every trajectory (prefixes included) with goal_distance,
// and returns the first transition of the best one. Energy is forecast
// pessimistically from
// the current capacitor level with no further harvesting; unaffordable
// transitions end a trajectory. Ties are broken by the canonical transition
// enumeration order.
ActionDecision plan(const SystemState& state, const GoalSpec& goal, const Capacitor& cap,
                    const CostTable& costs, const PlanConfig& config, std::mt19937_64& rng,
                    PlanStats* stats = nullptr);

// Cost charged for one transition: the action's total cost for admits and
// advances, zero for removals.
double transition_energy(const TransitionDescriptor& t, const CostTable& costs);

}  // namespace il
