#include "il/planner.hpp"

#include <cmath>
#include <limits>

namespace il {

GoalPhase phase_of(const SystemState& state, const GoalSpec& goal) {
  return state.learned_count < goal.learn_count_target ? GoalPhase::Learning
                                                       : GoalPhase::Inferring;
}

GoalScore goal_distance(const PlanNode& traj, const GoalSpec& goal, GoalPhase phase,
                        const PlanConfig& config) {
  int learns = 0;
  int infers = 0;
  for (const auto& t : traj.path) {
    if (t.type == TransitionType::Advance && t.action == ActionKind::Learn) ++learns;
    if (t.type == TransitionType::Advance && t.action == ActionKind::Infer) ++infers;
  }
  double rate_gap = phase == GoalPhase::Learning
                        ? std::abs(static_cast<double>(learns) - goal.learn_rate_target)
                        : std::abs(static_cast<double>(infers) - goal.infer_rate_target);
  return {rate_gap + config.epsilon_energy * traj.projected_energy_mj};
}

double transition_energy(const TransitionDescriptor& t, const CostTable& costs) {
  switch (t.type) {
    case TransitionType::AdmitNew:
      return costs.total(ActionKind::Sense).energy_mj;
    case TransitionType::Advance:
      return costs.total(t.action).energy_mj;
    case TransitionType::Remove:
      return 0.0;
  }
  return 0.0;
}

PruneDirective prune(const PlanNode& node, const TransitionDescriptor& t,
                     const PlanConfig& config, std::mt19937_64& rng) {
  if (node.depth >= config.horizon) return PruneDirective::Skip;
  if (t.type == TransitionType::AdmitNew && node.state.size() >= config.admit_cap) {
    return PruneDirective::Skip;
  }
  if (t.type == TransitionType::Remove && allows_discard(t.action) && config.p_bypass > 0.0) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    if (u(rng) < config.p_bypass) return PruneDirective::Skip;
  }
  if (config.fuse_decide && t.type == TransitionType::Advance && t.action == ActionKind::Decide) {
    return PruneDirective::Fuse;
  }
  return PruneDirective::Keep;
}

namespace {

struct Search {
  const GoalSpec& goal;
  const Capacitor& cap;
  const CostTable& costs;
  const PlanConfig& config;
  std::mt19937_64& rng;
  GoalPhase phase;
  PlanStats* stats;

  double best_score = std::numeric_limits<double>::infinity();
  std::vector<TransitionDescriptor> best_path;

  void score_node(const PlanNode& node) {
    double v = goal_distance(node, goal, phase, config).value;
    if (v < best_score && !node.path.empty()) {
      best_score = v;
      best_path = node.path;
    }
  }

  void expand(const PlanNode& node) {
    if (stats) stats->nodes_explored += 1;
    // Every prefix trajectory competes, so a goal reached in fewer, cheaper
    // steps beats the same goal count padded with extra actions. Without
    // this the search defers the goal action to the end of the horizon
    // forever.
    score_node(node);
    if (node.depth >= config.horizon) return;
    for (const auto& [t, next] : transitions(node.state, config.admit_cap)) {
      double energy = node.projected_energy_mj + transition_energy(t, costs);
      if (!can_execute(cap, energy)) continue;  // unaffordable under no-harvest forecast

      PruneDirective d = prune(node, t, config, rng);
      if (d == PruneDirective::Skip) continue;

      PlanNode child;
      child.state = next;
      child.depth = node.depth + 1;
      child.path = node.path;
      child.path.push_back(t);
      child.projected_energy_mj = energy;

      if (d == PruneDirective::Fuse) {
        // Expand the decide's successor within the same depth level.
        bool fused = false;
        for (const auto& [t2, next2] : transitions(next, config.admit_cap)) {
          if (t2.type != TransitionType::Advance || t2.example_id != t.example_id) continue;
          double e2 = energy + transition_energy(t2, costs);
          if (!can_execute(cap, e2)) continue;
          PlanNode grand = child;
          grand.state = next2;
          grand.path.push_back(t2);
          grand.projected_energy_mj = e2;
          expand(grand);
          fused = true;
        }
        if (!fused) expand(child);
        continue;
      }

      expand(child);
    }
  }
};

}  // namespace

ActionDecision plan(const SystemState& state, const GoalSpec& goal, const Capacitor& cap,
                    const CostTable& costs, const PlanConfig& config, std::mt19937_64& rng,
                    PlanStats* stats) {
  goal.validate();
  Search search{goal, cap, costs, config, rng, phase_of(state, goal), stats};
  PlanNode root;
  root.state = state;
  search.expand(root);

  if (search.best_path.empty()) return {true, {}};
  return {false, search.best_path.front()};
}

}  // namespace il
