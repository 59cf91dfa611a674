#include "il/core.hpp"

#include <algorithm>

namespace il {

const char* to_string(ActionKind kind) {
  switch (kind) {
    case ActionKind::Sense: return "sense";
    case ActionKind::Extract: return "extract";
    case ActionKind::Decide: return "decide";
    case ActionKind::Select: return "select";
    case ActionKind::Learnable: return "learnable";
    case ActionKind::Learn: return "learn";
    case ActionKind::Evaluate: return "evaluate";
    case ActionKind::Infer: return "infer";
  }
  return "?";
}

std::optional<ActionKind> action_from_string(const std::string& name) {
  for (int i = 0; i < kActionCount; ++i) {
    auto k = static_cast<ActionKind>(i);
    if (name == to_string(k)) return k;
  }
  return std::nullopt;
}

bool SystemState::contains(ExampleId id) const {
  return action_of(id).has_value();
}

std::optional<ActionKind> SystemState::action_of(ExampleId id) const {
  for (const auto& t : tuples_) {
    if (t.example_id == id) return t.action;
  }
  return std::nullopt;
}

void SystemState::insert(StateTuple t) {
  if (contains(t.example_id)) {
    throw ContractViolation("example id already present in state");
  }
  auto it = std::lower_bound(tuples_.begin(), tuples_.end(), t.example_id,
                             [](const StateTuple& a, ExampleId id) { return a.example_id < id; });
  tuples_.insert(it, t);
  if (t.example_id >= next_id_) next_id_ = t.example_id + 1;
}

void SystemState::replace(ExampleId id, ActionKind next) {
  for (auto& t : tuples_) {
    if (t.example_id == id) {
      t.action = next;
      return;
    }
  }
  throw ContractViolation("unknown example id in replace");
}

void SystemState::remove(ExampleId id) {
  auto it = std::find_if(tuples_.begin(), tuples_.end(),
                         [&](const StateTuple& t) { return t.example_id == id; });
  if (it == tuples_.end()) throw ContractViolation("unknown example id in remove");
  tuples_.erase(it);
}

void GoalSpec::validate() const {
  if (learn_rate_target <= 0 || infer_rate_target <= 0 || learn_count_target <= 0) {
    throw ContractViolation("goal targets must be strictly positive");
  }
  if (horizon_cycles < 1) throw ContractViolation("horizon_cycles must be >= 1");
}

std::vector<ActionKind> next_actions_of(ActionKind last) {
  switch (last) {
    case ActionKind::Sense: return {ActionKind::Extract};
    case ActionKind::Extract: return {ActionKind::Decide};
    case ActionKind::Decide: return {ActionKind::Select, ActionKind::Infer};
    case ActionKind::Select: return {ActionKind::Learnable};
    case ActionKind::Learnable: return {ActionKind::Learn};
    case ActionKind::Learn: return {ActionKind::Evaluate};
    case ActionKind::Evaluate: return {};
    case ActionKind::Infer: return {};
  }
  return {};
}

bool allows_discard(ActionKind kind) {
  return kind == ActionKind::Select || kind == ActionKind::Learnable;
}

bool is_terminal(ActionKind kind) {
  return kind == ActionKind::Evaluate || kind == ActionKind::Infer;
}

std::vector<ActionKind> next_actions(const SystemState& state, const StateTuple& tuple) {
  auto recorded = state.action_of(tuple.example_id);
  if (!recorded || *recorded != tuple.action) {
    throw ContractViolation("tuple is not a member of the state");
  }
  return next_actions_of(tuple.action);
}

std::string to_string(const TransitionDescriptor& t) {
  switch (t.type) {
    case TransitionType::AdmitNew:
      return "admit:" + std::to_string(t.example_id);
    case TransitionType::Advance:
      return std::string(to_string(t.action)) + ":" + std::to_string(t.example_id);
    case TransitionType::Remove:
      return "remove:" + std::to_string(t.example_id);
  }
  return "?";
}

std::vector<std::pair<TransitionDescriptor, SystemState>> transitions(
    const SystemState& state, std::size_t admit_cap) {
  std::vector<std::pair<TransitionDescriptor, SystemState>> out;

  if (state.size() < admit_cap) {
    TransitionDescriptor d{TransitionType::AdmitNew, state.next_id(), ActionKind::Sense};
    out.emplace_back(d, apply_transition(state, d));
  }

  for (const auto& tuple : state.tuples()) {
    for (ActionKind next : next_actions_of(tuple.action)) {
      TransitionDescriptor d{TransitionType::Advance, tuple.example_id, next};
      out.emplace_back(d, apply_transition(state, d));
    }
    if (next_actions_of(tuple.action).empty() || allows_discard(tuple.action)) {
      TransitionDescriptor d{TransitionType::Remove, tuple.example_id, tuple.action};
      out.emplace_back(d, apply_transition(state, d));
    }
  }
  return out;
}

SystemState apply_transition(const SystemState& state, const TransitionDescriptor& t) {
  SystemState next = state;
  switch (t.type) {
    case TransitionType::AdmitNew:
      next.insert({t.example_id, ActionKind::Sense});
      break;
    case TransitionType::Advance:
      next.replace(t.example_id, t.action);
      if (t.action == ActionKind::Evaluate) next.learned_count += 1;
      if (t.action == ActionKind::Infer) next.inferred_count += 1;
      break;
    case TransitionType::Remove:
      next.remove(t.example_id);
      break;
  }
  return next;
}

}  // namespace il
