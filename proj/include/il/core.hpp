#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace il {

/// Raised when an operation's preconditions are violated by the caller.
class ContractViolation : public std::logic_error {
 public:
  explicit ContractViolation(const std::string& what) : std::logic_error(what) {}
};

// The eight action primitives. The set is closed; enum order doubles as the
// canonical edge order when enumerating transitions.
enum class ActionKind : std::uint8_t {
  Sense = 0,     // sense and convert data to an example
  Extract = 1,   // extract features from an example
  Decide = 2,    // decide to learn or infer
  Select = 3,    // determine whether an example increases learning performance
  Learnable = 4, // check prerequisites of a learn action
  Learn = 5,     // execute a learning algorithm
  Evaluate = 6,  // evaluate the learning performance
  Infer = 7,     // make an inference using the current model
};

inline constexpr int kActionCount = 8;

const char* to_string(ActionKind kind);
std::optional<ActionKind> action_from_string(const std::string& name);

using ExampleId = std::uint64_t;

// A windowed sensor reading flowing through the action pipeline.
struct Example {
  ExampleId id = 0;
  std::vector<double> raw_window;            // sensor units
  std::optional<std::vector<double>> features;
  std::optional<ActionKind> last_action;
  double created_at = 0.0;                   // simulation seconds
};

// One (example, most-recent-action) entry of the system state.
struct StateTuple {
  ExampleId example_id = 0;
  ActionKind action = ActionKind::Sense;

  friend bool operator==(const StateTuple&, const StateTuple&) = default;
};

// The planner's search state: which examples are in flight and how far each
// has progressed, plus the episode's learned/inferred counters.
class SystemState {
 public:
  SystemState() = default;

  // Tuples are kept sorted by ascending example id; each id appears at most
  // once.
  const std::vector<StateTuple>& tuples() const { return tuples_; }
  int learned_count = 0;
  int inferred_count = 0;

  bool contains(ExampleId id) const;
  std::optional<ActionKind> action_of(ExampleId id) const;
  void insert(StateTuple t);
  void replace(ExampleId id, ActionKind next);
  void remove(ExampleId id);
  std::size_t size() const { return tuples_.size(); }

  // Smallest id strictly greater than every id ever admitted. Used so a
  // fresh example id is unique within the episode.
  ExampleId next_id() const { return next_id_; }

  friend bool operator==(const SystemState&, const SystemState&) = default;

 private:
  std::vector<StateTuple> tuples_;
  ExampleId next_id_ = 1;
};

// Goal-state targets: learning rate rho_l and count n_l for phase 1, then
// inference rate rho_c, all over a horizon of L harvesting cycles.
struct GoalSpec {
  double learn_rate_target = 1.0;   // learned examples per horizon_cycles
  int learn_count_target = 10;      // switch to phase 2 after this many
  double infer_rate_target = 1.0;   // inferences per horizon_cycles
  int horizon_cycles = 4;

  void validate() const;
};

// Legal next actions for a tuple, per the action state diagram. The empty
// set signals that the example leaves the system.
std::vector<ActionKind> next_actions_of(ActionKind last);

// True when the action gates continuation with a boolean and a negative
// outcome discards the example (select, learnable).
bool allows_discard(ActionKind kind);

// True when the example leaves the system after this action (evaluate,
// infer).
bool is_terminal(ActionKind kind);

// next_actions over a state tuple; the tuple must be a member of the state.
std::vector<ActionKind> next_actions(const SystemState& state, const StateTuple& tuple);

enum class TransitionType : std::uint8_t {
  AdmitNew = 0,  // sense a fresh example
  Advance = 1,   // execute the next action on an existing example
  Remove = 2,    // the example leaves the system
};

struct TransitionDescriptor {
  TransitionType type = TransitionType::AdmitNew;
  ExampleId example_id = 0;                   // new id for AdmitNew
  ActionKind action = ActionKind::Sense;      // action executed (AdmitNew/Advance)

  friend bool operator==(const TransitionDescriptor&, const TransitionDescriptor&) = default;
};

std::string to_string(const TransitionDescriptor& t);

// All successor states of `state`, in deterministic order: admit-new first,
// then per tuple in ascending example id, advances in enum edge order
// followed by the discard/exit transition when one exists.
std::vector<std::pair<TransitionDescriptor, SystemState>> transitions(
    const SystemState& state, std::size_t admit_cap);

// Applies one transition, updating the learned/inferred counters: advancing
// to Evaluate bumps learned_count, advancing to Infer bumps inferred_count.
SystemState apply_transition(const SystemState& state, const TransitionDescriptor& t);

}  // namespace il
