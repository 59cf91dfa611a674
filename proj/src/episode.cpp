#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "il/harness.hpp"
#include "il/nvcodec.hpp"
#include "il/planner.hpp"

namespace il {

ActionDecision duty_cycle_schedule(const SystemState& state, const SchedulerSpec& config,
                                   DutyCycleState& duty, std::mt19937_64& rng) {
  ActionDecision d;
  if (state.tuples().empty()) {
    d.transition = {TransitionType::AdmitNew, state.next_id(), ActionKind::Sense};
    return d;
  }
  const StateTuple& tuple = state.tuples().front();
  if (tuple.action == ActionKind::Sense) {
    d.transition = {TransitionType::Advance, tuple.example_id, ActionKind::Extract};
    return d;
  }
  // Past feature extraction the baseline goes straight to learn or infer at
  // the configured split; no selection and no planner.
  bool learn;
  if (config.deterministic_interleave) {
    duty.interleave_acc += config.learn_pct / 100.0;
    learn = duty.interleave_acc >= 1.0;
    if (learn) duty.interleave_acc -= 1.0;
  } else {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    learn = u(rng) < config.learn_pct / 100.0;
  }
  ++duty.cycle;
  d.transition = {TransitionType::Advance, tuple.example_id,
                  learn ? ActionKind::Learn : ActionKind::Infer};
  return d;
}

namespace {

namespace nv = nvcodec;

const std::string kModelSlot = "model";
const std::string kBoundsSlot = "norm";
const std::string kSelWinSlot = "selwin";
const std::string kLabeledSlot = "labeled";
constexpr std::size_t kLabeledCap = 50;

std::string ex_slot(ExampleId id, const char* what) {
  return "ex/" + std::to_string(id) + "/" + what;
}

Bytes encode_flag(bool v) { return Bytes{nv::kVersion, static_cast<std::uint8_t>(v ? 1 : 0)}; }
bool decode_flag(const Bytes& b) { return b.at(1) != 0; }

// Labeled-example list for cluster-then-label, bounded FIFO.
Bytes encode_labeled(const std::vector<std::pair<FeatureVector, std::string>>& items) {
  nv::Writer w;
  w.u8(nv::kVersion);
  w.u64(items.size());
  for (const auto& [x, label] : items) {
    w.doubles(x);
    w.str(label);
  }
  return w.take();
}

std::vector<std::pair<FeatureVector, std::string>> decode_labeled(const Bytes& b) {
  nv::Reader r(b);
  r.u8();
  std::vector<std::pair<FeatureVector, std::string>> items(r.u64());
  for (auto& [x, label] : items) {
    x = r.doubles();
    label = r.str();
  }
  return items;
}

struct ExampleMeta {
  double created_at = 0.0;
  bool anomalous = false;
  bool labeled = false;
};

struct Engine {
  explicit Engine(const ScenarioConfig& cfg)
      : cfg(cfg),
        fset(cfg.features()),
        costs(cfg.cost_table()),
        trace(cfg.trace.build(cfg.trace_seed(), cfg.duration_s)),
        faults(cfg.faults.scripted_times, cfg.faults.exp_rate_per_s, cfg.fault_seed()),
        sched_rng(cfg.scheduler_seed()),
        sel_rng(cfg.selection_seed()) {
    std::size_t samples = static_cast<std::size_t>(cfg.duration_s / cfg.stream.sample_period_s) +
                          cfg.stream.window_len;
    stream = gen_stream(cfg.stream, cfg.stream_seed(), samples);
    ctx.cap = cfg.capacitor;
    ctx.trace = &trace;
    ctx.costs = &costs;
    ctx.faults = &faults;
    ctx.audit = &result.audit;
    result.audit.initial_mj = stored_energy(ctx.cap);
    init_store();
  }

  const ScenarioConfig& cfg;
  FeatureSet fset;
  CostTable costs;
  HarvesterTrace trace;
  std::vector<LabeledSample> stream;
  // Windows become available in real time, one per sampling interval; the
  // sensor keeps only the latest complete window.
  std::int64_t last_consumed = -1;

  NvStore store;
  SystemState state;
  ExecContext ctx;
  FaultInjector faults;
  std::mt19937_64 sched_rng, sel_rng;
  DutyCycleState duty;

  EpisodeResult result;
  std::deque<bool> recent_correct;  // sliding accuracy window
  std::array<int, kActionCount> action_counts{};
  std::map<ExampleId, ExampleMeta> meta;

  bool is_kmeans() const { return cfg.learner.kind == "kmeans"; }
  bool is_planner() const { return cfg.scheduler.kind == "planner"; }

  void init_store() {
    if (is_kmeans()) {
      KmModel m = KmModel::zeros(cfg.learner.clusters, static_cast<std::size_t>(fset.count()),
                                 cfg.learner.eta);
      store.put(kModelSlot, nv::encode_km(m));
      store.put(kBoundsSlot, nv::encode_bounds(NormBounds{}));
      store.put(kLabeledSlot, encode_labeled({}));
    } else {
      KnnModel m;
      m.capacity = cfg.learner.knn_capacity;
      m.k = cfg.learner.knn_k;
      m.percentile = cfg.learner.percentile;
      store.put(kModelSlot, nv::encode_knn(m));
    }
    SelectionWindow sw;
    sw.k = cfg.selection.k;
    store.put(kSelWinSlot, nv::encode_selwin(sw));
  }

  double window_period_s() const {
    return static_cast<double>(cfg.stream.window_len) * cfg.stream.sample_period_s;
  }

  std::int64_t total_windows() const {
    auto by_time = static_cast<std::int64_t>(cfg.duration_s / window_period_s());
    auto by_data = static_cast<std::int64_t>(stream.size() / cfg.stream.window_len);
    return std::min(by_time, by_data);
  }

  // Latest complete window not yet consumed, or -1.
  std::int64_t available_window() const {
    auto complete = static_cast<std::int64_t>(ctx.t / window_period_s());
    std::int64_t latest = std::min(complete, total_windows()) - 1;
    return latest > last_consumed ? latest : -1;
  }

  bool stream_exhausted() const { return last_consumed + 1 >= total_windows(); }

  // Completion time of the next unconsumed window.
  double next_window_time() const {
    return static_cast<double>(last_consumed + 2) * window_period_s();
  }

  // --- action programs -----------------------------------------------------

  ActionProgram sense_program(ExampleId id) {
    // The window is captured when the action is scheduled; a fault retries
    // the same data.
    std::int64_t idx = available_window();
    if (idx < 0) throw ContractViolation("sense scheduled without an available window");
    last_consumed = idx;
    std::size_t base = static_cast<std::size_t>(idx) * cfg.stream.window_len;
    std::vector<double> window;
    bool anomalous = false, labeled = false;
    std::size_t n_abnormal = 0;
    for (std::size_t i = 0; i < cfg.stream.window_len; ++i) {
      const LabeledSample& s = stream[base + i];
      window.push_back(s.value);
      if (s.anomalous) ++n_abnormal;
      if (i == 0) labeled = s.labeled;
    }
    anomalous = n_abnormal * 2 > cfg.stream.window_len;
    meta[id] = {ctx.t, anomalous, labeled};

    ActionProgram p{ActionKind::Sense, {}};
    p.steps.push_back({"capture", [this, id, window](NvStore& s, VolatileScratch&) {
                         s.put(ex_slot(id, "raw"), nv::encode_doubles(window));
                       }});
    return p;
  }

  ActionProgram extract_program(ExampleId id) {
    ActionProgram p{ActionKind::Extract, {}};
    p.steps.push_back({"features", [this, id](NvStore& s, VolatileScratch&) {
                         auto raw = nv::decode_doubles(s.get(ex_slot(id, "raw")));
                         FeatureVector f = extract_features(raw, fset);
                         s.put(ex_slot(id, "feat"), nv::encode_doubles(f));
                         if (is_kmeans()) {
                           NormBounds nb = nv::decode_bounds(s.get(kBoundsSlot));
                           nb.observe(f);
                           s.put(kBoundsSlot, nv::encode_bounds(nb));
                         }
                       }});
    return p;
  }

  ActionProgram decide_program(ExampleId id) {
    ActionProgram p{ActionKind::Decide, {}};
    p.steps.push_back({"route", [](NvStore&, VolatileScratch&) {}});
    (void)id;
    return p;
  }

  // Centroids available to the round-robin heuristic: the competitive
  // learner's weight rows, or per-class running means kept by kNN inference.
  std::vector<FeatureVector> rr_centroids(const NvStore& s, const FeatureVector& x,
                                          FeatureVector* query) const {
    std::vector<FeatureVector> cents;
    if (is_kmeans()) {
      KmModel m = nv::decode_km(s.get(kModelSlot));
      bool trained = false;
      for (const auto& row : m.weights) {
        for (double w : row) {
          if (w != 0.0) trained = true;
        }
      }
      if (!trained) return {};
      NormBounds nb = nv::decode_bounds(s.get(kBoundsSlot));
      *query = nb.normalize(x);
      return m.weights;
    }
    for (const char* name : {"centroid/normal", "centroid/abnormal"}) {
      if (!s.has(name)) return {};
      auto packed = nv::decode_doubles(s.get(name));
      if (packed.empty() || packed[0] < 1.0) return {};
      cents.emplace_back(packed.begin() + 1, packed.end());
    }
    *query = x;
    return cents;
  }

  ActionProgram select_program(ExampleId id) {
    ActionProgram p{ActionKind::Select, {}};
    p.steps.push_back({"gate", [this, id](NvStore& s, VolatileScratch&) {
                         FeatureVector x = nv::decode_doubles(s.get(ex_slot(id, "feat")));
                         SelectionWindow sw = nv::decode_selwin(s.get(kSelWinSlot));
                         bool selected = true;
                         switch (cfg.selection.heuristic) {
                           case Heuristic::None:
                             break;
                           case Heuristic::RoundRobin: {
                             FeatureVector q;
                             auto cents = rr_centroids(s, x, &q);
                             // Until centroids exist every example is taken.
                             if (!cents.empty()) {
                               selected = select_round_robin(q, cents, sw, euclidean);
                             }
                             break;
                           }
                           case Heuristic::KLast: {
                             FeatureVector q = x;
                             if (is_kmeans()) {
                               NormBounds nb = nv::decode_bounds(s.get(kBoundsSlot));
                               q = nb.normalize(x);
                             }
                             selected = select_k_last(q, sw, euclidean);
                             break;
                           }
                           case Heuristic::Random:
                             selected = select_random(cfg.selection.p, sel_rng);
                             break;
                         }
                         s.put(kSelWinSlot, nv::encode_selwin(sw));
                         s.put(ex_slot(id, "selected"), encode_flag(selected));
                       }});
    return p;
  }

  ActionProgram learnable_program(ExampleId id) {
    ActionProgram p{ActionKind::Learnable, {}};
    p.steps.push_back({"precheck", [this, id](NvStore& s, VolatileScratch&) {
                         bool ok = s.has(ex_slot(id, "feat"));
                         if (is_kmeans()) {
                           // Hold competitive learning back until the running
                           // normalization has settled; seeding a cluster row
                           // from an immature scaling produces a direction no
                           // real example can win against.
                           NormBounds nb = nv::decode_bounds(s.get(kBoundsSlot));
                           ok = ok && nb.observations >= 3 * cfg.learner.clusters;
                         }
                         s.put(ex_slot(id, "learnable"), encode_flag(ok));
                       }});
    return p;
  }

  ActionProgram learn_program(ExampleId id) {
    ActionProgram p{ActionKind::Learn, {}};
    if (!is_kmeans()) {
      // Three commits: insert and pairwise distances, member rescoring, then
      // threshold update.
      p.steps.push_back({"insert", [this, id](NvStore& s, VolatileScratch&) {
                           KnnModel m = nv::decode_knn(s.get(kModelSlot));
                           FeatureVector x = nv::decode_doubles(s.get(ex_slot(id, "feat")));
                           m.examples.push_back(x);
                           while (m.examples.size() > m.capacity) m.examples.pop_front();
                           nv::Writer w;
                           w.u8(nv::kVersion);
                           w.u64(m.examples.size());
                           for (const auto& e : m.examples) w.doubles(e);
                           s.put("learn/members", w.take());
                         }});
      p.steps.push_back({"rescore", [this](NvStore& s, VolatileScratch&) {
                           nv::Reader r(s.get("learn/members"));
                           r.u8();
                           KnnModel m = nv::decode_knn(s.get(kModelSlot));
                           m.examples.clear();
                           std::size_t n = r.u64();
                           for (std::size_t i = 0; i < n; ++i) m.examples.push_back(r.doubles());
                           std::vector<double> scores;
                           if (m.examples.size() >= m.k + 1) {
                             for (const auto& e : m.examples) {
                               scores.push_back(knn_anomaly_score(e, m));
                             }
                           }
                           s.put("learn/scores", nv::encode_doubles(scores));
                         }});
      p.steps.push_back({"threshold", [this](NvStore& s, VolatileScratch&) {
                           nv::Reader r(s.get("learn/members"));
                           r.u8();
                           KnnModel m = nv::decode_knn(s.get(kModelSlot));
                           m.examples.clear();
                           std::size_t n = r.u64();
                           for (std::size_t i = 0; i < n; ++i) m.examples.push_back(r.doubles());
                           auto scores = nv::decode_doubles(s.get("learn/scores"));
                           if (!scores.empty()) {
                             m.threshold = nearest_rank_percentile(scores, m.percentile);
                             m.threshold_valid = true;
                           }
                           s.put(kModelSlot, nv::encode_knn(m));
                           s.erase_prefix("learn/");
                         }});
      return p;
    }
    bool labeled = meta.count(id) ? meta[id].labeled : false;
    std::string truth = meta.count(id) && meta[id].anomalous ? "abnormal" : "normal";
    p.steps.push_back({"feedforward", [this, id](NvStore& s, VolatileScratch&) {
                         KmModel m = nv::decode_km(s.get(kModelSlot));
                         NormBounds nb = nv::decode_bounds(s.get(kBoundsSlot));
                         FeatureVector x =
                             nb.normalize(nv::decode_doubles(s.get(ex_slot(id, "feat"))));
                         s.put("learn/x", nv::encode_doubles(x));
                         s.put("learn/act", nv::encode_doubles(km_activation(m, x)));
                       }});
    p.steps.push_back({"update", [this, labeled, truth](NvStore& s, VolatileScratch&) {
                         KmModel m = nv::decode_km(s.get(kModelSlot));
                         FeatureVector x = nv::decode_doubles(s.get("learn/x"));
                         // Seed empty rows with novel examples so every
                         // cluster gets a live weight vector; zero rows can
                         // never win a dot-product competition.
                         std::size_t zero_row = m.weights.size();
                         bool novel = true;
                         for (std::size_t j = 0; j < m.weights.size(); ++j) {
                           double dot = 0, nw = 0, nx = 0;
                           for (std::size_t i = 0; i < x.size(); ++i) {
                             dot += m.weights[j][i] * x[i];
                             nw += m.weights[j][i] * m.weights[j][i];
                             nx += x[i] * x[i];
                           }
                           if (nw == 0.0) {
                             if (zero_row == m.weights.size()) zero_row = j;
                           } else if (nx > 0.0 &&
                                      dot / std::sqrt(nw * nx) >= 0.7) {
                             novel = false;
                           }
                         }
                         if (zero_row < m.weights.size() && novel) {
                           m.weights[zero_row] = x;
                         } else {
                           m = km_learn_step(m, x);
                         }
                         auto tagged = decode_labeled(s.get(kLabeledSlot));
                         if (labeled) {
                           tagged.emplace_back(x, truth);
                           while (tagged.size() > kLabeledCap) tagged.erase(tagged.begin());
                           s.put(kLabeledSlot, encode_labeled(tagged));
                         }
                         if (!tagged.empty()) m = label_clusters(std::move(m), tagged);
                         s.put(kModelSlot, nv::encode_km(m));
                         s.erase_prefix("learn/");
                       }});
    return p;
  }

  ActionProgram evaluate_program(ExampleId id) {
    ActionProgram p{ActionKind::Evaluate, {}};
    p.steps.push_back({"tally", [id](NvStore& s, VolatileScratch&) {
                         double n = 0;
                         if (s.has("evals")) n = nv::decode_doubles(s.get("evals")).at(0);
                         s.put("evals", nv::encode_doubles({n + 1}));
                         (void)id;
                       }});
    return p;
  }

  ActionProgram infer_program(ExampleId id) {
    ActionProgram p{ActionKind::Infer, {}};
    p.steps.push_back({"classify", [this, id](NvStore& s, VolatileScratch&) {
                         FeatureVector x = nv::decode_doubles(s.get(ex_slot(id, "feat")));
                         Classification c = Classification::Normal;
                         if (is_kmeans()) {
                           KmModel m = nv::decode_km(s.get(kModelSlot));
                           NormBounds nb = nv::decode_bounds(s.get(kBoundsSlot));
                           KmInference inf = km_infer(m, nb.normalize(x));
                           if (inf.label) {
                             c = *inf.label == "abnormal" ? Classification::Abnormal
                                                          : Classification::Normal;
                           } else {
                             c = inf.cluster == 0 ? Classification::Normal
                                                  : Classification::Abnormal;
                           }
                         } else {
                           KnnModel m = nv::decode_knn(s.get(kModelSlot));
                           if (m.threshold_valid) c = knn_infer(m, x);
                           // Keep per-class running means for round-robin.
                           const char* slot = c == Classification::Abnormal ? "centroid/abnormal"
                                                                            : "centroid/normal";
                           std::vector<double> packed;
                           if (s.has(slot)) packed = nv::decode_doubles(s.get(slot));
                           if (packed.size() != x.size() + 1) {
                             packed.assign(x.size() + 1, 0.0);
                           }
                           double cnt = packed[0] + 1.0;
                           for (std::size_t i = 0; i < x.size(); ++i) {
                             packed[i + 1] += (x[i] - packed[i + 1]) / cnt;
                           }
                           packed[0] = cnt;
                           s.put(slot, nv::encode_doubles(packed));
                         }
                         s.put(ex_slot(id, "class"), encode_flag(c == Classification::Abnormal));
                       }});
    return p;
  }

  ActionProgram program_for(const TransitionDescriptor& t) {
    if (t.type == TransitionType::AdmitNew) return sense_program(t.example_id);
    switch (t.action) {
      case ActionKind::Extract: return extract_program(t.example_id);
      case ActionKind::Decide: return decide_program(t.example_id);
      case ActionKind::Select: return select_program(t.example_id);
      case ActionKind::Learnable: return learnable_program(t.example_id);
      case ActionKind::Learn: return learn_program(t.example_id);
      case ActionKind::Evaluate: return evaluate_program(t.example_id);
      case ActionKind::Infer: return infer_program(t.example_id);
      case ActionKind::Sense: break;
    }
    throw ContractViolation("no program for transition " + to_string(t));
  }

  // --- episode loop ---------------------------------------------------------

  void drop_example(ExampleId id) {
    state.remove(id);
    store.erase_prefix("ex/" + std::to_string(id) + "/");
    meta.erase(id);
  }

  bool knn_ready() const {
    return is_kmeans() || nv::decode_knn(store.get(kModelSlot)).threshold_valid;
  }

  ActionDecision schedule() {
    if (is_planner()) {
      PlanConfig pc = cfg.plan;
      if (available_window() < 0) pc.admit_cap = 0;  // no fresh data to sense
      return plan(state, cfg.goal, ctx.cap, costs, pc, sched_rng);
    }
    ActionDecision d = duty_cycle_schedule(state, cfg.scheduler, duty, sched_rng);
    if (d.transition.type == TransitionType::AdmitNew && available_window() < 0) {
      d.sleep = true;  // wait for the next window
    }
    if (d.transition.action == ActionKind::Infer && !knn_ready()) {
      d.transition.action = ActionKind::Learn;  // no usable model yet
    }
    return d;
  }

  void append_metrics() {
    MetricsRow row;
    row.t_s = ctx.t;
    row.energy_consumed_mj = result.audit.drained_mj;
    row.learned = action_counts[static_cast<int>(ActionKind::Learn)];
    row.inferred = action_counts[static_cast<int>(ActionKind::Infer)];
    int correct = 0;
    for (bool b : recent_correct) correct += b ? 1 : 0;
    row.accuracy = recent_correct.empty()
                       ? 0.0
                       : static_cast<double>(correct) / static_cast<double>(recent_correct.size());
    row.actions_by_kind = action_counts;
    result.metrics.rows.push_back(row);
  }

  // Cheapest full transition available right now; infinity when the state
  // offers nothing to pay for.
  double cheapest_transition_mj(std::size_t admit_cap) const {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& [t, next] : transitions(state, admit_cap)) {
      best = std::min(best, transition_energy(t, costs));
    }
    return best;
  }

  // Sleeps until `target_mj` is affordable. False when the trace cannot
  // deliver it.
  bool sleep_until_affordable(double target_mj) {
    auto wake = next_wakeup(ctx.cap, trace, ctx.t, target_mj);
    if (!wake) return false;
    if (*wake <= ctx.t) {
      ctx.advance(1e-3, 0.0);  // avoid spinning on a boundary
      return true;
    }
    ctx.advance(*wake - ctx.t, 0.0);
    return true;
  }

  void finish() {
    result.audit.final_mj = stored_energy(ctx.cap);
    result.final_store = store;
    result.learn_actions = action_counts[static_cast<int>(ActionKind::Learn)];
    result.infer_actions = action_counts[static_cast<int>(ActionKind::Infer)];
    result.total_energy_mj = result.audit.drained_mj;
    if (!result.metrics.rows.empty()) {
      result.final_accuracy = result.metrics.rows.back().accuracy;
    }
    if (result.infer_actions > 0) {
      result.overall_accuracy =
          static_cast<double>(result.correct_inferences) / result.infer_actions;
    }
  }

  EpisodeResult run() {
    const double overhead_mj = is_planner() ? costs.planner_overhead.energy_mj : 0.0;
    const double overhead_s = is_planner() ? costs.planner_overhead.duration_ms / 1000.0 : 0.0;
    const double wake_floor = overhead_mj + costs.min_substep_energy();

    while (ctx.t < cfg.duration_s) {
      if (state.tuples().empty() && available_window() < 0) {
        // Nothing in flight and no fresh data; wait for the next window.
        if (stream_exhausted()) break;
        double next = std::min(next_window_time(), cfg.duration_s);
        if (next <= ctx.t) break;
        ctx.advance(next - ctx.t, 0.0);
        continue;
      }

      if (!can_execute(ctx.cap, wake_floor)) {
        if (!sleep_until_affordable(wake_floor)) break;
        if (ctx.t >= cfg.duration_s) break;
        continue;
      }

      if (is_planner()) ctx.advance(overhead_s, overhead_mj);

      ActionDecision d = schedule();
      if (d.sleep) {
        std::size_t cap = available_window() >= 0 ? cfg.plan.admit_cap : 0;
        double need = cheapest_transition_mj(cap);
        if (!std::isfinite(need)) {
          // Only an admit could proceed and no window is ready yet.
          if (stream_exhausted()) break;
          double next = std::min(next_window_time(), cfg.duration_s);
          if (next <= ctx.t) break;
          ctx.advance(next - ctx.t, 0.0);
          continue;
        }
        if (!sleep_until_affordable(need + overhead_mj)) break;
        continue;
      }

      if (d.transition.type == TransitionType::Remove) {
        drop_example(d.transition.example_id);
        continue;
      }

      ActionProgram prog = program_for(d.transition);
      ExecutionOutcome out;
      for (;;) {
        out = execute_action(prog, store, ctx, &result.log, d.transition.example_id,
                             to_string(d.transition));
        if (out.status != ExecStatus::PowerFailedRestart) break;
      }
      if (out.status == ExecStatus::TraceExhausted) break;

      state = apply_transition(state, d.transition);
      ActionKind kind = d.transition.type == TransitionType::AdmitNew ? ActionKind::Sense
                                                                      : d.transition.action;
      ++action_counts[static_cast<int>(kind)];
      post_action(kind, d.transition.example_id);
      append_metrics();
    }
    finish();
    return std::move(result);
  }

  void post_action(ActionKind kind, ExampleId id) {
    switch (kind) {
      case ActionKind::Select:
        if (!decode_flag(store.get(ex_slot(id, "selected")))) drop_example(id);
        break;
      case ActionKind::Learnable:
        if (!decode_flag(store.get(ex_slot(id, "learnable")))) drop_example(id);
        break;
      case ActionKind::Learn:
        if (!is_planner()) drop_example(id);  // the baseline skips evaluate
        break;
      case ActionKind::Evaluate:
        drop_example(id);
        break;
      case ActionKind::Infer: {
        bool abnormal = decode_flag(store.get(ex_slot(id, "class")));
        bool correct = meta.count(id) && meta[id].anomalous == abnormal;
        if (correct) ++result.correct_inferences;
        recent_correct.push_back(correct);
        while (recent_correct.size() > 30) recent_correct.pop_front();
        drop_example(id);
        break;
      }
      default:
        break;
    }
    // The baseline discards anything older than the staleness window.
    if (!is_planner() && cfg.scheduler.mayfly) {
      std::vector<ExampleId> stale;
      for (const auto& t : state.tuples()) {
        auto it = meta.find(t.example_id);
        if (it != meta.end() && ctx.t - it->second.created_at > cfg.scheduler.staleness_s) {
          stale.push_back(t.example_id);
        }
      }
      for (ExampleId sid : stale) drop_example(sid);
    }
  }
};

}  // namespace

EpisodeResult run_episode(const ScenarioConfig& scenario) {
  scenario.validate();
  Engine engine(scenario);
  return engine.run();
}

}  // namespace il
