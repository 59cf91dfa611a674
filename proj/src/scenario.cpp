#include "il/scenario.hpp"

#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

namespace il {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream_id) {
  std::uint64_t s = base ^ (0xd6e8feb86659fd93ULL * (stream_id + 1));
  return splitmix64(s);
}

std::uint64_t ScenarioConfig::stream_seed() const { return derive_seed(seed, 1); }
std::uint64_t ScenarioConfig::scheduler_seed() const { return derive_seed(seed, 2); }
std::uint64_t ScenarioConfig::selection_seed() const { return derive_seed(seed, 3); }
std::uint64_t ScenarioConfig::fault_seed() const { return derive_seed(seed, 4); }
std::uint64_t ScenarioConfig::trace_seed() const { return derive_seed(seed, 5); }

HarvesterTrace TraceSpec::build(std::uint64_t seed, double duration_s) const {
  auto param = [&](const std::string& key, double fallback) {
    auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
  };
  if (kind == "constant") {
    return HarvesterTrace::constant(param("power_mw", 20.0), duration_s);
  }
  if (kind == "solar") {
    HarvesterTrace::SolarParams p;
    p.peak_mw = param("peak_mw", p.peak_mw);
    p.day_start_h = param("day_start_h", p.day_start_h);
    p.day_end_h = param("day_end_h", p.day_end_h);
    p.days = static_cast<int>(param("days", std::ceil(duration_s / 86400.0)));
    p.cloud_dropout_rate = param("cloud_dropout_rate", p.cloud_dropout_rate);
    p.cloud_dropout_s = param("cloud_dropout_s", p.cloud_dropout_s);
    p.seed = seed;
    return HarvesterTrace::solar(p);
  }
  if (kind == "rf") {
    HarvesterTrace::RfParams p;
    p.tier = static_cast<int>(param("tier", 1));
    p.jitter_frac = param("jitter_frac", p.jitter_frac);
    p.duration_s = duration_s;
    p.segment_s = param("segment_s", p.segment_s);
    p.seed = seed;
    return HarvesterTrace::rf_distance(p);
  }
  if (kind == "piezo") {
    HarvesterTrace::PiezoParams p;
    p.gentle_mw = param("gentle_mw", p.gentle_mw);
    p.abrupt_mw = param("abrupt_mw", p.abrupt_mw);
    p.blocks = static_cast<int>(param("blocks", 4));
    p.block_s = param("block_s", duration_s / p.blocks);
    p.jitter_frac = param("jitter_frac", p.jitter_frac);
    p.segment_s = param("segment_s", p.segment_s);
    p.seed = seed;
    return HarvesterTrace::piezo(p);
  }
  if (kind == "file") {
    return HarvesterTrace::from_csv(file);
  }
  throw ScenarioError("unknown trace kind: " + kind);
}

FeatureSet ScenarioConfig::features() const {
  return learner.kind == "kmeans" ? FeatureSet::seven() : FeatureSet::five();
}

CostTable ScenarioConfig::cost_table() const {
  CostTable t = learner.kind == "kmeans" ? CostTable::kmeans_defaults() : CostTable::knn_defaults();
  // Charge the configured heuristic through the select action.
  switch (selection.heuristic) {
    case Heuristic::RoundRobin:
      t.actions[{ActionKind::Select, 0}] = t.round_robin_overhead;
      break;
    case Heuristic::KLast:
      t.actions[{ActionKind::Select, 0}] = t.k_last_overhead;
      break;
    case Heuristic::Random:
      t.actions[{ActionKind::Select, 0}] = t.random_overhead;
      break;
    case Heuristic::None:
      break;
  }
  return t;
}

void ScenarioConfig::validate() const {
  if (duration_s <= 0) throw ScenarioError("duration_s must be positive");
  if (stream.anomaly_rate < 0 || stream.anomaly_rate >= 1) {
    throw ScenarioError("anomaly_rate must be in [0, 1)");
  }
  if (stream.window_len < 2) throw ScenarioError("window_len must be >= 2");
  if (stream.anomaly_kind != "mean_shift" && stream.anomaly_kind != "burst") {
    throw ScenarioError("anomaly_kind must be mean_shift or burst");
  }
  if (learner.kind != "knn" && learner.kind != "kmeans") {
    throw ScenarioError("learner kind must be knn or kmeans");
  }
  if (scheduler.kind != "planner" && scheduler.kind != "duty_cycle") {
    throw ScenarioError("scheduler kind must be planner or duty_cycle");
  }
  if (scheduler.kind == "duty_cycle" &&
      std::abs(scheduler.learn_pct + scheduler.infer_pct - 100.0) > 1e-9) {
    throw ScenarioError("duty-cycle learn_pct + infer_pct must equal 100");
  }
  if (selection.p < 0 || selection.p > 1) throw ScenarioError("selection p must be in [0, 1]");
  goal.validate();
  cost_table().validate();
  if (capacitor.capacitance_f <= 0 || capacitor.max_voltage_v <= 0) {
    throw ScenarioError("capacitor parameters must be positive");
  }
}

std::vector<LabeledSample> gen_stream(const StreamSpec& spec, std::uint64_t seed,
                                      std::size_t sample_count) {
  if (spec.anomaly_rate < 0 || spec.anomaly_rate >= 1) {
    throw ContractViolation("anomaly_rate must be in [0, 1)");
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::normal_distribution<double> noise(0.0, spec.base_std);

  if (spec.anomaly_kind != "mean_shift" && spec.anomaly_kind != "burst") {
    throw ContractViolation("anomaly_kind must be mean_shift or burst");
  }
  const bool burst = spec.anomaly_kind == "burst";
  constexpr double kBurstCycles = 2.0;  // low-frequency oscillation per window

  std::vector<LabeledSample> out;
  out.reserve(sample_count);
  while (out.size() < sample_count) {
    bool anomalous = u(rng) < spec.anomaly_rate;
    bool labeled = u(rng) < spec.labeled_fraction;
    double shift = anomalous && !burst ? spec.anomaly_magnitude * spec.base_std : 0.0;
    double amp = anomalous && burst ? spec.anomaly_magnitude * spec.base_std : 0.0;
    for (std::size_t i = 0; i < spec.window_len && out.size() < sample_count; ++i) {
      double wave = amp * std::sin(2.0 * std::acos(-1.0) * kBurstCycles *
                                   static_cast<double>(i) /
                                   static_cast<double>(spec.window_len));
      out.push_back({spec.base_mean + shift + wave + noise(rng), anomalous, labeled});
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Scenario file format
// ---------------------------------------------------------------------------

namespace {

const char* kHeader = "# ilsim scenario v1";

struct Parser {
  std::string origin;
  std::string section;
  int line_no = 0;

  [[noreturn]] void fail(const std::string& msg) const {
    throw ScenarioError(origin + ":" + std::to_string(line_no) + ": " + msg);
  }

  double num(const std::string& v) const {
    try {
      std::size_t pos = 0;
      double d = std::stod(v, &pos);
      if (pos != v.size()) fail("trailing characters in number: " + v);
      return d;
    } catch (const std::invalid_argument&) {
      fail("expected a number, got: " + v);
    } catch (const std::out_of_range&) {
      fail("number out of range: " + v);
    }
  }

  bool boolean(const std::string& v) const {
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    fail("expected true/false, got: " + v);
  }
};

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  auto e = s.find_last_not_of(" \t\r");
  if (b == std::string::npos) return "";
  return s.substr(b, e - b + 1);
}

}  // namespace

ScenarioConfig ScenarioConfig::from_string(const std::string& text, const std::string& origin) {
  ScenarioConfig cfg;
  Parser p;
  p.origin = origin;
  std::istringstream in(text);
  std::string line;
  bool header_seen = false;

  while (std::getline(in, line)) {
    ++p.line_no;
    line = trim(line);
    if (!header_seen) {
      if (line != kHeader) p.fail(std::string("first line must be `") + kHeader + "`");
      header_seen = true;
      continue;
    }
    if (line.empty() || line[0] == '#') continue;
    if (line.front() == '[' && line.back() == ']') {
      p.section = line.substr(1, line.size() - 2);
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string::npos) p.fail("expected `key = value`");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) p.fail("expected `key = value`");

    const std::string& s = p.section;
    if (s == "scenario") {
      if (key == "seed") cfg.seed = static_cast<std::uint64_t>(p.num(value));
      else if (key == "duration_s") cfg.duration_s = p.num(value);
      else if (key == "name") cfg.name = value;
      else p.fail("unknown key in [scenario]: " + key);
    } else if (s == "trace") {
      if (key == "kind") cfg.trace.kind = value;
      else if (key == "file") cfg.trace.file = value;
      else cfg.trace.params[key] = p.num(value);
    } else if (s == "capacitor") {
      if (key == "capacitance_f") cfg.capacitor.capacitance_f = p.num(value);
      else if (key == "initial_voltage_v") cfg.capacitor.voltage_v = p.num(value);
      else if (key == "max_voltage_v") cfg.capacitor.max_voltage_v = p.num(value);
      else if (key == "cutoff_voltage_v") cfg.capacitor.cutoff_voltage_v = p.num(value);
      else p.fail("unknown key in [capacitor]: " + key);
    } else if (s == "learner") {
      if (key == "kind") cfg.learner.kind = value;
      else if (key == "k") cfg.learner.knn_k = static_cast<std::size_t>(p.num(value));
      else if (key == "capacity") cfg.learner.knn_capacity = static_cast<std::size_t>(p.num(value));
      else if (key == "percentile") cfg.learner.percentile = p.num(value);
      else if (key == "clusters") cfg.learner.clusters = static_cast<std::size_t>(p.num(value));
      else if (key == "eta") cfg.learner.eta = p.num(value);
      else p.fail("unknown key in [learner]: " + key);
    } else if (s == "selection") {
      if (key == "heuristic") {
        if (value == "none") cfg.selection.heuristic = Heuristic::None;
        else if (value == "round_robin") cfg.selection.heuristic = Heuristic::RoundRobin;
        else if (value == "k_last") cfg.selection.heuristic = Heuristic::KLast;
        else if (value == "random") cfg.selection.heuristic = Heuristic::Random;
        else p.fail("unknown heuristic: " + value);
      } else if (key == "k") {
        cfg.selection.k = static_cast<std::size_t>(p.num(value));
      } else if (key == "p") {
        cfg.selection.p = p.num(value);
      } else {
        p.fail("unknown key in [selection]: " + key);
      }
    } else if (s == "goal") {
      if (key == "learn_rate") cfg.goal.learn_rate_target = p.num(value);
      else if (key == "learn_count") cfg.goal.learn_count_target = static_cast<int>(p.num(value));
      else if (key == "infer_rate") cfg.goal.infer_rate_target = p.num(value);
      else if (key == "horizon") cfg.goal.horizon_cycles = static_cast<int>(p.num(value));
      else p.fail("unknown key in [goal]: " + key);
    } else if (s == "planner") {
      if (key == "horizon") cfg.plan.horizon = static_cast<int>(p.num(value));
      else if (key == "admit_cap") cfg.plan.admit_cap = static_cast<std::size_t>(p.num(value));
      else if (key == "p_bypass") cfg.plan.p_bypass = p.num(value);
      else if (key == "fuse_decide") cfg.plan.fuse_decide = p.boolean(value);
      else if (key == "epsilon_energy") cfg.plan.epsilon_energy = p.num(value);
      else p.fail("unknown key in [planner]: " + key);
    } else if (s == "scheduler") {
      if (key == "kind") cfg.scheduler.kind = value;
      else if (key == "learn_pct") cfg.scheduler.learn_pct = p.num(value);
      else if (key == "infer_pct") cfg.scheduler.infer_pct = p.num(value);
      else if (key == "mayfly") cfg.scheduler.mayfly = p.boolean(value);
      else if (key == "staleness_s") cfg.scheduler.staleness_s = p.num(value);
      else if (key == "deterministic_interleave") cfg.scheduler.deterministic_interleave = p.boolean(value);
      else p.fail("unknown key in [scheduler]: " + key);
    } else if (s == "stream") {
      if (key == "base_mean") cfg.stream.base_mean = p.num(value);
      else if (key == "base_std") cfg.stream.base_std = p.num(value);
      else if (key == "anomaly_rate") cfg.stream.anomaly_rate = p.num(value);
      else if (key == "anomaly_magnitude") cfg.stream.anomaly_magnitude = p.num(value);
      else if (key == "anomaly_kind") cfg.stream.anomaly_kind = value;
      else if (key == "labeled_fraction") cfg.stream.labeled_fraction = p.num(value);
      else if (key == "window_len") cfg.stream.window_len = static_cast<std::size_t>(p.num(value));
      else if (key == "sample_period_s") cfg.stream.sample_period_s = p.num(value);
      else p.fail("unknown key in [stream]: " + key);
    } else if (s == "faults") {
      if (key == "exp_rate_per_s") cfg.faults.exp_rate_per_s = p.num(value);
      else p.fail("unknown key in [faults]: " + key);
    } else if (s.empty()) {
      p.fail("key outside of a [section]");
    } else {
      p.fail("unknown section: [" + s + "]");
    }
  }
  if (!header_seen) {
    p.line_no = 1;
    p.fail(std::string("first line must be `") + kHeader + "`");
  }

  try {
    cfg.validate();
  } catch (const std::exception& e) {
    throw ScenarioError(origin + ": " + e.what());
  }
  return cfg;
}

ScenarioConfig ScenarioConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open scenario file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_string(buf.str(), path);
}

std::string ScenarioConfig::to_string_file() const {
  std::ostringstream out;
  out.precision(17);
  out << kHeader << "\n\n[scenario]\nseed = " << seed << "\nduration_s = " << duration_s
      << "\nname = " << name << "\n\n[trace]\nkind = " << trace.kind << "\n";
  for (const auto& [k, v] : trace.params) out << k << " = " << v << "\n";
  if (!trace.file.empty()) out << "file = " << trace.file << "\n";
  out << "\n[capacitor]\ncapacitance_f = " << capacitor.capacitance_f
      << "\ninitial_voltage_v = " << capacitor.voltage_v
      << "\nmax_voltage_v = " << capacitor.max_voltage_v
      << "\ncutoff_voltage_v = " << capacitor.cutoff_voltage_v << "\n\n[learner]\nkind = "
      << learner.kind << "\nk = " << learner.knn_k << "\ncapacity = " << learner.knn_capacity
      << "\npercentile = " << learner.percentile << "\nclusters = " << learner.clusters
      << "\neta = " << learner.eta << "\n\n[selection]\nheuristic = "
      << il::to_string(selection.heuristic) << "\nk = " << selection.k << "\np = " << selection.p
      << "\n\n[goal]\nlearn_rate = " << goal.learn_rate_target
      << "\nlearn_count = " << goal.learn_count_target
      << "\ninfer_rate = " << goal.infer_rate_target << "\nhorizon = " << goal.horizon_cycles
      << "\n\n[planner]\nhorizon = " << plan.horizon << "\nadmit_cap = " << plan.admit_cap
      << "\np_bypass = " << plan.p_bypass
      << "\nfuse_decide = " << (plan.fuse_decide ? "true" : "false")
      << "\nepsilon_energy = " << plan.epsilon_energy << "\n\n[scheduler]\nkind = "
      << scheduler.kind << "\nlearn_pct = " << scheduler.learn_pct
      << "\ninfer_pct = " << scheduler.infer_pct
      << "\nmayfly = " << (scheduler.mayfly ? "true" : "false")
      << "\nstaleness_s = " << scheduler.staleness_s << "\ndeterministic_interleave = "
      << (scheduler.deterministic_interleave ? "true" : "false") << "\n\n[stream]\nbase_mean = "
      << stream.base_mean << "\nbase_std = " << stream.base_std
      << "\nanomaly_rate = " << stream.anomaly_rate
      << "\nanomaly_magnitude = " << stream.anomaly_magnitude
      << "\nanomaly_kind = " << stream.anomaly_kind
      << "\nlabeled_fraction = " << stream.labeled_fraction
      << "\nwindow_len = " << stream.window_len
      << "\nsample_period_s = " << stream.sample_period_s << "\n";
  if (faults.exp_rate_per_s > 0) {
    out << "\n[faults]\nexp_rate_per_s = " << faults.exp_rate_per_s << "\n";
  }
  return out.str();
}

ScenarioConfig ScenarioConfig::air_quality() {
  ScenarioConfig c;
  c.name = "air_quality";
  c.duration_s = 2.0 * 86400.0;
  c.trace.kind = "solar";
  c.trace.params["peak_mw"] = 40.0;
  c.trace.params["cloud_dropout_rate"] = 2.0;
  c.capacitor = {0.2, 3.3, 5.0, 2.0};
  c.learner.kind = "knn";
  c.selection.heuristic = Heuristic::RoundRobin;
  c.goal = {2.0, 30, 3.0, 4};
  c.stream.window_len = 60;
  c.stream.sample_period_s = 32.0;
  c.stream.anomaly_rate = 0.1;
  return c;
}

ScenarioConfig ScenarioConfig::human_presence() {
  ScenarioConfig c;
  c.name = "human_presence";
  c.duration_s = 3.0 * 3600.0;
  c.trace.kind = "rf";
  c.trace.params["tier"] = 1;
  c.capacitor = {0.05, 3.0, 5.0, 2.0};
  c.learner.kind = "knn";
  c.selection.heuristic = Heuristic::KLast;
  c.goal = {2.0, 30, 3.0, 4};
  c.stream.window_len = 20;
  c.stream.sample_period_s = 0.5;
  c.stream.anomaly_rate = 0.2;
  return c;
}

ScenarioConfig ScenarioConfig::vibration() {
  ScenarioConfig c;
  c.name = "vibration";
  c.duration_s = 4.0 * 3600.0;
  c.trace.kind = "piezo";
  c.trace.params["blocks"] = 4;
  c.capacitor = {0.006, 2.8, 3.6, 2.0};
  c.learner.kind = "kmeans";
  c.selection.heuristic = Heuristic::RoundRobin;
  c.goal = {2.0, 50, 3.0, 4};
  c.stream.window_len = 250;
  c.stream.sample_period_s = 0.02;  // 50 Hz
  c.stream.anomaly_rate = 0.5;      // two balanced clusters
  c.stream.anomaly_kind = "burst";  // abrupt shaking: large low-frequency motion
  c.stream.anomaly_magnitude = 10.0;
  c.stream.labeled_fraction = 0.1;
  return c;
}

}  // namespace il
