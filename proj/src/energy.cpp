#include "il/energy.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>

namespace il {

namespace {

constexpr double kPi = 3.14159265358979323846;

double clamp(double v, double lo, double hi) { return std::min(std::max(v, lo), hi); }

}  // namespace

HarvesterTrace HarvesterTrace::constant(double power_mw, double duration_s) {
  HarvesterTrace t;
  t.kind_ = Kind::Constant;
  t.samples_ = {{0.0, power_mw}};
  t.end_time_ = duration_s;
  return t;
}

HarvesterTrace HarvesterTrace::from_samples(std::vector<std::pair<double, double>> samples,
                                            double end_time_s) {
  HarvesterTrace t;
  t.kind_ = Kind::FileTrace;
  t.samples_ = std::move(samples);
  t.end_time_ = end_time_s;
  for (std::size_t i = 1; i < t.samples_.size(); ++i) {
    if (t.samples_[i].first <= t.samples_[i - 1].first) {
      throw ContractViolation("trace times must be strictly increasing");
    }
  }
  for (const auto& [ts, p] : t.samples_) {
    if (p < 0) throw ContractViolation("trace power must be non-negative");
  }
  return t;
}

HarvesterTrace HarvesterTrace::solar(const SolarParams& p) {
  std::mt19937_64 rng(p.seed);
  std::vector<std::pair<double, double>> samples;
  const double res = 60.0;  // one segment per minute
  const double day_len = (p.day_end_h - p.day_start_h) * 3600.0;
  const double total = p.days * 86400.0;

  // Cloud dropout windows, fixed count per day at random daytime offsets.
  std::vector<std::pair<double, double>> dropouts;
  for (int d = 0; d < p.days; ++d) {
    int n = static_cast<int>(std::lround(p.cloud_dropout_rate));
    std::uniform_real_distribution<double> u(0.0, std::max(0.0, day_len - p.cloud_dropout_s));
    for (int i = 0; i < n; ++i) {
      double start = d * 86400.0 + p.day_start_h * 3600.0 + u(rng);
      dropouts.emplace_back(start, start + p.cloud_dropout_s);
    }
  }

  for (double t = 0.0; t < total; t += res) {
    double tod = std::fmod(t, 86400.0);
    double h = tod / 3600.0;
    double power = 0.0;
    if (h >= p.day_start_h && h < p.day_end_h && day_len > 0) {
      double frac = (h - p.day_start_h) / (p.day_end_h - p.day_start_h);
      power = p.peak_mw * std::sin(kPi * frac);
    }
    for (const auto& [a, b] : dropouts) {
      if (t >= a && t < b) power = 0.0;
    }
    samples.emplace_back(t, std::max(0.0, power));
  }
  auto trace = from_samples(std::move(samples), total);
  trace.kind_ = Kind::SolarDiurnal;
  return trace;
}

HarvesterTrace HarvesterTrace::rf_distance(const RfParams& p) {
  // Tier powers loosely calibrated to the 3.1 V / 2.2 V / 0.9 V averages
  // observed at 3, 5 and 7 meters.
  double base = 12.0;
  if (p.tier == 2) base = 4.0;
  if (p.tier >= 3) base = 0.5;

  std::mt19937_64 rng(p.seed);
  std::normal_distribution<double> jitter(0.0, base * p.jitter_frac);
  std::vector<std::pair<double, double>> samples;
  for (double t = 0.0; t < p.duration_s; t += p.segment_s) {
    double power = clamp(base + jitter(rng), 0.04, 50.0);
    samples.emplace_back(t, power);
  }
  auto trace = from_samples(std::move(samples), p.duration_s);
  trace.kind_ = Kind::RfDistance;
  return trace;
}

HarvesterTrace HarvesterTrace::piezo(const PiezoParams& p) {
  std::mt19937_64 rng(p.seed);
  std::vector<std::pair<double, double>> samples;
  double total = p.blocks * p.block_s;
  for (double t = 0.0; t < total; t += p.segment_s) {
    int block = static_cast<int>(t / p.block_s);
    double base = (block % 2 == 0) ? p.gentle_mw : p.abrupt_mw;
    std::normal_distribution<double> jitter(0.0, base * p.jitter_frac);
    samples.emplace_back(t, std::max(0.0, base + jitter(rng)));
  }
  auto trace = from_samples(std::move(samples), total);
  trace.kind_ = Kind::PiezoShaking;
  return trace;
}

HarvesterTrace HarvesterTrace::from_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open trace file: " + path);
  std::string line;
  if (!std::getline(in, line) || line != "time_s,power_mw") {
    throw std::runtime_error("trace file missing `time_s,power_mw` header: " + path);
  }
  std::vector<std::pair<double, double>> samples;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    double t, p;
    char comma;
    if (!(ss >> t >> comma >> p) || comma != ',') {
      throw std::runtime_error("malformed trace row: " + line);
    }
    samples.emplace_back(t, p);
  }
  if (samples.empty()) throw std::runtime_error("empty trace file: " + path);
  double end = samples.back().first;
  double dt = samples.size() > 1 ? samples.back().first - samples[samples.size() - 2].first : 1.0;
  return from_samples(std::move(samples), end + dt);
}

void HarvesterTrace::write_csv(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write trace file: " + path);
  out << "time_s,power_mw\n";
  for (const auto& [t, p] : samples_) {
    out << t << "," << p << "\n";
  }
}

double HarvesterTrace::power_at(double t) const {
  if (t < 0 || t >= end_time_ || samples_.empty()) return 0.0;
  auto it = std::upper_bound(samples_.begin(), samples_.end(), t,
                             [](double v, const std::pair<double, double>& s) { return v < s.first; });
  if (it == samples_.begin()) return 0.0;
  return std::prev(it)->second;
}

double HarvesterTrace::harvested(double t0, double t1) const {
  if (t1 <= t0 || samples_.empty()) return 0.0;
  t0 = std::max(t0, samples_.front().first);
  t1 = std::min(t1, end_time_);
  if (t1 <= t0) return 0.0;

  double total = 0.0;
  auto it = std::upper_bound(samples_.begin(), samples_.end(), t0,
                             [](double v, const std::pair<double, double>& s) { return v < s.first; });
  if (it != samples_.begin()) --it;
  double cursor = t0;
  while (cursor < t1 && it != samples_.end()) {
    double seg_end = (std::next(it) != samples_.end()) ? std::next(it)->first : end_time_;
    double upto = std::min(seg_end, t1);
    if (upto > cursor) total += it->second * (upto - cursor);
    cursor = upto;
    ++it;
  }
  return total;
}

double stored_energy(const Capacitor& cap) {
  return 0.5 * cap.capacitance_f * cap.voltage_v * cap.voltage_v * 1000.0;
}

Capacitor with_energy(Capacitor cap, double energy_mj) {
  double e = std::max(0.0, energy_mj) / 1000.0;  // joules
  cap.voltage_v = std::sqrt(2.0 * e / cap.capacitance_f);
  cap.voltage_v = std::min(cap.voltage_v, cap.max_voltage_v);
  return cap;
}

StepResult step(const Capacitor& cap, const HarvesterTrace& trace, double t, double dt,
                double drain_mj) {
  if (dt <= 0) throw ContractViolation("step requires dt > 0");
  if (drain_mj < 0) throw ContractViolation("step requires drain >= 0");
  double e_max = 0.5 * cap.capacitance_f * cap.max_voltage_v * cap.max_voltage_v * 1000.0;
  StepResult r;
  r.harvested_mj = trace.harvested(t, t + dt);
  double pre = stored_energy(cap) + r.harvested_mj - drain_mj;
  double post = clamp(pre, 0.0, e_max);
  r.clamp_loss_mj = pre - post;  // signed: negative when the floor clamp hit
  r.cap = with_energy(cap, post);
  return r;
}

bool can_execute(const Capacitor& cap, double cost_mj) {
  double cutoff_mj = 0.5 * cap.capacitance_f * cap.cutoff_voltage_v * cap.cutoff_voltage_v * 1000.0;
  return stored_energy(cap) - cost_mj >= cutoff_mj;
}

std::optional<double> next_wakeup(const Capacitor& cap, const HarvesterTrace& trace, double t,
                                  double min_cost_mj) {
  if (can_execute(cap, min_cost_mj)) return t;
  double cutoff_mj = 0.5 * cap.capacitance_f * cap.cutoff_voltage_v * cap.cutoff_voltage_v * 1000.0;
  double e_max = 0.5 * cap.capacitance_f * cap.max_voltage_v * cap.max_voltage_v * 1000.0;
  double needed = min_cost_mj + cutoff_mj;
  if (needed > e_max) return std::nullopt;  // can never charge that high

  double deficit = needed - stored_energy(cap);
  const auto& samples = trace.samples();
  auto it = std::upper_bound(samples.begin(), samples.end(), t,
                             [](double v, const std::pair<double, double>& s) { return v < s.first; });
  if (it != samples.begin()) --it;
  double cursor = std::max(t, samples.empty() ? t : samples.front().first);
  while (it != samples.end() && cursor < trace.end_time()) {
    double seg_end = (std::next(it) != samples.end()) ? std::next(it)->first : trace.end_time();
    if (seg_end > cursor) {
      double p = it->second;
      if (p > 0) {
        double gain = p * (seg_end - cursor);
        if (gain >= deficit) return cursor + deficit / p;
        deficit -= gain;
      }
      cursor = seg_end;
    }
    ++it;
  }
  return std::nullopt;
}

const Cost& CostTable::at(ActionKind kind, int substep) const {
  auto it = actions.find({kind, substep});
  if (it == actions.end()) throw ContractViolation("missing cost entry");
  return it->second;
}

int CostTable::substeps(ActionKind kind) const {
  int n = 0;
  while (actions.count({kind, n})) ++n;
  return n;
}

Cost CostTable::total(ActionKind kind) const {
  Cost sum;
  int n = substeps(kind);
  for (int i = 0; i < n; ++i) {
    const Cost& c = at(kind, i);
    sum.energy_mj += c.energy_mj;
    sum.duration_ms += c.duration_ms;
  }
  return sum;
}

double CostTable::min_substep_energy() const {
  double lo = std::numeric_limits<double>::infinity();
  for (const auto& [k, c] : actions) lo = std::min(lo, c.energy_mj);
  return lo;
}

void CostTable::validate() const {
  for (const auto& [k, c] : actions) {
    if (c.energy_mj <= 0 || c.duration_ms <= 0) {
      throw ContractViolation("cost table entries must be strictly positive");
    }
  }
  for (int i = 0; i < kActionCount; ++i) {
    if (substeps(static_cast<ActionKind>(i)) == 0) {
      throw ContractViolation("cost table missing an action");
    }
  }
}

CostTable CostTable::knn_defaults() {
  CostTable t;
  // learn 9.309 mJ / 1551 ms across three sub-steps.
  double le = 9.309 / 3.0;
  t.actions[{ActionKind::Learn, 0}] = {le, 517.0};
  t.actions[{ActionKind::Learn, 1}] = {le, 517.0};
  t.actions[{ActionKind::Learn, 2}] = {9.309 - le - le, 1551.0 - 517.0 - 517.0};
  t.actions[{ActionKind::Sense, 0}] = {3.8, 120.0};
  t.actions[{ActionKind::Extract, 0}] = {1.2, 151.0};
  t.actions[{ActionKind::Infer, 0}] = {0.9, 64.98};
  t.actions[{ActionKind::Decide, 0}] = {0.010, 0.5};
  t.actions[{ActionKind::Select, 0}] = {0.020, 1.0};
  t.actions[{ActionKind::Learnable, 0}] = {0.005, 0.5};
  t.actions[{ActionKind::Evaluate, 0}] = {0.010, 0.5};
  return t;
}

CostTable CostTable::kmeans_defaults() {
  CostTable t;
  // learn 5.417 mJ / 953.6 ms: feed-forward then winner update.
  double fe = 5.417 * 0.25;
  double fd = 953.6 * 0.25;
  t.actions[{ActionKind::Learn, 0}] = {fe, fd};
  t.actions[{ActionKind::Learn, 1}] = {5.417 - fe, 953.6 - fd};
  t.actions[{ActionKind::Sense, 0}] = {3.62, 100.0};
  t.actions[{ActionKind::Extract, 0}] = {2.26, 150.0};
  t.actions[{ActionKind::Infer, 0}] = {0.0632, 9.47};
  t.actions[{ActionKind::Decide, 0}] = {0.010, 0.5};
  t.actions[{ActionKind::Select, 0}] = {0.020, 1.0};
  t.actions[{ActionKind::Learnable, 0}] = {0.005, 0.5};
  t.actions[{ActionKind::Evaluate, 0}] = {0.010, 0.5};
  return t;
}

}  // namespace il
