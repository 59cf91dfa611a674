#include "il/harness.hpp"

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace il {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) out.push_back(field);
  return out;
}

}  // namespace

std::string MetricsFrame::to_csv() const {
  std::ostringstream out;
  out.precision(17);
  out << "t_s,energy_consumed_mj,learned,inferred,accuracy";
  for (int i = 0; i < kActionCount; ++i) out << "," << to_string(static_cast<ActionKind>(i));
  out << "\n";
  for (const auto& r : rows) {
    out << r.t_s << "," << r.energy_consumed_mj << "," << r.learned << "," << r.inferred << ","
        << r.accuracy;
    for (int c : r.actions_by_kind) out << "," << c;
    out << "\n";
  }
  return out.str();
}

void MetricsFrame::write_csv(const std::string& path) const {
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw std::runtime_error("cannot write metrics file: " + path);
    out << to_csv();
  }
  std::rename(tmp.c_str(), path.c_str());
}

MetricsFrame MetricsFrame::from_csv_text(const std::string& text) {
  MetricsFrame frame;
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("metrics csv is empty");
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto fields = split_csv_line(line);
    if (fields.size() != 5 + kActionCount) {
      throw std::runtime_error("malformed metrics row: " + line);
    }
    MetricsRow r;
    r.t_s = std::stod(fields[0]);
    r.energy_consumed_mj = std::stod(fields[1]);
    r.learned = std::stoi(fields[2]);
    r.inferred = std::stoi(fields[3]);
    r.accuracy = std::stod(fields[4]);
    for (int i = 0; i < kActionCount; ++i) r.actions_by_kind[i] = std::stoi(fields[5 + i]);
    frame.rows.push_back(r);
  }
  return frame;
}

const MetricsRow& MetricsFrame::last() const {
  if (rows.empty()) throw std::runtime_error("metrics frame is empty");
  return rows.back();
}

std::string ComparisonResult::summary_table() const {
  std::ostringstream out;
  out << std::left << std::setw(24) << "scenario" << std::right << std::setw(10) << "acc"
      << std::setw(10) << "final" << std::setw(8) << "learn" << std::setw(8) << "infer"
      << std::setw(14) << "energy_mj" << "\n";
  for (const auto& r : summary) {
    out << std::left << std::setw(24) << r.name << std::right << std::fixed
        << std::setprecision(3) << std::setw(10) << r.mean_accuracy << std::setw(10)
        << r.final_accuracy << std::setw(8) << r.learn_actions << std::setw(8) << r.infer_actions
        << std::setw(14) << r.total_energy_mj << "\n";
    out.unsetf(std::ios::fixed);
  }
  return out.str();
}

ComparisonResult run_comparison(std::vector<ScenarioConfig> scenarios) {
  ComparisonResult result;
  if (scenarios.empty()) return result;
  // Pair the runs on one data stream: every variant sees the same samples.
  std::uint64_t shared = scenarios.front().seed;
  for (auto& sc : scenarios) {
    ScenarioConfig paired = sc;
    paired.seed = shared;
    EpisodeResult ep = run_episode(paired);
    ComparisonRow row;
    row.name = sc.name;
    row.final_accuracy = ep.final_accuracy;
    row.mean_accuracy = ep.overall_accuracy;
    row.learn_actions = ep.learn_actions;
    row.infer_actions = ep.infer_actions;
    row.total_energy_mj = ep.total_energy_mj;
    result.summary.push_back(row);
    result.episodes.push_back(std::move(ep));
  }
  return result;
}

}  // namespace il
