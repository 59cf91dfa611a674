#include "il/inspect.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace il {

bool InspectionReport::all_pass() const {
  return std::all_of(entries.begin(), entries.end(),
                     [](const InspectionEntry& e) { return e.pass; });
}

std::string InspectionReport::to_csv() const {
  std::ostringstream out;
  out.precision(17);
  out << "action,substep,max_energy_mj,max_time_ms,budget_mj,verdict\n";
  for (const auto& e : entries) {
    out << to_string(e.action) << "," << e.substep << "," << e.max_energy_mj << ","
        << e.max_time_ms << "," << e.budget_mj << "," << (e.pass ? "pass" : "fail") << "\n";
  }
  return out.str();
}

void InspectionReport::write_csv(const std::string& path) const {
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw std::runtime_error("cannot write inspection report: " + path);
    out << to_csv();
  }
  std::rename(tmp.c_str(), path.c_str());
}

InspectionReport inspect(const std::vector<ActionProgram>& programs, const CostTable& costs,
                         double budget_mj, const std::vector<std::vector<double>>& corpus,
                         const CostMultiplier& multiplier) {
  if (corpus.empty()) throw ContractViolation("inspection corpus must be non-empty");

  InspectionReport report;
  report.corpus_size = corpus.size();
  for (const auto& prog : programs) {
    for (std::size_t i = 0; i < prog.steps.size(); ++i) {
      InspectionEntry entry;
      entry.action = prog.kind;
      entry.substep = static_cast<int>(i);
      entry.budget_mj = budget_mj;
      const Cost& c = costs.at(prog.kind, static_cast<int>(i));
      for (const auto& input : corpus) {
        double m = multiplier ? multiplier(prog.kind, entry.substep, input.size()) : 1.0;
        entry.max_energy_mj = std::max(entry.max_energy_mj, c.energy_mj * m);
        entry.max_time_ms = std::max(entry.max_time_ms, c.duration_ms * m);
      }
      entry.pass = !(entry.max_energy_mj > budget_mj);
      report.entries.push_back(entry);
    }
  }
  return report;
}

}  // namespace il
