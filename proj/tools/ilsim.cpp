// Command-line front end: run scenarios, compare paired scenarios, run the
// energy pre-inspection, and emit synthetic harvester traces.

#include <filesystem>
#include <iostream>
#include <vector>

#include <CLI11.hpp>

#include "il/harness.hpp"
#include "il/inspect.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitBadScenario = 2;
constexpr int kExitIo = 3;

il::ScenarioConfig load_scenario(const std::string& path) {
  if (path == "air_quality") return il::ScenarioConfig::air_quality();
  if (path == "human_presence") return il::ScenarioConfig::human_presence();
  if (path == "vibration") return il::ScenarioConfig::vibration();
  return il::ScenarioConfig::from_file(path);
}

int cmd_run(const std::string& scenario_path, const std::string& out_dir) {
  il::ScenarioConfig cfg;
  try {
    cfg = load_scenario(scenario_path);
  } catch (const il::ScenarioError& e) {
    std::cerr << "scenario error: " << e.what() << "\n";
    return kExitBadScenario;
  } catch (const std::exception& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return kExitIo;
  }

  il::EpisodeResult result = il::run_episode(cfg);
  try {
    fs::create_directories(out_dir);
    result.log.write_csv(out_dir + "/" + cfg.name + "_log.csv");
    result.metrics.write_csv(out_dir + "/" + cfg.name + "_metrics.csv");
  } catch (const std::exception& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return kExitIo;
  }

  std::cout << "scenario " << cfg.name << ": " << result.learn_actions << " learn, "
            << result.infer_actions << " infer, accuracy " << result.overall_accuracy
            << ", energy " << result.total_energy_mj << " mJ\n";
  return kExitOk;
}

int cmd_compare(const std::string& dir, const std::string& out_dir) {
  std::vector<il::ScenarioConfig> scenarios;
  try {
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
      if (entry.path().extension() == ".scenario") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    for (const auto& f : files) scenarios.push_back(il::ScenarioConfig::from_file(f.string()));
  } catch (const il::ScenarioError& e) {
    std::cerr << "scenario error: " << e.what() << "\n";
    return kExitBadScenario;
  } catch (const std::exception& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return kExitIo;
  }
  if (scenarios.empty()) {
    std::cerr << "io error: no .scenario files in " << dir << "\n";
    return kExitIo;
  }

  il::ComparisonResult result = il::run_comparison(scenarios);
  std::cout << result.summary_table();
  try {
    fs::create_directories(out_dir);
    for (std::size_t i = 0; i < result.episodes.size(); ++i) {
      result.episodes[i].metrics.write_csv(out_dir + "/" + result.summary[i].name +
                                           "_metrics.csv");
    }
  } catch (const std::exception& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return kExitIo;
  }
  return kExitOk;
}

int cmd_inspect(const std::string& scenario_path, double budget_mj, bool fail_on_violation,
                const std::string& out_file) {
  il::ScenarioConfig cfg;
  try {
    cfg = load_scenario(scenario_path);
  } catch (const il::ScenarioError& e) {
    std::cerr << "scenario error: " << e.what() << "\n";
    return kExitBadScenario;
  } catch (const std::exception& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return kExitIo;
  }

  il::CostTable costs = cfg.cost_table();
  // One placeholder program per action kind present in the table, with the
  // table's sub-step count; the inspection charges table costs only.
  std::vector<il::ActionProgram> programs;
  for (int k = 0; k < il::kActionCount; ++k) {
    auto kind = static_cast<il::ActionKind>(k);
    int n = costs.substeps(kind);
    if (n == 0) continue;
    il::ActionProgram p{kind, {}};
    for (int i = 0; i < n; ++i) {
      p.steps.push_back({"substep", [](il::NvStore&, il::VolatileScratch&) {}});
    }
    programs.push_back(std::move(p));
  }

  std::vector<std::vector<double>> corpus;
  auto samples = il::gen_stream(cfg.stream, cfg.stream_seed(), cfg.stream.window_len * 8);
  for (std::size_t off = 0; off + cfg.stream.window_len <= samples.size();
       off += cfg.stream.window_len) {
    std::vector<double> window;
    for (std::size_t i = 0; i < cfg.stream.window_len; ++i) {
      window.push_back(samples[off + i].value);
    }
    corpus.push_back(std::move(window));
  }

  il::InspectionReport report = il::inspect(programs, costs, budget_mj, corpus);
  std::cout << report.to_csv();
  if (!out_file.empty()) {
    try {
      report.write_csv(out_file);
    } catch (const std::exception& e) {
      std::cerr << "io error: " << e.what() << "\n";
      return kExitIo;
    }
  }
  if (fail_on_violation && !report.all_pass()) return kExitViolation;
  return kExitOk;
}

int cmd_gen_trace(const std::string& kind, double duration_s, int days, int tier,
                  std::uint64_t seed, const std::string& out_file) {
  il::TraceSpec spec;
  spec.kind = kind;
  if (kind == "solar") spec.params["days"] = days;
  if (kind == "rf") spec.params["tier"] = tier;
  try {
    il::HarvesterTrace trace = spec.build(seed, duration_s);
    trace.write_csv(out_file);
  } catch (const std::exception& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return kExitIo;
  }
  std::cout << "wrote " << out_file << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"intermittent-learning simulator"};
  app.require_subcommand(1);

  std::string scenario_path, out_dir = ".", dir, out_file;
  double budget_mj = 10.0;
  bool fail_on_violation = false;
  std::string trace_kind = "solar";
  double duration_s = 86400.0;
  int days = 1, tier = 1;
  std::uint64_t seed = 1;

  auto* run = app.add_subcommand("run", "run one scenario and emit log + metrics CSVs");
  run->add_option("scenario", scenario_path,
                  "scenario file, or a packaged name (air_quality, human_presence, vibration)")
      ->required();
  run->add_option("--out-dir", out_dir, "output directory");

  auto* compare = app.add_subcommand("compare", "run every .scenario file in a directory, paired");
  compare->add_option("dir", dir, "directory of .scenario files")->required();
  compare->add_option("--out-dir", out_dir, "output directory");

  auto* insp = app.add_subcommand("inspect", "energy pre-inspection against a per-wake budget");
  insp->add_option("scenario", scenario_path, "scenario file or packaged name")->required();
  insp->add_option("--budget", budget_mj, "per-wake energy budget in mJ")->required();
  insp->add_flag("--fail-on-violation", fail_on_violation, "exit 1 when any sub-step fails");
  insp->add_option("--out", out_file, "also write the report CSV here");

  auto* gen = app.add_subcommand("gen-trace", "emit a synthetic harvester trace CSV");
  gen->add_option("kind", trace_kind, "constant | solar | rf | piezo")->required();
  gen->add_option("--duration", duration_s, "trace duration in seconds");
  gen->add_option("--days", days, "solar: number of days");
  gen->add_option("--tier", tier, "rf: distance tier 1..3");
  gen->add_option("--seed", seed, "trace seed");
  gen->add_option("--out", out_file, "output CSV path")->required();

  CLI11_PARSE(app, argc, argv);

  if (run->parsed()) return cmd_run(scenario_path, out_dir);
  if (compare->parsed()) return cmd_compare(dir, out_dir);
  if (insp->parsed()) return cmd_inspect(scenario_path, budget_mj, fail_on_violation, out_file);
  if (gen->parsed()) return cmd_gen_trace(trace_kind, duration_s, days, tier, seed, out_file);
  return kExitOk;
}
