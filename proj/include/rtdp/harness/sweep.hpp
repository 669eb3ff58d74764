#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "rtdp/agent/agent.hpp"
#include "rtdp/harness/aggregate.hpp"

namespace rtdp {

// One experiment: |n_mcts_values| x repetitions training runs under the same
// total budget, each seeded base_seed + repetition index.
struct SweepConfig {
  AgentConfig agent;                  // env name, decay, budget, train settings
  nlohmann::json env_overrides;       // optional env parameter overrides
  std::vector<int> n_mcts_values = {4, 8, 16, 32, 64, 128};
  int repetitions = 3;
  std::uint64_t base_seed = 0;
  std::string out_dir;
  double aggregation_fraction = 0.15;
  int workers = 0;  // 0 = RTDP_LAB_WORKERS env var, else hardware concurrency
};

struct SweepRunStatus {
  int n_mcts = 0;
  std::uint64_t seed = 0;
  std::string dir;  // relative to out_dir
  bool ok = false;
  std::string error;
  long long completed_episodes = 0;
  long long total_real_steps = 0;
  long long total_traces = 0;
  double wall_seconds = 0.0;
  bool truncated_final_episode = false;
  double partial_return = 0.0;
  long long partial_steps = 0;
};

struct SweepResult {
  std::vector<SweepRunStatus> runs;
  std::vector<TradeoffRow> tradeoff;
  std::string tradeoff_path;
  std::string manifest_path;
};

// Runs the whole grid on a worker pool (one run per worker at a time),
// writing <out>/<env>_n<NNN>_s<seed>/{run.csv,checkpoint.bin}, then
// re-reads the run.csv files to build tradeoff.csv, and finally writes
// manifest.json listing every artifact with a content hash. A failing run is
// recorded in the manifest and the sweep continues. Throws if the output
// directory is not writable (checked before any run starts).
SweepResult run_sweep(const SweepConfig& config);

// The fully resolved sweep config as JSON (also embedded in the manifest).
nlohmann::json sweep_config_json(const SweepConfig& config);

}  // namespace rtdp
