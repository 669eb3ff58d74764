#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "rtdp/env.hpp"
#include "rtdp/mcts/search.hpp"
#include "rtdp/net/mlp.hpp"

namespace rtdp {

// Linear decay from c_start to c_end over decay_steps real steps, held at
// c_end afterwards.
struct CDecay {
  double c_start = 1.0;
  double c_end = 0.05;
  int decay_steps = 1000;
};

double exploration_c(const CDecay& decay, long long real_step);

enum class CommitMode { kSampleCounts, kArgmaxCounts };

// Picks the action to take in the real environment from the search output:
// either a draw from the normalized counts or the max-count action
// (lowest index on ties).
int commit_action(const SearchResult& result, CommitMode mode, RngStream& rng);

struct BudgetSpec {
  enum class Mode { kWallClockSeconds, kTotalTraces };
  Mode mode = Mode::kTotalTraces;
  double amount = 100000;
};

struct TrainSettings {
  std::vector<int> hidden = {256, 256};
  int batch_size = 16;
  int buffer_capacity = 5000;
  int train_steps_per_real_step = 1;
  AdamConfig adam;  // lr 1e-3 default
};

struct AgentConfig {
  std::string env_name;
  SearchConfig search;       // search.c is overridden by the decay schedule
  CDecay c_decay;
  CommitMode commit = CommitMode::kSampleCounts;
  BudgetSpec budget;
  TrainSettings train;
};

// Paper-reported per-domain defaults (exploration decay, wall-clock budget
// preset); n_mcts and budget mode are left for the caller.
AgentConfig default_agent_config(const std::string& env_name);

struct EpisodeRow {
  long long episode = 0;       // 1-based index
  long long real_steps = 0;    // cumulative at episode end
  long long traces = 0;        // cumulative search traces at episode end
  double seconds = 0.0;        // elapsed wall clock; 0 in total-traces mode
  double episode_return = 0.0; // undiscounted
};

struct RunRecord {
  std::vector<EpisodeRow> rows;  // one row per completed episode
  // Set when the budget ran out mid-episode; the partial episode is not a row.
  bool truncated_final_episode = false;
  double partial_return = 0.0;
  long long partial_steps = 0;
  long long total_real_steps = 0;
  long long total_traces = 0;
  double total_seconds = 0.0;
  std::uint64_t seed = 0;
  Mlp final_params;
};

// The outer loop: for every real step, run a search from the current state
// (plan), push the search targets and take gradient steps (learn), then
// commit an action and advance the environment (real step). Stops when the
// budget no longer covers another search. `clock` supplies elapsed seconds
// and is injectable for tests; the default reads the steady clock.
RunRecord run_training(const Environment& env, const AgentConfig& config,
                       std::uint64_t seed,
                       const std::function<double()>& clock = {});

}  // namespace rtdp
