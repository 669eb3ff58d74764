#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rtdp/agent/agent.hpp"

namespace rtdp {

struct RunCurve {
  int n_mcts = 0;
  std::uint64_t seed = 0;
  std::vector<EpisodeRow> rows;
};

struct TradeoffRow {
  int n_mcts = 0;
  std::uint64_t seed = 0;
  double last_fraction_return = 0.0;
  bool valid = false;  // false when no episode completed in the window
  // Aggregates across the repetitions of this n_mcts (valid rows only).
  double mean = 0.0;
  double min = 0.0;
  double max = 0.0;
};

// Final-performance estimator: per run, the mean return of episodes that
// completed in the last `fraction` of the consumed budget (cumulative traces
// in total-traces mode, elapsed seconds in wall-clock mode), then mean and
// min/max spread across repetitions per n_mcts value. Runs with no episode
// in the window are flagged invalid and excluded from the aggregates.
std::vector<TradeoffRow> aggregate_tradeoff(const std::vector<RunCurve>& runs,
                                            double fraction,
                                            BudgetSpec::Mode budget_mode);

// tradeoff.csv: header "n_mcts,seed,last_fraction_return,mean,min,max";
// one row per (n_mcts, seed), sorted by (n_mcts, seed); invalid runs carry
// "nan" in last_fraction_return.
void write_tradeoff_csv(const std::string& path, const std::vector<TradeoffRow>& rows);

}  // namespace rtdp
