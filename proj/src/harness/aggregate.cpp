#include "rtdp/harness/aggregate.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <stdexcept>

#include "rtdp/io/csv.hpp"

namespace rtdp {

std::vector<TradeoffRow> aggregate_tradeoff(const std::vector<RunCurve>& runs,
                                            double fraction,
                                            BudgetSpec::Mode budget_mode) {
  if (fraction <= 0.0 || fraction >= 1.0) {
    throw std::invalid_argument("aggregate_tradeoff: fraction must be in (0,1)");
  }

  const bool wall = budget_mode == BudgetSpec::Mode::kWallClockSeconds;
  auto axis = [wall](const EpisodeRow& r) {
    return wall ? r.seconds : static_cast<double>(r.traces);
  };

  std::vector<TradeoffRow> rows;
  rows.reserve(runs.size());
  for (const RunCurve& run : runs) {
    TradeoffRow row;
    row.n_mcts = run.n_mcts;
    row.seed = run.seed;
    if (!run.rows.empty()) {
      const double total = axis(run.rows.back());
      const double threshold = (1.0 - fraction) * total;
      double sum = 0.0;
      long long count = 0;
      for (const EpisodeRow& r : run.rows) {
        if (axis(r) > threshold) {
          sum += r.episode_return;
          ++count;
        }
      }
      if (count > 0) {
        row.valid = true;
        row.last_fraction_return = sum / static_cast<double>(count);
      }
    }
    if (!row.valid) {
      row.last_fraction_return = std::numeric_limits<double>::quiet_NaN();
    }
    rows.push_back(row);
  }

  // Spread across repetitions per n_mcts.
  std::map<int, std::vector<TradeoffRow*>> by_n;
  for (TradeoffRow& row : rows) by_n[row.n_mcts].push_back(&row);
  for (auto& [n, group] : by_n) {
    double sum = 0.0, lo = 0.0, hi = 0.0;
    long long count = 0;
    for (const TradeoffRow* row : group) {
      if (!row->valid) continue;
      if (count == 0) {
        lo = hi = row->last_fraction_return;
      } else {
        lo = std::min(lo, row->last_fraction_return);
        hi = std::max(hi, row->last_fraction_return);
      }
      sum += row->last_fraction_return;
      ++count;
    }
    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (TradeoffRow* row : group) {
      row->mean = count > 0 ? sum / static_cast<double>(count) : nan;
      row->min = count > 0 ? lo : nan;
      row->max = count > 0 ? hi : nan;
    }
  }

  std::sort(rows.begin(), rows.end(), [](const TradeoffRow& a, const TradeoffRow& b) {
    return a.n_mcts != b.n_mcts ? a.n_mcts < b.n_mcts : a.seed < b.seed;
  });
  return rows;
}

void write_tradeoff_csv(const std::string& path, const std::vector<TradeoffRow>& rows) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("csv: cannot open for writing: " + path);
  out << "n_mcts,seed,last_fraction_return,mean,min,max\n";
  for (const TradeoffRow& r : rows) {
    out << r.n_mcts << ',' << r.seed << ',' << format_double(r.last_fraction_return)
        << ',' << format_double(r.mean) << ',' << format_double(r.min) << ','
        << format_double(r.max) << '\n';
  }
  if (!out) throw std::runtime_error("csv: write failed: " + path);
}

}  // namespace rtdp
