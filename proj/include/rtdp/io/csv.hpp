#pragma once

#include <string>
#include <vector>

#include "rtdp/agent/agent.hpp"

namespace rtdp {

// Locale-independent shortest round-trip formatting (std::to_chars), so CSV
// output is byte-stable across runs.
std::string format_double(double v);
double parse_double(const std::string& s);

// run.csv: header "episode,real_steps,traces,seconds,return".
void write_run_csv(const std::string& path, const std::vector<EpisodeRow>& rows);
std::vector<EpisodeRow> read_run_csv(const std::string& path);

}  // namespace rtdp
