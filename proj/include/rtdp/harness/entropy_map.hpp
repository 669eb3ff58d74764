#pragma once

#include <string>
#include <vector>

#include "rtdp/env.hpp"
#include "rtdp/net/mlp.hpp"

namespace rtdp {

struct EntropyMapCell {
  double x = 0.0;
  double y = 0.0;
  double entropy = 0.0;  // nats, in [0, ln(action_count)]
};

struct EntropyMap {
  long long episode_label = 0;
  int resolution = 0;
  std::vector<EntropyMapCell> cells;  // row-major, y outer, x inner
};

// Evaluates the policy head on a uniform grid of cell centers over the 2D
// observation space and records the policy entropy per cell. Throws
// std::invalid_argument for environments without a bounded 2D observation
// space or resolution < 2.
EntropyMap entropy_map(const Mlp& net, const Environment& env, int resolution,
                       long long episode_label);

// entropy_map.csv: header "episode,x,y,entropy".
void write_entropy_map_csv(const std::string& path, const EntropyMap& map);

}  // namespace rtdp
