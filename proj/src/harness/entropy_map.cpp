#include "rtdp/harness/entropy_map.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include "rtdp/io/csv.hpp"

namespace rtdp {

EntropyMap entropy_map(const Mlp& net, const Environment& env, int resolution,
                       long long episode_label) {
  if (resolution < 2) throw std::invalid_argument("entropy_map: resolution must be >= 2");
  if (env.spec().obs_dim != 2) {
    throw std::invalid_argument("entropy_map: env '" + env.name() +
                                "' does not have a 2D observation space");
  }
  const auto bounds = env.obs_bounds();
  for (const auto& [lo, hi] : bounds) {
    if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
      throw std::invalid_argument("entropy_map: unbounded observation space");
    }
  }

  EntropyMap map;
  map.episode_label = episode_label;
  map.resolution = resolution;
  map.cells.reserve(static_cast<std::size_t>(resolution) * resolution);
  const auto center = [resolution](double lo, double hi, int i) {
    return lo + (hi - lo) * (i + 0.5) / resolution;
  };
  std::vector<double> obs(2);
  for (int iy = 0; iy < resolution; ++iy) {
    obs[1] = center(bounds[1].first, bounds[1].second, iy);
    for (int ix = 0; ix < resolution; ++ix) {
      obs[0] = center(bounds[0].first, bounds[0].second, ix);
      const NetOutput out = net.forward(obs);
      map.cells.push_back(EntropyMapCell{obs[0], obs[1], policy_entropy(out.policy)});
    }
  }
  return map;
}

void write_entropy_map_csv(const std::string& path, const EntropyMap& map) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("csv: cannot open for writing: " + path);
  out << "episode,x,y,entropy\n";
  for (const EntropyMapCell& c : map.cells) {
    out << map.episode_label << ',' << format_double(c.x) << ',' << format_double(c.y)
        << ',' << format_double(c.entropy) << '\n';
  }
  if (!out) throw std::runtime_error("csv: write failed: " + path);
}

}  // namespace rtdp
