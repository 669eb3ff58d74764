#pragma once

#include "rtdp/env.hpp"

namespace rtdp {

// 2D navigation on the unit square. Observation: [x, y]. Actions:
// 0 = north (+y), 1 = east (+x), 2 = south, 3 = west, 4 = stay. The agent
// starts at a uniformly random position outside the goal disc and must reach
// the goal; moves are clamped to the arena.
struct RaceGridParams {
  double goal_x = 0.85;
  double goal_y = 0.85;
  double goal_radius = 0.12;
  double move_step = 0.05;
  double step_reward = -0.01;
  double goal_reward = 1.0;
  int max_episode_steps = 200;
  double gamma = 1.0;
};

class RaceGridEnv final : public Environment {
 public:
  explicit RaceGridEnv(RaceGridParams params = {}) : params_(params) {}

  EnvSpec spec() const override;
  std::string name() const override { return "racegrid"; }
  EnvState reset(RngStream& rng) const override;
  Transition step(const EnvState& state, int action, RngStream& rng) const override;
  bool terminal(const EnvState& state) const override;
  std::vector<std::pair<double, double>> obs_bounds() const override;

  bool in_goal(double x, double y) const;
  const RaceGridParams& params() const { return params_; }

 private:
  RaceGridParams params_;
};

}  // namespace rtdp
