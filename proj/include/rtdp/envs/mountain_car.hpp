#pragma once

#include "rtdp/env.hpp"

namespace rtdp {

// Under-powered car in a valley. Observation: [position, velocity].
// Actions: 0 = push left, 1 = idle, 2 = push right. Reward is -0.005 on
// every step and +1 on the step that reaches the goal position.
struct MountainCarParams {
  double position_min = -1.2;
  double position_max = 0.6;
  double velocity_bound = 0.07;
  double force = 0.001;
  double gravity_scale = 0.0025;
  double goal_position = 0.5;
  double step_reward = -0.005;
  double goal_reward = 1.0;
  int max_episode_steps = 1000;
  double gamma = 1.0;
};

class MountainCarEnv final : public Environment {
 public:
  explicit MountainCarEnv(MountainCarParams params = {}) : params_(params) {}

  EnvSpec spec() const override;
  std::string name() const override { return "mountaincar"; }
  EnvState reset(RngStream& rng) const override;
  Transition step(const EnvState& state, int action, RngStream& rng) const override;
  bool terminal(const EnvState& state) const override;
  std::vector<std::pair<double, double>> obs_bounds() const override;

  const MountainCarParams& params() const { return params_; }

 private:
  MountainCarParams params_;
};

}  // namespace rtdp
