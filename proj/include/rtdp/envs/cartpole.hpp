#pragma once

#include "rtdp/env.hpp"

namespace rtdp {

// Pole-balancing task. Observation: [x, x_dot, theta, theta_dot].
// Actions: 0 = push left, 1 = push right. Reward +1 on every step, episode
// ends when |theta| or |x| crosses its threshold or the step cap is reached.
struct CartPoleParams {
  double gravity = 9.8;
  double cart_mass = 1.0;
  double pole_mass = 0.1;
  double pole_half_length = 0.5;
  double force_magnitude = 10.0;
  double integration_dt = 0.02;
  double angle_threshold = 12.0 * 2.0 * 3.14159265358979323846 / 360.0;
  double position_threshold = 2.4;
  int max_episode_steps = 200;
  double gamma = 1.0;
};

class CartPoleEnv final : public Environment {
 public:
  explicit CartPoleEnv(CartPoleParams params = {}) : params_(params) {}

  EnvSpec spec() const override;
  std::string name() const override { return "cartpole"; }
  EnvState reset(RngStream& rng) const override;
  Transition step(const EnvState& state, int action, RngStream& rng) const override;
  bool terminal(const EnvState& state) const override;
  std::vector<std::pair<double, double>> obs_bounds() const override;

  const CartPoleParams& params() const { return params_; }

 private:
  CartPoleParams params_;
};

}  // namespace rtdp
