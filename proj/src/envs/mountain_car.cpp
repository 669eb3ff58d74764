#include "rtdp/envs/mountain_car.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rtdp {

EnvSpec MountainCarEnv::spec() const {
  return EnvSpec{3, 2, params_.max_episode_steps, params_.gamma};
}

EnvState MountainCarEnv::reset(RngStream& rng) const {
  EnvState s;
  s.obs = {rng.uniform(-0.6, -0.4), 0.0};
  s.steps_taken = 0;
  return s;
}

bool MountainCarEnv::terminal(const EnvState& state) const {
  return state.obs[0] >= params_.goal_position ||
         state.steps_taken >= params_.max_episode_steps;
}

Transition MountainCarEnv::step(const EnvState& state, int action, RngStream&) const {
  if (action < 0 || action >= 3) throw std::invalid_argument("mountaincar: action out of range");
  if (terminal(state)) throw std::logic_error("mountaincar: step on terminal state");

  double position = state.obs[0];
  double velocity = state.obs[1];

  velocity += (action - 1) * params_.force -
              std::cos(3.0 * position) * params_.gravity_scale;
  velocity = std::clamp(velocity, -params_.velocity_bound, params_.velocity_bound);
  position += velocity;
  position = std::clamp(position, params_.position_min, params_.position_max);
  if (position <= params_.position_min && velocity < 0.0) velocity = 0.0;

  Transition t;
  t.next_state.obs = {position, velocity};
  t.next_state.steps_taken = state.steps_taken + 1;
  const bool at_goal = position >= params_.goal_position;
  t.reward = at_goal ? params_.goal_reward : params_.step_reward;
  t.terminal = at_goal || t.next_state.steps_taken >= params_.max_episode_steps;
  return t;
}

std::vector<std::pair<double, double>> MountainCarEnv::obs_bounds() const {
  return {{params_.position_min, params_.position_max},
          {-params_.velocity_bound, params_.velocity_bound}};
}

}  // namespace rtdp
