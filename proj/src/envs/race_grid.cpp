#include "rtdp/envs/race_grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rtdp {

EnvSpec RaceGridEnv::spec() const {
  return EnvSpec{5, 2, params_.max_episode_steps, params_.gamma};
}

bool RaceGridEnv::in_goal(double x, double y) const {
  const double dx = x - params_.goal_x;
  const double dy = y - params_.goal_y;
  return dx * dx + dy * dy <= params_.goal_radius * params_.goal_radius;
}

EnvState RaceGridEnv::reset(RngStream& rng) const {
  EnvState s;
  s.obs.resize(2);
  s.steps_taken = 0;
  do {
    s.obs[0] = rng.uniform();
    s.obs[1] = rng.uniform();
  } while (in_goal(s.obs[0], s.obs[1]));
  return s;
}

bool RaceGridEnv::terminal(const EnvState& state) const {
  return in_goal(state.obs[0], state.obs[1]) ||
         state.steps_taken >= params_.max_episode_steps;
}

Transition RaceGridEnv::step(const EnvState& state, int action, RngStream&) const {
  if (action < 0 || action >= 5) throw std::invalid_argument("racegrid: action out of range");
  if (terminal(state)) throw std::logic_error("racegrid: step on terminal state");

  static constexpr double kDx[5] = {0.0, 1.0, 0.0, -1.0, 0.0};
  static constexpr double kDy[5] = {1.0, 0.0, -1.0, 0.0, 0.0};

  const double x = std::clamp(state.obs[0] + kDx[action] * params_.move_step, 0.0, 1.0);
  const double y = std::clamp(state.obs[1] + kDy[action] * params_.move_step, 0.0, 1.0);

  Transition t;
  t.next_state.obs = {x, y};
  t.next_state.steps_taken = state.steps_taken + 1;
  const bool at_goal = in_goal(x, y);
  t.reward = at_goal ? params_.goal_reward : params_.step_reward;
  t.terminal = at_goal || t.next_state.steps_taken >= params_.max_episode_steps;
  return t;
}

std::vector<std::pair<double, double>> RaceGridEnv::obs_bounds() const {
  return {{0.0, 1.0}, {0.0, 1.0}};
}

}  // namespace rtdp
