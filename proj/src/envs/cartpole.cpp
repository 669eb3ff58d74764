#include "rtdp/envs/cartpole.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace rtdp {

EnvSpec CartPoleEnv::spec() const {
  return EnvSpec{2, 4, params_.max_episode_steps, params_.gamma};
}

EnvState CartPoleEnv::reset(RngStream& rng) const {
  EnvState s;
  s.obs.resize(4);
  for (double& v : s.obs) v = rng.uniform(-0.05, 0.05);
  s.steps_taken = 0;
  return s;
}

bool CartPoleEnv::terminal(const EnvState& state) const {
  return std::abs(state.obs[0]) > params_.position_threshold ||
         std::abs(state.obs[2]) > params_.angle_threshold ||
         state.steps_taken >= params_.max_episode_steps;
}

Transition CartPoleEnv::step(const EnvState& state, int action, RngStream&) const {
  if (action < 0 || action >= 2) throw std::invalid_argument("cartpole: action out of range");
  if (terminal(state)) throw std::logic_error("cartpole: step on terminal state");

  const double x = state.obs[0];
  const double x_dot = state.obs[1];
  const double theta = state.obs[2];
  const double theta_dot = state.obs[3];

  const double force = action == 1 ? params_.force_magnitude : -params_.force_magnitude;
  const double cos_theta = std::cos(theta);
  const double sin_theta = std::sin(theta);
  const double total_mass = params_.cart_mass + params_.pole_mass;
  const double pole_mass_length = params_.pole_mass * params_.pole_half_length;

  const double temp =
      (force + pole_mass_length * theta_dot * theta_dot * sin_theta) / total_mass;
  const double theta_acc =
      (params_.gravity * sin_theta - cos_theta * temp) /
      (params_.pole_half_length *
       (4.0 / 3.0 - params_.pole_mass * cos_theta * cos_theta / total_mass));
  const double x_acc = temp - pole_mass_length * theta_acc * cos_theta / total_mass;

  // Semi-implicit Euler: velocities first, positions with the new velocities.
  const double dt = params_.integration_dt;
  Transition t;
  t.next_state.obs.resize(4);
  t.next_state.obs[1] = x_dot + dt * x_acc;
  t.next_state.obs[0] = x + dt * t.next_state.obs[1];
  t.next_state.obs[3] = theta_dot + dt * theta_acc;
  t.next_state.obs[2] = theta + dt * t.next_state.obs[3];
  t.next_state.steps_taken = state.steps_taken + 1;
  t.reward = 1.0;
  t.terminal = terminal(t.next_state);
  return t;
}

std::vector<std::pair<double, double>> CartPoleEnv::obs_bounds() const {
  const double inf = std::numeric_limits<double>::infinity();
  return {{-params_.position_threshold, params_.position_threshold},
          {-inf, inf},
          {-params_.angle_threshold, params_.angle_threshold},
          {-inf, inf}};
}

}  // namespace rtdp
