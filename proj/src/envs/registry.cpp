#include "rtdp/envs/registry.hpp"

#include <stdexcept>

#include <nlohmann/json.hpp>

#include "rtdp/envs/cartpole.hpp"
#include "rtdp/envs/mountain_car.hpp"
#include "rtdp/envs/race_grid.hpp"

namespace rtdp {

namespace {

using nlohmann::json;

// Applies "key": value overrides, rejecting unknown keys so config typos
// fail loudly.
template <typename Params, typename Setter>
Params apply_overrides(Params params, const json& overrides, Setter&& set) {
  for (const auto& [key, value] : overrides.items()) {
    if (!set(params, key, value)) {
      throw std::invalid_argument("unknown env param: " + key);
    }
  }
  return params;
}

CartPoleParams cartpole_params(const json& o) {
  return apply_overrides(CartPoleParams{}, o, [](CartPoleParams& p, const std::string& k, const json& v) {
    if (k == "gravity") p.gravity = v.get<double>();
    else if (k == "cart_mass") p.cart_mass = v.get<double>();
    else if (k == "pole_mass") p.pole_mass = v.get<double>();
    else if (k == "pole_half_length") p.pole_half_length = v.get<double>();
    else if (k == "force_magnitude") p.force_magnitude = v.get<double>();
    else if (k == "integration_dt") p.integration_dt = v.get<double>();
    else if (k == "angle_threshold") p.angle_threshold = v.get<double>();
    else if (k == "position_threshold") p.position_threshold = v.get<double>();
    else if (k == "max_episode_steps") p.max_episode_steps = v.get<int>();
    else if (k == "gamma") p.gamma = v.get<double>();
    else return false;
    return true;
  });
}

MountainCarParams mountaincar_params(const json& o) {
  return apply_overrides(MountainCarParams{}, o, [](MountainCarParams& p, const std::string& k, const json& v) {
    if (k == "position_min") p.position_min = v.get<double>();
    else if (k == "position_max") p.position_max = v.get<double>();
    else if (k == "velocity_bound") p.velocity_bound = v.get<double>();
    else if (k == "force") p.force = v.get<double>();
    else if (k == "gravity_scale") p.gravity_scale = v.get<double>();
    else if (k == "goal_position") p.goal_position = v.get<double>();
    else if (k == "step_reward") p.step_reward = v.get<double>();
    else if (k == "goal_reward") p.goal_reward = v.get<double>();
    else if (k == "max_episode_steps") p.max_episode_steps = v.get<int>();
    else if (k == "gamma") p.gamma = v.get<double>();
    else return false;
    return true;
  });
}

RaceGridParams racegrid_params(const json& o) {
  return apply_overrides(RaceGridParams{}, o, [](RaceGridParams& p, const std::string& k, const json& v) {
    if (k == "goal_x") p.goal_x = v.get<double>();
    else if (k == "goal_y") p.goal_y = v.get<double>();
    else if (k == "goal_radius") p.goal_radius = v.get<double>();
    else if (k == "move_step") p.move_step = v.get<double>();
    else if (k == "step_reward") p.step_reward = v.get<double>();
    else if (k == "goal_reward") p.goal_reward = v.get<double>();
    else if (k == "max_episode_steps") p.max_episode_steps = v.get<int>();
    else if (k == "gamma") p.gamma = v.get<double>();
    else return false;
    return true;
  });
}

}  // namespace

std::unique_ptr<Environment> make_env(const std::string& name) {
  return make_env(name, json::object());
}

std::unique_ptr<Environment> make_env(const std::string& name, const json& overrides) {
  if (name == "cartpole") return std::make_unique<CartPoleEnv>(cartpole_params(overrides));
  if (name == "mountaincar") return std::make_unique<MountainCarEnv>(mountaincar_params(overrides));
  if (name == "racegrid") return std::make_unique<RaceGridEnv>(racegrid_params(overrides));
  throw std::invalid_argument("unknown environment: " + name +
                              " (expected cartpole | mountaincar | racegrid)");
}

}  // namespace rtdp
