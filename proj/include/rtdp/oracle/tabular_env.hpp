#pragma once

#include <utility>
#include <vector>

#include "rtdp/env.hpp"
#include "rtdp/oracle/tabular_mdp.hpp"

namespace rtdp {

// Presents a TabularMdp as an Environment (observation = [state index]).
// Stochastic rows are sampled from the step RNG; reset returns the fixed
// initial state. Used to run the tree search against exactly solvable MDPs.
class TabularEnv final : public Environment {
 public:
  TabularEnv(TabularMdp mdp, int initial_state, std::vector<bool> terminal_states,
             int max_episode_steps = 1000);

  EnvSpec spec() const override;
  std::string name() const override { return "tabular"; }
  EnvState reset(RngStream& rng) const override;
  Transition step(const EnvState& state, int action, RngStream& rng) const override;
  bool terminal(const EnvState& state) const override;
  std::vector<std::pair<double, double>> obs_bounds() const override;

  int state_index(const EnvState& state) const;
  const TabularMdp& mdp() const { return mdp_; }
  const std::vector<bool>& terminal_states() const { return terminal_states_; }

 private:
  TabularMdp mdp_;
  int initial_state_;
  std::vector<bool> terminal_states_;
  int max_episode_steps_;
};

}  // namespace rtdp
