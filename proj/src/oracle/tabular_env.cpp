#include "rtdp/oracle/tabular_env.hpp"

#include <limits>
#include <stdexcept>

namespace rtdp {

TabularEnv::TabularEnv(TabularMdp mdp, int initial_state,
                       std::vector<bool> terminal_states, int max_episode_steps)
    : mdp_(std::move(mdp)),
      initial_state_(initial_state),
      terminal_states_(std::move(terminal_states)),
      max_episode_steps_(max_episode_steps) {
  mdp_.validate();
  if (initial_state_ < 0 || initial_state_ >= mdp_.n_states) {
    throw std::invalid_argument("tabular env: initial state out of range");
  }
  if (static_cast<int>(terminal_states_.size()) != mdp_.n_states) {
    throw std::invalid_argument("tabular env: terminal flag per state required");
  }
}

EnvSpec TabularEnv::spec() const {
  return EnvSpec{mdp_.n_actions, 1, max_episode_steps_, mdp_.gamma};
}

int TabularEnv::state_index(const EnvState& state) const {
  return static_cast<int>(state.obs[0]);
}

EnvState TabularEnv::reset(RngStream&) const {
  return EnvState{{static_cast<double>(initial_state_)}, 0};
}

bool TabularEnv::terminal(const EnvState& state) const {
  return terminal_states_[state_index(state)] ||
         state.steps_taken >= max_episode_steps_;
}

Transition TabularEnv::step(const EnvState& state, int action, RngStream& rng) const {
  if (action < 0 || action >= mdp_.n_actions) {
    throw std::invalid_argument("tabular env: action out of range");
  }
  if (terminal(state)) throw std::logic_error("tabular env: step on terminal state");

  const int s = state_index(state);
  int s2 = mdp_.n_states - 1;  // fallback absorbs rounding leftovers
  // Deterministic rows (single p=1 entry) consume no randomness.
  double acc = 0.0;
  double draw = -1.0;
  for (int i = 0; i < mdp_.n_states; ++i) {
    const double p = mdp_.prob(s, action, i);
    if (p == 1.0) {
      s2 = i;
      break;
    }
    if (p > 0.0) {
      if (draw < 0.0) draw = rng.uniform();
      acc += p;
      if (draw < acc) {
        s2 = i;
        break;
      }
    }
  }

  Transition t;
  t.next_state.obs = {static_cast<double>(s2)};
  t.next_state.steps_taken = state.steps_taken + 1;
  t.reward = mdp_.reward(s, action, s2);
  t.terminal = terminal_states_[s2] || t.next_state.steps_taken >= max_episode_steps_;
  return t;
}

std::vector<std::pair<double, double>> TabularEnv::obs_bounds() const {
  return {{0.0, static_cast<double>(mdp_.n_states - 1)}};
}

}  // namespace rtdp
