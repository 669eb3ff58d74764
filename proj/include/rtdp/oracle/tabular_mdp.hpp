#pragma once

#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace rtdp {

// Dense finite MDP with transition probabilities and rewards indexed by
// (s, a, s').
struct TabularMdp {
  int n_states = 0;
  int n_actions = 0;
  double gamma = 1.0;
  // Flattened [s][a][s'] tables of size n_states * n_actions * n_states.
  std::vector<double> transition_probs;
  std::vector<double> rewards;

  double prob(int s, int a, int s2) const {
    return transition_probs[(static_cast<std::size_t>(s) * n_actions + a) * n_states + s2];
  }
  double reward(int s, int a, int s2) const {
    return rewards[(static_cast<std::size_t>(s) * n_actions + a) * n_states + s2];
  }

  // Checks table shapes, probability row sums (1 within 1e-12) and finiteness.
  // Throws std::invalid_argument on violation.
  void validate() const;
};

struct QTable {
  int n_states = 0;
  int n_actions = 0;
  std::vector<double> values;  // [s][a]

  double& at(int s, int a) { return values[static_cast<std::size_t>(s) * n_actions + a]; }
  double at(int s, int a) const { return values[static_cast<std::size_t>(s) * n_actions + a]; }
};

// Synchronous Q-value iteration: full sweeps of
//   Q(s,a) <- sum_s' P(s'|s,a) [ R(s,a,s') + gamma * max_a' Q(s',a') ]
// until the sup-norm change drops to `tolerance`. Throws std::runtime_error
// with diagnostics if the cap is hit first.
QTable q_value_iteration(const TabularMdp& mdp, double tolerance,
                         int max_iterations = 1000000);

// Argmax action per state, ties broken by lowest action index.
std::vector<int> greedy_policy(const QTable& q);

// JSON schema: {"n_states": S, "n_actions": A, "gamma": g,
//   "transitions": [S][A][S] probabilities, "rewards": [S][A][S]}.
TabularMdp mdp_from_json(const nlohmann::json& doc);
TabularMdp load_mdp_file(const std::string& path);

}  // namespace rtdp
