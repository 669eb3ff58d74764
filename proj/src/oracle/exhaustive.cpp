#include "rtdp/oracle/exhaustive.hpp"

#include <stdexcept>

namespace rtdp {

namespace {

struct EnvEnumerator {
  const Environment& env;
  double gamma;
  const std::function<double(const EnvState&)>& leaf_value;
  long long node_cap;
  long long nodes = 0;
  RngStream scratch{0};

  double best_value(const EnvState& state, int depth) {
    double best = 0.0;
    bool first = true;
    for (int a = 0; a < env.spec().action_count; ++a) {
      const double v = action_value(state, a, depth);
      if (first || v > best) best = v;
      first = false;
    }
    return best;
  }

  double action_value(const EnvState& state, int action, int depth) {
    if (++nodes > node_cap) {
      throw std::runtime_error("exhaustive_search: node cap exceeded");
    }
    const Transition t = env.step(state, action, scratch);
    if (t.terminal) return t.reward;
    if (depth <= 1) {
      return t.reward + gamma * (leaf_value ? leaf_value(t.next_state) : 0.0);
    }
    return t.reward + gamma * best_value(t.next_state, depth - 1);
  }
};

}  // namespace

std::vector<double> exhaustive_search(
    const Environment& env, const EnvState& state, int depth, double gamma,
    const std::function<double(const EnvState&)>& leaf_value_fn, long long node_cap) {
  if (depth < 1) throw std::invalid_argument("exhaustive_search: depth must be >= 1");
  if (env.terminal(state)) throw std::logic_error("exhaustive_search: root is terminal");

  EnvEnumerator e{env, gamma, leaf_value_fn, node_cap};
  std::vector<double> values(env.spec().action_count, 0.0);
  for (int a = 0; a < env.spec().action_count; ++a) {
    values[a] = e.action_value(state, a, depth);
  }
  return values;
}

std::vector<double> exhaustive_search_tabular(
    const TabularMdp& mdp, int state, int depth,
    const std::vector<bool>& terminal_states,
    const std::function<double(int)>& leaf_value_fn) {
  if (depth < 1) throw std::invalid_argument("exhaustive_search_tabular: depth must be >= 1");

  // q(s, a, d): expected d-step lookahead value of taking a in s.
  std::function<double(int, int, int)> q = [&](int s, int a, int d) -> double {
    double v = 0.0;
    for (int s2 = 0; s2 < mdp.n_states; ++s2) {
      const double p = mdp.prob(s, a, s2);
      if (p == 0.0) continue;
      double future = 0.0;
      if (!terminal_states[s2]) {
        if (d <= 1) {
          future = leaf_value_fn ? leaf_value_fn(s2) : 0.0;
        } else {
          for (int a2 = 0; a2 < mdp.n_actions; ++a2) {
            future = a2 == 0 ? q(s2, a2, d - 1) : std::max(future, q(s2, a2, d - 1));
          }
        }
      }
      v += p * (mdp.reward(s, a, s2) + mdp.gamma * future);
    }
    return v;
  };

  std::vector<double> values(mdp.n_actions, 0.0);
  for (int a = 0; a < mdp.n_actions; ++a) values[a] = q(state, a, depth);
  return values;
}

}  // namespace rtdp
