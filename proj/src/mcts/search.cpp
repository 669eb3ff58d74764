#include "rtdp/mcts/search.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace rtdp {

int select_child(const SearchNode& node, double c, SelectionVariant variant,
                 RngStream& rng) {
  if (!node.expanded) throw std::logic_error("select_child: node not expanded");

  const int actions = static_cast<int>(node.priors.size());
  const int n_total = node.total_visits();
  const double sqrt_total = std::sqrt(static_cast<double>(n_total));

  double best = -std::numeric_limits<double>::infinity();
  // Ties are common (fresh nodes score 0 everywhere), so collect the argmax
  // set and draw uniformly.
  static thread_local std::vector<int> ties;
  ties.clear();
  for (int a = 0; a < actions; ++a) {
    const int n_a = node.visit_counts[a];
    const double q = n_a > 0 ? node.total_payoff[a] / n_a : 0.0;
    double bonus;
    if (variant == SelectionVariant::kStandardPuct) {
      bonus = c * node.priors[a] * sqrt_total / (1.0 + n_a);
    } else {
      bonus = c * node.priors[a] * std::sqrt(n_a / (1.0 + n_total));
    }
    const double score = q + bonus;
    if (score > best) {
      best = score;
      ties.clear();
      ties.push_back(a);
    } else if (score == best) {
      ties.push_back(a);
    }
  }
  return ties.size() == 1 ? ties[0] : ties[rng.uniform_int(static_cast<int>(ties.size()))];
}

double expand_evaluate(SearchNode& leaf, const Mlp& net) {
  if (leaf.expanded) throw std::logic_error("expand_evaluate: leaf already expanded");
  if (leaf.terminal) return 0.0;  // no future reward to estimate

  const NetOutput out = net.forward(leaf.state.obs);
  const int actions = static_cast<int>(out.policy.size());
  leaf.priors = out.policy;
  leaf.visit_counts.assign(actions, 0);
  leaf.total_payoff.assign(actions, 0.0);
  leaf.children.resize(actions);
  leaf.expanded = true;
  return out.value;
}

void backup(std::vector<std::pair<SearchNode*, int>>& path, double leaf_value,
            double gamma) {
  if (path.empty()) throw std::invalid_argument("backup: empty path");
  double g = leaf_value;
  for (auto it = path.rbegin(); it != path.rend(); ++it) {
    auto& [node, action] = *it;
    const SearchNode& child = *node->children[action];
    g = child.reward_into_node + gamma * g;
    node->visit_counts[action] += 1;
    node->total_payoff[action] += g;
  }
}

double root_value_target(const SearchNode& root) {
  const int n_total = root.total_visits();
  if (n_total == 0) throw std::logic_error("root_value_target: no visits");
  double v = 0.0;
  for (std::size_t a = 0; a < root.visit_counts.size(); ++a) {
    if (root.visit_counts[a] > 0) {
      v += (static_cast<double>(root.visit_counts[a]) / n_total) * root.mean_payoff(static_cast<int>(a));
    }
  }
  return v;
}

SearchResult run_search(const EnvState& root_state, const Mlp& net,
                        const Environment& env, const SearchConfig& config,
                        RngStream& rng) {
  return run_search_with_tree(root_state, net, env, config, rng, nullptr);
}

SearchResult run_search_with_tree(const EnvState& root_state, const Mlp& net,
                                  const Environment& env, const SearchConfig& config,
                                  RngStream& rng, std::unique_ptr<SearchNode>* tree_out) {
  if (config.n_mcts < 1) throw std::invalid_argument("run_search: n_mcts must be >= 1");
  if (env.terminal(root_state)) throw std::logic_error("run_search: root state is terminal");

  auto root = std::make_unique<SearchNode>();
  root->state = root_state;
  expand_evaluate(*root, net);

  std::vector<std::pair<SearchNode*, int>> path;
  for (int trace = 0; trace < config.n_mcts; ++trace) {
    path.clear();
    SearchNode* node = root.get();
    while (node->expanded && !node->terminal) {
      const int action = select_child(*node, config.c, config.variant, rng);
      if (!node->children[action]) {
        const Transition t = env.step(node->state, action, rng);
        auto child = std::make_unique<SearchNode>();
        child->state = t.next_state;
        child->terminal = t.terminal;
        child->reward_into_node = t.reward;
        node->children[action] = std::move(child);
      }
      path.emplace_back(node, action);
      node = node->children[action].get();
    }
    const double leaf_value = node->terminal ? 0.0 : expand_evaluate(*node, net);
    backup(path, leaf_value, config.gamma);
  }

  const int actions = env.spec().action_count;
  SearchResult result;
  result.root_counts = root->visit_counts;
  result.root_mean_q.resize(actions);
  result.policy_target.resize(actions);
  const int n_total = root->total_visits();
  for (int a = 0; a < actions; ++a) {
    result.root_mean_q[a] = root->mean_payoff(a);
    result.policy_target[a] = static_cast<double>(root->visit_counts[a]) / n_total;
  }
  result.value_target = root_value_target(*root);
  result.traces_used = config.n_mcts;

  if (tree_out) *tree_out = std::move(root);
  return result;
}

}  // namespace rtdp
