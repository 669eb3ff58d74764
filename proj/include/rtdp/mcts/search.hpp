#pragma once

#include <memory>
#include <vector>

#include "rtdp/env.hpp"
#include "rtdp/net/mlp.hpp"
#include "rtdp/rng.hpp"

namespace rtdp {

// Which selection rule scores an action during tree descent. Both mix the
// mean payoff with a prior-weighted count bonus and differ only in how the
// bonus uses the visit counts:
//   kStandardPuct:    Q(s,a) + c * prior(a) * sqrt(n(s)) / (1 + n(s,a))
//   kVisitRatioBonus: Q(s,a) + c * prior(a) * sqrt(n(s,a) / (1 + n(s)))
// The visit-ratio form makes the bonus grow with the child's own visits, so
// a node's first pick is always a uniform random draw; it is kept behind a
// config switch for comparison runs.
enum class SelectionVariant { kStandardPuct, kVisitRatioBonus };

struct SearchConfig {
  int n_mcts = 1;        // traces per real step
  double c = 1.0;        // exploration scale
  double gamma = 1.0;
  SelectionVariant variant = SelectionVariant::kStandardPuct;
};

// Per-action statistics live on the parent: visit counts n(s,a), summed
// payoffs W(s,a) (so Q(s,a) = W/n), and the network priors.
struct SearchNode {
  EnvState state;
  bool terminal = false;
  double reward_into_node = 0.0;  // reward on the edge from the parent
  bool expanded = false;
  std::vector<double> priors;
  std::vector<int> visit_counts;
  std::vector<double> total_payoff;
  std::vector<std::unique_ptr<SearchNode>> children;

  int total_visits() const {
    int n = 0;
    for (int v : visit_counts) n += v;
    return n;
  }
  // Mean payoff; only meaningful when visit_counts[a] > 0.
  double mean_payoff(int a) const {
    return visit_counts[a] > 0 ? total_payoff[a] / visit_counts[a] : 0.0;
  }
};

struct SearchResult {
  std::vector<int> root_counts;
  std::vector<double> root_mean_q;    // 0 for unvisited actions
  std::vector<double> policy_target;  // counts normalized to a distribution
  double value_target = 0.0;          // count-weighted mean of root Q values
  int traces_used = 0;
};

// Scores every action and returns the argmax; exact ties are broken
// uniformly at random from `rng`. Requires an expanded node.
int select_child(const SearchNode& node, double c, SelectionVariant variant,
                 RngStream& rng);

// Fills priors from the policy head and returns the value-head estimate as
// the leaf value (0 for terminal leaves, which are never expanded).
double expand_evaluate(SearchNode& leaf, const Mlp& net);

// Walks the trace bottom-up accumulating G <- r + gamma * G from the leaf
// value, adding one visit and the payoff G to every edge on the path.
void backup(std::vector<std::pair<SearchNode*, int>>& path, double leaf_value,
            double gamma);

// Count-weighted mean of root Q values over visited actions.
double root_value_target(const SearchNode& root);

// Runs exactly config.n_mcts select/expand/evaluate/backup traces from a
// fresh tree rooted at root_state (root expansion is not counted) and
// returns the training targets. The root must not be terminal.
SearchResult run_search(const EnvState& root_state, const Mlp& net,
                        const Environment& env, const SearchConfig& config,
                        RngStream& rng);

// run_search that also hands back the tree, for inspection in tests.
SearchResult run_search_with_tree(const EnvState& root_state, const Mlp& net,
                                  const Environment& env, const SearchConfig& config,
                                  RngStream& rng, std::unique_ptr<SearchNode>* tree_out);

}  // namespace rtdp
