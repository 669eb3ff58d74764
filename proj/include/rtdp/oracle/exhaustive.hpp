#pragma once

#include <functional>
#include <vector>

#include "rtdp/env.hpp"
#include "rtdp/oracle/tabular_mdp.hpp"

namespace rtdp {

// Depth-limited full enumeration from `state`: exact per-root-action values,
// bootstrapping `leaf_value_fn` at the horizon (pass 0 for the pure case).
// Intended for deterministic environments; simulated transitions share one
// throwaway RNG stream. Throws std::runtime_error once more than `node_cap`
// nodes have been expanded.
std::vector<double> exhaustive_search(
    const Environment& env, const EnvState& state, int depth, double gamma,
    const std::function<double(const EnvState&)>& leaf_value_fn,
    long long node_cap = 2000000);

// Same enumeration on a tabular MDP, with exact expectations over stochastic
// transitions. `terminal_states[s]` marks absorbing states worth 0.
std::vector<double> exhaustive_search_tabular(
    const TabularMdp& mdp, int state, int depth,
    const std::vector<bool>& terminal_states,
    const std::function<double(int)>& leaf_value_fn = {});

}  // namespace rtdp
