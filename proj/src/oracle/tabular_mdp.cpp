#include "rtdp/oracle/tabular_mdp.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace rtdp {

void TabularMdp::validate() const {
  if (n_states < 1 || n_actions < 1) {
    throw std::invalid_argument("tabular mdp: n_states and n_actions must be positive");
  }
  const std::size_t expected =
      static_cast<std::size_t>(n_states) * n_actions * n_states;
  if (transition_probs.size() != expected || rewards.size() != expected) {
    throw std::invalid_argument("tabular mdp: table size mismatch");
  }
  for (int s = 0; s < n_states; ++s) {
    for (int a = 0; a < n_actions; ++a) {
      double sum = 0.0;
      for (int s2 = 0; s2 < n_states; ++s2) {
        const double p = prob(s, a, s2);
        if (p < 0.0 || !std::isfinite(p)) {
          throw std::invalid_argument("tabular mdp: invalid probability");
        }
        if (!std::isfinite(reward(s, a, s2))) {
          throw std::invalid_argument("tabular mdp: non-finite reward");
        }
        sum += p;
      }
      if (std::abs(sum - 1.0) > 1e-12) {
        throw std::invalid_argument("tabular mdp: transition row does not sum to 1");
      }
    }
  }
}

QTable q_value_iteration(const TabularMdp& mdp, double tolerance, int max_iterations) {
  if (tolerance <= 0.0) throw std::invalid_argument("q_value_iteration: tolerance must be > 0");
  mdp.validate();

  const int S = mdp.n_states;
  const int A = mdp.n_actions;
  QTable q{S, A, std::vector<double>(static_cast<std::size_t>(S) * A, 0.0)};
  std::vector<double> state_max(S, 0.0);
  QTable next = q;

  for (int iter = 0; iter < max_iterations; ++iter) {
    for (int s = 0; s < S; ++s) {
      double m = q.at(s, 0);
      for (int a = 1; a < A; ++a) m = std::max(m, q.at(s, a));
      state_max[s] = m;
    }
    double residual = 0.0;
    for (int s = 0; s < S; ++s) {
      for (int a = 0; a < A; ++a) {
        double v = 0.0;
        for (int s2 = 0; s2 < S; ++s2) {
          const double p = mdp.prob(s, a, s2);
          if (p != 0.0) v += p * (mdp.reward(s, a, s2) + mdp.gamma * state_max[s2]);
        }
        residual = std::max(residual, std::abs(v - q.at(s, a)));
        next.at(s, a) = v;
      }
    }
    std::swap(q.values, next.values);
    if (residual <= tolerance) return q;
  }
  throw std::runtime_error("q_value_iteration: no convergence within " +
                           std::to_string(max_iterations) + " sweeps (gamma=" +
                           std::to_string(mdp.gamma) + ")");
}

std::vector<int> greedy_policy(const QTable& q) {
  std::vector<int> policy(q.n_states, 0);
  for (int s = 0; s < q.n_states; ++s) {
    int best = 0;
    for (int a = 1; a < q.n_actions; ++a) {
      if (q.at(s, a) > q.at(s, best)) best = a;
    }
    policy[s] = best;
  }
  return policy;
}

TabularMdp mdp_from_json(const nlohmann::json& doc) {
  TabularMdp mdp;
  mdp.n_states = doc.at("n_states").get<int>();
  mdp.n_actions = doc.at("n_actions").get<int>();
  mdp.gamma = doc.value("gamma", 1.0);

  const auto& trans = doc.at("transitions");
  const auto& rew = doc.at("rewards");
  mdp.transition_probs.reserve(static_cast<std::size_t>(mdp.n_states) * mdp.n_actions * mdp.n_states);
  mdp.rewards.reserve(mdp.transition_probs.capacity());
  for (int s = 0; s < mdp.n_states; ++s) {
    for (int a = 0; a < mdp.n_actions; ++a) {
      for (int s2 = 0; s2 < mdp.n_states; ++s2) {
        mdp.transition_probs.push_back(trans.at(s).at(a).at(s2).get<double>());
        mdp.rewards.push_back(rew.at(s).at(a).at(s2).get<double>());
      }
    }
  }
  mdp.validate();
  return mdp;
}

TabularMdp load_mdp_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open mdp file: " + path);
  nlohmann::json doc;
  in >> doc;
  return mdp_from_json(doc);
}

}  // namespace rtdp
