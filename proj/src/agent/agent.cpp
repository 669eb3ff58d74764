#include "rtdp/agent/agent.hpp"

#include <chrono>
#include <stdexcept>

#include "rtdp/net/replay_buffer.hpp"

namespace rtdp {

double exploration_c(const CDecay& decay, long long real_step) {
  if (real_step < 0) throw std::invalid_argument("exploration_c: negative step");
  if (decay.decay_steps < 1) throw std::invalid_argument("exploration_c: decay_steps must be >= 1");
  const double t = std::min(1.0, static_cast<double>(real_step) / decay.decay_steps);
  return decay.c_start + (decay.c_end - decay.c_start) * t;
}

int commit_action(const SearchResult& result, CommitMode mode, RngStream& rng) {
  const std::size_t actions = result.policy_target.size();
  if (actions == 0) throw std::invalid_argument("commit_action: empty search result");

  if (mode == CommitMode::kArgmaxCounts) {
    int best = 0;
    for (std::size_t a = 1; a < actions; ++a) {
      if (result.root_counts[a] > result.root_counts[best]) best = static_cast<int>(a);
    }
    return best;
  }
  const double draw = rng.uniform();
  double acc = 0.0;
  for (std::size_t a = 0; a + 1 < actions; ++a) {
    acc += result.policy_target[a];
    if (draw < acc) return static_cast<int>(a);
  }
  return static_cast<int>(actions - 1);
}

AgentConfig default_agent_config(const std::string& env_name) {
  AgentConfig config;
  config.env_name = env_name;
  if (env_name == "cartpole") {
    config.c_decay = {0.8, 0.05, 500};
    config.budget = {BudgetSpec::Mode::kWallClockSeconds, 500.0};
  } else if (env_name == "mountaincar") {
    config.c_decay = {5.0, 0.5, 5000};
    config.budget = {BudgetSpec::Mode::kWallClockSeconds, 150.0 * 60.0};
  } else if (env_name == "racegrid") {
    config.c_decay = {1.0, 0.05, 1500};
    config.budget = {BudgetSpec::Mode::kWallClockSeconds, 270.0 * 60.0};
  } else {
    throw std::invalid_argument("default_agent_config: unknown env " + env_name);
  }
  return config;
}

RunRecord run_training(const Environment& env, const AgentConfig& config,
                       std::uint64_t seed, const std::function<double()>& clock) {
  const EnvSpec spec = env.spec();
  if (config.search.n_mcts < 1) throw std::invalid_argument("run_training: n_mcts must be >= 1");
  if (config.budget.amount <= 0) throw std::invalid_argument("run_training: budget must be > 0");

  RngStream base(seed);
  RngStream env_rng = base.split("env");
  RngStream mcts_rng = base.split("mcts");
  RngStream init_rng = base.split("net-init");
  RngStream buffer_rng = base.split("buffer");
  RngStream commit_rng = base.split("commit");

  const bool wall_mode = config.budget.mode == BudgetSpec::Mode::kWallClockSeconds;
  std::function<double()> elapsed = clock;
  if (!elapsed) {
    const auto start = std::chrono::steady_clock::now();
    elapsed = [start] {
      return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    };
  }

  Mlp net(spec.obs_dim, spec.action_count, config.train.hidden, init_rng);
  AdamState opt;
  ReplayBuffer buffer(static_cast<std::size_t>(config.train.buffer_capacity));

  RunRecord record;
  record.seed = seed;

  SearchConfig search = config.search;
  search.gamma = spec.gamma;

  long long real_steps = 0;
  long long traces = 0;
  long long episode = 0;
  bool out_of_budget = false;

  while (!out_of_budget) {
    EnvState state = env.reset(env_rng);
    double episode_return = 0.0;
    long long episode_steps = 0;
    bool completed = false;

    while (true) {
      // Budget check before every real step; in trace mode stop as soon as a
      // full search no longer fits.
      if (wall_mode) {
        if (elapsed() >= config.budget.amount) break;
      } else {
        if (static_cast<double>(traces + search.n_mcts) > config.budget.amount) break;
      }

      // Plan.
      search.c = exploration_c(config.c_decay, real_steps);
      const SearchResult result = run_search(state, net, env, search, mcts_rng);
      traces += result.traces_used;

      // Learn.
      buffer.push(TrainingTarget{state.obs, result.policy_target, result.value_target});
      for (int k = 0; k < config.train.train_steps_per_real_step; ++k) {
        auto batch = buffer.sample(buffer_rng, static_cast<std::size_t>(config.train.batch_size));
        if (!batch) break;
        const Mlp::Grads grads = net.gradients(*batch);
        adam_step(net, grads, opt, config.train.adam);
      }

      // Real step.
      const int action = commit_action(result, config.commit, commit_rng);
      const Transition t = env.step(state, action, env_rng);
      episode_return += t.reward;
      ++episode_steps;
      ++real_steps;
      state = t.next_state;
      if (t.terminal) {
        completed = true;
        break;
      }
    }

    if (completed) {
      ++episode;
      record.rows.push_back(EpisodeRow{episode, real_steps, traces,
                                       wall_mode ? elapsed() : 0.0, episode_return});
      // The budget may be exactly spent; probe it before resetting again.
      if (wall_mode) {
        out_of_budget = elapsed() >= config.budget.amount;
      } else {
        out_of_budget = static_cast<double>(traces + search.n_mcts) > config.budget.amount;
      }
    } else {
      out_of_budget = true;
      if (episode_steps > 0) {
        record.truncated_final_episode = true;
        record.partial_return = episode_return;
        record.partial_steps = episode_steps;
      }
    }
  }

  record.total_real_steps = real_steps;
  record.total_traces = traces;
  record.total_seconds = wall_mode ? elapsed() : 0.0;
  record.final_params = std::move(net);
  return record;
}

}  // namespace rtdp
