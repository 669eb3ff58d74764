// Command-line front end: train | sweep | eval | oracle | entropy-map | verify.
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "rtdp/agent/agent.hpp"
#include "rtdp/envs/registry.hpp"
#include "rtdp/harness/entropy_map.hpp"
#include "rtdp/harness/manifest.hpp"
#include "rtdp/harness/sweep.hpp"
#include "rtdp/io/csv.hpp"
#include "rtdp/oracle/tabular_mdp.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

// Options shared by train and sweep; every field mirrors a config-file key.
struct RunOptions {
  std::string env = "cartpole";
  json env_overrides = json::object();
  std::vector<int> n_mcts = {8};
  std::optional<double> budget_traces;
  std::optional<double> budget_seconds;
  std::uint64_t seed = 0;
  int repetitions = 3;
  std::string out = ".";
  std::optional<double> c_start;
  std::optional<double> c_end;
  std::optional<int> c_decay_steps;
  std::string selection = "puct";
  std::string commit = "sample";
  int train_steps = 1;
  int batch_size = 16;
  int buffer_capacity = 5000;
  double lr = 1e-3;
  std::vector<int> hidden = {256, 256};
  double aggregation_fraction = 0.15;
  int workers = 0;
};

template <typename T>
void from_config(const json& doc, const char* key, T& field) {
  if (doc.contains(key)) field = doc.at(key).get<T>();
}

template <typename T>
void from_config_opt(const json& doc, const char* key, std::optional<T>& field) {
  if (doc.contains(key)) field = doc.at(key).get<T>();
}

void load_config_file(const std::string& path, RunOptions& opt) {
  std::ifstream in(path);
  if (!in) throw CLI::ValidationError("--config", "cannot open config file: " + path);
  json doc;
  try {
    in >> doc;
  } catch (const std::exception& e) {
    throw CLI::ValidationError("--config", std::string("invalid JSON: ") + e.what());
  }
  from_config(doc, "env", opt.env);
  if (doc.contains("env_overrides")) opt.env_overrides = doc.at("env_overrides");
  if (doc.contains("n_mcts")) {
    if (doc.at("n_mcts").is_array()) {
      opt.n_mcts = doc.at("n_mcts").get<std::vector<int>>();
    } else {
      opt.n_mcts = {doc.at("n_mcts").get<int>()};
    }
  }
  from_config(doc, "n_mcts_values", opt.n_mcts);
  from_config_opt(doc, "budget_traces", opt.budget_traces);
  from_config_opt(doc, "budget_seconds", opt.budget_seconds);
  from_config(doc, "seed", opt.seed);
  from_config(doc, "base_seed", opt.seed);
  from_config(doc, "seeds", opt.repetitions);
  from_config(doc, "repetitions", opt.repetitions);
  from_config(doc, "out", opt.out);
  from_config_opt(doc, "c_start", opt.c_start);
  from_config_opt(doc, "c_end", opt.c_end);
  from_config_opt(doc, "c_decay_steps", opt.c_decay_steps);
  from_config(doc, "selection", opt.selection);
  from_config(doc, "commit", opt.commit);
  from_config(doc, "train_steps_per_real_step", opt.train_steps);
  from_config(doc, "batch_size", opt.batch_size);
  from_config(doc, "buffer_capacity", opt.buffer_capacity);
  from_config(doc, "learning_rate", opt.lr);
  from_config(doc, "hidden", opt.hidden);
  from_config(doc, "aggregation_fraction", opt.aggregation_fraction);
  from_config(doc, "workers", opt.workers);
}

// Flags that were not passed keep the config/default value.
void add_run_flags(CLI::App* cmd, RunOptions& opt, std::string& config_path,
                   bool sweep_mode) {
  cmd->add_option("--config", config_path, "JSON config file mirroring these flags");
  cmd->add_option("--env", opt.env, "Environment: cartpole | mountaincar | racegrid");
  if (sweep_mode) {
    cmd->add_option("--n-mcts", opt.n_mcts,
                    "Search budgets per real step (comma separated)")
        ->delimiter(',');
    cmd->add_option("--seeds", opt.repetitions, "Repetitions per n_mcts value");
    cmd->add_option("--base-seed", opt.seed, "First seed; rep i uses base+i");
    cmd->add_option("--fraction", opt.aggregation_fraction,
                    "Final budget fraction aggregated into the trade-off");
    cmd->add_option("--workers", opt.workers,
                    "Worker pool size (default: RTDP_LAB_WORKERS or hardware)");
  } else {
    cmd->add_option("--n-mcts", [&opt](const std::vector<std::string>& vals) {
          opt.n_mcts = {std::stoi(vals.back())};
          return true;
        }, "Search traces per real step")->type_name("INT");
    cmd->add_option("--seed", opt.seed, "Run seed");
  }
  cmd->add_option("--budget-traces", [&opt](const std::vector<std::string>& vals) {
        opt.budget_traces = std::stod(vals.back());
        return true;
      }, "Total search-trace budget (deterministic mode)")->type_name("INT");
  cmd->add_option("--budget-seconds", [&opt](const std::vector<std::string>& vals) {
        opt.budget_seconds = std::stod(vals.back());
        return true;
      }, "Total wall-clock budget in seconds")->type_name("FLOAT");
  cmd->add_option("--out", opt.out, "Output directory");
  cmd->add_option("--c-start", [&opt](const std::vector<std::string>& vals) {
        opt.c_start = std::stod(vals.back());
        return true;
      }, "Exploration constant at step 0")->type_name("FLOAT");
  cmd->add_option("--c-end", [&opt](const std::vector<std::string>& vals) {
        opt.c_end = std::stod(vals.back());
        return true;
      }, "Exploration constant after decay")->type_name("FLOAT");
  cmd->add_option("--c-decay-steps", [&opt](const std::vector<std::string>& vals) {
        opt.c_decay_steps = std::stoi(vals.back());
        return true;
      }, "Real steps over which c decays linearly")->type_name("INT");
  cmd->add_option("--selection", opt.selection, "Selection rule: puct | visit-ratio")
      ->check(CLI::IsMember({"puct", "visit-ratio"}));
  cmd->add_option("--commit", opt.commit, "Action commitment: sample | argmax")
      ->check(CLI::IsMember({"sample", "argmax"}));
  cmd->add_option("--train-steps", opt.train_steps, "Gradient steps per real step");
  cmd->add_option("--batch", opt.batch_size, "Minibatch size");
  cmd->add_option("--buffer", opt.buffer_capacity, "Replay buffer capacity");
  cmd->add_option("--lr", opt.lr, "ADAM learning rate");
  cmd->add_option("--hidden", opt.hidden, "Trunk layer widths (comma separated)")
      ->delimiter(',');
}

rtdp::AgentConfig resolve_agent_config(const RunOptions& opt, int n_mcts) {
  rtdp::AgentConfig config = rtdp::default_agent_config(opt.env);
  config.search.n_mcts = n_mcts;
  config.search.variant = opt.selection == "visit-ratio"
                              ? rtdp::SelectionVariant::kVisitRatioBonus
                              : rtdp::SelectionVariant::kStandardPuct;
  config.commit = opt.commit == "argmax" ? rtdp::CommitMode::kArgmaxCounts
                                         : rtdp::CommitMode::kSampleCounts;
  if (opt.c_start) config.c_decay.c_start = *opt.c_start;
  if (opt.c_end) config.c_decay.c_end = *opt.c_end;
  if (opt.c_decay_steps) config.c_decay.decay_steps = *opt.c_decay_steps;
  if (opt.budget_traces && opt.budget_seconds) {
    throw CLI::ValidationError("--budget-traces",
                               "give either --budget-traces or --budget-seconds, not both");
  }
  if (opt.budget_traces) {
    config.budget = {rtdp::BudgetSpec::Mode::kTotalTraces, *opt.budget_traces};
  } else if (opt.budget_seconds) {
    config.budget = {rtdp::BudgetSpec::Mode::kWallClockSeconds, *opt.budget_seconds};
  }  // else: the per-env wall-clock preset from default_agent_config
  config.train.hidden = opt.hidden;
  config.train.batch_size = opt.batch_size;
  config.train.buffer_capacity = opt.buffer_capacity;
  config.train.train_steps_per_real_step = opt.train_steps;
  config.train.adam.lr = opt.lr;
  return config;
}

int cmd_train(const RunOptions& opt) {
  const auto env = rtdp::make_env(opt.env, opt.env_overrides);
  const rtdp::AgentConfig config = resolve_agent_config(opt, opt.n_mcts.front());

  const rtdp::RunRecord record = rtdp::run_training(*env, config, opt.seed);

  fs::create_directories(opt.out);
  const std::string run_csv = (fs::path(opt.out) / "run.csv").string();
  const std::string ckpt = (fs::path(opt.out) / "checkpoint.bin").string();
  rtdp::write_run_csv(run_csv, record.rows);
  rtdp::save_checkpoint(ckpt, record.final_params);

  std::cout << "env=" << opt.env << " n_mcts=" << config.search.n_mcts
            << " seed=" << opt.seed << "\n"
            << "episodes=" << record.rows.size()
            << " real_steps=" << record.total_real_steps
            << " traces=" << record.total_traces << "\n";
  if (record.truncated_final_episode) {
    std::cout << "budget exhausted mid-episode: partial return "
              << rtdp::format_double(record.partial_return) << " after "
              << record.partial_steps << " steps (not in run.csv)\n";
  }
  if (!record.rows.empty()) {
    std::cout << "last episode return=" << rtdp::format_double(record.rows.back().episode_return)
              << "\n";
  }
  std::cout << "wrote " << run_csv << " and " << ckpt << "\n";
  return kExitOk;
}

int cmd_sweep(const RunOptions& opt) {
  rtdp::SweepConfig sweep;
  sweep.agent = resolve_agent_config(opt, opt.n_mcts.front());
  sweep.env_overrides = opt.env_overrides;
  sweep.n_mcts_values = opt.n_mcts;
  sweep.repetitions = opt.repetitions;
  sweep.base_seed = opt.seed;
  sweep.out_dir = opt.out;
  sweep.aggregation_fraction = opt.aggregation_fraction;
  sweep.workers = opt.workers;

  const rtdp::SweepResult result = rtdp::run_sweep(sweep);

  int failed = 0;
  for (const auto& run : result.runs) {
    if (!run.ok) {
      ++failed;
      std::cerr << "run failed: " << run.dir << ": " << run.error << "\n";
    }
  }
  std::cout << "sweep complete: " << result.runs.size() - failed << "/" << result.runs.size()
            << " runs ok\n"
            << "wrote " << result.tradeoff_path << " and " << result.manifest_path << "\n";
  for (const auto& row : result.tradeoff) {
    std::cout << "n_mcts=" << row.n_mcts << " seed=" << row.seed
              << " last_fraction_return=" << rtdp::format_double(row.last_fraction_return)
              << "\n";
  }
  return failed == 0 ? kExitOk : kExitFailure;
}

int cmd_eval(const std::string& env_name, const json& env_overrides,
             const std::string& checkpoint, int episodes, int n_mcts, double c,
             std::uint64_t seed) {
  const auto env = rtdp::make_env(env_name, env_overrides);
  const rtdp::Mlp net = rtdp::load_checkpoint(checkpoint);
  if (net.obs_dim() != env->spec().obs_dim || net.action_count() != env->spec().action_count) {
    std::cerr << "checkpoint does not match environment dimensions\n";
    return kExitFailure;
  }

  rtdp::RngStream base(seed);
  rtdp::RngStream env_rng = base.split("env");
  rtdp::RngStream mcts_rng = base.split("mcts");

  std::cout << "episode,steps,return\n";
  double total = 0.0;
  for (int e = 1; e <= episodes; ++e) {
    rtdp::EnvState state = env->reset(env_rng);
    double ep_return = 0.0;
    long long steps = 0;
    while (!env->terminal(state)) {
      int action;
      if (n_mcts > 0) {
        rtdp::SearchConfig search{n_mcts, c, env->spec().gamma,
                                  rtdp::SelectionVariant::kStandardPuct};
        const rtdp::SearchResult result = rtdp::run_search(state, net, *env, search, mcts_rng);
        action = rtdp::commit_action(result, rtdp::CommitMode::kArgmaxCounts, mcts_rng);
      } else {
        // Greedy on the raw policy head.
        const rtdp::NetOutput out = net.forward(state.obs);
        action = 0;
        for (std::size_t a = 1; a < out.policy.size(); ++a) {
          if (out.policy[a] > out.policy[action]) action = static_cast<int>(a);
        }
      }
      const rtdp::Transition t = env->step(state, action, env_rng);
      ep_return += t.reward;
      ++steps;
      state = t.next_state;
      if (t.terminal) break;
    }
    total += ep_return;
    std::cout << e << ',' << steps << ',' << rtdp::format_double(ep_return) << "\n";
  }
  std::cout << "mean," << episodes << ',' << rtdp::format_double(total / episodes) << "\n";
  return kExitOk;
}

int cmd_oracle(const std::string& mdp_path, std::optional<double> gamma, double tol,
               int max_iter) {
  rtdp::TabularMdp mdp = rtdp::load_mdp_file(mdp_path);
  if (gamma) mdp.gamma = *gamma;
  const rtdp::QTable q = rtdp::q_value_iteration(mdp, tol, max_iter);
  const std::vector<int> policy = rtdp::greedy_policy(q);
  std::cout << "state,action,q,greedy\n";
  for (int s = 0; s < q.n_states; ++s) {
    for (int a = 0; a < q.n_actions; ++a) {
      std::cout << s << ',' << a << ',' << rtdp::format_double(q.at(s, a)) << ','
                << (policy[s] == a ? 1 : 0) << "\n";
    }
  }
  return kExitOk;
}

int cmd_entropy_map(const std::string& env_name, const json& env_overrides,
                    const std::string& checkpoint, int resolution, long long episode,
                    const std::string& out_file) {
  const auto env = rtdp::make_env(env_name, env_overrides);
  const rtdp::Mlp net = rtdp::load_checkpoint(checkpoint);
  const rtdp::EntropyMap map = rtdp::entropy_map(net, *env, resolution, episode);
  rtdp::write_entropy_map_csv(out_file, map);
  std::cout << "wrote " << out_file << " (" << map.cells.size() << " cells)\n";
  return kExitOk;
}

int cmd_verify(const std::string& manifest_path) {
  const std::vector<std::string> problems = rtdp::verify_manifest(manifest_path);
  if (problems.empty()) {
    std::cout << "manifest ok: " << manifest_path << "\n";
    return kExitOk;
  }
  for (const std::string& p : problems) std::cerr << p << "\n";
  return kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Planning/learning trade-off lab: AlphaZero-style MCTS + policy/value "
               "network training on classic control tasks"};
  app.require_subcommand(1);

  RunOptions train_opt, sweep_opt;
  std::string train_config, sweep_config;

  CLI::App* train = app.add_subcommand("train", "Run a single training run");
  add_run_flags(train, train_opt, train_config, false);

  CLI::App* sweep = app.add_subcommand(
      "sweep", "Sweep n_mcts under a fixed total budget with repetitions");
  add_run_flags(sweep, sweep_opt, sweep_config, true);

  std::string eval_env = "cartpole", eval_ckpt, eval_config;
  int eval_episodes = 10, eval_n_mcts = 0;
  double eval_c = 0.05;
  std::uint64_t eval_seed = 0;
  CLI::App* eval = app.add_subcommand("eval", "Greedy rollouts from a checkpoint");
  eval->add_option("--env", eval_env, "Environment name");
  eval->add_option("--checkpoint", eval_ckpt, "checkpoint.bin path")->required();
  eval->add_option("--episodes", eval_episodes, "Number of rollouts");
  eval->add_option("--n-mcts", eval_n_mcts, "Search budget (0 = raw policy head)");
  eval->add_option("--c", eval_c, "Exploration constant when searching");
  eval->add_option("--seed", eval_seed, "Evaluation seed");

  std::string oracle_mdp;
  double oracle_tol = 1e-8;
  int oracle_max_iter = 1000000;
  std::optional<double> oracle_gamma;
  CLI::App* oracle = app.add_subcommand("oracle", "Tabular Q-value iteration on an MDP file");
  oracle->add_option("--mdp", oracle_mdp, "MDP JSON file")->required();
  oracle->add_option("--gamma", [&oracle_gamma](const std::vector<std::string>& vals) {
          oracle_gamma = std::stod(vals.back());
          return true;
        }, "Discount override")->type_name("FLOAT");
  oracle->add_option("--tol", oracle_tol, "Sup-norm stopping tolerance");
  oracle->add_option("--max-iter", oracle_max_iter, "Sweep cap");

  std::string map_env = "racegrid", map_ckpt, map_out = "entropy_map.csv";
  int map_resolution = 21;
  long long map_episode = 0;
  CLI::App* entropy = app.add_subcommand("entropy-map",
                                         "Policy-entropy grid over a 2D state space");
  entropy->add_option("--env", map_env, "Environment name (2D observation space)");
  entropy->add_option("--checkpoint", map_ckpt, "checkpoint.bin path")->required();
  entropy->add_option("--resolution", map_resolution, "Grid cells per axis");
  entropy->add_option("--episode", map_episode, "Episode label written per row");
  entropy->add_option("--out", map_out, "Output CSV path");

  std::string verify_manifest_path;
  CLI::App* verify = app.add_subcommand("verify", "Check a sweep manifest's file hashes");
  verify->add_option("--manifest", verify_manifest_path, "manifest.json path")->required();

  // Config files are applied before flag values, so flags win.
  train->preparse_callback([&](std::size_t) {
    for (int i = 0; i < argc - 1; ++i) {
      if (std::string(argv[i]) == "--config") load_config_file(argv[i + 1], train_opt);
    }
  });
  sweep->preparse_callback([&](std::size_t) {
    for (int i = 0; i < argc - 1; ++i) {
      if (std::string(argv[i]) == "--config") load_config_file(argv[i + 1], sweep_opt);
    }
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == static_cast<int>(CLI::ExitCodes::Success)) {
      return app.exit(e);  // --help
    }
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (train->parsed()) return cmd_train(train_opt);
    if (sweep->parsed()) return cmd_sweep(sweep_opt);
    if (eval->parsed()) {
      return cmd_eval(eval_env, json::object(), eval_ckpt, eval_episodes, eval_n_mcts,
                      eval_c, eval_seed);
    }
    if (oracle->parsed()) return cmd_oracle(oracle_mdp, oracle_gamma, oracle_tol, oracle_max_iter);
    if (entropy->parsed()) {
      return cmd_entropy_map(map_env, json::object(), map_ckpt, map_resolution, map_episode,
                             map_out);
    }
    if (verify->parsed()) return cmd_verify(verify_manifest_path);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}
