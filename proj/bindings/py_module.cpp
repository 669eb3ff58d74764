// Python bindings for the core operations: environments, the tabular
// oracle, the policy/value network, tree search, training runs and sweeps.
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>
#include <nlohmann/json.hpp>

#include "rtdp/agent/agent.hpp"
#include "rtdp/envs/registry.hpp"
#include "rtdp/harness/entropy_map.hpp"
#include "rtdp/harness/manifest.hpp"
#include "rtdp/harness/sweep.hpp"
#include "rtdp/io/csv.hpp"
#include "rtdp/mcts/search.hpp"
#include "rtdp/net/mlp.hpp"
#include "rtdp/net/replay_buffer.hpp"
#include "rtdp/oracle/exhaustive.hpp"
#include "rtdp/oracle/tabular_env.hpp"
#include "rtdp/oracle/tabular_mdp.hpp"

namespace py = pybind11;
using namespace rtdp;

namespace {

nlohmann::json dict_to_json(const py::dict& d) {
  nlohmann::json j = nlohmann::json::object();
  for (auto item : d) {
    const auto key = item.first.cast<std::string>();
    const auto& v = item.second;
    if (py::isinstance<py::bool_>(v)) {
      j[key] = v.cast<bool>();
    } else if (py::isinstance<py::int_>(v)) {
      j[key] = v.cast<long long>();
    } else if (py::isinstance<py::float_>(v)) {
      j[key] = v.cast<double>();
    } else {
      j[key] = v.cast<std::string>();
    }
  }
  return j;
}

TabularMdp make_tabular_mdp(int n_states, int n_actions, double gamma,
                            const std::vector<std::vector<std::vector<double>>>& transitions,
                            const std::vector<std::vector<std::vector<double>>>& rewards) {
  TabularMdp mdp;
  mdp.n_states = n_states;
  mdp.n_actions = n_actions;
  mdp.gamma = gamma;
  for (int s = 0; s < n_states; ++s) {
    for (int a = 0; a < n_actions; ++a) {
      for (int s2 = 0; s2 < n_states; ++s2) {
        mdp.transition_probs.push_back(transitions.at(s).at(a).at(s2));
        mdp.rewards.push_back(rewards.at(s).at(a).at(s2));
      }
    }
  }
  mdp.validate();
  return mdp;
}

SelectionVariant parse_variant(const std::string& name) {
  if (name == "puct") return SelectionVariant::kStandardPuct;
  if (name == "visit-ratio") return SelectionVariant::kVisitRatioBonus;
  throw std::invalid_argument("selection must be 'puct' or 'visit-ratio'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Iterated planning/learning engine (MCTS + policy/value network)";

  py::class_<RngStream>(m, "RngStream")
      .def(py::init<std::uint64_t>(), py::arg("seed"))
      .def("split", &RngStream::split, py::arg("name"))
      .def("uniform", py::overload_cast<>(&RngStream::uniform))
      .def("uniform_int", &RngStream::uniform_int, py::arg("n"));

  py::class_<EnvState>(m, "EnvState")
      .def(py::init<>())
      .def_readwrite("obs", &EnvState::obs)
      .def_readwrite("steps_taken", &EnvState::steps_taken);

  py::class_<Transition>(m, "Transition")
      .def_readonly("next_state", &Transition::next_state)
      .def_readonly("reward", &Transition::reward)
      .def_readonly("terminal", &Transition::terminal);

  py::class_<EnvSpec>(m, "EnvSpec")
      .def_readonly("action_count", &EnvSpec::action_count)
      .def_readonly("obs_dim", &EnvSpec::obs_dim)
      .def_readonly("max_episode_steps", &EnvSpec::max_episode_steps)
      .def_readonly("gamma", &EnvSpec::gamma);

  py::class_<Environment, std::shared_ptr<Environment>>(m, "Environment")
      .def("spec", &Environment::spec)
      .def("name", &Environment::name)
      .def("reset", &Environment::reset, py::arg("rng"))
      .def("step", &Environment::step, py::arg("state"), py::arg("action"), py::arg("rng"))
      .def("terminal", &Environment::terminal, py::arg("state"))
      .def("obs_bounds", &Environment::obs_bounds);

  m.def(
      "make_env",
      [](const std::string& name, const py::dict& overrides) {
        return std::shared_ptr<Environment>(make_env(name, dict_to_json(overrides)));
      },
      py::arg("name"), py::arg("overrides") = py::dict());

  m.def(
      "discounted_return",
      [](const std::vector<double>& rewards, double gamma) {
        return discounted_return(rewards, gamma);
      },
      py::arg("rewards"), py::arg("gamma"));

  py::class_<TabularMdp>(m, "TabularMdp")
      .def(py::init(&make_tabular_mdp), py::arg("n_states"), py::arg("n_actions"),
           py::arg("gamma"), py::arg("transitions"), py::arg("rewards"))
      .def_readonly("n_states", &TabularMdp::n_states)
      .def_readonly("n_actions", &TabularMdp::n_actions)
      .def_readonly("gamma", &TabularMdp::gamma);

  py::class_<QTable>(m, "QTable")
      .def_readonly("n_states", &QTable::n_states)
      .def_readonly("n_actions", &QTable::n_actions)
      .def_readonly("values", &QTable::values)
      .def("at", py::overload_cast<int, int>(&QTable::at, py::const_));

  m.def("q_value_iteration", &q_value_iteration, py::arg("mdp"), py::arg("tolerance"),
        py::arg("max_iterations") = 1000000);
  m.def("greedy_policy", &greedy_policy, py::arg("q"));
  m.def(
      "exhaustive_search",
      [](const Environment& env, const EnvState& state, int depth, double gamma) {
        return exhaustive_search(env, state, depth, gamma, {});
      },
      py::arg("env"), py::arg("state"), py::arg("depth"), py::arg("gamma"));

  py::class_<NetOutput>(m, "NetOutput")
      .def_readonly("policy", &NetOutput::policy)
      .def_readonly("value", &NetOutput::value);

  py::class_<Mlp>(m, "Mlp")
      .def(py::init([](int obs_dim, int action_count, const std::vector<int>& hidden,
                       std::uint64_t seed) {
             RngStream rng(seed);
             return Mlp(obs_dim, action_count, hidden, rng);
           }),
           py::arg("obs_dim"), py::arg("action_count"),
           py::arg("hidden") = std::vector<int>{256, 256}, py::arg("seed") = 0)
      .def_property_readonly("obs_dim", &Mlp::obs_dim)
      .def_property_readonly("action_count", &Mlp::action_count)
      .def("forward",
           [](const Mlp& net, const std::vector<double>& obs) { return net.forward(obs); },
           py::arg("obs"));

  m.def("save_checkpoint", &save_checkpoint, py::arg("path"), py::arg("net"));
  m.def("load_checkpoint", &load_checkpoint, py::arg("path"));
  m.def(
      "policy_cross_entropy",
      [](const std::vector<double>& p, const std::vector<double>& t) {
        return policy_cross_entropy(p, t);
      },
      py::arg("predicted"), py::arg("target"));
  m.def("value_squared_error", &value_squared_error, py::arg("predicted"), py::arg("target"));
  m.def(
      "policy_entropy",
      [](const std::vector<double>& p) { return policy_entropy(p); }, py::arg("policy"));

  py::class_<SearchResult>(m, "SearchResult")
      .def_readonly("root_counts", &SearchResult::root_counts)
      .def_readonly("root_mean_q", &SearchResult::root_mean_q)
      .def_readonly("policy_target", &SearchResult::policy_target)
      .def_readonly("value_target", &SearchResult::value_target)
      .def_readonly("traces_used", &SearchResult::traces_used);

  m.def(
      "run_search",
      [](const EnvState& root, const Mlp& net, const Environment& env, int n_mcts, double c,
         double gamma, const std::string& selection, std::uint64_t seed) {
        SearchConfig config{n_mcts, c, gamma, parse_variant(selection)};
        RngStream rng = RngStream(seed).split("mcts");
        return run_search(root, net, env, config, rng);
      },
      py::arg("root_state"), py::arg("net"), py::arg("env"), py::arg("n_mcts"),
      py::arg("c") = 1.0, py::arg("gamma") = 1.0, py::arg("selection") = "puct",
      py::arg("seed") = 0);

  py::class_<EpisodeRow>(m, "EpisodeRow")
      .def_readonly("episode", &EpisodeRow::episode)
      .def_readonly("real_steps", &EpisodeRow::real_steps)
      .def_readonly("traces", &EpisodeRow::traces)
      .def_readonly("seconds", &EpisodeRow::seconds)
      .def_readonly("episode_return", &EpisodeRow::episode_return);

  py::class_<RunRecord>(m, "RunRecord")
      .def_readonly("rows", &RunRecord::rows)
      .def_readonly("truncated_final_episode", &RunRecord::truncated_final_episode)
      .def_readonly("partial_return", &RunRecord::partial_return)
      .def_readonly("partial_steps", &RunRecord::partial_steps)
      .def_readonly("total_real_steps", &RunRecord::total_real_steps)
      .def_readonly("total_traces", &RunRecord::total_traces)
      .def_readonly("seed", &RunRecord::seed)
      .def_property_readonly("final_params",
                             [](const RunRecord& r) { return r.final_params; });

  m.def(
      "run_training",
      [](const std::string& env_name, const py::dict& env_overrides, int n_mcts,
         const std::string& budget_mode, double budget_amount, std::uint64_t seed,
         double c_start, double c_end, int c_decay_steps, const std::string& commit,
         const std::string& selection, const std::vector<int>& hidden, int batch_size,
         int buffer_capacity, int train_steps, double lr) {
        const auto env = make_env(env_name, dict_to_json(env_overrides));
        AgentConfig config = default_agent_config(env_name);
        config.search.n_mcts = n_mcts;
        config.search.variant = parse_variant(selection);
        if (c_start >= 0) config.c_decay.c_start = c_start;
        if (c_end >= 0) config.c_decay.c_end = c_end;
        if (c_decay_steps > 0) config.c_decay.decay_steps = c_decay_steps;
        config.commit =
            commit == "argmax" ? CommitMode::kArgmaxCounts : CommitMode::kSampleCounts;
        config.budget.mode = budget_mode == "wall_clock_seconds"
                                 ? BudgetSpec::Mode::kWallClockSeconds
                                 : BudgetSpec::Mode::kTotalTraces;
        config.budget.amount = budget_amount;
        config.train.hidden = hidden;
        config.train.batch_size = batch_size;
        config.train.buffer_capacity = buffer_capacity;
        config.train.train_steps_per_real_step = train_steps;
        config.train.adam.lr = lr;
        return run_training(*env, config, seed);
      },
      py::arg("env"), py::arg("env_overrides") = py::dict(), py::arg("n_mcts") = 8,
      py::arg("budget_mode") = "total_traces", py::arg("budget_amount") = 10000,
      py::arg("seed") = 0, py::arg("c_start") = -1.0, py::arg("c_end") = -1.0,
      py::arg("c_decay_steps") = 0, py::arg("commit") = "sample",
      py::arg("selection") = "puct", py::arg("hidden") = std::vector<int>{256, 256},
      py::arg("batch_size") = 16, py::arg("buffer_capacity") = 5000,
      py::arg("train_steps") = 1, py::arg("lr") = 1e-3);

  py::class_<EntropyMapCell>(m, "EntropyMapCell")
      .def_readonly("x", &EntropyMapCell::x)
      .def_readonly("y", &EntropyMapCell::y)
      .def_readonly("entropy", &EntropyMapCell::entropy);

  py::class_<EntropyMap>(m, "EntropyMap")
      .def_readonly("episode_label", &EntropyMap::episode_label)
      .def_readonly("resolution", &EntropyMap::resolution)
      .def_readonly("cells", &EntropyMap::cells);

  m.def("entropy_map", &entropy_map, py::arg("net"), py::arg("env"), py::arg("resolution"),
        py::arg("episode_label") = 0);
  m.def("write_entropy_map_csv", &write_entropy_map_csv, py::arg("path"), py::arg("map"));

  m.def("write_run_csv", &write_run_csv, py::arg("path"), py::arg("rows"));
  m.def("read_run_csv", &read_run_csv, py::arg("path"));
  m.def("verify_manifest", &verify_manifest, py::arg("manifest_path"));

  m.attr("__version__") = "0.1.0";
}
