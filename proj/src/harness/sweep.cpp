#include "rtdp/harness/sweep.hpp"

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <thread>

#include "rtdp/envs/registry.hpp"
#include "rtdp/harness/manifest.hpp"
#include "rtdp/io/csv.hpp"

namespace rtdp {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

int resolve_workers(int requested, std::size_t n_runs) {
  int workers = requested;
  if (workers <= 0) {
    if (const char* env = std::getenv("RTDP_LAB_WORKERS")) {
      workers = std::atoi(env);
    }
  }
  if (workers <= 0) workers = static_cast<int>(std::thread::hardware_concurrency());
  if (workers <= 0) workers = 1;
  return static_cast<int>(std::min<std::size_t>(workers, n_runs));
}

std::string run_dir_name(const std::string& env_name, int n_mcts, std::uint64_t seed) {
  char buf[128];
  std::snprintf(buf, sizeof(buf), "%s_n%03d_s%llu", env_name.c_str(), n_mcts,
                static_cast<unsigned long long>(seed));
  return std::string(buf);
}

}  // namespace

json sweep_config_json(const SweepConfig& config) {
  json doc;
  doc["env"] = config.agent.env_name;
  doc["env_overrides"] = config.env_overrides.is_null() ? json::object() : config.env_overrides;
  doc["n_mcts_values"] = config.n_mcts_values;
  doc["repetitions"] = config.repetitions;
  doc["base_seed"] = config.base_seed;
  doc["aggregation_fraction"] = config.aggregation_fraction;
  doc["budget_mode"] = config.agent.budget.mode == BudgetSpec::Mode::kTotalTraces
                           ? "total_traces"
                           : "wall_clock_seconds";
  doc["budget_amount"] = config.agent.budget.amount;
  doc["c_start"] = config.agent.c_decay.c_start;
  doc["c_end"] = config.agent.c_decay.c_end;
  doc["c_decay_steps"] = config.agent.c_decay.decay_steps;
  doc["selection"] = config.agent.search.variant == SelectionVariant::kStandardPuct
                         ? "puct"
                         : "visit-ratio";
  doc["commit"] = config.agent.commit == CommitMode::kSampleCounts ? "sample" : "argmax";
  doc["hidden"] = config.agent.train.hidden;
  doc["batch_size"] = config.agent.train.batch_size;
  doc["buffer_capacity"] = config.agent.train.buffer_capacity;
  doc["train_steps_per_real_step"] = config.agent.train.train_steps_per_real_step;
  doc["learning_rate"] = config.agent.train.adam.lr;
  return doc;
}

SweepResult run_sweep(const SweepConfig& config) {
  if (config.repetitions < 1) throw std::invalid_argument("sweep: repetitions must be >= 1");
  if (config.n_mcts_values.empty()) throw std::invalid_argument("sweep: no n_mcts values");
  if (config.out_dir.empty()) throw std::invalid_argument("sweep: out_dir required");

  // Fail fast on an unwritable output directory, before any run starts.
  fs::create_directories(config.out_dir);
  {
    const fs::path probe = fs::path(config.out_dir) / ".write_probe";
    std::ofstream probe_out(probe);
    if (!probe_out) {
      throw std::runtime_error("sweep: output directory not writable: " + config.out_dir);
    }
    probe_out.close();
    fs::remove(probe);
  }

  struct PlannedRun {
    int n_mcts;
    std::uint64_t seed;
  };
  std::vector<PlannedRun> plan;
  for (int n : config.n_mcts_values) {
    for (int rep = 0; rep < config.repetitions; ++rep) {
      plan.push_back(PlannedRun{n, config.base_seed + static_cast<std::uint64_t>(rep)});
    }
  }

  std::vector<SweepRunStatus> statuses(plan.size());
  std::atomic<std::size_t> next{0};
  const int workers = resolve_workers(config.workers, plan.size());

  auto work = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= plan.size()) return;
      SweepRunStatus& status = statuses[i];
      status.n_mcts = plan[i].n_mcts;
      status.seed = plan[i].seed;
      status.dir = run_dir_name(config.agent.env_name, plan[i].n_mcts, plan[i].seed);
      try {
        const auto env = make_env(config.agent.env_name, config.env_overrides.is_null()
                                                             ? json::object()
                                                             : config.env_overrides);
        AgentConfig agent = config.agent;
        agent.search.n_mcts = plan[i].n_mcts;
        const RunRecord record = run_training(*env, agent, plan[i].seed);

        const fs::path dir = fs::path(config.out_dir) / status.dir;
        fs::create_directories(dir);
        write_run_csv((dir / "run.csv").string(), record.rows);
        save_checkpoint((dir / "checkpoint.bin").string(), record.final_params);

        status.ok = true;
        status.completed_episodes = static_cast<long long>(record.rows.size());
        status.total_real_steps = record.total_real_steps;
        status.total_traces = record.total_traces;
        status.wall_seconds = record.total_seconds;
        status.truncated_final_episode = record.truncated_final_episode;
        status.partial_return = record.partial_return;
        status.partial_steps = record.partial_steps;
      } catch (const std::exception& e) {
        status.ok = false;
        status.error = e.what();
      }
    }
  };

  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (std::thread& t : pool) t.join();
  }

  // tradeoff.csv is derived from the run.csv files alone, so re-aggregating
  // the written artifacts reproduces it exactly.
  std::vector<RunCurve> curves;
  for (const SweepRunStatus& status : statuses) {
    if (!status.ok) continue;
    RunCurve curve;
    curve.n_mcts = status.n_mcts;
    curve.seed = status.seed;
    curve.rows = read_run_csv((fs::path(config.out_dir) / status.dir / "run.csv").string());
    curves.push_back(std::move(curve));
  }
  const auto tradeoff =
      aggregate_tradeoff(curves, config.aggregation_fraction, config.agent.budget.mode);

  SweepResult result;
  result.runs = statuses;
  result.tradeoff = tradeoff;
  result.tradeoff_path = (fs::path(config.out_dir) / "tradeoff.csv").string();
  write_tradeoff_csv(result.tradeoff_path, tradeoff);

  json runs_json = json::array();
  std::vector<ManifestFileEntry> files;
  for (const SweepRunStatus& status : statuses) {
    json r;
    r["n_mcts"] = status.n_mcts;
    r["seed"] = status.seed;
    r["dir"] = status.dir;
    r["status"] = status.ok ? "ok" : "failed";
    if (!status.ok) r["error"] = status.error;
    r["completed_episodes"] = status.completed_episodes;
    r["total_real_steps"] = status.total_real_steps;
    r["total_traces"] = status.total_traces;
    r["wall_seconds"] = status.wall_seconds;
    r["truncated_final_episode"] = status.truncated_final_episode;
    if (status.truncated_final_episode) {
      r["partial_return"] = status.partial_return;
      r["partial_steps"] = status.partial_steps;
    }
    runs_json.push_back(r);
    if (status.ok) {
      for (const char* name : {"run.csv", "checkpoint.bin"}) {
        const std::string rel = status.dir + "/" + name;
        const std::string full = (fs::path(config.out_dir) / rel).string();
        files.push_back(ManifestFileEntry{rel, static_cast<std::uint64_t>(fs::file_size(full)),
                                          hash_hex(file_fnv1a64(full))});
      }
    }
  }
  files.push_back(ManifestFileEntry{
      "tradeoff.csv", static_cast<std::uint64_t>(fs::file_size(result.tradeoff_path)),
      hash_hex(file_fnv1a64(result.tradeoff_path))});

  result.manifest_path = (fs::path(config.out_dir) / "manifest.json").string();
  write_manifest(result.manifest_path, sweep_config_json(config), runs_json, std::move(files));
  return result;
}

}  // namespace rtdp
