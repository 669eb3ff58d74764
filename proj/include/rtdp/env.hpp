#pragma once

#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rtdp/rng.hpp"

namespace rtdp {

// Observation vector plus the episode step clock.
struct EnvState {
  std::vector<double> obs;
  int steps_taken = 0;

  bool operator==(const EnvState&) const = default;
};

struct Transition {
  EnvState next_state;
  double reward = 0.0;
  bool terminal = false;
};

struct EnvSpec {
  int action_count = 0;
  int obs_dim = 0;
  int max_episode_steps = 0;
  double gamma = 1.0;
};

// Discrete-action environment with pure transition dynamics: step() is a
// function of (state, action) plus explicit RNG draws, no hidden state.
class Environment {
 public:
  virtual ~Environment() = default;

  virtual EnvSpec spec() const = 0;
  virtual std::string name() const = 0;

  // Sample from the initial state distribution; steps_taken = 0.
  virtual EnvState reset(RngStream& rng) const = 0;

  // Advance one step. Throws std::invalid_argument on an out-of-range action
  // and std::logic_error when called on a terminal state.
  virtual Transition step(const EnvState& state, int action, RngStream& rng) const = 0;

  // True if no further steps are accepted from this state.
  virtual bool terminal(const EnvState& state) const = 0;

  // Per-dimension observation bounds; +-inf where unbounded.
  virtual std::vector<std::pair<double, double>> obs_bounds() const = 0;
};

// Sum of gamma^k * rewards[k].
double discounted_return(std::span<const double> rewards, double gamma);

}  // namespace rtdp
