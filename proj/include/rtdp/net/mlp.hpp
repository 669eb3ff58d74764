#pragma once

#include <span>
#include <string>
#include <vector>

#include "rtdp/rng.hpp"

namespace rtdp {

// One search result distilled for training: the root observation, the
// normalized-visit-count policy distribution and the reweighted root value.
struct TrainingTarget {
  std::vector<double> obs;
  std::vector<double> policy;
  double value = 0.0;
};

struct Layer {
  int in = 0;
  int out = 0;
  std::vector<double> w;  // row-major [out][in]
  std::vector<double> b;  // [out]
};

struct NetOutput {
  std::vector<double> policy;
  double value = 0.0;
};

// Policy/value network: a shared dense trunk (ReLU) feeding a softmax policy
// head and a linear scalar value head. Forward and backward passes are
// hand-written; there is no autodiff dependency.
class Mlp {
 public:
  Mlp() = default;

  // Trunk weights are scaled-uniform fan-in initialized; both heads start at
  // exactly zero, so the initial policy is uniform and initial values are 0.
  Mlp(int obs_dim, int action_count, std::vector<int> hidden, RngStream& rng);

  int obs_dim() const { return obs_dim_; }
  int action_count() const { return action_count_; }
  const std::vector<int>& hidden() const { return hidden_; }

  NetOutput forward(std::span<const double> obs) const;

  struct Grads {
    std::vector<Layer> layers;  // same shapes as Mlp::layers()
    double mean_policy_loss = 0.0;
    double mean_value_loss = 0.0;
  };

  // Analytic gradients of mean(policy cross-entropy + value squared error)
  // over the batch, w.r.t. every weight and bias.
  Grads gradients(std::span<const TrainingTarget> batch) const;

  // Trunk layers in order, then policy head, then value head.
  std::vector<Layer>& layers() { return layers_; }
  const std::vector<Layer>& layers() const { return layers_; }

  bool same_shape(const Mlp& other) const;

 private:
  int obs_dim_ = 0;
  int action_count_ = 0;
  std::vector<int> hidden_;
  std::vector<Layer> layers_;

  friend Mlp checkpoint_to_mlp(int obs_dim, int action_count, std::vector<Layer> layers);
};

// Cross-entropy -sum_a target[a] * log(predicted[a]); predictions are clamped
// at 1e-12 before the log.
double policy_cross_entropy(std::span<const double> predicted,
                            std::span<const double> target);

double value_squared_error(double predicted, double target);

// Policy entropy -sum_a p log p in nats.
double policy_entropy(std::span<const double> policy);

struct AdamConfig {
  double lr = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

// First/second moment estimates per weight, lazily shaped on first use.
struct AdamState {
  struct Slot {
    std::vector<double> m_w, v_w, m_b, v_b;
  };
  std::vector<Slot> slots;
  long long step = 0;
};

// Standard bias-corrected update; increments the step counter.
void adam_step(Mlp& net, const Mlp::Grads& grads, AdamState& state,
               const AdamConfig& config);

// Versioned binary weight dump; round-trips bit-exactly.
void save_checkpoint(const std::string& path, const Mlp& net);
Mlp load_checkpoint(const std::string& path);

}  // namespace rtdp
