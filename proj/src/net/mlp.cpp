#include "rtdp/net/mlp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rtdp {

namespace {

constexpr double kLogClamp = 1e-12;

void dense_forward(const Layer& layer, const double* in, double* out) {
  for (int i = 0; i < layer.out; ++i) {
    const double* row = layer.w.data() + static_cast<std::size_t>(i) * layer.in;
    double acc = layer.b[i];
    for (int j = 0; j < layer.in; ++j) acc += row[j] * in[j];
    out[i] = acc;
  }
}

void softmax_inplace(std::vector<double>& z) {
  const double m = *std::max_element(z.begin(), z.end());
  double sum = 0.0;
  for (double& v : z) {
    v = std::exp(v - m);
    sum += v;
  }
  for (double& v : z) v /= sum;
}

}  // namespace

Mlp::Mlp(int obs_dim, int action_count, std::vector<int> hidden, RngStream& rng)
    : obs_dim_(obs_dim), action_count_(action_count), hidden_(std::move(hidden)) {
  if (obs_dim < 1 || action_count < 2) {
    throw std::invalid_argument("mlp: need obs_dim >= 1 and action_count >= 2");
  }
  int in = obs_dim_;
  for (int h : hidden_) {
    Layer layer{in, h, std::vector<double>(static_cast<std::size_t>(h) * in),
                std::vector<double>(h)};
    const double scale = 1.0 / std::sqrt(static_cast<double>(in));
    for (double& w : layer.w) w = rng.uniform(-scale, scale);
    for (double& b : layer.b) b = rng.uniform(-scale, scale);
    layers_.push_back(std::move(layer));
    in = h;
  }
  layers_.push_back(Layer{in, action_count_,
                          std::vector<double>(static_cast<std::size_t>(action_count_) * in, 0.0),
                          std::vector<double>(action_count_, 0.0)});
  layers_.push_back(Layer{in, 1, std::vector<double>(in, 0.0), std::vector<double>(1, 0.0)});
}

bool Mlp::same_shape(const Mlp& other) const {
  if (obs_dim_ != other.obs_dim_ || action_count_ != other.action_count_ ||
      layers_.size() != other.layers_.size()) {
    return false;
  }
  for (std::size_t i = 0; i < layers_.size(); ++i) {
    if (layers_[i].in != other.layers_[i].in || layers_[i].out != other.layers_[i].out) {
      return false;
    }
  }
  return true;
}

NetOutput Mlp::forward(std::span<const double> obs) const {
  if (static_cast<int>(obs.size()) != obs_dim_) {
    throw std::invalid_argument("mlp forward: observation dimension mismatch");
  }
  const std::size_t n_trunk = layers_.size() - 2;
  std::vector<double> cur(obs.begin(), obs.end());
  std::vector<double> next;
  for (std::size_t l = 0; l < n_trunk; ++l) {
    next.resize(layers_[l].out);
    dense_forward(layers_[l], cur.data(), next.data());
    for (double& v : next) v = v > 0.0 ? v : 0.0;
    cur.swap(next);
  }

  const Layer& policy = layers_[n_trunk];
  const Layer& value = layers_[n_trunk + 1];
  NetOutput out;
  out.policy.resize(policy.out);
  dense_forward(policy, cur.data(), out.policy.data());
  softmax_inplace(out.policy);
  double v = value.b[0];
  for (int j = 0; j < value.in; ++j) v += value.w[j] * cur[j];
  out.value = v;
  return out;
}

Mlp::Grads Mlp::gradients(std::span<const TrainingTarget> batch) const {
  if (batch.empty()) throw std::invalid_argument("mlp gradients: empty batch");

  Grads g;
  g.layers.reserve(layers_.size());
  for (const Layer& l : layers_) {
    g.layers.push_back(Layer{l.in, l.out, std::vector<double>(l.w.size(), 0.0),
                             std::vector<double>(l.b.size(), 0.0)});
  }

  const std::size_t n_trunk = layers_.size() - 2;
  const Layer& policy = layers_[n_trunk];
  const Layer& value = layers_[n_trunk + 1];

  // activations[0] = input, activations[l+1] = relu output of trunk layer l
  std::vector<std::vector<double>> activations(n_trunk + 1);
  std::vector<std::vector<double>> pre(n_trunk);
  std::vector<double> logits(policy.out), delta_hidden, delta_prev;

  for (const TrainingTarget& sample : batch) {
    if (static_cast<int>(sample.obs.size()) != obs_dim_ ||
        static_cast<int>(sample.policy.size()) != action_count_) {
      throw std::invalid_argument("mlp gradients: target shape mismatch");
    }
    activations[0].assign(sample.obs.begin(), sample.obs.end());
    for (std::size_t l = 0; l < n_trunk; ++l) {
      pre[l].resize(layers_[l].out);
      dense_forward(layers_[l], activations[l].data(), pre[l].data());
      activations[l + 1].resize(layers_[l].out);
      for (int i = 0; i < layers_[l].out; ++i) {
        activations[l + 1][i] = pre[l][i] > 0.0 ? pre[l][i] : 0.0;
      }
    }
    const std::vector<double>& top = activations[n_trunk];

    dense_forward(policy, top.data(), logits.data());
    std::vector<double> p(logits);
    softmax_inplace(p);
    double v = value.b[0];
    for (int j = 0; j < value.in; ++j) v += value.w[j] * top[j];

    g.mean_policy_loss += policy_cross_entropy(p, sample.policy);
    g.mean_value_loss += value_squared_error(v, sample.value);

    // Softmax cross-entropy head: d logits = p - target.
    // Squared-error head: d v = 2 (v - target).
    const double dv = 2.0 * (v - sample.value);
    Layer& g_policy = g.layers[n_trunk];
    Layer& g_value = g.layers[n_trunk + 1];
    delta_hidden.assign(top.size(), 0.0);
    for (int a = 0; a < policy.out; ++a) {
      const double d = p[a] - sample.policy[a];
      double* grow = g_policy.w.data() + static_cast<std::size_t>(a) * policy.in;
      const double* wrow = policy.w.data() + static_cast<std::size_t>(a) * policy.in;
      for (int j = 0; j < policy.in; ++j) {
        grow[j] += d * top[j];
        delta_hidden[j] += d * wrow[j];
      }
      g_policy.b[a] += d;
    }
    for (int j = 0; j < value.in; ++j) {
      g_value.w[j] += dv * top[j];
      delta_hidden[j] += dv * value.w[j];
    }
    g_value.b[0] += dv;

    // Trunk, deepest layer first.
    for (std::size_t l = n_trunk; l-- > 0;) {
      const Layer& layer = layers_[l];
      Layer& grad = g.layers[l];
      for (int i = 0; i < layer.out; ++i) {
        if (pre[l][i] <= 0.0) delta_hidden[i] = 0.0;
      }
      const std::vector<double>& below = activations[l];
      delta_prev.assign(layer.in, 0.0);
      for (int i = 0; i < layer.out; ++i) {
        const double d = delta_hidden[i];
        if (d == 0.0) continue;
        double* grow = grad.w.data() + static_cast<std::size_t>(i) * layer.in;
        const double* wrow = layer.w.data() + static_cast<std::size_t>(i) * layer.in;
        for (int j = 0; j < layer.in; ++j) {
          grow[j] += d * below[j];
          delta_prev[j] += d * wrow[j];
        }
        grad.b[i] += d;
      }
      delta_hidden.swap(delta_prev);
    }
  }

  const double inv_n = 1.0 / static_cast<double>(batch.size());
  for (Layer& l : g.layers) {
    for (double& w : l.w) w *= inv_n;
    for (double& b : l.b) b *= inv_n;
  }
  g.mean_policy_loss *= inv_n;
  g.mean_value_loss *= inv_n;
  return g;
}

double policy_cross_entropy(std::span<const double> predicted,
                            std::span<const double> target) {
  if (predicted.size() != target.size()) {
    throw std::invalid_argument("policy_cross_entropy: size mismatch");
  }
  double loss = 0.0;
  for (std::size_t a = 0; a < predicted.size(); ++a) {
    loss -= target[a] * std::log(std::max(predicted[a], kLogClamp));
  }
  return loss;
}

double value_squared_error(double predicted, double target) {
  const double d = predicted - target;
  return d * d;
}

double policy_entropy(std::span<const double> policy) {
  double h = 0.0;
  for (double p : policy) {
    if (p > 0.0) h -= p * std::log(p);
  }
  return h;
}

void adam_step(Mlp& net, const Mlp::Grads& grads, AdamState& state,
               const AdamConfig& config) {
  auto& layers = net.layers();
  if (grads.layers.size() != layers.size()) {
    throw std::invalid_argument("adam_step: gradient/parameter shape mismatch");
  }
  if (state.slots.empty()) {
    state.slots.resize(layers.size());
    for (std::size_t i = 0; i < layers.size(); ++i) {
      state.slots[i].m_w.assign(layers[i].w.size(), 0.0);
      state.slots[i].v_w.assign(layers[i].w.size(), 0.0);
      state.slots[i].m_b.assign(layers[i].b.size(), 0.0);
      state.slots[i].v_b.assign(layers[i].b.size(), 0.0);
    }
  }

  state.step += 1;
  const double bc1 = 1.0 - std::pow(config.beta1, static_cast<double>(state.step));
  const double bc2 = 1.0 - std::pow(config.beta2, static_cast<double>(state.step));

  auto update = [&](std::vector<double>& x, const std::vector<double>& g,
                    std::vector<double>& m, std::vector<double>& v) {
    for (std::size_t i = 0; i < x.size(); ++i) {
      m[i] = config.beta1 * m[i] + (1.0 - config.beta1) * g[i];
      v[i] = config.beta2 * v[i] + (1.0 - config.beta2) * g[i] * g[i];
      const double m_hat = m[i] / bc1;
      const double v_hat = v[i] / bc2;
      x[i] -= config.lr * m_hat / (std::sqrt(v_hat) + config.eps);
    }
  };

  for (std::size_t i = 0; i < layers.size(); ++i) {
    update(layers[i].w, grads.layers[i].w, state.slots[i].m_w, state.slots[i].v_w);
    update(layers[i].b, grads.layers[i].b, state.slots[i].m_b, state.slots[i].v_b);
  }
}

}  // namespace rtdp
