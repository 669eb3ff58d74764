#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "rtdp/net/mlp.hpp"
#include "rtdp/rng.hpp"

namespace rtdp {

// Fixed-capacity FIFO ring of training targets with uniform
// sample-with-replacement minibatches.
class ReplayBuffer {
 public:
  explicit ReplayBuffer(std::size_t capacity = 5000) : capacity_(capacity) {
    data_.reserve(capacity_);
  }

  void push(TrainingTarget target) {
    if (data_.size() < capacity_) {
      data_.push_back(std::move(target));
    } else {
      data_[next_] = std::move(target);
    }
    next_ = (next_ + 1) % capacity_;
    ++total_pushed_;
  }

  std::size_t size() const { return data_.size(); }
  std::size_t capacity() const { return capacity_; }
  long long total_pushed() const { return total_pushed_; }
  bool ready(std::size_t batch_size) const { return data_.size() >= batch_size; }

  // Empty optional while the buffer holds fewer than batch_size targets;
  // the caller skips training until then.
  std::optional<std::vector<TrainingTarget>> sample(RngStream& rng,
                                                    std::size_t batch_size) const {
    if (!ready(batch_size)) return std::nullopt;
    std::vector<TrainingTarget> batch;
    batch.reserve(batch_size);
    for (std::size_t i = 0; i < batch_size; ++i) {
      batch.push_back(data_[static_cast<std::size_t>(rng.uniform_int(static_cast<int>(data_.size())))]);
    }
    return batch;
  }

  // Insertion-order snapshot, oldest first.
  std::vector<TrainingTarget> snapshot() const {
    std::vector<TrainingTarget> out;
    out.reserve(data_.size());
    const std::size_t start = data_.size() < capacity_ ? 0 : next_;
    for (std::size_t i = 0; i < data_.size(); ++i) {
      out.push_back(data_[(start + i) % data_.size()]);
    }
    return out;
  }

 private:
  std::size_t capacity_;
  std::vector<TrainingTarget> data_;
  std::size_t next_ = 0;
  long long total_pushed_ = 0;
};

}  // namespace rtdp
