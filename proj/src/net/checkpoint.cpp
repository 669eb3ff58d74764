#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <vector>

#include "rtdp/net/mlp.hpp"

namespace rtdp {

// Binary layout (little-endian):
//   char[8]  "RTDPCKPT"
//   u32      format version (1)
//   i32      obs_dim, i32 action_count, i32 layer count
//   per layer: i32 in, i32 out, f64 w[out*in], f64 b[out]
//   u64      fnv1a64 of everything after the magic
namespace {

constexpr char kMagic[8] = {'R', 'T', 'D', 'P', 'C', 'K', 'P', 'T'};
constexpr std::uint32_t kVersion = 1;

template <typename T>
void put(std::vector<unsigned char>& buf, const T& v) {
  const auto* p = reinterpret_cast<const unsigned char*>(&v);
  buf.insert(buf.end(), p, p + sizeof(T));
}

template <typename T>
T take(const std::vector<unsigned char>& buf, std::size_t& pos) {
  if (pos + sizeof(T) > buf.size()) throw std::runtime_error("checkpoint: truncated file");
  T v;
  std::memcpy(&v, buf.data() + pos, sizeof(T));
  pos += sizeof(T);
  return v;
}

}  // namespace

Mlp checkpoint_to_mlp(int obs_dim, int action_count, std::vector<Layer> layers) {
  Mlp net;
  net.obs_dim_ = obs_dim;
  net.action_count_ = action_count;
  for (std::size_t i = 0; i + 2 < layers.size(); ++i) {
    net.hidden_.push_back(layers[i].out);
  }
  net.layers_ = std::move(layers);
  return net;
}

void save_checkpoint(const std::string& path, const Mlp& net) {
  std::vector<unsigned char> payload;
  put(payload, kVersion);
  put(payload, static_cast<std::int32_t>(net.obs_dim()));
  put(payload, static_cast<std::int32_t>(net.action_count()));
  put(payload, static_cast<std::int32_t>(net.layers().size()));
  for (const Layer& l : net.layers()) {
    put(payload, static_cast<std::int32_t>(l.in));
    put(payload, static_cast<std::int32_t>(l.out));
    for (double w : l.w) put(payload, w);
    for (double b : l.b) put(payload, b);
  }
  const std::uint64_t hash = fnv1a64(payload.data(), payload.size());

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("checkpoint: cannot open for writing: " + path);
  out.write(kMagic, sizeof(kMagic));
  out.write(reinterpret_cast<const char*>(payload.data()),
            static_cast<std::streamsize>(payload.size()));
  out.write(reinterpret_cast<const char*>(&hash), sizeof(hash));
  if (!out) throw std::runtime_error("checkpoint: write failed: " + path);
}

Mlp load_checkpoint(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("checkpoint: cannot open: " + path);
  std::vector<unsigned char> raw((std::istreambuf_iterator<char>(in)),
                                 std::istreambuf_iterator<char>());
  if (raw.size() < sizeof(kMagic) + sizeof(std::uint64_t) ||
      std::memcmp(raw.data(), kMagic, sizeof(kMagic)) != 0) {
    throw std::runtime_error("checkpoint: bad magic: " + path);
  }
  const std::size_t payload_len = raw.size() - sizeof(kMagic) - sizeof(std::uint64_t);
  std::vector<unsigned char> payload(raw.begin() + sizeof(kMagic),
                                     raw.begin() + sizeof(kMagic) + payload_len);
  std::uint64_t stored_hash;
  std::memcpy(&stored_hash, raw.data() + sizeof(kMagic) + payload_len, sizeof(stored_hash));
  if (stored_hash != fnv1a64(payload.data(), payload.size())) {
    throw std::runtime_error("checkpoint: hash mismatch (corrupt file): " + path);
  }

  std::size_t pos = 0;
  const auto version = take<std::uint32_t>(payload, pos);
  if (version != kVersion) {
    throw std::runtime_error("checkpoint: unsupported version " + std::to_string(version));
  }
  const auto obs_dim = take<std::int32_t>(payload, pos);
  const auto action_count = take<std::int32_t>(payload, pos);
  const auto n_layers = take<std::int32_t>(payload, pos);
  if (n_layers < 2) throw std::runtime_error("checkpoint: needs policy and value heads");

  std::vector<Layer> layers;
  layers.reserve(n_layers);
  for (int i = 0; i < n_layers; ++i) {
    Layer l;
    l.in = take<std::int32_t>(payload, pos);
    l.out = take<std::int32_t>(payload, pos);
    if (l.in < 1 || l.out < 1) throw std::runtime_error("checkpoint: bad layer shape");
    l.w.resize(static_cast<std::size_t>(l.in) * l.out);
    for (double& w : l.w) w = take<double>(payload, pos);
    l.b.resize(l.out);
    for (double& b : l.b) b = take<double>(payload, pos);
    layers.push_back(std::move(l));
  }
  return checkpoint_to_mlp(obs_dim, action_count, std::move(layers));
}

}  // namespace rtdp
